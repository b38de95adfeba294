#include "ginstat/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "ginstat/predictors.hpp"

namespace ginstat {

double linear_statistic(const TestFunction& f, const Spectrum& sp, Normalization norm,
                        bool half_dim_convention) {
    double acc = 0.0;
    if (f.family == TestFunctionFamily::interval_bump) {
        for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i)
            if (sp.real_flags[i]) acc += f.eval1d(sp.eigenvalues[i].real());
    } else {
        for (const cplx& l : sp.eigenvalues) acc += f.eval(l.real(), l.imag());
    }
    if (norm == Normalization::n_quarter) {
        double base = half_dim_convention ? sp.source_dim / 2.0 : double(sp.source_dim);
        acc /= std::pow(base, 0.25);
    }
    return acc;
}

Spectrum sample_spectrum(const EnsembleSpec& spec, uint64_t index) {
    if (atom_is_real(spec.atom)) return eigenvalues_real_schur(sample_real_matrix(spec, index));
    return eigenvalues_complex(sample_matrix(spec, index));
}

std::vector<double> mc_linear_statistics(const EnsembleSpec& spec, const TestFunction& f,
                                         std::size_t count, Normalization norm, Exec exec) {
    return indexed_map(count, exec, [&](std::size_t i) {
        return linear_statistic(f, sample_spectrum(spec, i), norm);
    });
}

UniversalityReport universality_compare(const EnsembleSpec& spec_a, const EnsembleSpec& spec_b,
                                        const TestFunction& f, std::size_t count, Exec exec) {
    if (spec_a.dim != spec_b.dim)
        throw std::invalid_argument("universality_compare: ensembles must share dim");
    std::vector<double> sa = mc_linear_statistics(spec_a, f, count, Normalization::none, exec);
    std::vector<double> sb = mc_linear_statistics(spec_b, f, count, Normalization::none, exec);

    UniversalityReport rep;
    rep.a = k_statistics(sa);
    rep.b = k_statistics(sb);
    rep.dk2 = rep.a.k2 - rep.b.k2;
    rep.dk3 = rep.a.k3 - rep.b.k3;
    rep.dk4 = rep.a.k4 - rep.b.k4;
    rep.se_dk2 = std::hypot(rep.a.se2, rep.b.se2);
    rep.se_dk3 = std::hypot(rep.a.se3, rep.b.se3);
    rep.se_dk4 = std::hypot(rep.a.se4, rep.b.se4);

    double ma = rep.a.k1, mb = rep.b.k1;
    for (double& v : sa) v -= ma;
    for (double& v : sb) v -= mb;
    rep.ks = ks_two_sample(sa, sb);
    return rep;
}

double mc_mean_real_count(const EnsembleSpec& spec, std::size_t count, Exec exec) {
    if (!atom_is_real(spec.atom))
        throw std::invalid_argument("mc_mean_real_count: needs a real atom kind");
    std::vector<double> counts = indexed_map(count, exec, [&](std::size_t i) {
        return double(eigenvalues_real_schur(sample_real_matrix(spec, i)).real_count());
    });
    double acc = 0.0;
    for (double c : counts) acc += c;
    return acc / double(count);
}

double circular_law_radial_sup(const EnsembleSpec& spec, std::size_t count, Exec exec) {
    std::vector<std::vector<double>> radii(count);
    indexed_for(count, exec, [&](std::size_t i) {
        Spectrum sp = sample_spectrum(spec, i);
        radii[i].reserve(sp.eigenvalues.size());
        for (const cplx& l : sp.eigenvalues) radii[i].push_back(std::abs(l));
    });
    std::vector<double> all;
    all.reserve(count * spec.dim);
    for (const auto& r : radii) all.insert(all.end(), r.begin(), r.end());
    std::sort(all.begin(), all.end());
    double sup = 0.0;
    std::size_t total = all.size();
    for (std::size_t i = 0; i < total; ++i) {
        double r = std::min(all[i], 1.0);
        double target = r * r;
        double lo = double(i) / total, hi = double(i + 1) / total;
        sup = std::max(sup, std::max(std::abs(lo - target), std::abs(hi - target)));
    }
    return sup;
}

VarianceTable variance_experiment(KernelRegime regime, int dim, const TestFunction& f,
                                  std::size_t count, uint64_t seed, Exec exec) {
    if (dim % 2 != 0) throw std::invalid_argument("variance_experiment: dim must be even");
    int n = dim / 2;
    KernelContext ctx(n, regime);
    ctx.exec = exec;
    VarianceTable tab;
    tab.kernel = finite_n_variance(ctx, f);
    if (regime == KernelRegime::complex_complex) {
        tab.predicted = predict_bulk_variance(f);
    } else {
        tab.predicted = std::sqrt(double(n)) * predict_line_variance(f);
    }
    EnsembleSpec spec;
    spec.atom = AtomKind::real_gaussian;
    spec.dim = dim;
    spec.master_seed = seed;
    std::vector<double> stats = mc_linear_statistics(spec, f, count, Normalization::none, exec);
    CumulantReport rep = k_statistics(stats, 4);
    tab.mc = rep.k2;
    tab.mc_se = rep.se2;
    return tab;
}

}  // namespace ginstat
