#include "ginstat/ensembles.hpp"

#include <cmath>

namespace ginstat {

bool atom_is_real(AtomKind k) {
    return k == AtomKind::real_gaussian || k == AtomKind::matched_discrete_real;
}

std::string atom_name(AtomKind k) {
    switch (k) {
        case AtomKind::complex_gaussian: return "complex-gaussian";
        case AtomKind::real_gaussian: return "real-gaussian";
        case AtomKind::matched_discrete_real: return "matched-discrete-real";
        case AtomKind::matched_discrete_complex: return "matched-discrete-complex";
    }
    return "?";
}

AtomKind atom_from_name(const std::string& name) {
    if (name == "complex-gaussian") return AtomKind::complex_gaussian;
    if (name == "real-gaussian") return AtomKind::real_gaussian;
    if (name == "matched-discrete-real") return AtomKind::matched_discrete_real;
    if (name == "matched-discrete-complex") return AtomKind::matched_discrete_complex;
    throw std::invalid_argument("unknown atom distribution: " + name);
}

namespace {

const double kSqrt3 = std::sqrt(3.0);

double discrete_three_point(double u) {
    // {-sqrt3, 0, sqrt3} with probabilities {1/6, 2/3, 1/6}
    if (u < 1.0 / 6.0) return -kSqrt3;
    if (u >= 5.0 / 6.0) return kSqrt3;
    return 0.0;
}

}  // namespace

cplx sample_atom(AtomKind kind, uint64_t sample_seed, uint64_t counter) {
    switch (kind) {
        case AtomKind::complex_gaussian: {
            double g0, g1;
            counter_gaussian_pair(sample_seed, counter, g0, g1);
            return cplx(g0, g1) / std::sqrt(2.0);
        }
        case AtomKind::real_gaussian: {
            double g0, g1;
            counter_gaussian_pair(sample_seed, counter, g0, g1);
            return cplx(g0, 0.0);
        }
        case AtomKind::matched_discrete_real:
            return cplx(discrete_three_point(counter_uniform(sample_seed, 2 * counter)), 0.0);
        case AtomKind::matched_discrete_complex: {
            double a = discrete_three_point(counter_uniform(sample_seed, 2 * counter));
            double b = discrete_three_point(counter_uniform(sample_seed, 2 * counter + 1));
            return cplx(a, b) / std::sqrt(2.0);
        }
    }
    return 0.0;
}

ComplexMatrix sample_matrix_raw(const EnsembleSpec& spec, uint64_t sample_index) {
    spec.validate();
    uint64_t seed = derive_sample_seed(spec.master_seed, sample_index);
    int d = spec.dim;
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m.at(i, j) = sample_atom(spec.atom, seed, uint64_t(i) * d + j);
    return m;
}

ComplexMatrix sample_matrix(const EnsembleSpec& spec, uint64_t sample_index) {
    ComplexMatrix m = sample_matrix_raw(spec, sample_index);
    double s = 1.0 / std::sqrt(double(spec.dim));
    for (cplx& z : m.entries) z *= s;
    return m;
}

RealMatrix sample_real_matrix(const EnsembleSpec& spec, uint64_t sample_index) {
    if (!atom_is_real(spec.atom))
        throw std::invalid_argument("sample_real_matrix: atom distribution is not real");
    spec.validate();
    uint64_t seed = derive_sample_seed(spec.master_seed, sample_index);
    int d = spec.dim;
    double s = 1.0 / std::sqrt(double(d));
    RealMatrix m(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m.at(i, j) = s * sample_atom(spec.atom, seed, uint64_t(i) * d + j).real();
    return m;
}

double MomentTable::moment(int k) const {
    if (!real_kind) throw std::logic_error("moment(): table is for a complex kind");
    if (k < 1 || k > 4) throw std::invalid_argument("moment(): order must be in 1..4");
    return real_moments[k];
}

cplx MomentTable::mixed(int a, int b) const {
    if (real_kind) throw std::logic_error("mixed(): table is for a real kind");
    if (a < 0 || b < 0 || a + b > 4) throw std::invalid_argument("mixed(): need a+b <= 4");
    return mixed_moments[a][b];
}

MomentTable atom_moments(AtomKind kind, int max_order) {
    if (max_order < 1 || max_order > 4) throw std::invalid_argument("atom_moments: order must be in 1..4");
    MomentTable t;
    switch (kind) {
        case AtomKind::real_gaussian:
            t.real_kind = true;
            t.real_moments[1] = 0.0;
            t.real_moments[2] = 1.0;
            t.real_moments[3] = 0.0;
            t.real_moments[4] = 3.0;
            return t;
        case AtomKind::matched_discrete_real:
            // values +-sqrt3 w.p. 1/6 each: E[x^k] = (3^{k/2})/3 for even k
            t.real_kind = true;
            t.real_moments[1] = 0.0;
            t.real_moments[2] = 1.0;
            t.real_moments[3] = 0.0;
            t.real_moments[4] = 3.0;
            return t;
        case AtomKind::complex_gaussian:
            // E[xi^a conj(xi)^b] = a! when a == b, else 0
            t.real_kind = false;
            t.mixed_moments[0][0] = 1.0;
            t.mixed_moments[1][1] = 1.0;
            t.mixed_moments[2][2] = 2.0;
            return t;
        case AtomKind::matched_discrete_complex: {
            // exact enumeration over the 3x3 support of (A, B)
            t.real_kind = false;
            const double vals[3] = {-kSqrt3, 0.0, kSqrt3};
            const double probs[3] = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
            for (int a = 0; a <= 4; ++a)
                for (int b = 0; a + b <= 4; ++b) {
                    cplx acc = 0.0;
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) {
                            cplx xi = cplx(vals[i], vals[j]) / std::sqrt(2.0);
                            acc += probs[i] * probs[j] * std::pow(xi, a) * std::pow(std::conj(xi), b);
                        }
                    t.mixed_moments[a][b] = acc;
                }
            return t;
        }
    }
    throw std::logic_error("atom_moments: unreachable");
}

}  // namespace ginstat
