#include "ginstat/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ginstat {

double CumulantReport::k(int order) const {
    switch (order) {
        case 1: return k1;
        case 2: return k2;
        case 3: return k3;
        case 4: return k4;
        case 5: return k5;
        case 6: return k6;
    }
    throw std::invalid_argument("CumulantReport::k: order must be 1..6");
}

double CumulantReport::se(int order) const {
    switch (order) {
        case 2: return se2;
        case 3: return se3;
        case 4: return se4;
    }
    throw std::invalid_argument("CumulantReport::se: jackknife errors cover orders 2..4");
}

namespace {

struct KStats {
    double k2, k3, k4;
};

// k-statistics from raw moments about zero of (already centered) data
KStats kstats_from_raw(double n, double mu1, double mu2, double mu3, double mu4) {
    double c2 = mu2 - mu1 * mu1;
    double c3 = mu3 - 3.0 * mu1 * mu2 + 2.0 * mu1 * mu1 * mu1;
    double c4 = mu4 - 4.0 * mu1 * mu3 + 6.0 * mu1 * mu1 * mu2 - 3.0 * mu1 * mu1 * mu1 * mu1;
    KStats s;
    s.k2 = n / (n - 1.0) * c2;
    s.k3 = n * n / ((n - 1.0) * (n - 2.0)) * c3;
    s.k4 = n * n * ((n + 1.0) * c4 - 3.0 * (n - 1.0) * c2 * c2) /
           ((n - 1.0) * (n - 2.0) * (n - 3.0));
    return s;
}

}  // namespace

CumulantReport k_statistics(const std::vector<double>& samples, int max_order) {
    if (max_order < 1 || max_order > 6)
        throw std::invalid_argument("k_statistics: max_order must be in 1..6");
    std::size_t n = samples.size();
    if (n < std::size_t(max_order) + 2)
        throw std::invalid_argument("k_statistics: need sample_count > max_order + 1");

    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= double(n);

    // centered power sums
    double S[7] = {};
    for (double v : samples) {
        double d = v - mean, p = d;
        for (int r = 1; r <= 6; ++r) {
            S[r] += p;
            p *= d;
        }
    }
    double m[7];
    for (int r = 1; r <= 6; ++r) m[r] = S[r] / double(n);

    CumulantReport rep;
    rep.sample_count = n;
    rep.k1 = mean;
    KStats full = kstats_from_raw(double(n), m[1], m[2], m[3], m[4]);
    rep.k2 = full.k2;
    rep.k3 = full.k3;
    rep.k4 = full.k4;
    rep.k5 = m[5] - 10.0 * m[3] * m[2];
    rep.k6 = m[6] - 15.0 * m[4] * m[2] - 10.0 * m[3] * m[3] + 30.0 * m[2] * m[2] * m[2];

    // jackknife over leave-one-out k-statistics
    double n1 = double(n - 1);
    double mean2 = 0, mean3 = 0, mean4 = 0;
    std::vector<double> j2(n), j3(n), j4(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d = samples[i] - mean;
        double d2 = d * d;
        double mu1 = (S[1] - d) / n1;
        double mu2 = (S[2] - d2) / n1;
        double mu3 = (S[3] - d2 * d) / n1;
        double mu4 = (S[4] - d2 * d2) / n1;
        KStats s = kstats_from_raw(n1, mu1, mu2, mu3, mu4);
        j2[i] = s.k2;
        j3[i] = s.k3;
        j4[i] = s.k4;
        mean2 += s.k2;
        mean3 += s.k3;
        mean4 += s.k4;
    }
    mean2 /= double(n);
    mean3 /= double(n);
    mean4 /= double(n);
    double v2 = 0, v3 = 0, v4 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        v2 += (j2[i] - mean2) * (j2[i] - mean2);
        v3 += (j3[i] - mean3) * (j3[i] - mean3);
        v4 += (j4[i] - mean4) * (j4[i] - mean4);
    }
    double fac = n1 / double(n);
    rep.se2 = std::sqrt(fac * v2);
    rep.se3 = std::sqrt(fac * v3);
    rep.se4 = std::sqrt(fac * v4);
    return rep;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        // step past ties together so equal values never register a gap
        double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        double fa = double(i) / a.size(), fb = double(j) / b.size();
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

NormalityCheck normality_report(const CumulantReport& rep, double predicted_variance,
                                double var_tol) {
    if (rep.sample_count < 1000)
        throw std::invalid_argument("normality_report: need at least 1000 samples");
    NormalityCheck c;
    c.predicted_variance = predicted_variance;
    c.variance_tolerance = var_tol;
    c.pass_variance = std::abs(rep.k2 - predicted_variance) <= var_tol * predicted_variance;
    c.pass_k3 = std::abs(rep.k3) <= 4.0 * rep.se3;
    c.pass_k4 = std::abs(rep.k4) <= 4.0 * rep.se4;
    return c;
}

}  // namespace ginstat
