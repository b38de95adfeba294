#include "ginstat/special.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ginstat {

double erfcx(double t) {
    if (t < 0.0) {
        // erfcx(-t) = 2 exp(t^2) - erfcx(t); overflows below t ~ -26.6
        double e = std::exp(t * t);
        return 2.0 * e - erfcx(-t);
    }
    if (t <= 8.0) return std::erfc(t) * std::exp(t * t);
    // asymptotic series 1/(t sqrt(pi)) * sum (-1)^k (2k-1)!!/(2t^2)^k,
    // truncated before the terms turn around
    double inv2t2 = 1.0 / (2.0 * t * t);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 40; ++k) {
        double next = term * -(2.0 * k - 1.0) * inv2t2;
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum / (t * std::sqrt(kPi));
}

double log_erfc(double t) {
    if (t < 8.0) return std::log(std::erfc(t));
    return std::log(erfcx(t)) - t * t;
}

namespace {

double gammap_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 2000; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("gammap: series failed to converge");
}

double gammaq_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 2000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gammap(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::domain_error("gammap: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gammap_series(a, x);
    return 1.0 - gammaq_cf(a, x);
}

double lower_incomplete_gamma(double a, double x) {
    double p = gammap(a, x);
    double lg = std::lgamma(a);
    if (lg < 650.0) return p * std::exp(lg);
    if (p <= 0.0) return 0.0;
    return std::exp(std::log(p) + lg);  // Gamma(a) alone would overflow
}

double log_lower_incomplete_gamma(double a, double x) {
    double p = gammap(a, x);
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(p) + std::lgamma(a);
}

LogScaled partial_exp_sum_scaled(cplx w, int K, int j0) {
    if (K < j0) return {cplx(0.0), 0.0};
    double aw = std::abs(w);
    if (aw == 0.0) return {cplx(j0 == 0 ? 1.0 : 0.0), 0.0};
    double th = std::arg(w);
    cplx exp_mw_phase(std::cos(-std::imag(w)), std::sin(-std::imag(w)));

    // Complement branch: e^{-w} sum_{m<=K} = 1 - e^{-w} sum_{m>K}.
    // Valid whenever the tail terms decay geometrically from m = K+1.
    if (K >= 8 && aw < K - 4.0 * std::sqrt(double(K)) - 4.0) {
        double lt = (K + 1) * std::log(aw) - std::lgamma(double(K + 2));
        cplx ph(std::cos((K + 1) * th), std::sin((K + 1) * th));
        cplx rot(std::cos(th), std::sin(th));
        cplx acc(0.0);
        double mant = 1.0;
        cplx dir = ph;
        for (int m = K + 1; m < K + 2000; ++m) {
            acc += mant * dir;
            mant *= aw / (m + 1.0);
            dir *= rot;
            if (mant < 1e-20 * std::abs(acc)) break;
        }
        // result = 1 - e^{-w} * acc * e^{lt}   [ - e^{-w} if j0 == 1 ]
        LogScaled tail{acc * exp_mw_phase, lt - std::real(w)};
        LogScaled base{cplx(1.0), 0.0};
        if (j0 == 1) {
            // subtract the m = 0 term e^{-w}
            LogScaled m0{exp_mw_phase, -std::real(w)};
            double s = std::max(base.log_scale, m0.log_scale);
            base = {base.mantissa * std::exp(base.log_scale - s) - m0.mantissa * std::exp(m0.log_scale - s), s};
        }
        double s = std::max(base.log_scale, tail.log_scale);
        return LogScaled{base.mantissa * std::exp(base.log_scale - s) -
                             tail.mantissa * std::exp(tail.log_scale - s),
                         s}
            .normalized();
    }

    // Direct branch: shift by the largest term magnitude, Kahan-sum mantissas.
    double mu = -std::numeric_limits<double>::infinity();
    int mstar = std::min<int>(K, static_cast<int>(aw));
    for (int m = std::max(j0, mstar - 2); m <= std::min(K, mstar + 2); ++m)
        mu = std::max(mu, m * std::log(aw) - std::lgamma(double(m + 1)));
    if (!std::isfinite(mu)) mu = j0 * std::log(aw) - std::lgamma(double(j0 + 1));
    cplx acc(0.0), comp(0.0);
    for (int m = j0; m <= K; ++m) {
        double lm = m * std::log(aw) - std::lgamma(double(m + 1)) - mu;
        if (lm < -745.0) continue;
        cplx term = std::exp(lm) * cplx(std::cos(m * th), std::sin(m * th));
        cplx y = term - comp;
        cplx t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return LogScaled{acc * exp_mw_phase, mu - std::real(w)}.normalized();
}

LogScaled cosh_partial_scaled(double v, int n) {
    double v2 = v * v;
    double term = 1.0, scale = 0.0;
    double acc = 0.0;
    for (int m = 0; m < n; ++m) {
        acc += term;
        term *= v2 / ((2.0 * m + 1.0) * (2.0 * m + 2.0));
        if (term > 1e250 || acc > 1e250) {
            acc *= 1e-250;
            term *= 1e-250;
            scale += 250.0 * std::log(10.0);
        }
        if (term < 1e-20 * acc) break;
    }
    return {cplx(acc), scale};
}

}  // namespace ginstat
