#include "opg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opg {

namespace {

// regularized incomplete gamma by series (P) and continued fraction (Q)
double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double chi_square_p_value(double stat, int dof) {
    if (dof <= 0) throw std::invalid_argument("dof must be positive");
    if (stat <= 0) return 1.0;
    double a = dof / 2.0, x = stat / 2.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_uniform_stat(const std::vector<long>& counts, long total) {
    if (counts.empty()) throw std::invalid_argument("no cells");
    double expected = static_cast<double>(total) / counts.size();
    double stat = 0;
    for (long c : counts) {
        double d = c - expected;
        stat += d * d / expected;
    }
    return stat;
}

BinomCI wilson_interval(long successes, long trials, double z) {
    if (trials <= 0) throw std::invalid_argument("no trials");
    double p = static_cast<double>(successes) / trials;
    double z2 = z * z, n = static_cast<double>(trials);
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    return BinomCI{p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of empty set");
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::pair<double, double> iqr(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("iqr of empty set");
    std::sort(v.begin(), v.end());
    auto q = [&](double f) {
        double idx = f * (v.size() - 1);
        size_t lo = static_cast<size_t>(idx);
        double frac = idx - lo;
        return lo + 1 < v.size() ? v[lo] * (1 - frac) + v[lo + 1] * frac : v[lo];
    };
    return {q(0.25), q(0.75)};
}

} // namespace opg
