#include "opg/series.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace opg {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

Series Series::truncated(int order) const {
    Series r(order);
    for (int k = 0; k <= std::min(order, this->order()); ++k) r.at(k) = c_[k];
    return r;
}

Series operator+(const Series& a, const Series& b) {
    int n = std::min(a.order(), b.order());
    Series r(n);
    for (int k = 0; k <= n; ++k) r.at(k) = a[k] + b[k];
    return r;
}

Series operator-(const Series& a, const Series& b) {
    int n = std::min(a.order(), b.order());
    Series r(n);
    for (int k = 0; k <= n; ++k) r.at(k) = a[k] - b[k];
    return r;
}

Series operator*(const Series& a, const Series& b) {
    int n = std::min(a.order(), b.order());
    Series r(n);
    for (int i = 0; i <= n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (b[j] == 0) continue;
            r.at(i + j) += a[i] * b[j];
        }
    }
    return r;
}

Series Series::scaled(const Rat& s) const {
    Series r(order());
    for (int k = 0; k <= order(); ++k) r.at(k) = c_[k] * s;
    return r;
}

Series Series::shifted(int k) const {
    Series r(order());
    for (int i = 0; i + k <= order(); ++i) r.at(i + k) = c_[i];
    return r;
}

Series Series::one_over_one_minus(const Series& f) {
    if (f[0] != 0) throw DomainError("series inverse needs zero constant term");
    int n = f.order();
    Series w(n);
    w.at(0) = 1;
    for (int k = 1; k <= n; ++k) {
        Rat acc(0);
        for (int i = 1; i <= k; ++i)
            if (f[i] != 0) acc += f[i] * w[k - i];
        w.at(k) = acc;
    }
    return w;
}

Series Series::exp(const Series& g) {
    if (g[0] != 0) throw DomainError("series exp needs zero constant term");
    int n = g.order();
    Series f(n);
    f.at(0) = 1;
    for (int k = 1; k <= n; ++k) {
        Rat acc(0);
        for (int j = 1; j <= k; ++j)
            if (g[j] != 0) acc += Rat(j) * g[j] * f[k - j];
        f.at(k) = acc / k;
    }
    return f;
}

Series solve_B(int order) {
    if (order < 1) throw DomainError("order must be >= 1");
    // B = z W / 2 + z B^2 / 2 with W = 1/(1 - zB) = 1 + zBW.
    // Each pass fixes the next coefficient; the convolution state is kept
    // incrementally so the whole solve is quadratic.
    std::vector<Rat> b(order + 1, Rat(0)), w(order + 1, Rat(0));
    w[0] = 1;
    for (int n = 1; n <= order; ++n) {
        if (n - 1 >= 1) {
            Rat acc(0);  // w_{n-1} = sum b_i w_{n-2-i}
            for (int i = 1; i <= n - 2; ++i) acc += b[i] * w[n - 2 - i];
            w[n - 1] = acc;
        }
        Rat sq(0);  // (B^2)_{n-1}
        for (int i = 1; i <= n - 2; ++i) sq += b[i] * b[n - 1 - i];
        b[n] = (w[n - 1] + sq) / 2;
    }
    Series B(order);
    for (int k = 0; k <= order; ++k) B.at(k) = b[k];
    return B;
}

Series solve_B_folded(int order) {
    if (order < 1) throw DomainError("order must be >= 1");
    // B~ = u W~ / 2 + B~^2 / 2 with W~ = 1/(1 - B~) = 1 + B~ W~
    std::vector<Rat> b(order + 1, Rat(0)), w(order + 1, Rat(0));
    w[0] = 1;
    for (int n = 1; n <= order; ++n) {
        Rat sq(0);  // (B~^2)_n uses only lower coefficients
        for (int i = 1; i <= n - 1; ++i) sq += b[i] * b[n - i];
        b[n] = (w[n - 1] + sq) / 2;
        Rat acc(0);  // w_n = sum_{i<=n} b_i w_{n-i}
        for (int i = 1; i <= n; ++i) acc += b[i] * w[n - i];
        w[n] = acc;
    }
    Series B(order);
    for (int k = 0; k <= order; ++k) B.at(k) = b[k];
    return B;
}

Series fold_even(const Series& B) {
    for (int k = 0; k <= B.order(); k += 2)
        if (B[k] != 0) throw StructuralError("nonzero even coefficient in B at order " + std::to_string(k));
    int n = (B.order() + 1) / 2;
    Series F(n);
    for (int i = 1; i <= n; ++i)
        if (2 * i - 1 <= B.order()) F.at(i) = B[2 * i - 1];
    return F;
}

Series b_equation_residual(const Series& B) {
    Series zB = B.shifted(1);
    Series W = Series::one_over_one_minus(zB);
    Series rhs = W.shifted(1).scaled(Rat(1, 2)) + (B * B).shifted(1).scaled(Rat(1, 2));
    return rhs - B;
}

Series derive_Kc_marked_folded(const Series& Bu) {
    // u K~_c° = B~^2 - B~^3/3
    Series sq = Bu * Bu;
    Series cu = sq * Bu;
    Series num = sq - cu.scaled(Rat(1, 3));
    int n = Bu.order() - 1;
    Series out(n);
    for (int k = 0; k <= n; ++k) out.at(k) = num[k + 1];
    return out;
}

Series derive_Kc_marked(const Series& B) {
    Series zB = B.shifted(1);
    Series W = Series::one_over_one_minus(zB);
    Series route_z = (zB * W).scaled(Rat(1, 2)) + (B * B * B).shifted(1).scaled(Rat(1, 6));

    // the two derivations must agree exactly on their common range
    Series Bu = fold_even(B);
    Series folded = derive_Kc_marked_folded(Bu);
    for (int k = 0; k <= route_z.order(); ++k) {
        if (k % 2 == 1) {
            if (route_z[k] != 0) throw StructuralError("odd coefficient in K_c° route");
            continue;
        }
        int n = k / 2;
        if (n <= folded.order() && route_z[k] != folded[n])
            throw StructuralError("K_c° derivation routes disagree at order " + std::to_string(k));
    }
    return route_z;
}

Series integrate_unmark(const Series& Kco) {
    if (Kco[0] != 0) throw DomainError("K_c° must have zero constant term");
    Series out(Kco.order());
    for (int k = 1; k <= Kco.order(); ++k) out.at(k) = Kco[k] / k;
    return out;
}

Series integrate_unmark_folded(const Series& Kco_u) {
    Series out(Kco_u.order());
    for (int n = 1; n <= Kco_u.order(); ++n) out.at(n) = Kco_u[n] / (2 * n);
    return out;
}

Series exp_connected_to_all(const Series& Kc) { return Series::exp(Kc); }

namespace {

std::string sig_digits(const BigFloat& x, int digits) {
    return x.str(digits, std::ios_base::fmtflags(0));
}

} // namespace

SingularityReport singularity_constants() {
    SingularityReport rep;
    rep.t_a = Rat(1);
    rep.t_b = Rat(-1, 3);
    rep.r_a = Rat(0);
    rep.r_b = Rat(2, 9);
    rep.rho_c = Rat(1, 3);

    // exact consistency check in Q[sqrt(3)]: t = r/(2(1-t)) + t^2/2
    auto mul3 = [](Rat a1, Rat b1, Rat a2, Rat b2) {
        return std::pair<Rat, Rat>(a1 * a2 + 3 * b1 * b2, a1 * b2 + b1 * a2);
    };
    auto inv3 = [](Rat a, Rat b) {
        Rat d = a * a - 3 * b * b;
        return std::pair<Rat, Rat>(a / d, -b / d);
    };
    Rat ima = 2 * (1 - rep.t_a), imb = 2 * (0 - rep.t_b);    // 2(1-t)
    auto [ia, ib] = inv3(ima, imb);
    auto [fa, fb] = mul3(rep.r_a, rep.r_b, ia, ib);          // r / (2(1-t))
    auto [sa, sb] = mul3(rep.t_a, rep.t_b, rep.t_a, rep.t_b);  // t^2
    Rat rhs_a = fa + sa / 2, rhs_b = fb + sb / 2;
    rep.consistency_ok = (rhs_a == rep.t_a && rhs_b == rep.t_b);

    BigFloat s3 = sqrt(BigFloat(3)), s2 = sqrt(BigFloat(2));
    BigFloat tv = BigFloat(1) - s3 / 3;
    BigFloat rv = 2 * s3 / 9;
    BigFloat rhov = s2 / 3;
    BigFloat gv = 1 / sqrt(rv);
    rep.t_str = sig_digits(tv, 20);
    rep.r_str = sig_digits(rv, 20);
    rep.rho_str = sig_digits(rhov, 20);
    rep.gamma_str = sig_digits(gv, 20);
    rep.t = tv.convert_to<double>();
    rep.r = rv.convert_to<double>();
    rep.rho = rhov.convert_to<double>();
    rep.gamma = gv.convert_to<double>();
    return rep;
}

double log_rat(const Rat& x) {
    if (x <= 0) throw DomainError("log of non-positive rational");
    long ne = 0, de = 0;
    double nd = mpz_get_d_2exp(&ne, Int(numerator(x)).backend().data());
    double dd = mpz_get_d_2exp(&de, Int(denominator(x)).backend().data());
    return std::log(nd) - std::log(dd) + (ne - de) * std::log(2.0);
}

GrowthFit estimate_growth(const Series& S, int lo, int hi) {
    hi = std::min(hi, S.order());
    if (lo < 1) lo = 1;
    int nonzero = 0;
    for (int k = lo; k <= hi; ++k)
        if (S[k] != 0) ++nonzero;
    if (nonzero < 50) throw CapacityError("need at least 50 nonzero coefficients in the window");

    std::vector<double> ratio(hi + 1, 0.0);
    for (int n = lo; n < hi; ++n) {
        if (S[n] == 0 || S[n + 1] == 0) throw CapacityError("zero coefficient inside the fit window");
        ratio[n] = std::exp(log_rat(S[n + 1] / S[n]));
    }
    // r_n = R(1 + p/n + O(1/n^2)); two Richardson levels
    std::vector<double> R1(hi, 0.0), R2(hi, 0.0);
    for (int n = lo; n + 1 < hi; ++n) R1[n] = (n + 1) * ratio[n + 1] - n * ratio[n];
    for (int n = lo; n + 2 < hi; ++n)
        R2[n] = (static_cast<double>(n + 1) * (n + 1) * R1[n + 1] - static_cast<double>(n) * n * R1[n]) /
                (2.0 * n + 1.0);
    auto tail_mean = [&](const std::vector<double>& v, int last_valid) {
        int cnt = std::min(10, last_valid - lo + 1);
        double s = 0;
        for (int i = 0; i < cnt; ++i) s += v[last_valid - i];
        return s / cnt;
    };
    GrowthFit fit;
    fit.window_lo = lo;
    fit.window_hi = hi;
    fit.rate_estimate = tail_mean(R2, hi - 3);
    fit.rate_raw_last = ratio[hi - 1];

    std::vector<double> p(hi, 0.0), P1(hi, 0.0);
    for (int n = lo; n < hi; ++n) p[n] = n * (ratio[n] / fit.rate_estimate - 1.0);
    for (int n = lo; n + 1 < hi; ++n) P1[n] = (n + 1) * p[n + 1] - n * p[n];
    fit.poly_exponent_estimate = tail_mean(P1, hi - 2);

    double acc = 0;
    int cnt = std::min(10, hi - lo);
    for (int i = 0; i < cnt; ++i) {
        int n = hi - i;
        acc += log_rat(S[n]) - n * std::log(fit.rate_estimate) - fit.poly_exponent_estimate * std::log(double(n));
    }
    fit.constant_estimate = std::exp(acc / cnt);
    return fit;
}

EvalResult evaluate_truncated(const Series& S, const Rat& u0, double requested_precision) {
    int N = S.order();
    Rat sum(0), pw(1);
    for (int k = 0; k <= N; ++k) {
        if (S[k] != 0) sum += S[k] * pw;
        pw *= u0;
    }
    // geometric tail estimate from the observed coefficient growth
    double g = 0;
    int seen = 0;
    for (int k = N; k > 1 && seen < 20; --k) {
        if (S[k] == 0 || S[k - 1] == 0) continue;
        g = std::max(g, std::exp(log_rat(abs(S[k]) / abs(S[k - 1]))));
        ++seen;
    }
    double q = g * std::abs(u0.convert_to<double>()) * 1.05;
    if (q >= 1.0) throw CapacityError("evaluation point too close to the singularity for this truncation");
    double last_term = 0;
    for (int k = N; k >= 0; --k)
        if (S[k] != 0) {
            last_term = std::exp(log_rat(abs(S[k])) + k * std::log(std::abs(u0.convert_to<double>())));
            break;
        }
    EvalResult res;
    res.terms = N + 1;
    res.tail_bound = last_term * q / (1 - q);
    res.value = sum.convert_to<double>();
    if (res.tail_bound > requested_precision)
        throw CapacityError("achievable precision is only " + std::to_string(res.tail_bound));
    return res;
}

} // namespace opg
