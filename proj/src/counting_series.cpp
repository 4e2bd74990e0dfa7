#include "opg/counting_series.hpp"

#include <cmath>

namespace opg {

UnicyclicSeries::UnicyclicSeries(int ceiling) : ceiling_(ceiling) {
    int N = ceiling_;
    Series R(N);  // rooted labelled trees: k^{k-1}/k!
    T_ = Series(N);
    for (int k = 1; k <= N; ++k) {
        R.at(k) = Rat(int_pow(Int(k), static_cast<unsigned long>(k - 1))) / Rat(factorial(k));
        T_.at(k) = Rat(int_pow(Int(k), static_cast<unsigned long>(std::max(0, k - 2)))) / Rat(factorial(k));
    }
    T_.at(1) = 1;  // 1^{-1} convention: a single vertex is a tree

    // W = (-log(1-R) - R - R^2/2) / 2, via L' = R' / (1 - R)
    Series S = Series::one_over_one_minus(R);
    Series D(N);
    for (int k = 0; k < N; ++k) D.at(k) = Rat(k + 1) * R[k + 1];
    Series M = D * S;
    Series L(N);
    for (int k = 1; k <= N; ++k) L.at(k) = M[k - 1] / k;
    Series W = (L - R - (R * R).scaled(Rat(1, 2))).scaled(Rat(1, 2));
    E_ = Series::exp(W);
}

const Series& UnicyclicSeries::tpow_e(int t) {
    auto it = pow_.find(t);
    if (it != pow_.end()) return it->second;
    if (t == 0) return pow_.emplace(0, E_).first->second;
    const Series& prev = tpow_e(t - 1);
    return pow_.emplace(t, prev * T_).first->second;
}

Int UnicyclicSeries::count(int n, int m) {
    if (m < 0 || m > n) return 0;  // no complex components forces m <= n
    if (n == 0) return m == 0 ? Int(1) : Int(0);
    if (n > ceiling_)
        throw CapacityError("unicyclic series ceiling is " + std::to_string(ceiling_));
    int t = n - m;
    Rat val = tpow_e(t)[n] * Rat(factorial(n)) / Rat(factorial(t));
    return to_int(val);
}

Rat UnicyclicSeries::u_ratio(int n, int m) {
    Int total = binomial(static_cast<long>(n) * (n - 1) / 2, m);
    if (total == 0) throw DomainError("m exceeds the number of vertex pairs");
    return Rat(count(n, m)) / Rat(total);
}

double f_formula(int n, int m, double c) {
    if (m >= n || m <= 0 || n <= 0) throw DomainError("f(n,m) needs 0 < m < n");
    double lf = std::log(c) + (2.0 * m - n) * (std::log(2.0) - 1.0) + (m + 0.5) * std::log(double(m)) +
                (n - 2.0 * m + 0.5) * std::log(double(n)) - (n - m + 0.5) * std::log(double(n - m));
    return std::exp(lf);
}

namespace {

using Row = std::vector<Rat>;

void add_into(Row& dst, const Row& src, size_t cap) {
    if (dst.size() < std::min(src.size(), cap + 1)) dst.resize(std::min(src.size(), cap + 1), Rat(0));
    for (size_t i = 0; i < src.size() && i <= cap; ++i)
        if (src[i] != 0) dst[i] += src[i];
}

Row conv(const Row& a, const Row& b, size_t cap) {
    Row out;
    if (a.empty() || b.empty()) return out;
    out.assign(std::min(a.size() + b.size() - 1, cap + 1), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && i + j <= cap; ++j)
            if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
    return out;
}

Row shift_y(const Row& a, int k, size_t cap) {
    Row out;
    if (a.empty()) return out;
    out.assign(std::min(a.size() + k, cap + 1), Rat(0));
    for (size_t i = 0; i + k <= cap && i < a.size(); ++i) out[i + k] = a[i];
    return out;
}

Row scale(Row a, const Rat& s) {
    for (auto& x : a) x *= s;
    return a;
}

Rat row_at(const Row& r, int m) { return (m >= 0 && m < static_cast<int>(r.size())) ? r[m] : Rat(0); }

} // namespace

CactusSeries::CactusSeries(int ceiling) : ceiling_(ceiling) {
    R_.assign(1, {});
    S_.assign(1, Row{Rat(1)});
    P_.assign(1, {});
    PS_.assign(1, {});
    G_.assign(1, {});
    F_.assign(1, Row{Rat(1)});
    A_.assign(1, Row{Rat(1)});
    X_.assign(1, Row{Rat(1)});
    built_ = 0;
}

void CactusSeries::extend(int upto) {
    for (int n = built_ + 1; n <= upto; ++n) {
        size_t cap = static_cast<size_t>(3 * n / 2 + 3);
        // R = x exp(G)
        R_.push_back(F_[n - 1]);
        // S = 1 + yRS
        Row s;
        for (int i = 1; i <= n; ++i) add_into(s, conv(R_[i], S_[n - i], cap), cap);
        S_.push_back(shift_y(s, 1, cap));
        // P = R^2
        Row p;
        for (int i = 1; i <= n - 1; ++i) add_into(p, conv(R_[i], R_[n - i], cap), cap);
        P_.push_back(std::move(p));
        // PS = P S
        Row ps;
        for (int i = 2; i <= n; ++i) add_into(ps, conv(P_[i], S_[n - i], cap), cap);
        PS_.push_back(std::move(ps));
        // G = yR + y^3 PS / 2
        Row g = shift_y(R_[n], 1, cap);
        add_into(g, shift_y(scale(PS_[n], Rat(1, 2)), 3, cap), cap);
        G_.push_back(std::move(g));
        // F = exp(G): n F_n = sum j G_j F_{n-j}
        Row f;
        for (int j = 1; j <= n; ++j) add_into(f, conv(scale(G_[j], Rat(j, n)), F_[n - j], cap), cap);
        F_.push_back(std::move(f));
        // A = exp(sum R_j/j x^j): n A_n = sum R_j A_{n-j}
        Row a;
        for (int j = 1; j <= n; ++j) add_into(a, conv(scale(R_[j], Rat(1, n)), A_[n - j], cap), cap);
        A_.push_back(std::move(a));
        // same with components restricted to excess >= 1 (m >= vertices + 1)
        Row x;
        for (int j = 1; j <= n; ++j) {
            Row rj = R_[j];
            for (int m = 0; m < static_cast<int>(rj.size()) && m <= j; ++m) rj[m] = 0;
            add_into(x, conv(scale(rj, Rat(1, n)), X_[n - j], cap), cap);
        }
        X_.push_back(std::move(x));
        built_ = n;
    }
}

Int CactusSeries::count(int n, int m, Variant v) {
    if (n < 0 || m < 0) return 0;
    if (n == 0) return (m == 0 && v != Variant::connected) ? Int(1) : Int(0);
    if (m > 3 * (n - 1) / 2) return 0;
    if (n > ceiling_) throw CapacityError("cactus series ceiling is " + std::to_string(ceiling_));
    extend(n);
    switch (v) {
        case Variant::connected:
            return to_int(row_at(R_[n], m) * Rat(factorial(n - 1)));
        case Variant::all:
            return to_int(row_at(A_[n], m) * Rat(factorial(n)));
        case Variant::complex_part:
            return to_int(row_at(X_[n], m) * Rat(factorial(n)));
    }
    return 0;
}

} // namespace opg
