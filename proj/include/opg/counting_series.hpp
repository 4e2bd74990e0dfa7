#ifndef OPG_COUNTING_SERIES_HPP
#define OPG_COUNTING_SERIES_HPP

#include <map>
#include <vector>

#include "opg/series.hpp"

namespace opg {

// |U(n,m)| through the tree / unicyclic decomposition:
// n! [x^n] T^{n-m}/(n-m)! exp(W), with T the unrooted labelled tree EGF and
// W the connected-unicyclic EGF.
class UnicyclicSeries {
public:
    explicit UnicyclicSeries(int ceiling = 200);

    Int count(int n, int m);
    Rat u_ratio(int n, int m);  // |U(n,m)| / binom(binom(n,2), m)
    int ceiling() const { return ceiling_; }

private:
    int ceiling_;
    Series T_, E_;               // E = exp(W)
    std::map<int, Series> pow_;  // cached T^t * E

    const Series& tpow_e(int t);
};

// f(n,m) = c (2/e)^{2m-n} m^{m+1/2} n^{n-2m+1/2} / (n-m)^{n-m+1/2}
double f_formula(int n, int m, double c);

// Bivariate cactus counting through the rooted block decomposition
// R = x exp(y R + y^3 R^2 / (2(1 - yR))).
class CactusSeries {
public:
    enum class Variant { all, connected, complex_part };

    explicit CactusSeries(int ceiling = 200);

    Int count(int n, int m, Variant v);
    int ceiling() const { return ceiling_; }

private:
    int ceiling_;
    int built_ = 0;
    using Row = std::vector<Rat>;  // coefficients by edge count
    std::vector<Row> R_, S_, P_, PS_, G_, F_;  // rooted pipeline
    std::vector<Row> A_, X_;                   // exp of connected / complex-restricted
    void extend(int upto);
};

} // namespace opg

#endif
