#ifndef OPG_SERIES_HPP
#define OPG_SERIES_HPP

#include <string>
#include <vector>

#include "opg/arith.hpp"

namespace opg {

// Truncated power series with exact rational coefficients.
class Series {
public:
    Series() = default;
    explicit Series(int order) : c_(order + 1, Rat(0)) {}

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rat& operator[](int k) const { return c_[k]; }
    Rat& at(int k) { return c_[k]; }
    const std::vector<Rat>& coefficients() const { return c_; }

    Series truncated(int order) const;

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    Series scaled(const Rat& s) const;
    Series shifted(int k) const;  // multiply by z^k

    // 1/(1 - f) for f with zero constant term
    static Series one_over_one_minus(const Series& f);
    // exp(g) for g with zero constant term
    static Series exp(const Series& g);

private:
    std::vector<Rat> c_;
};

// B(z): EGF of connected cactus weighted multigraphs with one degree-2
// vertex and all other degrees 3, solved from
// B = z/(2(1-zB)) + z B^2 / 2 by fixing one coefficient per pass.
Series solve_B(int order);

// Same fixed point in the folded variable u (u = z^2 up to the shift):
// B~ = u/(2(1-B~)) + B~^2/2.
Series solve_B_folded(int order);

// B~(u) from B(z); asserts all even coefficients of B vanish.
Series fold_even(const Series& B);

// residual of the defining equation; the zero series for a correct B
Series b_equation_residual(const Series& B);

// K_c°(z) = zB/(2(1-zB)) + zB^3/6, cross-checked coefficient by
// coefficient against the folded identity u K~_c°(u) = B~^2 - B~^3/3.
Series derive_Kc_marked(const Series& B);

// folded route alone: K~_c°(u) from B~(u)
Series derive_Kc_marked_folded(const Series& Bu);

// K_c = integral of K_c°/z  (coefficient k divided by k)
Series integrate_unmark(const Series& Kco);

// K = exp(K_c); works in either variable
Series exp_connected_to_all(const Series& Kc);

// [u^n]K~_c = [u^n]K~_c° / (2n)
Series integrate_unmark_folded(const Series& Kco_u);

struct SingularityReport {
    // t = t_a + t_b sqrt(3), r = r_a + r_b sqrt(3), rho = rho_c sqrt(2),
    // gamma = r^{-1/2}
    Rat t_a, t_b, r_a, r_b, rho_c;
    std::string t_str, r_str, rho_str, gamma_str;  // 20 significant digits
    double t, r, rho, gamma;
    bool consistency_ok;  // t = r/(2(1-t)) + t^2/2, exactly in Q[sqrt(3)]
};
SingularityReport singularity_constants();

struct GrowthFit {
    double rate_estimate;           // limit of a_{n+1}/a_n
    double poly_exponent_estimate;  // p in a_n ~ C rate^n n^p
    double constant_estimate;       // C
    double rate_raw_last;           // uncorrected last ratio
    int window_lo, window_hi;
};
// Successive-ratio fit with two Richardson levels over [lo, hi] (coefficient
// indices); needs at least 50 nonzero coefficients there.
GrowthFit estimate_growth(const Series& S, int lo, int hi);

struct EvalResult {
    double value;
    double tail_bound;
    int terms;
};
// Partial-sum evaluation at a rational point inside the disc of
// convergence, with a geometric tail estimate from the coefficient ratios.
EvalResult evaluate_truncated(const Series& S, const Rat& u0, double requested_precision);

// numerically safe log of a positive rational
double log_rat(const Rat& x);

} // namespace opg

#endif
