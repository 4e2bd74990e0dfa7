#ifndef OPG_STATS_HPP
#define OPG_STATS_HPP

#include <cstdint>
#include <vector>

namespace opg {

// upper-tail p-value of the chi-square distribution
double chi_square_p_value(double stat, int dof);

// goodness-of-fit statistic against the uniform law over k cells
double chi_square_uniform_stat(const std::vector<long>& counts, long total);

struct BinomCI {
    double p_hat, lo, hi;
};
// Wilson score interval, default 95%
BinomCI wilson_interval(long successes, long trials, double z = 1.959963984540054);

double median(std::vector<double> v);
// interquartile range endpoints
std::pair<double, double> iqr(std::vector<double> v);

} // namespace opg

#endif
