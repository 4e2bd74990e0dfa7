#ifndef OPG_EXPERIMENTS_HPP
#define OPG_EXPERIMENTS_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "opg/decompose.hpp"
#include "opg/enumerate.hpp"
#include "opg/sampler.hpp"

namespace opg {

struct GraphStats {
    long n = 0, m = 0, s = 0;
    long h1 = 0, h2 = 0;
    bool h1_is_tree = false;
    long nQ = 0, nC = 0, ell = 0, nU = 0, mU = 0;
    bool cactus = false, chord = false, good_chord = false;
    long tries = 0;
    uint64_t seed = 0, stream = 0;
    bool accepted = true;  // not part of the CSV schema
};

GraphStats analyze(const LabeledGraph& g, long s, const Rat& h_value, long tries = 0);

std::string csv_header();
std::string csv_row(const GraphStats& st);

struct SweepConfig {
    int n = 1000;
    std::optional<long> s_value;    // fixed s, or
    double s_coef = 1.0;            // s = round(sign * coef * n^exp)
    double s_exp = 2.0 / 3.0;
    bool s_negative = false;
    long samples = 100;
    uint64_t seed = 0;
    char target = 'A';              // 'A', 'T' (rejection) or 'G' (raw)
    long max_tries = 1000000;
    int jobs = 1;
    std::optional<Rat> h_value;     // default: rational approximation of ln n
};

struct SweepSummary {
    long n = 0, m = 0, s = 0;
    double s3n2 = 0;
    long accepted = 0, samples = 0;
    double median_h1_over_2s = 0, iqr_lo_h1_over_2s = 0, iqr_hi_h1_over_2s = 0;
    double median_nc_scaled = 0;   // n_C / (s n^{-1/3})
    double median_ell_scaled = 0;  // ell / (s n^{-2/3})
    double median_ell = 0;
    double fraction_cactus = 0, fraction_h1_tree = 0;
    double mean_tries = 0;
};

long resolve_s(const SweepConfig& cfg);
std::vector<GraphStats> sweep(const SweepConfig& cfg, SweepSummary* summary = nullptr);

struct ContributionProfile {
    Int total;
    std::map<std::pair<int, int>, Int> joint;              // (n_Q, ell) -> tau
    std::map<std::tuple<int, int, int>, Int> conditional;  // (n_Q, ell, n_C)
    struct Window {
        int nq_lo = 0, nq_hi = 0, ell_lo = 0, ell_hi = 0;
        Rat mass;
    };
    Window window99, window999;  // nested by construction
};
ContributionProfile profile_contributions(int n, int m, CountingContext& ctx);

struct ProbeRow {
    double alpha = 0;  // m/n
    long m = 0;
    long samples = 0, accepted = 0, cactus = 0;
    double p_hat = 0, ci_lo = 0, ci_hi = 0;
    bool exact = false;
    Rat exact_p;
};
std::vector<ProbeRow> conjecture_probe(const std::vector<long>& ms, int n, long samples, uint64_t seed,
                                       long max_tries, CountingContext& ctx);

struct CheckReport {
    std::string name;
    bool pass = false;
    std::string details;
};

// suites: eq1, eq2, lemma31, appendixB, series, counts, sampler, all
std::vector<CheckReport> verify_suite(const std::string& suite, int max_n, int jobs);

} // namespace opg

#endif
