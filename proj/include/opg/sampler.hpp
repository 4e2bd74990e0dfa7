#ifndef OPG_SAMPLER_HPP
#define OPG_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "opg/enumerate.hpp"
#include "opg/graph.hpp"

namespace opg {

// Deterministic, platform-independent stream: xoshiro256** seeded through
// splitmix64 from (seed, stream_id). Identical draws for identical ids,
// regardless of thread scheduling.
class RngStream {
public:
    RngStream(uint64_t seed, uint64_t stream_id);

    uint64_t next();
    uint64_t below(uint64_t n);       // uniform in [0, n)
    Int below_big(const Int& n);      // uniform in [0, n), exact
    double unit();                    // [0, 1)

    uint64_t seed() const { return seed_; }
    uint64_t stream() const { return stream_; }

private:
    uint64_t seed_, stream_;
    uint64_t s_[4];
};

// uniform m-subset of the binom(n,2) candidate edges, O(m) memory
LabeledGraph sample_gnm(int n, long m, RngStream& rng);

enum class Target { outerplanar, cactus };

struct SampleRecord {
    LabeledGraph graph;
    long tries = 0;
    bool accepted = false;
};

// Draw G(n,m) until the target predicate holds; the conditional law is
// exactly uniform on the target class.
SampleRecord sample_rejection(int n, long m, Target target, RngStream& rng, long max_tries = 1000000);

// Uniform forest of rooted trees on 1..n_Q with the given root set, via the
// generalized Prüfer coding behind the k n^{n-k-1} count.
std::vector<Edge> attach_random_forest(const std::vector<int>& roots, int nQ, RngStream& rng);

// encode/decode pair for the coding bijection (exposed for tests)
std::vector<int> forest_encode(const std::vector<Edge>& forest, const std::vector<int>& roots, int nQ);
std::vector<Edge> forest_decode(const std::vector<int>& code, const std::vector<int>& roots, int nQ);

// Exactly uniform member of A(n,m) or T(n,m) at table scale: draws
// (n_Q, ell) with probability proportional to tau, n_C proportional to rho,
// then a uniform core, a uniform attachment forest, and a uniform
// non-complex remainder.
LabeledGraph sample_exact(GraphClass cls, int n, int m, CountingContext& ctx, RngStream& rng);

} // namespace opg

#endif
