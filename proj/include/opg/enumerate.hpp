#ifndef OPG_ENUMERATE_HPP
#define OPG_ENUMERATE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "opg/graph.hpp"

namespace opg {

// A: outerplanar; T: cactus; U: no complex component; Q: complex outerplanar
// (every component complex); QC: complex cactus; C: outerplanar cores
// (min degree >= 2, complex); CC: cactus cores; K / Kc: cubic cactus
// weighted multigraphs, all / connected.
enum class GraphClass { A, T, U, Q, QC, C, CC, K, Kc };

std::string to_string(GraphClass c);
GraphClass parse_class(const std::string& s);

// Exact counts of all graph classes at brute-force scale, filled on demand
// by exhaustive iteration over edge subsets (simple classes) or degree-
// constrained multiplicity matrices (kernel classes). Thread-safe for
// concurrent reads once warmed; warming is single-threaded with internal
// data-parallel sweeps.
class CountingContext {
public:
    explicit CountingContext(int simple_ceiling = 8, int kernel_ceiling = 6, int jobs = 1);

    const Rat& count(GraphClass c, int n, int m);
    Int count_int(GraphClass c, int n, int m);

    // enumerated member graphs as edge masks (simple classes only)
    const std::vector<uint32_t>& members(GraphClass c, int n, int m);
    LabeledGraph graph_from_mask(int n, uint32_t mask) const;
    uint32_t mask_from_graph(const LabeledGraph& g) const;

    int simple_ceiling() const { return simple_ceiling_; }
    int kernel_ceiling() const { return kernel_ceiling_; }
    int jobs() const { return jobs_; }

private:
    int simple_ceiling_, kernel_ceiling_, jobs_;
    std::map<std::tuple<int, int, int>, Rat> cache_;
    std::map<std::tuple<int, int, int>, std::vector<uint32_t>> members_;

    bool trivially_zero(GraphClass c, int n, int m) const;
    void ensure_simple(GraphClass c, int n, int m, bool want_members);
    void ensure_kernel(GraphClass c, int n, int m);
    const Rat& cached(GraphClass c, int n, int m) const;
    void store(GraphClass c, int n, int m, Rat v);
};

// Enumerate weighted multigraphs with the given degree sequence (loops count
// twice); used for the kernel classes and for test oracles.
void for_each_multigraph(const std::vector<int>& degrees,
                         const std::function<void(const WeightedMultigraph&)>& fn);

bool multigraph_connected(const WeightedMultigraph& k);

// tau(n_Q, ell) = binom(n, n_Q) |Q(n_Q, n_Q+ell)| |U(n_U, m_U)| with
// n_U = n - n_Q, m_U = m - n_Q - ell; qcls selects Q (outerplanar) or QC.
Int tau(int n, int m, int nQ, int ell, CountingContext& ctx, GraphClass qcls = GraphClass::Q);

// rho(n_C) = binom(n_Q, n_C) |C(n_C, n_C+ell)| n_C n_Q^{n_Q-n_C-1};
// the tree factor at n_C = n_Q is exactly 1.
Int rho(int nQ, int ell, int nC, CountingContext& ctx, GraphClass ccls = GraphClass::C);

struct Eq1Report {
    int n, m;
    Int lhs, rhs;
    bool equal;
};
Eq1Report verify_eq1(int n, int m, CountingContext& ctx);

struct Eq2Report {
    int nQ, ell;
    Int lhs, rhs;
    bool equal;
};
Eq2Report verify_eq2(int nQ, int ell, CountingContext& ctx);

struct Lemma31Report {
    int nC, ell;
    Rat ratio, lower;
    bool upper_applicable;
    Rat upper;
    bool pass;
};
Lemma31Report verify_lemma31(int nC, int ell, CountingContext& ctx);

// binom(n_C, 2l) |K(2l,3l)| (n_C-2l)! binom(n_C-5l-1, 3l-1); the weighted
// kernel count times the factorials must be integral.
Int appendixB_lower_bound(int nC, int ell, CountingContext& ctx);

} // namespace opg

#endif
