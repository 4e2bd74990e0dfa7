#ifndef OPG_GRAPH_HPP
#define OPG_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "opg/arith.hpp"

namespace opg {

// Unordered vertex pair, stored with u <= v. Labels are 1-based.
struct Edge {
    int u = 0, v = 0;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int a, int b) { return a <= b ? Edge{a, b} : Edge{b, a}; }

// Simple graph on labels 1..n. Immutable after construction.
class LabeledGraph {
public:
    LabeledGraph() = default;
    LabeledGraph(int n, std::vector<Edge> edges);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int a, int b) const;

    friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;            // sorted, unique
    std::vector<std::vector<int>> adj_;  // 1-based, sorted
};

// Multigraph on labels 1..n with loops and parallel edges, counted with
// weight 2^-(e1+e2): e1 loops, e2 vertex pairs of multiplicity exactly two.
class WeightedMultigraph {
public:
    WeightedMultigraph() = default;
    WeightedMultigraph(int n, std::vector<Edge> edges);

    int n() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    int degree(int v) const;  // a loop counts twice
    int loop_count() const;                 // e1
    int double_edge_count() const;          // e2 (non-loop pairs only)
    int max_multiplicity() const;
    Rat weight() const;
    // Edge multiplicity >= 3 falls outside the weight formula's cases;
    // such kernels are reported, never silently reweighted.
    bool has_high_multiplicity() const { return max_multiplicity() >= 3; }

    friend bool operator==(const WeightedMultigraph& a, const WeightedMultigraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;  // sorted, u <= v, duplicates meaningful
};

struct BlockDecomposition {
    std::vector<std::vector<Edge>> blocks;  // partition the edge set; bridges are single edges
    std::vector<int> cut_vertices;          // sorted
    std::vector<int> vertex_block_count;    // 1-based; isolated vertices count 0
};

// Connected components as sorted vertex sets, ordered by decreasing size,
// ties broken by smallest contained label.
std::vector<std::vector<int>> components(const LabeledGraph& g);

// A connected component is complex iff it has at least two cycles,
// equivalently edges >= vertices + 1. Throws if comp is not a component.
bool is_complex_component(const LabeledGraph& g, const std::vector<int>& comp);

BlockDecomposition blocks(const LabeledGraph& g);

std::vector<int> vertices_of(const std::vector<Edge>& edge_set);

// No K4 minor and no K2,3 minor.
bool is_outerplanar(const LabeledGraph& g);

// Every block is a single edge or a cycle.
bool is_cactus(const LabeledGraph& g);

// Every block is a single non-loop edge, a loop, or a cycle (a double
// edge is a 2-cycle block).
bool is_cactus_multigraph(const WeightedMultigraph& k);

// The unique Hamiltonian cycle of a 2-connected block with >= 3 vertices,
// as a label sequence starting at the smallest block label. Throws
// DomainError on bad blocks and StructuralError when the cycle is missing
// or not unique (the block is then not outerplanar).
std::vector<int> hamiltonian_cycle_of_block(const LabeledGraph& g, const std::vector<Edge>& block);

// Block edges not on the block's Hamiltonian cycle.
std::vector<Edge> chords_of_block(const LabeledGraph& g, const std::vector<Edge>& block);

} // namespace opg

#endif
