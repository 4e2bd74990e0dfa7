#ifndef OPG_MINOR_HPP
#define OPG_MINOR_HPP

#include <cstdint>
#include <vector>

namespace opg {

// Forbidden-minor engine behind the outerplanarity test. A graph is
// outerplanar iff it has neither K4 nor K2,3 as a minor; both targets have
// maximum degree 3, so minors coincide with topological minors and runs of
// degree-2 vertices can be shortened to three interior vertices without
// changing the answer. The search itself is a contraction recursion with a
// subgraph base case: G has an H-minor iff H is a subgraph of G or some
// single contraction G/e has one.

// Compact graph on at most 16 vertices, adjacency as bitmasks. This is the
// hot representation for exhaustive edge-subset enumeration.
struct MaskGraph16 {
    uint16_t adj[16] = {0};
    uint16_t alive = 0;

    void add_edge(int a, int b) {
        adj[a] |= uint16_t(1u << b);
        adj[b] |= uint16_t(1u << a);
        alive |= uint16_t((1u << a) | (1u << b));
    }
};

// Same engine for reduced blocks of up to 64 vertices.
struct MaskGraph64 {
    std::vector<uint64_t> adj;  // size 64
    uint64_t alive = 0;

    MaskGraph64() : adj(64, 0) {}
    void add_edge(int a, int b) {
        adj[a] |= (uint64_t(1) << b);
        adj[b] |= (uint64_t(1) << a);
        alive |= (uint64_t(1) << a) | (uint64_t(1) << b);
    }
};

bool has_k4_or_k23_minor(MaskGraph16 g);
bool has_k4_or_k23_minor(MaskGraph64 g);

// Outerplanarity of one 2-connected block given as an edge list over
// arbitrary labels. Handles any block size: degree-2 runs are shortened
// first; blocks that stay larger than the mask engine are decided by a
// disjoint-path probe plus the circular-embedding characterization.
bool block_is_outerplanar(const std::vector<std::pair<int, int>>& block_edges);

} // namespace opg

#endif
