#ifndef OPG_DECOMPOSE_HPP
#define OPG_DECOMPOSE_HPP

#include <optional>
#include <vector>

#include "opg/graph.hpp"

namespace opg {

// Complex part / core / kernel of a graph, with the associated counts:
// n_Q vertices of the complex part, n_C core vertices, excess ell,
// n_U = n - n_Q and m_U = m - n_Q - ell.
struct Decomposition {
    std::vector<int> complex_vertices;  // sorted
    LabeledGraph core;                  // same label universe, core edges only
    std::vector<int> core_vertices;     // sorted
    WeightedMultigraph kernel;          // labels 1..k
    std::vector<int> kernel_labels;     // kernel label i -> original label kernel_labels[i-1]
    // per kernel edge (aligned with kernel.edges()): the contracted core
    // path in original labels, from one kernel endpoint to the other
    std::vector<std::vector<int>> kernel_paths;
    long n_Q = 0, n_C = 0, ell = 0, n_U = 0, m_U = 0;
};

std::vector<int> complex_part(const LabeledGraph& g);
LabeledGraph core_of(const LabeledGraph& g);
long excess(const LabeledGraph& g);

struct KernelResult {
    WeightedMultigraph kernel;
    std::vector<int> kernel_labels;
    std::vector<std::vector<int>> paths;
};
// Contract every maximal degree-2 path of a core into a kernel edge.
// Input must be a valid core (min degree >= 2, every component complex).
KernelResult kernel_of(const LabeledGraph& core);

// Rebuild the core from kernel + recorded paths (round-trip check).
LabeledGraph subdivide_kernel(int n, const KernelResult& k);

Decomposition decompose(const LabeledGraph& g);

// Construction (C1): subdivide a non-chord edge, new vertex labelled n+1.
LabeledGraph subdivide_C1(const LabeledGraph& h, Edge e);

// Construction (C2): relabel a degree-3..6 vertex v as n+1 and subdivide an
// incident non-chord edge with a vertex that takes the old label of v.
LabeledGraph relabel_subdivide_C2(const LabeledGraph& h, int v, Edge e);

struct GoodChordWitness {
    Edge chord;             // (x, y)
    std::vector<int> path;  // z_0 = x, ..., z_{r+1} = y along the Hamiltonian cycle
    long r = 0;             // interior length
    long threshold = 0;     // ceil(n^{1/3} / h)
};

// Deterministic scan (blocks by smallest label, chords lexicographic, the
// two arcs of each chord in cycle order) for a good chord.
std::optional<GoodChordWitness> find_good_chord(const LabeledGraph& g, const Rat& h_value);

// Add z_i z_r, delete z_r y. Requires a valid witness and 1 <= i <= threshold;
// the degenerate i = r-1 case (edge already present) is rejected.
LabeledGraph rewire_chord(const LabeledGraph& g, const GoodChordWitness& w, long i);

// Detach a small core component Y hanging at a three-block vertex x and
// re-root it at a degree-2 core vertex y: every core edge xz with z in Y
// becomes yz. Verifies that (n, m, n_C, ell) and outerplanarity survive.
LabeledGraph split_three_block_vertex(const LabeledGraph& g, int x, const std::vector<int>& Y, int y);

} // namespace opg

#endif
