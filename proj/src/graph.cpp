#include "opg/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "opg/minor.hpp"

namespace opg {

LabeledGraph::LabeledGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw DomainError("negative vertex count");
    for (auto& e : edges_) e = make_edge(e.u, e.v);
    std::sort(edges_.begin(), edges_.end());
    for (size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.u < 1 || e.v > n_) throw DomainError("edge endpoint out of range");
        if (e.u == e.v) throw DomainError("loops are not allowed in a simple graph");
        if (i > 0 && edges_[i - 1] == e) throw DomainError("duplicate edge");
    }
    adj_.assign(n_ + 1, {});
    for (const Edge& e : edges_) {
        adj_[e.u].push_back(e.v);
        adj_[e.v].push_back(e.u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool LabeledGraph::has_edge(int a, int b) const {
    Edge e = make_edge(a, b);
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

WeightedMultigraph::WeightedMultigraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw DomainError("negative vertex count");
    for (auto& e : edges_) e = make_edge(e.u, e.v);
    std::sort(edges_.begin(), edges_.end());
    for (const Edge& e : edges_)
        if (e.u < 1 || e.v > n_) throw DomainError("edge endpoint out of range");
}

int WeightedMultigraph::degree(int v) const {
    int d = 0;
    for (const Edge& e : edges_) {
        if (e.u == v) ++d;
        if (e.v == v) ++d;  // loops count twice
    }
    return d;
}

int WeightedMultigraph::loop_count() const {
    int c = 0;
    for (const Edge& e : edges_)
        if (e.u == e.v) ++c;
    return c;
}

int WeightedMultigraph::double_edge_count() const {
    int c = 0;
    size_t i = 0;
    while (i < edges_.size()) {
        size_t j = i;
        while (j < edges_.size() && edges_[j] == edges_[i]) ++j;
        if (edges_[i].u != edges_[i].v && j - i == 2) ++c;
        i = j;
    }
    return c;
}

int WeightedMultigraph::max_multiplicity() const {
    int best = 0;
    size_t i = 0;
    while (i < edges_.size()) {
        size_t j = i;
        while (j < edges_.size() && edges_[j] == edges_[i]) ++j;
        best = std::max(best, static_cast<int>(j - i));
        i = j;
    }
    return best;
}

Rat WeightedMultigraph::weight() const {
    Rat w(1);
    int e = loop_count() + double_edge_count();
    for (int i = 0; i < e; ++i) w /= 2;
    return w;
}

std::vector<std::vector<int>> components(const LabeledGraph& g) {
    int n = g.n();
    std::vector<char> seen(n + 1, 0);
    std::vector<std::vector<int>> comps;
    for (int s = 1; s <= n; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp{s}, stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
    return comps;
}

bool is_complex_component(const LabeledGraph& g, const std::vector<int>& comp) {
    if (comp.empty()) throw DomainError("empty component");
    auto comps = components(g);
    auto sorted = comp;
    std::sort(sorted.begin(), sorted.end());
    if (std::find(comps.begin(), comps.end(), sorted) == comps.end())
        throw DomainError("vertex set is not a connected component");
    long edges = 0;
    for (const Edge& e : g.edges())
        if (std::binary_search(sorted.begin(), sorted.end(), e.u)) ++edges;
    return edges >= static_cast<long>(sorted.size()) + 1;
}

BlockDecomposition blocks(const LabeledGraph& g) {
    int n = g.n();
    BlockDecomposition out;
    out.vertex_block_count.assign(n + 1, 0);
    std::vector<int> disc(n + 1, 0), low(n + 1, 0);
    int timer = 0;

    struct Frame {
        int v, parent;
        size_t it = 0;
        bool parent_edge_skipped = false;
    };
    std::vector<Edge> estack;
    std::vector<Frame> fstack;

    for (int s = 1; s <= n; ++s) {
        if (disc[s]) continue;
        disc[s] = low[s] = ++timer;
        fstack.push_back({s, 0});
        while (!fstack.empty()) {
            Frame& f = fstack.back();
            const auto& nbrs = g.neighbors(f.v);
            if (f.it < nbrs.size()) {
                int w = nbrs[f.it++];
                if (w == f.parent && !f.parent_edge_skipped) {
                    f.parent_edge_skipped = true;
                    continue;
                }
                if (!disc[w]) {
                    estack.push_back(make_edge(f.v, w));
                    disc[w] = low[w] = ++timer;
                    fstack.push_back({w, f.v});
                } else if (disc[w] < disc[f.v]) {
                    estack.push_back(make_edge(f.v, w));
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                Frame done = f;
                fstack.pop_back();
                if (!fstack.empty()) {
                    Frame& p = fstack.back();
                    low[p.v] = std::min(low[p.v], low[done.v]);
                    if (low[done.v] >= disc[p.v]) {
                        // pop one block
                        std::vector<Edge> blk;
                        Edge top = make_edge(p.v, done.v);
                        while (true) {
                            Edge e = estack.back();
                            estack.pop_back();
                            blk.push_back(e);
                            if (e == top) break;
                        }
                        out.blocks.push_back(std::move(blk));
                    }
                }
            }
        }
    }
    // a vertex is a cut vertex iff it lies in at least two blocks
    for (const auto& blk : out.blocks) {
        for (int v : vertices_of(blk)) out.vertex_block_count[v] += 1;
    }
    out.cut_vertices.clear();
    for (int v = 1; v <= n; ++v)
        if (out.vertex_block_count[v] >= 2) out.cut_vertices.push_back(v);
    return out;
}

std::vector<int> vertices_of(const std::vector<Edge>& edge_set) {
    std::vector<int> v;
    v.reserve(edge_set.size() * 2);
    for (const Edge& e : edge_set) {
        v.push_back(e.u);
        v.push_back(e.v);
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool is_outerplanar(const LabeledGraph& g) {
    if (g.m() == 0) return true;
    if (g.n() >= 2 && g.m() > 2 * g.n() - 3) return false;
    auto bd = blocks(g);
    for (const auto& blk : bd.blocks) {
        std::vector<std::pair<int, int>> edges;
        edges.reserve(blk.size());
        for (const Edge& e : blk) edges.emplace_back(e.u, e.v);
        if (!block_is_outerplanar(edges)) return false;
    }
    return true;
}

bool is_cactus(const LabeledGraph& g) {
    auto bd = blocks(g);
    for (const auto& blk : bd.blocks) {
        if (blk.size() == 1) continue;
        if (vertices_of(blk).size() != blk.size()) return false;  // cycle iff #vertices == #edges
    }
    return true;
}

bool is_cactus_multigraph(const WeightedMultigraph& k) {
    // loops are cycle blocks by themselves; remaining edges get a
    // multigraph block decomposition via edge ids
    int n = k.n();
    std::vector<std::pair<int, int>> eds;
    for (const Edge& e : k.edges())
        if (e.u != e.v) eds.emplace_back(e.u, e.v);
    int m = static_cast<int>(eds.size());
    std::vector<std::vector<std::pair<int, int>>> adj(n + 1);  // (to, edge id)
    for (int i = 0; i < m; ++i) {
        adj[eds[i].first].emplace_back(eds[i].second, i);
        adj[eds[i].second].emplace_back(eds[i].first, i);
    }
    std::vector<int> disc(n + 1, 0), low(n + 1, 0);
    int timer = 0;
    std::vector<int> estack;

    struct Frame {
        int v, pedge;
        size_t it = 0;
    };
    std::vector<Frame> fstack;
    std::vector<std::vector<int>> blks;

    for (int s = 1; s <= n; ++s) {
        if (disc[s]) continue;
        disc[s] = low[s] = ++timer;
        fstack.push_back({s, -1});
        while (!fstack.empty()) {
            Frame& f = fstack.back();
            if (f.it < adj[f.v].size()) {
                auto [w, id] = adj[f.v][f.it++];
                if (id == f.pedge) continue;
                if (!disc[w]) {
                    estack.push_back(id);
                    disc[w] = low[w] = ++timer;
                    fstack.push_back({w, id});
                } else if (disc[w] < disc[f.v]) {
                    estack.push_back(id);
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                Frame done = f;
                fstack.pop_back();
                if (!fstack.empty()) {
                    Frame& p = fstack.back();
                    low[p.v] = std::min(low[p.v], low[done.v]);
                    if (low[done.v] >= disc[p.v]) {
                        std::vector<int> blk;
                        while (true) {
                            int id = estack.back();
                            estack.pop_back();
                            blk.push_back(id);
                            if (id == done.pedge) break;
                        }
                        blks.push_back(std::move(blk));
                    }
                }
            }
        }
    }
    for (const auto& blk : blks) {
        if (blk.size() == 1) continue;
        std::set<int> vs;
        for (int id : blk) {
            vs.insert(eds[id].first);
            vs.insert(eds[id].second);
        }
        if (vs.size() != blk.size()) return false;  // not a cycle (covers multiplicity >= 3)
    }
    return true;
}

std::vector<int> hamiltonian_cycle_of_block(const LabeledGraph& g, const std::vector<Edge>& block) {
    auto verts = vertices_of(block);
    int nb = static_cast<int>(verts.size());
    if (nb < 3) throw DomainError("block has fewer than 3 vertices");
    for (const Edge& e : block)
        if (!g.has_edge(e.u, e.v)) throw DomainError("block edge not present in graph");

    // 2-connectivity: the block's own decomposition must be a single block
    {
        LabeledGraph sub(g.n(), block);
        auto bd = blocks(sub);
        if (bd.blocks.size() != 1) throw DomainError("edge set is not 2-connected");
    }

    std::map<int, std::vector<int>> adj;
    for (const Edge& e : block) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& [v, a] : adj) std::sort(a.begin(), a.end());

    int start = verts.front();
    std::vector<int> path{start}, found_cycle;
    std::set<int> onpath{start};
    int cycles_found = 0;

    std::function<bool(void)> go = [&]() -> bool {
        if (static_cast<int>(path.size()) == nb) {
            const auto& last_adj = adj[path.back()];
            if (std::binary_search(last_adj.begin(), last_adj.end(), start) && path[1] < path.back()) {
                ++cycles_found;
                if (cycles_found == 1) found_cycle = path;
                if (cycles_found >= 2) return true;  // stop: uniqueness already violated
            }
            return false;
        }
        for (int w : adj[path.back()]) {
            if (onpath.count(w)) continue;
            path.push_back(w);
            onpath.insert(w);
            bool stop = go();
            path.pop_back();
            onpath.erase(w);
            if (stop) return true;
        }
        return false;
    };
    go();

    if (cycles_found == 0) throw StructuralError("block has no Hamiltonian cycle");
    if (cycles_found >= 2) throw StructuralError("Hamiltonian cycle of block is not unique");
    return found_cycle;
}

std::vector<Edge> chords_of_block(const LabeledGraph& g, const std::vector<Edge>& block) {
    if (block.size() <= 1) return {};
    auto verts = vertices_of(block);
    if (block.size() == verts.size()) return {};  // plain cycle
    auto cyc = hamiltonian_cycle_of_block(g, block);
    std::set<Edge> on_cycle;
    int L = static_cast<int>(cyc.size());
    for (int i = 0; i < L; ++i) on_cycle.insert(make_edge(cyc[i], cyc[(i + 1) % L]));
    std::vector<Edge> chords;
    for (const Edge& e : block)
        if (!on_cycle.count(e)) chords.push_back(e);
    return chords;
}

} // namespace opg
