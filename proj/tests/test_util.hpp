#ifndef OPG_TEST_UTIL_HPP
#define OPG_TEST_UTIL_HPP

// Independent test-side oracles. These deliberately avoid the production
// code paths they certify: outerplanarity via brute-force circular
// embeddings, cactus via explicit cycle enumeration.

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "opg/graph.hpp"

namespace opg::testutil {

// all circular orderings of k elements modulo rotation+reflection
inline const std::vector<std::vector<int>>& circular_orders(int k) {
    static std::vector<std::vector<std::vector<int>>> cache(9);
    auto& slot = cache[k];
    if (!slot.empty() || k == 0) return slot;
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (perm[0] != 0) break;             // fix rotation
        if (k >= 3 && perm[1] > perm[k - 1]) continue;  // fix reflection
        slot.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return slot;
}

// component has a circular embedding with pairwise non-crossing edges
inline bool component_embeds(const LabeledGraph& g, const std::vector<int>& comp) {
    int k = static_cast<int>(comp.size());
    if (k <= 3) return true;
    std::vector<Edge> inner;
    for (const Edge& e : g.edges())
        if (std::binary_search(comp.begin(), comp.end(), e.u)) inner.push_back(e);
    std::vector<int> idx(g.n() + 1, -1);
    for (int i = 0; i < k; ++i) idx[comp[i]] = i;

    for (const auto& ord : circular_orders(k)) {
        std::vector<int> pos(k);
        for (int i = 0; i < k; ++i) pos[ord[i]] = i;
        bool ok = true;
        for (size_t i = 0; i < inner.size() && ok; ++i) {
            int a = pos[idx[inner[i].u]], b = pos[idx[inner[i].v]];
            if (a > b) std::swap(a, b);
            for (size_t j = i + 1; j < inner.size() && ok; ++j) {
                int c = pos[idx[inner[j].u]], d = pos[idx[inner[j].v]];
                if (c > d) std::swap(c, d);
                if (c == a || c == b || d == a || d == b) continue;
                bool cin = a < c && c < b, din = a < d && d < b;
                if (cin != din) ok = false;
            }
        }
        if (ok) return true;
    }
    return false;
}

inline bool oracle_outerplanar(const LabeledGraph& g) {
    for (const auto& comp : components(g))
        if (!component_embeds(g, comp)) return false;
    return true;
}

// every simple cycle, as a sorted edge list
inline std::vector<std::vector<Edge>> all_cycles(const LabeledGraph& g) {
    std::vector<std::vector<Edge>> cycles;
    int n = g.n();
    std::vector<int> path;
    std::vector<char> onpath(n + 1, 0);

    // cycles rooted at their smallest vertex, direction fixed by second < last
    std::function<void(int, int)> extend = [&](int root, int v) {
        for (int w : g.neighbors(v)) {
            if (w == root && path.size() >= 3) {
                if (path[1] < path.back()) {
                    std::vector<Edge> cyc;
                    for (size_t i = 0; i + 1 < path.size(); ++i) cyc.push_back(make_edge(path[i], path[i + 1]));
                    cyc.push_back(make_edge(path.back(), root));
                    std::sort(cyc.begin(), cyc.end());
                    cycles.push_back(std::move(cyc));
                }
                continue;
            }
            if (w <= root || onpath[w]) continue;
            onpath[w] = 1;
            path.push_back(w);
            extend(root, w);
            path.pop_back();
            onpath[w] = 0;
        }
    };
    for (int r = 1; r <= n; ++r) {
        path = {r};
        onpath.assign(n + 1, 0);
        onpath[r] = 1;
        extend(r, r);
    }
    return cycles;
}

inline bool oracle_cactus(const LabeledGraph& g) {
    auto cycles = all_cycles(g);
    for (const Edge& e : g.edges()) {
        int hits = 0;
        for (const auto& cyc : cycles)
            if (std::binary_search(cyc.begin(), cyc.end(), e)) ++hits;
        if (hits > 1) return false;
    }
    return true;
}

} // namespace opg::testutil

#endif
