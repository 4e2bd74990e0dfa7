#include "opg/minor.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <queue>
#include <unordered_set>

namespace opg {
namespace {

template <class MG> struct mask_traits;

template <> struct mask_traits<MaskGraph16> {
    using word = uint16_t;
    static constexpr int cap = 16;
};
template <> struct mask_traits<MaskGraph64> {
    using word = uint64_t;
    static constexpr int cap = 64;
};

template <class W> int pc(W x) { return std::popcount(static_cast<uint64_t>(x)); }
template <class W> int lowbit(W x) { return std::countr_zero(static_cast<uint64_t>(x)); }

template <class MG>
void remove_vertex(MG& g, int v) {
    using W = typename mask_traits<MG>::word;
    W bv = W(W(1) << v);
    W nb = g.adj[v];
    while (nb) {
        int y = lowbit(nb);
        nb &= nb - 1;
        g.adj[y] &= W(~bv);
    }
    g.adj[v] = 0;
    g.alive &= W(~bv);
}

// Contract edge (a,b), keeping min(a,b). Parallel edges merge, loops drop.
template <class MG>
void contract_edge(MG& g, int a, int b) {
    using W = typename mask_traits<MG>::word;
    int w = std::min(a, b), x = std::max(a, b);
    W bw = W(W(1) << w), bx = W(W(1) << x);
    W merged = W((g.adj[w] | g.adj[x]) & ~bw & ~bx);
    W nb = g.adj[x];
    while (nb) {
        int y = lowbit(nb);
        nb &= nb - 1;
        g.adj[y] &= W(~bx);
        if (y != w) g.adj[y] |= bw;
    }
    g.adj[w] = merged;
    g.adj[x] = 0;
    g.alive &= W(~bx);
}

// Peel degree <= 1, drop pure-cycle components, shorten degree-2 runs to at
// most three interior vertices. All steps preserve existence of a K4 or
// K2,3 minor in both directions.
template <class MG>
void reduce(MG& g) {
    using W = typename mask_traits<MG>::word;
    bool changed = true;
    while (changed) {
        changed = false;
        // peel
        bool peeled = true;
        while (peeled) {
            peeled = false;
            W a = g.alive;
            while (a) {
                int v = lowbit(a);
                a &= a - 1;
                if (pc(g.adj[v]) <= 1) {
                    remove_vertex(g, v);
                    peeled = true;
                    changed = true;
                }
            }
        }
        // anchors = degree >= 3
        W anchors = 0;
        {
            W a = g.alive;
            while (a) {
                int v = lowbit(a);
                a &= a - 1;
                if (pc(g.adj[v]) >= 3) anchors |= W(W(1) << v);
            }
        }
        if (!anchors) {
            // only cycles remain; neither minor can live there
            if (g.alive) {
                g.alive = 0;
                for (int v = 0; v < mask_traits<MG>::cap; ++v) g.adj[v] = 0;
                changed = false;
            }
            return;
        }
        // walk degree-2 runs out of each anchor, splice long ones
        W visited = 0;
        W am = anchors;
        while (am) {
            int a = lowbit(am);
            am &= am - 1;
            W nb = g.adj[a];
            while (nb) {
                int x = lowbit(nb);
                nb &= nb - 1;
                if (pc(g.adj[x]) != 2) continue;
                if (visited & W(W(1) << x)) continue;
                // collect the chain a - x - ... - b
                std::array<int, mask_traits<MG>::cap> chain{};
                int t = 0;
                int prev = a, cur = x;
                while (pc(g.adj[cur]) == 2) {
                    chain[t++] = cur;
                    visited |= W(W(1) << cur);
                    W two = g.adj[cur];
                    two &= W(~(W(1) << prev));
                    int nxt = lowbit(two);
                    prev = cur;
                    cur = nxt;
                }
                int b = cur;
                if (t > 3) {
                    for (int i = 3; i < t; ++i) remove_vertex(g, chain[i]);
                    g.adj[chain[2]] |= W(W(1) << b);
                    g.adj[b] |= W(W(1) << chain[2]);
                    changed = true;
                }
            }
        }
    }
}

// K4 or K2,3 as a subgraph.
template <class MG>
bool base_subgraph(const MG& g) {
    using W = typename mask_traits<MG>::word;
    W a = g.alive;
    while (a) {
        int u = lowbit(a);
        a &= a - 1;
        W rest = a;
        while (rest) {
            int v = lowbit(rest);
            rest &= rest - 1;
            W common = W(g.adj[u] & g.adj[v]);
            if (pc(common) >= 3) return true;  // K2,3 hubs u, v
            if ((g.adj[u] >> v) & 1) {
                // u~v: an adjacent pair inside the common neighborhood gives K4
                W c = common;
                while (c) {
                    int x = lowbit(c);
                    c &= c - 1;
                    if (g.adj[x] & c) return true;
                }
            }
        }
    }
    return false;
}

template <class MG>
struct CanonKey {
    typename mask_traits<MG>::word rows[mask_traits<MG>::cap];
    bool operator==(const CanonKey& o) const {
        return std::memcmp(rows, o.rows, sizeof(rows)) == 0;
    }
};

template <class MG>
struct CanonHash {
    size_t operator()(const CanonKey<MG>& k) const {
        uint64_t h = 0x9e3779b97f4a7c15ull;
        for (auto r : k.rows) {
            h ^= static_cast<uint64_t>(r) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<size_t>(h);
    }
};

template <class MG>
using Memo = std::unordered_set<CanonKey<MG>, CanonHash<MG>>;

template <class MG>
bool minor_rec(MG g, Memo<MG>& memo) {
    using W = typename mask_traits<MG>::word;
    reduce(g);

    int m2 = 0, deg3 = 0;
    {
        W a = g.alive;
        while (a) {
            int v = lowbit(a);
            a &= a - 1;
            int d = pc(g.adj[v]);
            m2 += d;
            if (d >= 3) ++deg3;
        }
    }
    int m = m2 / 2;
    if (m < 6 || deg3 < 2) return false;

    // per-component excess
    int max_excess = -1;
    {
        W seen = 0;
        W a = g.alive;
        while (a) {
            int s = lowbit(a);
            a &= a - 1;
            if (seen & W(W(1) << s)) continue;
            W comp = W(W(1) << s), frontier = comp;
            while (frontier) {
                W nxt = 0;
                W f = frontier;
                while (f) {
                    int v = lowbit(f);
                    f &= f - 1;
                    nxt |= W(g.adj[v] & ~comp);
                }
                comp |= nxt;
                frontier = nxt;
            }
            seen |= comp;
            int nv = pc(comp), ne = 0;
            W c = comp;
            while (c) {
                int v = lowbit(c);
                c &= c - 1;
                ne += pc(g.adj[v]);
            }
            ne /= 2;
            max_excess = std::max(max_excess, ne - nv);
        }
    }
    bool k4_possible = max_excess >= 2 && deg3 >= 4;
    bool k23_possible = max_excess >= 1;
    if (!k4_possible && !k23_possible) return false;

    if (base_subgraph(g)) return true;

    CanonKey<MG> key;
    for (int v = 0; v < mask_traits<MG>::cap; ++v) key.rows[v] = g.adj[v];
    if (memo.contains(key)) return false;

    W a = g.alive;
    while (a) {
        int u = lowbit(a);
        a &= a - 1;
        W nb = W(g.adj[u] & a);  // each edge once, from its smaller endpoint
        while (nb) {
            int v = lowbit(nb);
            nb &= nb - 1;
            MG child = g;
            contract_edge(child, u, v);
            if (minor_rec(child, memo)) return true;
        }
    }
    memo.insert(key);
    return false;
}

// ---- fallback machinery for blocks exceeding the mask engine ----

struct VecGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;
};

// Shorten degree-2 runs on an arbitrary-size 2-connected block.
// Returns the reduced edge list over fresh labels 0..n'-1.
std::vector<std::pair<int, int>> shorten_runs(const std::vector<std::pair<int, int>>& edges, int n) {
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> drop(n, 0);
    std::vector<std::pair<int, int>> extra;
    std::vector<char> visited(n, 0);
    for (int a = 0; a < n; ++a) {
        if (adj[a].size() < 3) continue;
        for (int x0 : adj[a]) {
            if (adj[x0].size() != 2 || visited[x0]) continue;
            std::vector<int> chain;
            int prev = a, cur = x0;
            while (adj[cur].size() == 2) {
                chain.push_back(cur);
                visited[cur] = 1;
                int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                prev = cur;
                cur = nxt;
            }
            int b = cur;
            if (chain.size() > 3) {
                for (size_t i = 3; i < chain.size(); ++i) drop[chain[i]] = 1;
                extra.emplace_back(chain[2], b);
            }
        }
    }
    std::vector<int> relabel(n, -1);
    int nn = 0;
    for (int v = 0; v < n; ++v)
        if (!drop[v]) relabel[v] = nn++;
    std::vector<std::pair<int, int>> out;
    for (auto [a, b] : edges)
        if (!drop[a] && !drop[b]) out.emplace_back(relabel[a], relabel[b]);
    for (auto [a, b] : extra) out.emplace_back(relabel[a], relabel[b]);
    return out;
}

// Three internally-disjoint paths of length >= 2 between some pair of
// degree->=3 vertices certify a K2,3 subdivision. Unit-capacity flow with
// vertex splitting; sound, not complete, used as a fast pre-pass.
bool k23_probe(const std::vector<std::pair<int, int>>& edges, int n) {
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> hubs;
    for (int v = 0; v < n; ++v)
        if (adj[v].size() >= 3) hubs.push_back(v);

    // nodes: v_in = 2v, v_out = 2v+1
    struct Arc {
        int to, cap, rev;
    };
    auto try_pair = [&](int s, int t) {
        std::vector<std::vector<Arc>> net(2 * n);
        auto add = [&](int a, int b, int c) {
            net[a].push_back({b, c, static_cast<int>(net[b].size())});
            net[b].push_back({a, 0, static_cast<int>(net[a].size()) - 1});
        };
        for (int v = 0; v < n; ++v) add(2 * v, 2 * v + 1, (v == s || v == t) ? 3 : 1);
        for (auto [a, b] : edges) {
            if ((a == s && b == t) || (a == t && b == s)) continue;  // direct edge is a length-1 path
            add(2 * a + 1, 2 * b, 1);
            add(2 * b + 1, 2 * a, 1);
        }
        int flow = 0;
        while (flow < 3) {
            std::vector<int> pv(2 * n, -1), pe(2 * n, -1);
            std::queue<int> q;
            q.push(2 * s + 1);
            pv[2 * s + 1] = 2 * s + 1;
            while (!q.empty() && pv[2 * t] < 0) {
                int u = q.front();
                q.pop();
                for (size_t i = 0; i < net[u].size(); ++i) {
                    const Arc& e = net[u][i];
                    if (e.cap > 0 && pv[e.to] < 0) {
                        pv[e.to] = u;
                        pe[e.to] = static_cast<int>(i);
                        q.push(e.to);
                    }
                }
            }
            if (pv[2 * t] < 0) break;
            int u = 2 * t;
            while (u != 2 * s + 1) {
                Arc& e = net[pv[u]][pe[u]];
                e.cap -= 1;
                net[u][e.rev].cap += 1;
                u = pv[u];
            }
            ++flow;
        }
        return flow >= 3;
    };
    for (size_t i = 0; i < hubs.size(); ++i)
        for (size_t j = i + 1; j < hubs.size(); ++j)
            if (try_pair(hubs[i], hubs[j])) return true;
    return false;
}

// Exhaustive Hamiltonian-cycle search with a non-crossing chord check:
// a 2-connected block is outerplanar iff some Hamiltonian cycle carries
// all remaining edges as pairwise non-crossing chords. Returns 1/0 when
// decided, -1 when the node budget runs out first.
int embeds_outerplanar_bounded(const std::vector<std::pair<int, int>>& edges, int n, long long budget) {
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    std::vector<std::vector<char>> has(n, std::vector<char>(n, 0));
    for (auto [a, b] : edges) has[a][b] = has[b][a] = 1;

    std::vector<int> path{0}, pos(n, -1);
    pos[0] = 0;
    bool found = false;
    long long nodes = 0;

    auto chords_ok = [&]() {
        std::vector<std::pair<int, int>> ch;
        for (auto [a, b] : edges) {
            int d = std::abs(pos[a] - pos[b]);
            if (d != 1 && d != n - 1) ch.emplace_back(std::min(pos[a], pos[b]), std::max(pos[a], pos[b]));
        }
        for (size_t i = 0; i < ch.size(); ++i)
            for (size_t j = i + 1; j < ch.size(); ++j) {
                auto [a, b] = ch[i];
                auto [c, d] = ch[j];
                bool c_in = a < c && c < b, d_in = a < d && d < b;
                if (c != a && c != b && d != a && d != b && c_in != d_in) return false;
            }
        return true;
    };

    std::function<void()> go = [&]() {
        if (found || nodes > budget) return;
        ++nodes;
        if (static_cast<int>(path.size()) == n) {
            if (has[path.back()][0] && path[1] < path.back() && chords_ok()) found = true;
            return;
        }
        for (int w : adj[path.back()]) {
            if (pos[w] >= 0) continue;
            pos[w] = static_cast<int>(path.size());
            path.push_back(w);
            go();
            path.pop_back();
            pos[w] = -1;
            if (found) return;
        }
    };
    go();
    if (found) return 1;
    return nodes > budget ? -1 : 0;
}

} // namespace

bool has_k4_or_k23_minor(MaskGraph16 g) {
    Memo<MaskGraph16> memo;
    return minor_rec(g, memo);
}

bool has_k4_or_k23_minor(MaskGraph64 g) {
    Memo<MaskGraph64> memo;
    return minor_rec(g, memo);
}

bool block_is_outerplanar(const std::vector<std::pair<int, int>>& block_edges) {
    size_t mb = block_edges.size();
    if (mb <= 1) return true;
    std::vector<int> verts;
    for (auto [a, b] : block_edges) {
        verts.push_back(a);
        verts.push_back(b);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    size_t nb = verts.size();
    if (nb <= 3) return true;
    if (mb == nb) return true;            // plain cycle
    if (mb > 2 * nb - 3) return false;    // outerplanar edge bound

    std::vector<std::pair<int, int>> local;
    local.reserve(mb);
    for (auto [a, b] : block_edges) {
        int la = static_cast<int>(std::lower_bound(verts.begin(), verts.end(), a) - verts.begin());
        int lb = static_cast<int>(std::lower_bound(verts.begin(), verts.end(), b) - verts.begin());
        local.emplace_back(la, lb);
    }

    if (nb <= 16) {
        MaskGraph16 g;
        for (auto [a, b] : local) g.add_edge(a, b);
        return !has_k4_or_k23_minor(g);
    }

    auto reduced = shorten_runs(local, static_cast<int>(nb));
    int rn = 0;
    for (auto [a, b] : reduced) rn = std::max({rn, a + 1, b + 1});
    if (rn <= 16) {
        MaskGraph16 g;
        for (auto [a, b] : reduced) g.add_edge(a, b);
        return !has_k4_or_k23_minor(g);
    }
    // Larger blocks: a disjoint-path probe certifies most K2,3 subdivisions
    // outright; probe-silent blocks are decided by the embedding search,
    // with the contraction recursion as a bounded-size backstop.
    if (k23_probe(reduced, rn)) return false;
    if (rn <= 64) {
        int verdict = embeds_outerplanar_bounded(reduced, rn, 2000000);
        if (verdict >= 0) return verdict == 1;
        MaskGraph64 g;
        for (auto [a, b] : reduced) g.add_edge(a, b);
        return !has_k4_or_k23_minor(g);
    }
    return embeds_outerplanar_bounded(reduced, rn, std::numeric_limits<long long>::max()) == 1;
}

} // namespace opg
