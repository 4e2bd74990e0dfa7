#include "opg/sampler.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace opg {

namespace {

uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

RngStream::RngStream(uint64_t seed, uint64_t stream_id) : seed_(seed), stream_(stream_id) {
    uint64_t x = seed ^ (0x9e3779b97f4a7c15ull * (stream_id + 1));
    for (auto& s : s_) s = splitmix64(x);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

uint64_t RngStream::next() {
    // xoshiro256**
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

uint64_t RngStream::below(uint64_t n) {
    if (n == 0) throw DomainError("below(0)");
    if ((n & (n - 1)) == 0) return next() & (n - 1);
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
        v = next();
    } while (v >= limit);
    return v % n;
}

Int RngStream::below_big(const Int& n) {
    if (n <= 0) throw DomainError("below_big needs a positive bound");
    if (n <= Int(UINT64_MAX)) return Int(below(n.convert_to<uint64_t>()));
    size_t bits = mpz_sizeinbase(n.backend().data(), 2);
    size_t words = (bits + 63) / 64;
    while (true) {
        Int v(0);
        for (size_t i = 0; i < words; ++i) {
            v <<= 64;
            v |= Int(next());
        }
        v >>= (words * 64 - bits);
        if (v < n) return v;
    }
}

double RngStream::unit() { return (next() >> 11) * 0x1.0p-53; }

namespace {

// lexicographic index over pairs (u,v), 1 <= u < v <= n
Edge edge_from_index(int n, long long idx) {
    long long u = 1;
    long long row = n - 1;
    while (idx >= row) {
        idx -= row;
        ++u;
        --row;
    }
    return Edge{static_cast<int>(u), static_cast<int>(u + 1 + idx)};
}

} // namespace

LabeledGraph sample_gnm(int n, long m, RngStream& rng) {
    long long total = static_cast<long long>(n) * (n - 1) / 2;
    if (m < 0 || m > total) throw DomainError("edge count out of range");
    // partial Fisher-Yates over edge indices with sparse overrides
    std::map<long long, long long> over;
    auto value_at = [&](long long i) {
        auto it = over.find(i);
        return it == over.end() ? i : it->second;
    };
    std::vector<Edge> edges;
    edges.reserve(m);
    for (long i = 0; i < m; ++i) {
        long long j = i + static_cast<long long>(rng.below(static_cast<uint64_t>(total - i)));
        long long vi = value_at(i), vj = value_at(j);
        over[j] = vi;
        edges.push_back(edge_from_index(n, vj));
    }
    return LabeledGraph(n, std::move(edges));
}

SampleRecord sample_rejection(int n, long m, Target target, RngStream& rng, long max_tries) {
    if (max_tries < 1) throw DomainError("max_tries must be >= 1");
    for (long t = 1; t <= max_tries; ++t) {
        LabeledGraph g = sample_gnm(n, m, rng);
        bool ok = target == Target::outerplanar ? is_outerplanar(g) : is_cactus(g);
        if (ok) return SampleRecord{std::move(g), t, true};
    }
    return SampleRecord{LabeledGraph(n, {}), max_tries, false};
}

std::vector<int> forest_encode(const std::vector<Edge>& forest, const std::vector<int>& roots, int nQ) {
    std::vector<char> is_root(nQ + 1, 0);
    for (int r : roots) is_root[r] = 1;
    std::vector<std::set<int>> adj(nQ + 1);
    for (const Edge& e : forest) {
        adj[e.u].insert(e.v);
        adj[e.v].insert(e.u);
    }
    std::set<int> leaves;
    for (int v = 1; v <= nQ; ++v)
        if (!is_root[v] && adj[v].size() <= 1) leaves.insert(v);
    std::vector<int> code;
    while (!leaves.empty()) {
        int v = *leaves.rbegin();  // largest non-root leaf
        leaves.erase(v);
        if (adj[v].empty()) throw DomainError("not a forest with the given roots");
        int p = *adj[v].begin();
        code.push_back(p);
        adj[p].erase(v);
        adj[v].clear();
        if (!is_root[p] && adj[p].size() <= 1) leaves.insert(p);
    }
    return code;
}

std::vector<Edge> forest_decode(const std::vector<int>& code, const std::vector<int>& roots, int nQ) {
    std::vector<char> is_root(nQ + 1, 0);
    for (int r : roots) is_root[r] = 1;
    int k = static_cast<int>(roots.size());
    if (static_cast<int>(code.size()) != nQ - k) throw DomainError("bad code length");
    std::vector<int> cnt(nQ + 1, 0);
    for (int c : code) {
        if (c < 1 || c > nQ) throw DomainError("code symbol out of range");
        ++cnt[c];
    }
    std::vector<char> removed(nQ + 1, 0);
    std::set<int> leaves;
    for (int v = 1; v <= nQ; ++v)
        if (!is_root[v] && cnt[v] == 0) leaves.insert(v);
    std::vector<Edge> edges;
    for (int c : code) {
        if (leaves.empty()) throw DomainError("invalid forest code");
        int v = *leaves.rbegin();
        leaves.erase(v);
        removed[v] = 1;
        edges.push_back(make_edge(v, c));
        if (--cnt[c] == 0 && !is_root[c] && !removed[c]) leaves.insert(c);
    }
    return edges;
}

std::vector<Edge> attach_random_forest(const std::vector<int>& roots, int nQ, RngStream& rng) {
    if (roots.empty()) throw DomainError("root set must be non-empty");
    std::set<int> rs(roots.begin(), roots.end());
    if (rs.size() != roots.size()) throw DomainError("duplicate roots");
    if (*rs.begin() < 1 || *rs.rbegin() > nQ) throw DomainError("root out of range");
    int k = static_cast<int>(rs.size());
    if (k == nQ) return {};
    std::vector<int> sorted_roots(rs.begin(), rs.end());
    std::vector<int> code(nQ - k);
    for (int i = 0; i + 1 < nQ - k; ++i) code[i] = 1 + static_cast<int>(rng.below(nQ));
    code[nQ - k - 1] = sorted_roots[rng.below(k)];
    return forest_decode(code, sorted_roots, nQ);
}

namespace {

// order-preserving relabelling of a canonically labelled member onto a
// sorted label subset
std::vector<Edge> relabel_onto(const LabeledGraph& g, const std::vector<int>& labels) {
    std::vector<Edge> out;
    out.reserve(g.m());
    for (const Edge& e : g.edges()) out.push_back(make_edge(labels[e.u - 1], labels[e.v - 1]));
    return out;
}

std::vector<int> sample_subset(const std::vector<int>& pool, int k, RngStream& rng) {
    std::vector<int> items = pool;
    int n = static_cast<int>(items.size());
    for (int i = 0; i < k; ++i) std::swap(items[i], items[i + static_cast<int>(rng.below(static_cast<uint64_t>(n - i)))]);
    items.resize(k);
    std::sort(items.begin(), items.end());
    return items;
}

} // namespace

LabeledGraph sample_exact(GraphClass cls, int n, int m, CountingContext& ctx, RngStream& rng) {
    if (cls != GraphClass::A && cls != GraphClass::T)
        throw DomainError("exact sampling supports classes A and T");
    GraphClass qcls = cls == GraphClass::A ? GraphClass::Q : GraphClass::QC;
    GraphClass ccls = cls == GraphClass::A ? GraphClass::C : GraphClass::CC;

    // (n_Q, ell) ~ tau
    std::vector<std::tuple<int, int, Int>> terms;
    Int total(0);
    for (int nQ = 0; nQ <= n; ++nQ)
        for (int ell = 0; ell + nQ <= m; ++ell) {
            Int t = tau(n, m, nQ, ell, ctx, qcls);
            if (t > 0) {
                terms.emplace_back(nQ, ell, t);
                total += t;
            }
        }
    if (total == 0) throw DomainError("the class is empty at (n, m)");
    Int pick = rng.below_big(total);
    int nQ = 0, ell = 0;
    for (auto& [a, b, t] : terms) {
        if (pick < t) {
            nQ = a;
            ell = b;
            break;
        }
        pick -= t;
    }

    std::vector<int> all_labels(n);
    for (int i = 0; i < n; ++i) all_labels[i] = i + 1;

    std::vector<Edge> edges;
    std::vector<int> qlabels;
    if (nQ > 0) {
        qlabels = sample_subset(all_labels, nQ, rng);
        // n_C ~ rho
        std::vector<std::pair<int, Int>> rterms;
        Int rtotal(0);
        for (int nC = 1; nC <= nQ; ++nC) {
            Int r = rho(nQ, ell, nC, ctx, ccls);
            if (r > 0) {
                rterms.emplace_back(nC, r);
                rtotal += r;
            }
        }
        Int rpick = rng.below_big(rtotal);
        int nC = 0;
        for (auto& [a, r] : rterms) {
            if (rpick < r) {
                nC = a;
                break;
            }
            rpick -= r;
        }
        // uniform core on canonical labels, relabelled into a uniform subset
        const auto& cores = ctx.members(ccls, nC, nC + ell);
        LabeledGraph core = ctx.graph_from_mask(nC, cores[static_cast<size_t>(rng.below(cores.size()))]);
        std::vector<int> rank_positions(nQ);
        for (int i = 0; i < nQ; ++i) rank_positions[i] = i + 1;
        std::vector<int> core_ranks = sample_subset(rank_positions, nC, rng);
        std::vector<int> core_labels(nC);
        for (int i = 0; i < nC; ++i) core_labels[i] = qlabels[core_ranks[i] - 1];
        for (const Edge& e : relabel_onto(core, core_labels)) edges.push_back(e);
        // uniform forest on the complex part, roots at the core ranks
        for (const Edge& e : attach_random_forest(core_ranks, nQ, rng))
            edges.push_back(make_edge(qlabels[e.u - 1], qlabels[e.v - 1]));
    }

    int nU = n - nQ, mU = m - nQ - ell;
    if (nU > 0) {
        std::vector<int> ulabels;
        std::set<int> qs(qlabels.begin(), qlabels.end());
        for (int v = 1; v <= n; ++v)
            if (!qs.count(v)) ulabels.push_back(v);
        const auto& us = ctx.members(GraphClass::U, nU, mU);
        LabeledGraph upart = ctx.graph_from_mask(nU, us[static_cast<size_t>(rng.below(us.size()))]);
        for (const Edge& e : relabel_onto(upart, ulabels)) edges.push_back(e);
    }
    return LabeledGraph(n, std::move(edges));
}

} // namespace opg
