#include "opg/enumerate.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <functional>
#include <thread>

#include "opg/minor.hpp"

namespace opg {
namespace {

constexpr int MAXN = 8;

// classes A,T,U,Q,QC,C,CC in sweep order
constexpr unsigned FA = 1, FT = 2, FU = 4, FQ = 8, FQC = 16, FC = 32, FCC = 64;
constexpr int SIMPLE_CLASSES = 7;

int class_index(GraphClass c) {
    switch (c) {
        case GraphClass::A: return 0;
        case GraphClass::T: return 1;
        case GraphClass::U: return 2;
        case GraphClass::Q: return 3;
        case GraphClass::QC: return 4;
        case GraphClass::C: return 5;
        case GraphClass::CC: return 6;
        default: return -1;
    }
}

unsigned class_flag(GraphClass c) { return 1u << class_index(c); }

struct EdgeTable {
    int n = 0, E = 0;
    int eu[28] = {0}, ev[28] = {0};
    uint32_t vmask[MAXN] = {0};
};

const EdgeTable& edge_table(int n) {
    static std::array<EdgeTable, MAXN + 1> tables = [] {
        std::array<EdgeTable, MAXN + 1> t{};
        for (int n = 0; n <= MAXN; ++n) {
            t[n].n = n;
            int id = 0;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    t[n].eu[id] = u;
                    t[n].ev[id] = v;
                    t[n].vmask[u] |= 1u << id;
                    t[n].vmask[v] |= 1u << id;
                    ++id;
                }
            t[n].E = id;
        }
        return t;
    }();
    return tables[n];
}

// Biconnected components of a masked graph on <= 8 vertices; blocks are
// returned as edge-id masks. Fixed-size, allocation-free.
struct SmallBlocks {
    uint32_t bmask[28];
    int count = 0;
};

void small_blocks(const EdgeTable& et, uint32_t mask, SmallBlocks& out) {
    int n = et.n;
    int adeg[MAXN] = {0};
    int anb[MAXN][MAXN];
    int aeid[MAXN][MAXN];
    uint32_t mm = mask;
    while (mm) {
        int e = std::countr_zero(mm);
        mm &= mm - 1;
        int u = et.eu[e], v = et.ev[e];
        anb[u][adeg[u]] = v;
        aeid[u][adeg[u]++] = e;
        anb[v][adeg[v]] = u;
        aeid[v][adeg[v]++] = e;
    }
    int disc[MAXN] = {0}, low[MAXN] = {0};
    int timer = 0;
    int estk[28], etop = 0;
    struct Fr {
        int v, pe, it;
    };
    Fr fst[MAXN + 1];
    out.count = 0;
    for (int s = 0; s < n; ++s) {
        if (disc[s] || adeg[s] == 0) continue;
        disc[s] = low[s] = ++timer;
        int ftop = 0;
        fst[ftop++] = {s, -1, 0};
        while (ftop) {
            Fr& f = fst[ftop - 1];
            if (f.it < adeg[f.v]) {
                int w = anb[f.v][f.it];
                int eid = aeid[f.v][f.it];
                ++f.it;
                if (eid == f.pe) continue;
                if (!disc[w]) {
                    estk[etop++] = eid;
                    disc[w] = low[w] = ++timer;
                    fst[ftop++] = {w, eid, 0};
                } else if (disc[w] < disc[f.v]) {
                    estk[etop++] = eid;
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                Fr done = f;
                --ftop;
                if (ftop) {
                    Fr& p = fst[ftop - 1];
                    low[p.v] = std::min(low[p.v], low[done.v]);
                    if (low[done.v] >= disc[p.v]) {
                        uint32_t bm = 0;
                        while (true) {
                            int id = estk[--etop];
                            bm |= 1u << id;
                            if (id == done.pe) break;
                        }
                        out.bmask[out.count++] = bm;
                    }
                }
            }
        }
    }
}

// Class membership bits for one edge subset; only the requested classes are
// decided, and the forbidden-minor test runs at most once per mask.
unsigned classify(const EdgeTable& et, uint32_t mask, unsigned flags) {
    int n = et.n;
    int deg[MAXN];
    uint8_t adjm[MAXN] = {0};
    int min_deg = n > 0 ? 99 : 0;
    for (int v = 0; v < n; ++v) {
        deg[v] = std::popcount(mask & et.vmask[v]);
        min_deg = std::min(min_deg, deg[v]);
    }
    uint32_t mm = mask;
    while (mm) {
        int e = std::countr_zero(mm);
        mm &= mm - 1;
        adjm[et.eu[e]] |= uint8_t(1u << et.ev[e]);
        adjm[et.ev[e]] |= uint8_t(1u << et.eu[e]);
    }
    // components and per-component excess
    bool all_complex = n > 0, no_complex = true;
    {
        uint8_t seen = 0;
        for (int s = 0; s < n; ++s) {
            if (seen & (1u << s)) continue;
            uint8_t comp = uint8_t(1u << s), frontier = comp;
            while (frontier) {
                uint8_t nxt = 0;
                uint8_t f = frontier;
                while (f) {
                    int v = std::countr_zero(static_cast<unsigned>(f));
                    f &= uint8_t(f - 1);
                    nxt |= uint8_t(adjm[v] & ~comp);
                }
                comp |= nxt;
                frontier = nxt;
            }
            seen |= comp;
            int nv = std::popcount(static_cast<unsigned>(comp)), ne = 0;
            uint8_t c = comp;
            while (c) {
                int v = std::countr_zero(static_cast<unsigned>(c));
                c &= uint8_t(c - 1);
                ne += deg[v];
            }
            ne /= 2;
            if (ne < nv + 1) all_complex = false;
            if (ne > nv) no_complex = false;
        }
    }

    unsigned out = 0;
    if ((flags & FU) && no_complex) out |= FU;

    bool min2 = min_deg >= 2;
    bool need_cactus = (flags & FT) || ((flags & FQC) && all_complex) || ((flags & FCC) && all_complex && min2);
    bool need_outer = (flags & FA) || ((flags & FQ) && all_complex) || ((flags & FC) && all_complex && min2);
    if (!need_cactus && !need_outer) return out;

    SmallBlocks bl;
    small_blocks(et, mask, bl);
    bool cactus = true;
    for (int i = 0; i < bl.count && cactus; ++i) {
        uint32_t bm = bl.bmask[i];
        int be = std::popcount(bm);
        if (be == 1) continue;
        uint8_t vs = 0;
        uint32_t b = bm;
        while (b) {
            int e = std::countr_zero(b);
            b &= b - 1;
            vs |= uint8_t((1u << et.eu[e]) | (1u << et.ev[e]));
        }
        if (std::popcount(static_cast<unsigned>(vs)) != be) cactus = false;
    }
    bool outer = true;
    if (need_outer && !cactus) {
        for (int i = 0; i < bl.count && outer; ++i) {
            uint32_t bm = bl.bmask[i];
            int be = std::popcount(bm);
            uint8_t vs = 0;
            uint32_t b = bm;
            while (b) {
                int e = std::countr_zero(b);
                b &= b - 1;
                vs |= uint8_t((1u << et.eu[e]) | (1u << et.ev[e]));
            }
            int bv = std::popcount(static_cast<unsigned>(vs));
            if (be <= bv) continue;  // bridge or cycle block
            if (be > 2 * bv - 3) {
                outer = false;
                break;
            }
            MaskGraph16 g;
            b = bm;
            while (b) {
                int e = std::countr_zero(b);
                b &= b - 1;
                g.add_edge(et.eu[e], et.ev[e]);
            }
            if (has_k4_or_k23_minor(g)) outer = false;
        }
    }

    if (cactus) {
        out |= (flags & FT);
        if (all_complex) {
            out |= (flags & FQC);
            if (min2) out |= (flags & FCC);
        }
    }
    if (need_outer && (cactus || outer)) {
        out |= (flags & FA);
        if (all_complex) {
            out |= (flags & FQ);
            if (min2) out |= (flags & FC);
        }
    }
    return out;
}

struct SweepResult {
    // counts[class][m]
    std::array<std::vector<uint64_t>, SIMPLE_CLASSES> counts;
    // members[class]: masks, only when collecting
    std::array<std::map<int, std::vector<uint32_t>>, SIMPLE_CLASSES> members;
};

// Exhaustive pass over all edge subsets of the given sizes, split into
// prefix tasks over the high edge indices. Counts are plain integer sums,
// so the result is identical for any worker count.
SweepResult sweep_classes(int n, const std::vector<int>& ms, unsigned flags, int jobs, bool collect) {
    const EdgeTable& et = edge_table(n);
    int E = et.E;
    SweepResult res;
    for (int c = 0; c < SIMPLE_CLASSES; ++c) res.counts[c].assign(E + 1, 0);

    int L = std::min(E, 18);
    int H = E - L;
    uint32_t ntasks = 1u << H;

    struct TaskOut {
        std::array<std::vector<uint64_t>, SIMPLE_CLASSES> counts;
        std::array<std::map<int, std::vector<uint32_t>>, SIMPLE_CLASSES> members;
    };
    std::vector<TaskOut> touts(ntasks);

    auto run_task = [&](uint32_t t) {
        TaskOut& to = touts[t];
        for (int c = 0; c < SIMPLE_CLASSES; ++c) to.counts[c].assign(E + 1, 0);
        uint32_t high = t << L;
        int hc = std::popcount(high);
        for (int m : ms) {
            int k = m - hc;
            if (k < 0 || k > L) continue;
            auto handle = [&](uint32_t low) {
                uint32_t mask = high | low;
                unsigned got = classify(et, mask, flags);
                if (!got) return;
                for (int c = 0; c < SIMPLE_CLASSES; ++c)
                    if (got & (1u << c)) {
                        ++to.counts[c][m];
                        if (collect) to.members[c][m].push_back(mask);
                    }
            };
            if (k == 0) {
                handle(0);
                continue;
            }
            uint32_t v = (uint32_t(1) << k) - 1;
            uint32_t lim = L == 32 ? 0xffffffffu : (uint32_t(1) << L);
            while (v < lim) {
                handle(v);
                uint32_t t2 = v | (v - 1);
                uint32_t nxt = (t2 + 1) | (((~t2 & (t2 + 1)) - 1) >> (std::countr_zero(v) + 1));
                if (nxt <= v) break;
                v = nxt;
            }
        }
    };

    int workers = std::max(1, jobs);
    if (workers == 1 || ntasks == 1) {
        for (uint32_t t = 0; t < ntasks; ++t) run_task(t);
    } else {
        std::atomic<uint32_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                while (true) {
                    uint32_t t = next.fetch_add(1);
                    if (t >= ntasks) break;
                    run_task(t);
                }
            });
        for (auto& th : pool) th.join();
    }

    for (uint32_t t = 0; t < ntasks; ++t) {
        for (int c = 0; c < SIMPLE_CLASSES; ++c) {
            for (int m = 0; m <= E; ++m) res.counts[c][m] += touts[t].counts[c][m];
            for (auto& [m, v] : touts[t].members[c]) {
                auto& dst = res.members[c][m];
                dst.insert(dst.end(), v.begin(), v.end());
            }
        }
    }
    return res;
}

} // namespace

std::string to_string(GraphClass c) {
    switch (c) {
        case GraphClass::A: return "A";
        case GraphClass::T: return "T";
        case GraphClass::U: return "U";
        case GraphClass::Q: return "Q";
        case GraphClass::QC: return "Q_C";
        case GraphClass::C: return "C";
        case GraphClass::CC: return "C_C";
        case GraphClass::K: return "K_cubic_cactus";
        case GraphClass::Kc: return "K_cubic_cactus_connected";
    }
    return "?";
}

GraphClass parse_class(const std::string& s) {
    for (GraphClass c : {GraphClass::A, GraphClass::T, GraphClass::U, GraphClass::Q, GraphClass::QC,
                         GraphClass::C, GraphClass::CC, GraphClass::K, GraphClass::Kc})
        if (to_string(c) == s) return c;
    if (s == "QC") return GraphClass::QC;
    if (s == "CC") return GraphClass::CC;
    if (s == "K") return GraphClass::K;
    if (s == "Kc") return GraphClass::Kc;
    throw DomainError("unknown class: " + s);
}

CountingContext::CountingContext(int simple_ceiling, int kernel_ceiling, int jobs)
    : simple_ceiling_(std::min(simple_ceiling, MAXN)), kernel_ceiling_(kernel_ceiling), jobs_(jobs) {}

bool CountingContext::trivially_zero(GraphClass c, int n, int m) const {
    if (m < 0) return true;
    long E = static_cast<long>(n) * (n - 1) / 2;
    if (m > E) return true;
    switch (c) {
        case GraphClass::A:
        case GraphClass::Q:
        case GraphClass::C:
            if (n >= 2 && m > 2 * n - 3) return true;
            break;
        case GraphClass::T:
        case GraphClass::QC:
        case GraphClass::CC:
            if (m > 3 * (n - 1) / 2) return true;
            break;
        case GraphClass::U:
            if (m > n) return true;
            break;
        default:
            break;
    }
    if ((c == GraphClass::Q || c == GraphClass::QC || c == GraphClass::C || c == GraphClass::CC) && n >= 1 &&
        m < n + 1)
        return true;
    return false;
}

const Rat& CountingContext::cached(GraphClass c, int n, int m) const {
    return cache_.at({static_cast<int>(c), n, m});
}

void CountingContext::store(GraphClass c, int n, int m, Rat v) {
    cache_[{static_cast<int>(c), n, m}] = std::move(v);
}

const Rat& CountingContext::count(GraphClass c, int n, int m) {
    auto key = std::make_tuple(static_cast<int>(c), n, m);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    if (c == GraphClass::K || c == GraphClass::Kc) {
        ensure_kernel(c, n, m);
        return cached(c, n, m);
    }
    if (n == 0) {
        store(c, n, m, m == 0 ? Rat(1) : Rat(0));
        return cached(c, n, m);
    }
    if (trivially_zero(c, n, m)) {
        store(c, n, m, Rat(0));
        return cached(c, n, m);
    }
    if (n > simple_ceiling_)
        throw CapacityError("brute-force ceiling is " + std::to_string(simple_ceiling_) +
                            " vertices; use the counting series for U and cactus classes");
    ensure_simple(c, n, m, false);
    return cached(c, n, m);
}

Int CountingContext::count_int(GraphClass c, int n, int m) { return to_int(count(c, n, m)); }

void CountingContext::ensure_simple(GraphClass c, int n, int m, bool want_members) {
    if (want_members) {
        auto res = sweep_classes(n, {m}, class_flag(c), jobs_, true);
        int ci = class_index(c);
        store(c, n, m, Rat(res.counts[ci][m]));
        members_[{static_cast<int>(c), n, m}] = std::move(res.members[ci][m]);
        return;
    }
    if (n <= 7) {
        // one full pass fills every class and size at this n
        const EdgeTable& et = edge_table(n);
        std::vector<int> ms(et.E + 1);
        for (int i = 0; i <= et.E; ++i) ms[i] = i;
        auto res = sweep_classes(n, ms, 0x7f, jobs_, false);
        for (int ci = 0; ci < SIMPLE_CLASSES; ++ci) {
            GraphClass gc{};
            switch (ci) {
                case 0: gc = GraphClass::A; break;
                case 1: gc = GraphClass::T; break;
                case 2: gc = GraphClass::U; break;
                case 3: gc = GraphClass::Q; break;
                case 4: gc = GraphClass::QC; break;
                case 5: gc = GraphClass::C; break;
                case 6: gc = GraphClass::CC; break;
            }
            for (int mm = 0; mm <= et.E; ++mm) store(gc, n, mm, Rat(res.counts[ci][mm]));
        }
        return;
    }
    auto res = sweep_classes(n, {m}, class_flag(c), jobs_, false);
    store(c, n, m, Rat(res.counts[class_index(c)][m]));
}

void CountingContext::ensure_kernel(GraphClass c, int n, int m) {
    if (n > kernel_ceiling_)
        throw CapacityError("kernel enumeration ceiling is " + std::to_string(kernel_ceiling_) + " vertices");
    if (n < 0 || m < 0 || 2 * m != 3 * n) {
        store(c, n, m, Rat(0));
        return;
    }
    Rat total(0);
    std::vector<int> degrees(n, 3);
    for_each_multigraph(degrees, [&](const WeightedMultigraph& k) {
        if (!is_cactus_multigraph(k)) return;
        if (c == GraphClass::Kc && !multigraph_connected(k)) return;
        total += k.weight();
    });
    store(c, n, m, std::move(total));
}

const std::vector<uint32_t>& CountingContext::members(GraphClass c, int n, int m) {
    if (c == GraphClass::K || c == GraphClass::Kc) throw DomainError("no member store for kernel classes");
    auto key = std::make_tuple(static_cast<int>(c), n, m);
    auto it = members_.find(key);
    if (it != members_.end()) return it->second;
    if (n > simple_ceiling_) throw CapacityError("member store limited to the brute-force ceiling");
    if (n == 0 || trivially_zero(c, n, m)) {
        members_[key] = {};
        return members_.at(key);
    }
    ensure_simple(c, n, m, true);
    return members_.at(key);
}

LabeledGraph CountingContext::graph_from_mask(int n, uint32_t mask) const {
    const EdgeTable& et = edge_table(n);
    std::vector<Edge> edges;
    uint32_t mm = mask;
    while (mm) {
        int e = std::countr_zero(mm);
        mm &= mm - 1;
        edges.push_back({et.eu[e] + 1, et.ev[e] + 1});
    }
    return LabeledGraph(n, std::move(edges));
}

uint32_t CountingContext::mask_from_graph(const LabeledGraph& g) const {
    const EdgeTable& et = edge_table(g.n());
    uint32_t mask = 0;
    for (const Edge& e : g.edges()) {
        for (int id = 0; id < et.E; ++id)
            if (et.eu[id] == e.u - 1 && et.ev[id] == e.v - 1) {
                mask |= 1u << id;
                break;
            }
    }
    return mask;
}

void for_each_multigraph(const std::vector<int>& degrees,
                         const std::function<void(const WeightedMultigraph&)>& fn) {
    int nv = static_cast<int>(degrees.size());
    long degsum = 0;
    for (int d : degrees) degsum += d;
    if (nv == 0 || degsum % 2 != 0) return;

    std::vector<int> rem = degrees;
    std::vector<Edge> edges;

    // cells in row-major order: the loop at i, then pairs (i, j) for j > i
    std::function<void(int, int)> place = [&](int i, int j) {
        if (i == nv) {
            fn(WeightedMultigraph(nv, edges));
            return;
        }
        if (j == nv) {
            if (rem[i] != 0) return;
            place(i + 1, i + 1);
            return;
        }
        if (j == i) {
            int maxl = rem[i] / 2;
            for (int l = 0; l <= maxl; ++l) {
                rem[i] -= 2 * l;
                for (int k = 0; k < l; ++k) edges.push_back({i + 1, i + 1});
                place(i, j + 1);
                for (int k = 0; k < l; ++k) edges.pop_back();
                rem[i] += 2 * l;
            }
            return;
        }
        int maxm = std::min(rem[i], rem[j]);
        for (int x = 0; x <= maxm; ++x) {
            rem[i] -= x;
            rem[j] -= x;
            for (int k = 0; k < x; ++k) edges.push_back({i + 1, j + 1});
            place(i, j + 1);
            for (int k = 0; k < x; ++k) edges.pop_back();
            rem[i] += x;
            rem[j] += x;
        }
    };
    place(0, 0);
}

bool multigraph_connected(const WeightedMultigraph& k) {
    int n = k.n();
    if (n == 0) return false;
    std::vector<std::vector<int>> adj(n + 1);
    for (const Edge& e : k.edges())
        if (e.u != e.v) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
    std::vector<char> seen(n + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++cnt;
                stack.push_back(w);
            }
    }
    return cnt == n;
}

Int tau(int n, int m, int nQ, int ell, CountingContext& ctx, GraphClass qcls) {
    if (nQ < 0 || nQ > n || ell < 0) return 0;
    int nU = n - nQ, mU = m - nQ - ell;
    if (mU < 0) return 0;
    Int q = ctx.count_int(qcls, nQ, nQ + ell);
    if (q == 0) return 0;
    Int u = ctx.count_int(GraphClass::U, nU, mU);
    if (u == 0) return 0;
    return binomial(n, nQ) * q * u;
}

Int rho(int nQ, int ell, int nC, CountingContext& ctx, GraphClass ccls) {
    if (nC > nQ) throw DomainError("rho requires n_C <= n_Q");
    if (nC < 0 || ell < 0) return 0;
    if (nC == 0 && nQ > 0) return 0;  // the tree factor vanishes
    Int cnt = ctx.count_int(ccls, nC, nC + ell);
    if (cnt == 0) return 0;
    // n_C n_Q^{n_Q - n_C - 1} with the exact-cancellation convention at n_C = n_Q
    Int factor = nC == nQ ? Int(1) : Int(nC) * int_pow(Int(nQ), static_cast<unsigned long>(nQ - nC - 1));
    return binomial(nQ, nC) * cnt * factor;
}

Eq1Report verify_eq1(int n, int m, CountingContext& ctx) {
    Eq1Report r{n, m, ctx.count_int(GraphClass::A, n, m), Int(0), false};
    for (int nQ = 0; nQ <= n; ++nQ)
        for (int ell = 0; ell + nQ <= m; ++ell) r.rhs += tau(n, m, nQ, ell, ctx);
    r.equal = r.lhs == r.rhs;
    return r;
}

Eq2Report verify_eq2(int nQ, int ell, CountingContext& ctx) {
    Eq2Report r{nQ, ell, ctx.count_int(GraphClass::Q, nQ, nQ + ell), Int(0), false};
    for (int nC = 0; nC <= nQ; ++nC) r.rhs += rho(nQ, ell, nC, ctx);
    r.equal = r.lhs == r.rhs;
    return r;
}

Lemma31Report verify_lemma31(int nC, int ell, CountingContext& ctx) {
    Int c0 = ctx.count_int(GraphClass::C, nC, nC + ell);
    if (c0 == 0) throw DomainError("inadmissible pair: |C(n_C, n_C+ell)| = 0");
    Int c1 = ctx.count_int(GraphClass::C, nC + 1, nC + 1 + ell);
    Lemma31Report r;
    r.nC = nC;
    r.ell = ell;
    r.ratio = Rat(c1) / Rat(c0);
    r.lower = Rat(nC) + Rat(ell) / 80;
    r.upper_applicable = nC - 8 * ell >= 0;
    r.upper = r.upper_applicable ? Rat(Int(nC + ell) * Int(nC + 1)) / Rat(nC + 1 - 8 * ell) : Rat(0);
    r.pass = r.ratio >= r.lower && (!r.upper_applicable || r.ratio <= r.upper);
    return r;
}

Int appendixB_lower_bound(int nC, int ell, CountingContext& ctx) {
    if (ell < 1) throw DomainError("appendix B bound needs ell >= 1");
    if (nC < 5 * ell + 1) throw DomainError("appendix B bound needs n_C >= 5*ell + 1");
    Rat k = ctx.count(GraphClass::K, 2 * ell, 3 * ell);
    Rat val = Rat(binomial(nC, 2 * ell)) * k * Rat(factorial(nC - 2 * ell)) *
              Rat(binomial(nC - 5 * ell - 1, 3 * ell - 1));
    return to_int(val);  // integrality is part of the claim
}

} // namespace opg
