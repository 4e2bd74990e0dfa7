// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code = number of failures.
//
// Criterion 9c asserts that the cactus fraction increases across three
// s-values at fixed n. Measurement shows the opposite monotonicity at any
// fixed n (the chord count grows with the excess); the check is run as
// stated and reported honestly, together with the n-growing trend at fixed
// s^3/n^2 that the underlying theorem actually predicts.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "opg/counting_series.hpp"
#include "opg/decompose.hpp"
#include "opg/enumerate.hpp"
#include "opg/experiments.hpp"
#include "opg/io.hpp"
#include "opg/sampler.hpp"
#include "opg/series.hpp"
#include "opg/stats.hpp"

using namespace opg;

namespace {

struct Line {
    bool pass;
    std::string text;
};
std::vector<Line> results;
CountingContext ctx(8, 6, 1);

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    char head[600];
    std::snprintf(head, sizeof(head), "[%2d] %s  %s  (%s)", idx, pass ? "PASS" : "FAIL", name.c_str(),
                  detail.c_str());
    std::puts(head);
    std::fflush(stdout);
    results.push_back({pass, head});
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string bad;
    for (int n = 1; n <= 7; ++n)
        for (int m = 0; m <= std::max(0, 2 * n - 3); ++m) {
            auto r = verify_eq1(n, m, ctx);
            if (!r.equal) {
                ok = false;
                bad += " (" + std::to_string(n) + "," + std::to_string(m) + ")";
            }
        }
    for (int m : {8, 9}) {
        auto r = verify_eq1(8, m, ctx);
        if (!r.equal) {
            ok = false;
            bad += " (8," + std::to_string(m) + ")";
        }
    }
    char det[160];
    std::snprintf(det, sizeof(det), "big-integer equality on the full grid incl. n=8 m in {8,9}; %.1fs",
                  seconds_since(t0));
    report(1, "eq (1): sum tau(n_Q, ell) = |A(n,m)|", ok, ok ? det : ("mismatch at" + bad).c_str());
}

void criterion2() {
    bool ok = true;
    std::string bad;
    for (int nQ = 0; nQ <= 7; ++nQ)
        for (int ell = 0; ell <= nQ; ++ell)
            if (!verify_eq2(nQ, ell, ctx).equal) {
                ok = false;
                bad += " (" + std::to_string(nQ) + "," + std::to_string(ell) + ")";
            }
    Int q45 = ctx.count_int(GraphClass::Q, 4, 5), q56 = ctx.count_int(GraphClass::Q, 5, 6);
    if (q45 != 6 || q56 != 195) ok = false;
    std::string det = "all n_Q <= 7; |Q(4,5)| = " + q45.str() + ", |Q(5,6)| = " + q56.str();
    report(2, "eq (2): sum rho(n_C) = |Q(n_Q, n_Q+ell)|", ok, ok ? det : "mismatch at" + bad);
}

void criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    int checked = 0;
    std::string bad;
    for (int nC = 4; nC <= 7; ++nC)
        for (int ell = 1; ell <= nC - 3; ++ell) {
            if (ctx.count_int(GraphClass::C, nC, nC + ell) == 0) continue;
            auto r = verify_lemma31(nC, ell, ctx);
            ++checked;
            if (!r.pass) {
                ok = false;
                bad += " (" + std::to_string(nC) + "," + std::to_string(ell) + ")";
            }
        }
    char det[160];
    std::snprintf(det, sizeof(det), "%d admissible pairs, exact rational comparisons; %.1fs", checked,
                  seconds_since(t0));
    report(3, "lemma 3.1 core growth ratios", ok, ok ? det : ("fail at" + bad).c_str());
}

void criterion4() {
    auto B = solve_B(500);
    bool spot = B[1] == Rat(1, 2) && B[3] == Rat(3, 8) && B[5] == Rat(1, 2);
    bool even = true;
    for (int k = 0; k <= 500; k += 2)
        if (B[k] != 0) even = false;
    bool routes = true;
    try {
        derive_Kc_marked(B.truncated(200));
    } catch (const StructuralError&) {
        routes = false;
    }
    auto Bu = solve_B_folded(8);
    auto Kc_u = integrate_unmark_folded(derive_Kc_marked_folded(Bu));
    auto K_u = exp_connected_to_all(Kc_u);
    bool kern = true;
    for (int n = 1; n <= 3; ++n)
        if (K_u[n] * Rat(factorial(2 * n)) != ctx.count(GraphClass::K, 2 * n, 3 * n)) kern = false;
    bool k23 = ctx.count(GraphClass::K, 2, 3) == Rat(1, 4);
    bool ok = spot && even && routes && kern && k23;
    report(4, "section-4 series: b-values, parity, route agreement, kernel counts", ok,
           "b1=1/2 b3=3/8 b5=1/2; even coeffs zero to 500; |K(2,3)| = 1/4; zero tolerance");
}

void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    auto rep = singularity_constants();
    bool digits = rep.consistency_ok && rep.t_str.substr(0, 14) == "0.422649730810" &&
                  rep.r_str.substr(0, 14) == "0.384900179459" &&
                  rep.rho_str.substr(0, 14) == "0.471404520791" && rep.gamma_str.substr(0, 13) == "1.6118548977";
    auto Bu = solve_B_folded(501);
    auto Kc_u = integrate_unmark_folded(derive_Kc_marked_folded(Bu));
    auto fit = estimate_growth(Kc_u, 400, 500);
    double target = 1.0 / rep.r;
    double rate_err = std::fabs(fit.rate_estimate - target) / target;
    double exp_err = std::fabs(fit.poly_exponent_estimate + 2.5);
    bool ok = digits && rate_err < 0.01 && exp_err < 0.15;
    char det[220];
    std::snprintf(det, sizeof(det),
                  "12-digit constants ok=%d; rate %.7f vs 1/r %.7f (err %.2e); exponent %.3f vs -2.5; %.1fs",
                  digits ? 1 : 0, fit.rate_estimate, target, rate_err, fit.poly_exponent_estimate,
                  seconds_since(t0));
    report(5, "singularity constants and order-500 ratio fit", ok, det);
}

void criterion6() {
    bool ok = true;
    std::string det;
    for (int nC = 7; nC <= 8; ++nC) {
        Int lb = appendixB_lower_bound(nC, 1, ctx);
        Int exact = ctx.count_int(GraphClass::CC, nC, nC + 1);
        det += "n_C=" + std::to_string(nC) + ": " + lb.str() + " <= " + exact.str() + "; ";
        if (lb > exact) ok = false;
    }
    report(6, "appendix-B lower bound vs exact |C_C(n_C, n_C+1)|", ok, det);
}

void criterion7() {
    UnicyclicSeries U(60);
    CactusSeries C(40);
    bool ok = U.u_ratio(4, 4) == 1;
    for (int n = 1; n <= 7; ++n) {
        for (int m = 0; m <= n + 1; ++m)
            if (U.count(n, m) != ctx.count_int(GraphClass::U, n, m)) ok = false;
        for (int m = 0; m <= 3 * (n - 1) / 2; ++m) {
            if (C.count(n, m, CactusSeries::Variant::all) != ctx.count_int(GraphClass::T, n, m)) ok = false;
            if (C.count(n, m, CactusSeries::Variant::complex_part) != ctx.count_int(GraphClass::QC, n, m))
                ok = false;
        }
    }
    report(7, "counting series equal brute force for n <= 7", ok,
           "count_U and count_cactus on the full grid; u_ratio(4,4) = 1");
}

void criterion8() {
    auto t0 = std::chrono::steady_clock::now();
    const auto& mem = ctx.members(GraphClass::A, 5, 5);
    std::map<uint32_t, size_t> index;
    for (size_t i = 0; i < mem.size(); ++i) index[mem[i]] = i;
    const long draws = 100000;
    std::vector<long> ce(mem.size(), 0), cr(mem.size(), 0);
    RngStream r1(424242, 0), r2(424243, 0);
    for (long i = 0; i < draws; ++i) {
        ++ce[index.at(ctx.mask_from_graph(sample_exact(GraphClass::A, 5, 5, ctx, r1)))];
        auto rec = sample_rejection(5, 5, Target::outerplanar, r2);
        ++cr[index.at(ctx.mask_from_graph(rec.graph))];
    }
    int dof = static_cast<int>(mem.size()) - 1;
    double pe = chi_square_p_value(chi_square_uniform_stat(ce, draws), dof);
    double pr = chi_square_p_value(chi_square_uniform_stat(cr, draws), dof);

    // determinism: regenerate with identical (seed, stream) and compare bytes
    auto render = [&](uint64_t seed) {
        std::ostringstream os;
        for (long i = 0; i < 200; ++i) {
            RngStream rng(seed, static_cast<uint64_t>(i));
            os << format_graph(sample_exact(GraphClass::A, 5, 5, ctx, rng));
        }
        return os.str();
    };
    bool det_ok = render(777) == render(777);

    bool ok = pe > 0.001 && pr > 0.001 && det_ok;
    char det[200];
    std::snprintf(det, sizeof(det),
                  "chi-square on |A(5,5)| = %zu cells, 1e5 draws: exact p=%.4f, rejection p=%.4f; "
                  "byte-identical reruns=%d; %.1fs",
                  mem.size(), pe, pr, det_ok ? 1 : 0, seconds_since(t0));
    report(8, "sampler uniformity and determinism", ok, det);
}

void criterion9() {
    auto t0 = std::chrono::steady_clock::now();
    // (a) subcritical: n = 20000, s = -3 n^{2/3}
    {
        SweepConfig cfg;
        cfg.n = 20000;
        cfg.s_coef = 3.0;
        cfg.s_exp = 2.0 / 3.0;
        cfg.s_negative = true;
        cfg.samples = 100;
        cfg.seed = 42;
        cfg.target = 'A';
        SweepSummary sm;
        auto rows = sweep(cfg, &sm);
        std::vector<double> h1;
        long trees = 0;
        for (auto& r : rows) {
            h1.push_back(static_cast<double>(r.h1));
            if (r.h1_is_tree) ++trees;
        }
        double med = median(h1);
        double n23 = std::pow(20000.0, 2.0 / 3.0);
        double s = -3.0 * n23;
        double formula = 0.5 * (20000.0 * 20000.0 / (s * s)) * std::log(std::pow(std::fabs(s), 3) / 4e8);
        bool tree_ok = trees >= 95;
        bool med_ok = med >= formula / 2 && med <= formula * 2;
        char det[240];
        std::snprintf(det, sizeof(det),
                      "n=20000 s=%d: %ld/100 largest components are trees; median |H1| = %.0f vs formula "
                      "%.1f (factor-2 band [%.1f, %.1f]); %.0fs",
                      static_cast<int>(sm.s), trees, med, formula, formula / 2, formula * 2,
                      seconds_since(t0));
        report(9, "phase transition (a): subcritical regime", tree_ok && med_ok, det);
    }
    // (b) s^3/n^2 ~ 5 with n shrunk per the stated provision
    {
        auto tb = std::chrono::steady_clock::now();
        SweepConfig cfg;
        cfg.n = 2000;
        cfg.s_value = 271;  // s^3/n^2 = 4.98
        cfg.samples = 100;
        cfg.seed = 42;
        cfg.target = 'A';
        SweepSummary sm;
        sweep(cfg, &sm);
        bool ok = sm.accepted == 100 && sm.median_h1_over_2s >= 0.5 && sm.median_h1_over_2s <= 1.5 &&
                  sm.median_ell > 0;
        char det[240];
        std::snprintf(det, sizeof(det),
                      "n=2000 s=271 (s3/n2=%.2f): median |H1|/2s = %.3f in [0.5,1.5]; median ell = %.0f > 0; "
                      "mean tries %.0f; %.0fs",
                      sm.s3n2, sm.median_h1_over_2s, sm.median_ell, sm.mean_tries, seconds_since(tb));
        report(9, "phase transition (b): near-supercritical regime", ok, det);
    }
    // (c) as stated: increasing cactus fraction across three s at fixed n
    {
        auto tc = std::chrono::steady_clock::now();
        double frac[3];
        int svals[3] = {32, 100, 171};
        for (int i = 0; i < 3; ++i) {
            SweepConfig cfg;
            cfg.n = 1000;
            cfg.s_value = svals[i];
            cfg.samples = 100;
            cfg.seed = 42;
            cfg.target = 'A';
            SweepSummary sm;
            sweep(cfg, &sm);
            frac[i] = sm.fraction_cactus;
        }
        bool ok = frac[0] < frac[1] && frac[1] < frac[2];
        char det[300];
        std::snprintf(det, sizeof(det),
                      "n=1000, s in {32,100,171} spanning n^(2/3)=100: cactus fractions %.3f, %.3f, %.3f "
                      "(monotone increase asserted as stated; measurement shows the fixed-n trend runs the "
                      "other way); %.0fs",
                      frac[0], frac[1], frac[2], seconds_since(tc));
        report(9, "phase transition (c): cactus fraction across s at fixed n", ok, det);

        // diagnostic, not a gate: the limit trend at fixed s^3/n^2 = 5
        double nt[3];
        int nn[3] = {512, 1728, 4096};
        int ss[3] = {110, 246, 438};
        for (int i = 0; i < 3; ++i) {
            SweepConfig cfg;
            cfg.n = nn[i];
            cfg.s_value = ss[i];
            cfg.samples = 60;
            cfg.seed = 42;
            cfg.target = 'A';
            SweepSummary sm;
            sweep(cfg, &sm);
            nt[i] = sm.fraction_cactus;
        }
        char det2[300];
        std::snprintf(det2, sizeof(det2),
                      "diagnostic: at fixed s^3/n^2 = 5 the cactus fraction grows with n: %.3f (n=512), "
                      "%.3f (n=1728), %.3f (n=4096) -> 1, the contiguity trend; %.0fs total",
                      nt[0], nt[1], nt[2], seconds_since(t0));
        std::puts(det2);
        std::fflush(stdout);
    }
}

void criterion10() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;

    // (C1)/(C2) exhaustively over C(n_C, n_C+ell), n_C <= 6
    long c1_apps = 0;
    for (int nC = 4; nC <= 6; ++nC)
        for (int ell = 1; ell <= nC - 3 + 2; ++ell) {
            if (nC + ell > 2 * nC - 3) continue;
            std::set<std::vector<Edge>> c1_images;
            std::map<std::vector<Edge>, int> c2_count;
            long apps = 0;
            for (uint32_t mask : ctx.members(GraphClass::C, nC, nC + ell)) {
                auto g = ctx.graph_from_mask(nC, mask);
                int b = 0;
                for (const auto& blk : blocks(g).blocks) b += static_cast<int>(chords_of_block(g, blk).size());
                int options = 0;
                for (const Edge& e : g.edges()) {
                    try {
                        auto out = subdivide_C1(g, e);
                        ++apps;
                        ++options;
                        c1_images.insert(out.edges());
                    } catch (const DomainError&) {
                    }
                    for (int v : {e.u, e.v}) {
                        int d = g.degree(v);
                        if (d < 3 || d > 6) continue;
                        try {
                            ++c2_count[relabel_subdivide_C2(g, v, e).edges()];
                        } catch (const DomainError&) {
                        }
                    }
                }
                if (options != nC + ell - b) {
                    ok = false;
                    why += " C1-option-count";
                }
            }
            c1_apps += apps;
            if (static_cast<long>(c1_images.size()) != apps) {
                ok = false;
                why += " C1-injectivity";
            }
            for (const auto& [edges, cnt] : c2_count) {
                if (cnt > 6) {
                    ok = false;
                    why += " C2-multiplicity";
                }
                if (c1_images.count(edges)) {
                    ok = false;
                    why += " C1xC2-overlap";
                }
            }
        }

    // chord rewiring on every applicable instance in the corpus
    long rewires = 0;
    {
        std::vector<Edge> edges;
        for (int i = 1; i < 50; ++i) edges.push_back({i, i + 1});
        edges.push_back({1, 50});
        edges.push_back({1, 41});
        LabeledGraph cyc(50, edges);
        auto w = find_good_chord(cyc, Rat(13, 10));
        if (!w) {
            ok = false;
            why += " witness-missing";
        } else {
            for (long i = 1; i <= w->threshold; ++i) {
                try {
                    rewire_chord(cyc, *w, i);  // verifies preservation internally
                    ++rewires;
                } catch (const DomainError&) {
                } catch (const StructuralError&) {
                    ok = false;
                    why += " rewire-postcondition";
                }
            }
        }
        for (uint32_t mask : ctx.members(GraphClass::C, 8, 9)) {
            auto g = ctx.graph_from_mask(8, mask);
            auto gw = find_good_chord(g, Rat(2));
            if (!gw) continue;
            for (long i = 1; i <= gw->threshold; ++i) {
                try {
                    rewire_chord(g, *gw, i);
                    ++rewires;
                } catch (const DomainError&) {
                } catch (const StructuralError&) {
                    ok = false;
                    why += " rewire-postcondition";
                }
            }
        }
    }

    // three-block splits on every applicable (x, Y, y) in small cores
    long splits = 0;
    for (int nC = 7; nC <= 7; ++nC)
        for (int ell : {2, 3})
            for (uint32_t mask : ctx.members(GraphClass::C, nC, nC + ell)) {
                auto g = ctx.graph_from_mask(nC, mask);
                auto core = core_of(g);
                auto bd = blocks(core);
                for (int x = 1; x <= g.n(); ++x) {
                    if (bd.vertex_block_count[x] < 3) continue;
                    // components of (component of x) - x
                    std::vector<char> seen(g.n() + 1, 0);
                    seen[x] = 1;
                    for (int start : core.neighbors(x)) {
                        if (seen[start]) continue;
                        std::vector<int> comp{start}, stack{start};
                        seen[start] = 1;
                        while (!stack.empty()) {
                            int v = stack.back();
                            stack.pop_back();
                            for (int u : core.neighbors(v))
                                if (!seen[u]) {
                                    seen[u] = 1;
                                    comp.push_back(u);
                                    stack.push_back(u);
                                }
                        }
                        for (int y = 1; y <= g.n(); ++y) {
                            if (core.degree(y) != 2) continue;
                            if (std::find(comp.begin(), comp.end(), y) != comp.end()) continue;
                            try {
                                split_three_block_vertex(g, x, comp, y);
                                ++splits;
                            } catch (const DomainError&) {
                            } catch (const StructuralError&) {
                                ok = false;
                                why += " split-postcondition";
                            }
                        }
                    }
                }
            }

    char det[300];
    std::snprintf(det, sizeof(det),
                  "C1 applications %ld (injective, option count n_C+ell-b); C2 multiplicity <= 6, images "
                  "disjoint; %ld rewires and %ld splits preserve (n,m,n_C,ell) and outerplanarity; %.0fs",
                  c1_apps, rewires, splits, seconds_since(t0));
    report(10, "surgery suite", ok, ok ? det : (why + " |").c_str());
}

} // namespace

int main() {
    std::puts("acceptance suite: exact identities, series targets, sampler laws, trend checks");
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    int fails = 0;
    for (const auto& r : results)
        if (!r.pass) ++fails;
    std::printf("%d of %zu checks failed\n", fails, results.size());
    return fails;
}
