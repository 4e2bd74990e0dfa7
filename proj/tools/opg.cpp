// Command-line front end: exact counts, identity verification, series
// extraction, uniform sampling, phase-transition sweeps, conjecture probes
// and contribution profiles for sparse outerplanar / cactus graphs.

#include <climits>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

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

struct Global {
    uint64_t seed = 0;
    int jobs = 1;
    std::string out;
    std::string format = "csv";
};

std::ostream& open_out(const Global& g, std::ofstream& file) {
    if (g.out.empty()) return std::cout;
    file.open(g.out);
    if (!file) throw DomainError("cannot open output file: " + g.out);
    return file;
}

std::string rat_str(const Rat& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

int cmd_count(const Global& g, const std::string& cls, int n, int m) {
    CountingContext ctx(8, 6, g.jobs);
    GraphClass c = parse_class(cls);
    Rat v = ctx.count(c, n, m);
    if (g.format == "json" || !g.out.empty()) {
        nlohmann::json j;
        j["class"] = to_string(c);
        nlohmann::json entry;
        entry["n"] = n;
        entry["m"] = m;
        entry["count"] = numerator(v).str();
        if (c == GraphClass::K || c == GraphClass::Kc) entry["den"] = denominator(v).str();
        j["entries"] = nlohmann::json::array({entry});
        std::ofstream f;
        open_out(g, f) << j.dump(2) << "\n";
        if (!g.out.empty()) std::cout << rat_str(v) << "\n";
        return 0;
    }
    std::cout << rat_str(v) << "\n";
    return 0;
}

int cmd_verify(const Global& g, const std::string& suite, int max_n) {
    auto reports = verify_suite(suite, max_n, g.jobs);
    bool all = true;
    for (const auto& r : reports) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.details.empty()) std::cout << "  [" << r.details << "]";
        std::cout << "\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

int cmd_series(const Global& g, const std::string& target, int order, const std::string& asym) {
    if (!asym.empty()) {
        if (asym != "Kc") throw DomainError("asymptotics are reported for Kc");
        auto Bu = solve_B_folded(order + 1);
        auto Kc = integrate_unmark_folded(derive_Kc_marked_folded(Bu));
        auto fit = estimate_growth(Kc, order * 4 / 5, order);
        auto rep = singularity_constants();
        nlohmann::json j;
        j["target"] = "Kc";
        j["order"] = order;
        j["rate_estimate"] = fit.rate_estimate;
        j["rate_closed_form"] = 1.0 / rep.r;
        j["poly_exponent_estimate"] = fit.poly_exponent_estimate;
        j["poly_exponent_expected"] = -2.5;
        j["constant_estimate"] = fit.constant_estimate;
        j["window"] = {fit.window_lo, fit.window_hi};
        std::ofstream f;
        open_out(g, f) << j.dump(2) << "\n";
        return 0;
    }
    Series s;
    if (target == "B") {
        s = solve_B(order);
    } else if (target == "Kc" || target == "K") {
        auto B = solve_B(order);
        auto Kc = integrate_unmark(derive_Kc_marked(B));
        s = target == "Kc" ? Kc : exp_connected_to_all(Kc);
    } else {
        throw DomainError("series target must be B, Kc or K");
    }
    nlohmann::json j;
    j["target"] = target;
    j["order"] = order;
    nlohmann::json coeffs = nlohmann::json::array();
    for (int k = 0; k <= s.order(); ++k) coeffs.push_back(rat_str(s[k]));
    j["coefficients"] = coeffs;
    std::ofstream f;
    open_out(g, f) << j.dump(2) << "\n";
    return 0;
}

int cmd_sample(const Global& g, const std::string& cls, int n, long m, long count, long max_tries) {
    std::ofstream f;
    std::ostream& out = open_out(g, f);
    for (long i = 0; i < count; ++i) {
        RngStream rng(g.seed, static_cast<uint64_t>(i));
        if (cls == "G") {
            auto graph = sample_gnm(n, m, rng);
            out << "# sample " << i << " tries 1\n" << format_graph(graph);
        } else if (cls == "A" || cls == "T") {
            auto rec =
                sample_rejection(n, m, cls == "A" ? Target::outerplanar : Target::cactus, rng, max_tries);
            if (rec.accepted)
                out << "# sample " << i << " tries " << rec.tries << "\n" << format_graph(rec.graph);
            else
                out << "# sample " << i << " tries " << rec.tries << " not-accepted\n";
        } else {
            throw DomainError("sample class must be A, T or G");
        }
    }
    return 0;
}

int cmd_sweep(const Global& g, SweepConfig cfg) {
    cfg.seed = g.seed;
    cfg.jobs = g.jobs;
    SweepSummary sm;
    auto rows = sweep(cfg, &sm);
    nlohmann::json js;
    js["n"] = sm.n;
    js["m"] = sm.m;
    js["s"] = sm.s;
    js["s3n2"] = sm.s3n2;
    js["samples"] = sm.samples;
    js["accepted"] = sm.accepted;
    js["median_h1_over_2s"] = sm.median_h1_over_2s;
    js["iqr_h1_over_2s"] = {sm.iqr_lo_h1_over_2s, sm.iqr_hi_h1_over_2s};
    js["median_nc_scaled"] = sm.median_nc_scaled;
    js["median_ell_scaled"] = sm.median_ell_scaled;
    js["median_ell"] = sm.median_ell;
    js["fraction_cactus"] = sm.fraction_cactus;
    js["fraction_h1_tree"] = sm.fraction_h1_tree;
    js["mean_tries"] = sm.mean_tries;
    if (g.format == "json") {
        nlohmann::json j;
        j["summary"] = js;
        j["header"] = csv_header();
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) arr.push_back(csv_row(r));
        j["rows_csv"] = arr;
        std::ofstream f;
        open_out(g, f) << j.dump(2) << "\n";
        return 0;
    }
    std::ofstream f;
    std::ostream& out = open_out(g, f);
    out << csv_header() << "\n";
    for (const auto& r : rows) out << csv_row(r) << "\n";
    (g.out.empty() ? std::cerr : std::cout) << js.dump(2) << "\n";
    return 0;
}

int cmd_probe(const Global& g, int n, const std::string& alphas, const std::string& tvals, long samples,
              long max_tries) {
    std::vector<long> ms;
    auto split = [](const std::string& s) {
        std::vector<double> vals;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
        return vals;
    };
    if (!alphas.empty())
        for (double a : split(alphas)) ms.push_back(std::lround(a * n));
    if (!tvals.empty())
        for (double t : split(tvals)) ms.push_back(n + std::lround(t));
    if (ms.empty()) throw DomainError("probe needs --alphas or --t-values");
    CountingContext ctx(8, 6, g.jobs);
    auto rows = conjecture_probe(ms, n, samples, g.seed, max_tries, ctx);
    std::ofstream f;
    std::ostream& out = open_out(g, f);
    out << "alpha,m,samples,accepted,cactus,p_hat,ci_lo,ci_hi,exact\n";
    for (const auto& r : rows) {
        char buf[200];
        std::snprintf(buf, sizeof(buf), "%.6g,%ld,%ld,%ld,%ld,%.6g,%.6g,%.6g,%d", r.alpha, r.m, r.samples,
                      r.accepted, r.cactus, r.p_hat, r.ci_lo, r.ci_hi, r.exact ? 1 : 0);
        out << buf << "\n";
    }
    return 0;
}

int cmd_profile(const Global& g, int n, int m) {
    CountingContext ctx(8, 6, g.jobs);
    auto pr = profile_contributions(n, m, ctx);
    nlohmann::json j;
    j["n"] = n;
    j["m"] = m;
    j["total"] = pr.total.str();
    nlohmann::json joint = nlohmann::json::array();
    for (const auto& [k, v] : pr.joint)
        joint.push_back({{"n_Q", k.first}, {"ell", k.second}, {"tau", v.str()}});
    j["joint"] = joint;
    nlohmann::json cond = nlohmann::json::array();
    for (const auto& [k, v] : pr.conditional)
        cond.push_back(
            {{"n_Q", std::get<0>(k)}, {"ell", std::get<1>(k)}, {"n_C", std::get<2>(k)}, {"mass", v.str()}});
    j["conditional"] = cond;
    auto winjson = [](const ContributionProfile::Window& w) {
        return nlohmann::json{{"n_Q", {w.nq_lo, w.nq_hi}},
                              {"ell", {w.ell_lo, w.ell_hi}},
                              {"mass", w.mass.convert_to<double>()}};
    };
    j["window_99"] = winjson(pr.window99);
    j["window_999"] = winjson(pr.window999);
    std::ofstream f;
    open_out(g, f) << j.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "exact counting, decomposition, sampling and experiments for sparse outerplanar and cactus graphs"};
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    app.add_option("--seed", g.seed, "base RNG seed");
    app.add_option("--jobs", g.jobs, "worker threads");
    app.add_option("--out", g.out, "output path (default stdout)");
    app.add_option("--format", g.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    auto* count = app.add_subcommand("count", "exact class count at brute-force scale");
    std::string count_cls = "A";
    int cn = 4, cm = 5;
    count->add_option("--class", count_cls, "A|T|U|Q|Q_C|C|C_C|K_cubic_cactus|K_cubic_cactus_connected");
    count->add_option("--n", cn)->required();
    count->add_option("--m", cm)->required();

    auto* verify = app.add_subcommand("verify", "run exact identity and oracle suites");
    std::string suite = "all";
    int max_n = 7;
    verify->add_option("--suite", suite, "eq1|eq2|lemma31|appendixB|series|counts|sampler|all");
    verify->add_option("--max-n", max_n);

    auto* series = app.add_subcommand("series", "generating-function coefficients and growth fits");
    std::string target = "B", asym;
    int order = 100;
    series->add_option("--target", target, "B|Kc|K");
    series->add_option("--order", order);
    series->add_option("--asymptotics", asym, "emit the growth-fit report for the given series");

    auto* sample = app.add_subcommand("sample", "uniform samples of A(n,m), T(n,m) or G(n,m)");
    std::string scls = "A";
    int sn = 100;
    long smm = 60, scount = 10, smax = 1000000;
    sample->add_option("--class", scls, "A|T|G");
    sample->add_option("--n", sn)->required();
    sample->add_option("--m", smm)->required();
    sample->add_option("--count", scount);
    sample->add_option("--max-tries", smax);

    auto* sweepc = app.add_subcommand("sweep", "phase-transition sweep, one CSV row per sample");
    SweepConfig cfg;
    long s_fixed = LONG_MIN;
    sweepc->add_option("--n", cfg.n)->required();
    sweepc->add_option("--s", s_fixed, "fixed s (overrides coef/exp)");
    sweepc->add_option("--s-coef", cfg.s_coef);
    sweepc->add_option("--s-exp", cfg.s_exp);
    sweepc->add_flag("--s-neg", cfg.s_negative, "negate s");
    sweepc->add_option("--samples", cfg.samples);
    std::string sweep_cls = "A";
    sweepc->add_option("--class", sweep_cls, "A|T|G");
    sweepc->add_option("--max-tries", cfg.max_tries);

    auto* probe = app.add_subcommand("probe", "cactus-probability estimates across m");
    int pn = 1000;
    std::string alphas, tvals;
    long psamples = 100, pmax = 1000000;
    probe->add_option("--n", pn)->required();
    probe->add_option("--alphas", alphas, "comma-separated m/n values");
    probe->add_option("--t-values", tvals, "comma-separated t with m = n + t");
    probe->add_option("--samples", psamples);
    probe->add_option("--max-tries", pmax);

    auto* profile = app.add_subcommand("profile", "exact contribution profile of equations (1)-(2)");
    int prn = 6, prm = 7;
    profile->add_option("--n", prn)->required();
    profile->add_option("--m", prm)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (*count) return cmd_count(g, count_cls, cn, cm);
        if (*verify) return cmd_verify(g, suite, max_n);
        if (*series) return cmd_series(g, target, order, asym);
        if (*sample) return cmd_sample(g, scls, sn, smm, scount, smax);
        if (*sweepc) {
            if (s_fixed != LONG_MIN) cfg.s_value = s_fixed;
            cfg.target = sweep_cls.empty() ? 'A' : sweep_cls[0];
            return cmd_sweep(g, cfg);
        }
        if (*probe) return cmd_probe(g, pn, alphas, tvals, psamples, pmax);
        if (*profile) return cmd_profile(g, prn, prm);
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 3;
}
