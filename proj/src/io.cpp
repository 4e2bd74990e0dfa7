#include "opg/io.hpp"

#include <istream>
#include <sstream>

#include "json.hpp"

namespace opg {

std::string format_graph(const LabeledGraph& g) {
    std::ostringstream out;
    out << g.n() << ' ' << g.m() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

std::string format_multigraph(const WeightedMultigraph& k) {
    std::ostringstream out;
    out << k.n() << ' ' << k.edge_count() << " #multigraph\n";
    for (const Edge& e : k.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

namespace {

void read_header(std::istream& in, int& n, int& m, bool& multi) {
    std::string line;
    do {
        if (!std::getline(in, line)) throw DomainError("missing graph header");
    } while (line.empty());
    std::istringstream hs(line);
    if (!(hs >> n >> m)) throw DomainError("bad graph header: " + line);
    std::string tag;
    multi = (hs >> tag) && tag == "#multigraph";
}

} // namespace

LabeledGraph parse_graph(std::istream& in) {
    int n, m;
    bool multi;
    read_header(in, n, m, multi);
    if (multi) throw DomainError("expected a simple graph, found #multigraph");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (int i = 0; i < m; ++i) {
        int a, b;
        if (!(in >> a >> b)) throw DomainError("truncated edge list");
        if (a >= b) throw DomainError("graph text format requires u < v per line");
        edges.push_back({a, b});
    }
    return LabeledGraph(n, std::move(edges));
}

WeightedMultigraph parse_multigraph(std::istream& in) {
    int n, m;
    bool multi;
    read_header(in, n, m, multi);
    std::vector<Edge> edges;
    edges.reserve(m);
    for (int i = 0; i < m; ++i) {
        int a, b;
        if (!(in >> a >> b)) throw DomainError("truncated edge list");
        edges.push_back(make_edge(a, b));
    }
    return WeightedMultigraph(n, std::move(edges));
}

std::string decomposition_to_json(const Decomposition& d) {
    nlohmann::json j;
    j["stats"] = {{"n_Q", d.n_Q}, {"n_C", d.n_C}, {"ell", d.ell}, {"n_U", d.n_U}, {"m_U", d.m_U}};
    j["complex_vertices"] = d.complex_vertices;
    j["core_vertices"] = d.core_vertices;
    // the core keeps the original label universe; emit only its edges
    LabeledGraph core_compact = d.core;
    j["core"] = format_graph(core_compact);
    j["kernel"] = format_multigraph(d.kernel);
    j["kernel_labels"] = d.kernel_labels;
    nlohmann::json paths = nlohmann::json::array();
    for (const auto& p : d.kernel_paths) paths.push_back(p);
    j["kernel_paths"] = paths;
    j["kernel_weight"] = {{"num", numerator(d.kernel.weight()).str()},
                          {"den", denominator(d.kernel.weight()).str()}};
    j["kernel_multiplicity_flag"] = d.kernel.has_high_multiplicity();
    return j.dump(2);
}

} // namespace opg
