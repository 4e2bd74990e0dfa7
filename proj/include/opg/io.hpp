#ifndef OPG_IO_HPP
#define OPG_IO_HPP

#include <iosfwd>
#include <string>

#include "opg/decompose.hpp"
#include "opg/graph.hpp"

namespace opg {

// Text format: first line "n m", then m lines "u v" with 1 <= u < v <= n.
// The multigraph variant allows u = v and repeated lines and marks its
// first line "n m #multigraph".
std::string format_graph(const LabeledGraph& g);
std::string format_multigraph(const WeightedMultigraph& k);
LabeledGraph parse_graph(std::istream& in);
WeightedMultigraph parse_multigraph(std::istream& in);

// Decomposition as JSON: the stats block plus core and kernel embedded in
// the text formats above.
std::string decomposition_to_json(const Decomposition& d);

} // namespace opg

#endif
