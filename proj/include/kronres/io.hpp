#pragma once

#include <string>

#include "kronres/graph.hpp"

namespace kronres {

/// Thrown for unreadable or malformed input files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"n": int, "edges": [[from,to,weight],...]} with 1-based node labels.
WeightedDigraph graph_from_json(const std::string& text);
std::string graph_to_json(const WeightedDigraph& g);

/// Tab-separated edge list `from<TAB>to<TAB>weight` with a header line,
/// 1-based node labels. Node count is the largest label seen.
WeightedDigraph graph_from_tsv(const std::string& text);

/// Reads a graph file; .tsv is parsed as an edge list, anything else as JSON.
WeightedDigraph load_graph(const std::string& path);

/// Row-major CSV at 17 significant digits.
std::string matrix_to_csv(const Matrix& m);

/// 17-significant-digit decimal rendering used by all emitters.
std::string format_full(double v);

}  // namespace kronres
