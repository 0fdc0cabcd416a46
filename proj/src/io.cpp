#include "kronres/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kronres {

namespace {

using nlohmann::json;

WeightedDigraph graph_from_parsed(int n, const std::vector<Edge>& edges_1based) {
  std::vector<Edge> edges;
  edges.reserve(edges_1based.size());
  for (const Edge& e : edges_1based) {
    if (e.from < 1 || e.to < 1) throw ParseError("node labels are 1-based and must be >= 1");
    edges.push_back({e.from - 1, e.to - 1, e.weight});
  }
  try {
    return build_graph(n, edges);
  } catch (const PreconditionError& err) {
    throw ParseError(std::string("invalid graph: ") + err.what());
  }
}

}  // namespace

WeightedDigraph graph_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
    throw ParseError("graph JSON must be an object with \"n\" and \"edges\"");
  }
  if (!j["n"].is_number_integer() || !j["edges"].is_array()) {
    throw ParseError("\"n\" must be an integer and \"edges\" an array");
  }
  int n = j["n"].get<int>();
  std::vector<Edge> edges;
  for (const auto& item : j["edges"]) {
    if (!item.is_array() || item.size() != 3) {
      throw ParseError("each edge must be [from, to, weight]");
    }
    edges.push_back({item[0].get<int>(), item[1].get<int>(), item[2].get<double>()});
  }
  return graph_from_parsed(n, edges);
}

std::string graph_to_json(const WeightedDigraph& g) {
  json j;
  j["n"] = g.size();
  j["edges"] = json::array();
  for (const Edge& e : g.edges()) {
    j["edges"].push_back({e.from + 1, e.to + 1, e.weight});
  }
  return j.dump();
}

WeightedDigraph graph_from_tsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty TSV input");
  std::vector<Edge> edges;
  int max_label = 1;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    Edge e;
    if (!(row >> e.from >> e.to >> e.weight)) {
      throw ParseError("malformed TSV edge at line " + std::to_string(line_no));
    }
    max_label = std::max({max_label, e.from, e.to});
    edges.push_back(e);
  }
  return graph_from_parsed(max_label, edges);
}

WeightedDigraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".tsv") == 0) {
    return graph_from_tsv(buf.str());
  }
  return graph_from_json(buf.str());
}

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string matrix_to_csv(const Matrix& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_full(m(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace kronres
