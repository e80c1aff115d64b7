#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "netxmit/graph.hpp"

namespace netxmit {

void write_edge_list(std::ostream& os, const Graph& g) {
  os << (g.directed() ? "directed " : "undirected ") << g.node_count() << '\n';
  for (const Edge& e : g.edges()) os << e.from << ' ' << e.to << '\n';
}

Graph read_edge_list(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] != '#') return true;
    }
    return false;
  };

  if (!next_content_line()) throw std::runtime_error("edge list: missing header");
  std::istringstream header(line);
  std::string kind;
  long long n = -1;
  header >> kind >> n;
  if ((kind != "directed" && kind != "undirected") || n < 0) {
    throw std::runtime_error("edge list: bad header '" + line + "'");
  }

  std::vector<Edge> edges;
  while (next_content_line()) {
    std::istringstream row(line);
    long long u = -1, v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0 || u >= n || v >= n) {
      throw std::runtime_error("edge list: bad edge on line " + std::to_string(line_no));
    }
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  return Graph::from_edges(static_cast<std::size_t>(n), kind == "directed", edges);
}

}  // namespace netxmit
