#include "nbrisk/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "nbrisk/error.hpp"

namespace nbrisk {

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw std::out_of_range("edge endpoint outside node range");
    }
    if (u == v) continue;
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  Graph g;
  g.offsets_.assign(node_count + 1, 0);
  for (auto [u, v] : directed) ++g.offsets_[u + 1];
  for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adjacency_.reserve(directed.size());
  for (auto [u, v] : directed) g.adjacency_.push_back(v);
  return g;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v + 1 < offsets_.size(); ++v) {
    best = std::max(best, offsets_[v + 1] - offsets_[v]);
  }
  return best;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

}  // namespace

LoadedGraph parse_edge_list(std::string_view text) {
  LoadedGraph out;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<Edge> edges;
  auto intern = [&](std::string_view token) {
    auto [it, inserted] = ids.try_emplace(std::string(token), static_cast<NodeId>(out.labels.size()));
    if (inserted) out.labels.emplace_back(token);
    return it->second;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::string_view tokens[3];
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size() || line[i] == '#') continue;
    while (i < line.size()) {
      std::size_t start = i;
      while (i < line.size() && !is_space(line[i])) ++i;
      if (count < 3) tokens[count] = line.substr(start, i - start);
      ++count;
      while (i < line.size() && is_space(line[i])) ++i;
    }
    if (count != 2) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 2 node tokens, found " +
                           std::to_string(count),
                       line_no);
    }
    NodeId u = intern(tokens[0]);
    NodeId v = intern(tokens[1]);
    if (u == v) {
      ++out.self_loops;
      continue;
    }
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }

  if (out.labels.empty()) throw ParseError("edge list is empty", 0);

  const std::size_t raw = edges.size();
  out.graph = Graph::from_edges(out.labels.size(), edges);
  out.duplicate_edges = raw - out.graph.edge_count();
  return out;
}

LoadedGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::runtime_error("read failed: " + path.string());
  return parse_edge_list(buffer.str());
}

std::string format_edge_list(const Graph& g, std::span<const std::string> labels) {
  std::string out;
  for (auto [u, v] : g.edges()) {
    if (labels.empty()) {
      out += std::to_string(u);
      out += ' ';
      out += std::to_string(v);
    } else {
      out += labels[u];
      out += ' ';
      out += labels[v];
    }
    out += '\n';
  }
  return out;
}

Graph neighborhood(const Graph& g, NodeId v) {
  if (v >= g.node_count()) throw std::out_of_range("node index out of range");
  auto members = g.neighbors(v);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < members.size(); ++i) {
    auto adj = g.neighbors(members[i]);
    // Both lists are sorted: merge to find members adjacent to members[i].
    auto a = adj.begin();
    for (NodeId j = i + 1; j < members.size() && a != adj.end(); ++j) {
      a = std::lower_bound(a, adj.end(), members[j]);
      if (a != adj.end() && *a == members[j]) edges.emplace_back(i, j);
    }
  }
  return Graph::from_edges(members.size(), edges);
}

std::vector<std::uint64_t> node_triangles(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint64_t> count(n, 0);
  std::vector<char> mark(n, 0);
  // Each triangle u < v < w is found once from its smallest vertex.
  for (NodeId u = 0; u < n; ++u) {
    auto adj_u = g.neighbors(u);
    for (NodeId x : adj_u) mark[x] = 1;
    for (NodeId v : adj_u) {
      if (v <= u) continue;
      for (NodeId w : g.neighbors(v)) {
        if (w <= v || !mark[w]) continue;
        ++count[u];
        ++count[v];
        ++count[w];
      }
    }
    for (NodeId x : adj_u) mark[x] = 0;
  }
  return count;
}

std::uint64_t triangle_count(const Graph& g) {
  std::uint64_t sum = 0;
  for (auto t : node_triangles(g)) sum += t;
  return sum / 3;
}

SummaryStats summary_stats(const Graph& g) {
  if (g.node_count() == 0) throw std::invalid_argument("summary_stats requires n >= 1");
  SummaryStats s;
  s.n = g.node_count();
  s.m = g.edge_count();
  s.avg_degree = 2.0 * static_cast<double>(s.m) / static_cast<double>(s.n);
  const auto tri = node_triangles(g);
  double total = 0.0;
  for (NodeId v = 0; v < s.n; ++v) {
    const double k = static_cast<double>(g.degree(v));
    if (k >= 2) total += static_cast<double>(tri[v]) / (k * (k - 1) / 2.0);
  }
  s.clustering = total / static_cast<double>(s.n);
  return s;
}

}  // namespace nbrisk
