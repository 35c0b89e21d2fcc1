#ifndef NBRISK_GRAPH_HPP_
#define NBRISK_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nbrisk {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Simple undirected unlabeled graph on nodes 0..n-1, stored as sorted
/// adjacency lists in CSR form. Immutable once built, so a single instance
/// can be read from any number of threads.
///
/// Invariants: no self-loops, no parallel edges, symmetric adjacency, and
/// edge_count() == (sum of degrees) / 2.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on `node_count` nodes. Self-loops and repeated edges (in
  /// either orientation) are dropped. Throws std::out_of_range when an
  /// endpoint is >= node_count.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept;

  bool has_edge(NodeId u, NodeId v) const;

  /// Every edge once as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
};

/// Result of edge-list ingestion: the graph plus what was needed to get there.
struct LoadedGraph {
  Graph graph;
  std::vector<std::string> labels;  // labels[id] is the original token
  std::size_t duplicate_edges = 0;  // includes reversed duplicates
  std::size_t self_loops = 0;
};

/// Parses a line-oriented edge list: one edge per line as two whitespace
/// separated tokens, '#' lines and blank lines ignored. Tokens are remapped to
/// dense ids in order of first appearance. Reversed and repeated edges
/// collapse into one undirected edge; self-loops are dropped and counted.
/// Throws ParseError on a line that does not hold exactly two tokens, or when
/// the input contains no edges at all.
LoadedGraph parse_edge_list(std::string_view text);

/// Reads and parses a file; I/O failures throw std::runtime_error.
LoadedGraph load_edge_list(const std::filesystem::path& path);

/// Serializes as "u v" lines (u < v), using `labels` when given.
std::string format_edge_list(const Graph& g, std::span<const std::string> labels = {});

/// Induced subgraph on the neighbors of v (v itself excluded). Node i of the
/// result is the i-th smallest neighbor of v. Throws std::out_of_range when
/// v >= node_count().
Graph neighborhood(const Graph& g, NodeId v);

/// Number of triangles through each node.
std::vector<std::uint64_t> node_triangles(const Graph& g);

/// Total number of triangles in g.
std::uint64_t triangle_count(const Graph& g);

struct SummaryStats {
  std::size_t n = 0;
  std::size_t m = 0;
  double avg_degree = 0.0;  // 2m / n
  double clustering = 0.0;  // mean local clustering, 0 for nodes of degree < 2
};

/// Throws std::invalid_argument for the empty graph.
SummaryStats summary_stats(const Graph& g);

}  // namespace nbrisk

#endif  // NBRISK_GRAPH_HPP_
