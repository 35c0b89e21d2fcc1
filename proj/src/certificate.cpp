#include "nbrisk/certificate.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string_view>

#include "nbrisk/error.hpp"

namespace nbrisk {

std::string Certificate::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (std::uint8_t b : bytes_) {
    out += kDigits[b >> 4];
    out += kDigits[b & 0xf];
  }
  return out;
}

std::size_t CertificateHash::operator()(const Certificate& c) const noexcept {
  auto bytes = c.bytes();
  return std::hash<std::string_view>{}(
      std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

namespace {

using Bytes = std::vector<std::uint8_t>;

void put_varint(Bytes& out, std::uint64_t x) {
  while (x >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(x | 0x80));
    x >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(x));
}

Bytes edgeless_code(std::size_t n) {
  Bytes out{'E'};
  put_varint(out, n);
  return out;
}

Bytes matching_code(std::size_t n, std::size_t m) {
  Bytes out{'M'};
  put_varint(out, n);
  put_varint(out, m);
  return out;
}

// Dense adjacency bit matrix; row v holds the neighbors of v.
class BitGraph {
 public:
  explicit BitGraph(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  static BitGraph from_graph(const Graph& g) {
    BitGraph b(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
      for (NodeId v : g.neighbors(u)) b.set(u, v);
    }
    return b;
  }

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }

  bool test(std::size_t u, std::size_t v) const {
    return (bits_[u * words_ + v / 64] >> (v % 64)) & 1U;
  }
  void set(std::size_t u, std::size_t v) {
    bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  }
  const std::uint64_t* row(std::size_t u) const { return bits_.data() + u * words_; }

  std::size_t degree(std::size_t u) const {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += std::popcount(row(u)[w]);
    return d;
  }

  template <typename F>
  void for_each_neighbor(std::size_t u, F&& f) const {
    const std::uint64_t* r = row(u);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = r[w];
      while (word) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
  }

  BitGraph induced(std::span<const std::uint32_t> vertices) const {
    BitGraph sub(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      for (std::size_t j = i + 1; j < vertices.size(); ++j) {
        if (test(vertices[i], vertices[j])) {
          sub.set(i, j);
          sub.set(j, i);
        }
      }
    }
    return sub;
  }

  BitGraph complement() const {
    BitGraph co(n_);
    for (std::size_t u = 0; u < n_; ++u) {
      for (std::size_t w = 0; w < words_; ++w) co.bits_[u * words_ + w] = ~row(u)[w];
      if (n_ % 64 != 0) co.bits_[u * words_ + words_ - 1] &= (std::uint64_t{1} << (n_ % 64)) - 1;
      co.bits_[u * words_ + u / 64] &= ~(std::uint64_t{1} << (u % 64));
    }
    return co;
  }

  // Connected components, each as an ascending vertex list; components are
  // ordered by their smallest vertex.
  std::vector<std::vector<std::uint32_t>> components() const {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<char> seen(n_, 0);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < n_; ++s) {
      if (seen[s]) continue;
      auto& comp = out.emplace_back();
      seen[s] = 1;
      stack.push_back(s);
      while (!stack.empty()) {
        std::uint32_t u = stack.back();
        stack.pop_back();
        comp.push_back(u);
        for_each_neighbor(u, [&](std::size_t v) {
          if (!seen[v]) {
            seen[v] = 1;
            stack.push_back(static_cast<std::uint32_t>(v));
          }
        });
      }
      std::sort(comp.begin(), comp.end());
    }
    return out;
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

// Ordered partition of the vertex set. Cells are contiguous ranges of `order`
// identified by their start index.
struct Partition {
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> pos;       // pos[v]: index of v in order
  std::vector<std::uint32_t> cell_of;   // cell_of[v]: start of v's cell
  std::vector<std::uint32_t> cell_end;  // cell_end[start]: one past the cell
  std::size_t cells = 0;

  explicit Partition(std::size_t n)
      : order(n), pos(n), cell_of(n, 0), cell_end(n, 0), cells(n ? 1 : 0) {
    std::iota(order.begin(), order.end(), 0U);
    std::iota(pos.begin(), pos.end(), 0U);
    if (n) cell_end[0] = static_cast<std::uint32_t>(n);
  }

  bool discrete() const { return cells == order.size(); }
};

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const BitGraph& g) : g_(g), n_(g.size()) {
    adjacency_.resize(n_);
    for (std::size_t u = 0; u < n_; ++u) {
      g_.for_each_neighbor(u, [&](std::size_t v) {
        adjacency_[u].push_back(static_cast<std::uint32_t>(v));
      });
    }
    classify_twins();
    count_.assign(n_, 0);
    in_queue_.assign(n_, 0);
  }

  // Upper-triangle adjacency bits (MSB-first within each word) under the
  // least labeling found.
  std::vector<std::uint64_t> run() {
    Partition p(n_);
    refine(p, {0});
    std::vector<std::uint32_t> prefix;
    search(p, prefix);
    return best_;
  }

 private:
  // Vertices with identical open (false twins) or closed (true twins)
  // neighborhoods; swapping two twins is an automorphism.
  void classify_twins() {
    false_twin_.assign(n_, 0);
    true_twin_.assign(n_, 0);
    const std::size_t words = g_.words();
    auto group = [&](bool closed, std::vector<std::uint32_t>& cls) {
      std::vector<std::vector<std::uint64_t>> rows(n_);
      for (std::size_t u = 0; u < n_; ++u) {
        rows[u].assign(g_.row(u), g_.row(u) + words);
        if (closed) rows[u][u / 64] |= std::uint64_t{1} << (u % 64);
      }
      std::vector<std::uint32_t> idx(n_);
      std::iota(idx.begin(), idx.end(), 0U);
      std::stable_sort(idx.begin(), idx.end(),
                       [&](std::uint32_t a, std::uint32_t b) { return rows[a] < rows[b]; });
      std::uint32_t id = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i > 0 && rows[idx[i]] != rows[idx[i - 1]]) ++id;
        cls[idx[i]] = id;
      }
    };
    group(false, false_twin_);
    group(true, true_twin_);
  }

  void push_splitter(std::vector<std::uint32_t>& queue, std::uint32_t start) {
    if (!in_queue_[start]) {
      in_queue_[start] = 1;
      queue.push_back(start);
    }
  }

  // Refines p to the coarsest equitable partition finer than it, using the
  // given cells as initial splitters.
  void refine(Partition& p, std::vector<std::uint32_t> queue) {
    for (auto s : queue) in_queue_[s] = 1;
    std::size_t head = 0;
    std::vector<std::uint32_t> splitter;
    std::vector<std::uint32_t> touched;
    std::vector<std::uint32_t> touched_cells;
    while (head < queue.size()) {
      const std::uint32_t s = queue[head++];
      in_queue_[s] = 0;
      splitter.assign(p.order.begin() + s, p.order.begin() + p.cell_end[s]);

      touched.clear();
      for (auto w : splitter) {
        for (auto x : adjacency_[w]) {
          if (count_[x]++ == 0) touched.push_back(x);
        }
      }
      touched_cells.clear();
      for (auto x : touched) touched_cells.push_back(p.cell_of[x]);
      std::sort(touched_cells.begin(), touched_cells.end());
      touched_cells.erase(std::unique(touched_cells.begin(), touched_cells.end()),
                          touched_cells.end());

      for (auto c : touched_cells) {
        const std::uint32_t e = p.cell_end[c];
        if (e - c < 2) continue;
        auto first = p.order.begin() + c;
        auto last = p.order.begin() + e;
        const std::uint32_t k0 = count_[*first];
        if (std::all_of(first, last, [&](std::uint32_t v) { return count_[v] == k0; })) continue;

        std::sort(first, last, [&](std::uint32_t a, std::uint32_t b) {
          return count_[a] < count_[b] || (count_[a] == count_[b] && a < b);
        });
        // Fragments in position order.
        std::vector<std::uint32_t> starts;
        for (std::uint32_t i = c; i < e; ++i) {
          const std::uint32_t v = p.order[i];
          p.pos[v] = i;
          if (i == c || count_[v] != count_[p.order[i - 1]]) starts.push_back(i);
        }
        for (std::size_t f = 0; f < starts.size(); ++f) {
          const std::uint32_t fs = starts[f];
          const std::uint32_t fe = f + 1 < starts.size() ? starts[f + 1] : e;
          p.cell_end[fs] = fe;
          for (std::uint32_t i = fs; i < fe; ++i) p.cell_of[p.order[i]] = fs;
        }
        p.cells += starts.size() - 1;

        if (in_queue_[c]) {
          for (std::size_t f = 1; f < starts.size(); ++f) push_splitter(queue, starts[f]);
        } else {
          std::size_t largest = 0;
          std::uint32_t largest_size = 0;
          for (std::size_t f = 0; f < starts.size(); ++f) {
            const std::uint32_t fe = f + 1 < starts.size() ? starts[f + 1] : e;
            if (fe - starts[f] > largest_size) {
              largest_size = fe - starts[f];
              largest = f;
            }
          }
          for (std::size_t f = 0; f < starts.size(); ++f) {
            if (f != largest) push_splitter(queue, starts[f]);
          }
        }
      }
      for (auto x : touched) count_[x] = 0;
      if (p.discrete()) {
        for (std::size_t i = head; i < queue.size(); ++i) in_queue_[queue[i]] = 0;
        break;
      }
    }
  }

  // Splits v off the front of its cell and refines.
  void individualize(Partition& p, std::uint32_t v) {
    const std::uint32_t c = p.cell_of[v];
    const std::uint32_t e = p.cell_end[c];
    const std::uint32_t u = p.order[c];
    std::swap(p.order[c], p.order[p.pos[v]]);
    p.pos[u] = p.pos[v];
    p.pos[v] = c;
    p.cell_end[c] = c + 1;
    p.cell_end[c + 1] = e;
    for (std::uint32_t i = c + 1; i < e; ++i) p.cell_of[p.order[i]] = c + 1;
    ++p.cells;
    refine(p, {c});
  }

  std::uint32_t target_cell(const Partition& p) const {
    std::uint32_t best = 0;
    std::uint32_t best_size = 0;
    for (std::uint32_t c = 0; c < n_; c = p.cell_end[c]) {
      const std::uint32_t size = p.cell_end[c] - c;
      if (size > 1 && (best_size == 0 || size < best_size)) {
        best = c;
        best_size = size;
      }
    }
    return best;
  }

  std::vector<std::uint64_t> leaf_code(const Partition& p) const {
    const std::size_t bits = n_ * (n_ - 1) / 2;
    std::vector<std::uint64_t> code((bits + 63) / 64, 0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      const std::uint32_t u = p.order[i];
      for (std::size_t j = i + 1; j < n_; ++j, ++k) {
        if (g_.test(u, p.order[j])) code[k / 64] |= std::uint64_t{1} << (63 - k % 64);
      }
    }
    return code;
  }

  void visit_leaf(const Partition& p) {
    auto code = leaf_code(p);
    if (best_order_.empty() || code < best_) {
      best_ = std::move(code);
      best_order_ = p.order;
    } else if (code == best_) {
      std::vector<std::uint32_t> gamma(n_);
      bool identity = true;
      for (std::size_t i = 0; i < n_; ++i) {
        gamma[best_order_[i]] = p.order[i];
        identity = identity && best_order_[i] == p.order[i];
      }
      if (!identity) automorphisms_.push_back(std::move(gamma));
    }
  }

  // Orbit representative of v under the stored automorphisms that fix every
  // vertex of the prefix.
  struct Orbits {
    std::vector<std::uint32_t> parent;
    std::uint32_t find(std::uint32_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    }
  };

  Orbits stabilizer_orbits(const std::vector<std::uint32_t>& prefix) const {
    Orbits o;
    o.parent.resize(n_);
    std::iota(o.parent.begin(), o.parent.end(), 0U);
    for (const auto& gamma : automorphisms_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(),
                               [&](std::uint32_t v) { return gamma[v] == v; });
      if (!fixes) continue;
      for (std::uint32_t v = 0; v < n_; ++v) {
        std::uint32_t a = o.find(v);
        std::uint32_t b = o.find(gamma[v]);
        if (a != b) o.parent[std::max(a, b)] = std::min(a, b);
      }
    }
    return o;
  }

  void search(const Partition& p, std::vector<std::uint32_t>& prefix) {
    if (p.discrete()) {
      visit_leaf(p);
      return;
    }
    const std::uint32_t c = target_cell(p);
    std::vector<std::uint32_t> members(p.order.begin() + c, p.order.begin() + p.cell_end[c]);
    std::sort(members.begin(), members.end());

    std::vector<std::uint32_t> explored;
    std::size_t known_automorphisms = static_cast<std::size_t>(-1);
    Orbits orbits;
    for (std::uint32_t v : members) {
      bool redundant = std::any_of(explored.begin(), explored.end(), [&](std::uint32_t w) {
        return false_twin_[w] == false_twin_[v] || true_twin_[w] == true_twin_[v];
      });
      if (!redundant && !explored.empty() && !automorphisms_.empty()) {
        if (known_automorphisms != automorphisms_.size()) {
          orbits = stabilizer_orbits(prefix);
          known_automorphisms = automorphisms_.size();
        }
        const std::uint32_t root = orbits.find(v);
        redundant = std::any_of(explored.begin(), explored.end(),
                                [&](std::uint32_t w) { return orbits.find(w) == root; });
      }
      if (redundant) continue;

      Partition child = p;
      individualize(child, v);
      prefix.push_back(v);
      search(child, prefix);
      prefix.pop_back();
      explored.push_back(v);
    }
  }

  const BitGraph& g_;
  std::size_t n_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::vector<std::uint32_t> false_twin_;
  std::vector<std::uint32_t> true_twin_;
  std::vector<std::uint32_t> count_;
  std::vector<char> in_queue_;
  std::vector<std::uint64_t> best_;
  std::vector<std::uint32_t> best_order_;
  std::vector<std::vector<std::uint32_t>> automorphisms_;
};

Bytes canonical_code(const BitGraph& g) {
  const std::size_t n = g.size();
  std::size_t degree_sum = 0;
  std::size_t max_degree = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const std::size_t d = g.degree(u);
    degree_sum += d;
    max_degree = std::max(max_degree, d);
  }
  if (degree_sum == 0) return edgeless_code(n);
  if (max_degree <= 1) return matching_code(n, degree_sum / 2);

  auto components = g.components();
  if (components.size() > 1) {
    std::vector<Bytes> parts;
    parts.reserve(components.size());
    for (const auto& comp : components) parts.push_back(canonical_code(g.induced(comp)));
    std::sort(parts.begin(), parts.end());
    Bytes out{'U'};
    put_varint(out, parts.size());
    for (const auto& part : parts) {
      put_varint(out, part.size());
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }

  BitGraph co = g.complement();
  if (co.components().size() > 1) {
    Bytes out{'C'};
    auto inner = canonical_code(co);
    out.insert(out.end(), inner.begin(), inner.end());
    return out;
  }

  CanonicalSearch search(g);
  const auto words = search.run();
  Bytes out{'G'};
  put_varint(out, n);
  const std::size_t bits = n * (n - 1) / 2;
  for (std::size_t b = 0; b < (bits + 7) / 8; ++b) {
    out.push_back(static_cast<std::uint8_t>(words[b / 8] >> (56 - 8 * (b % 8))));
  }
  return out;
}

}  // namespace

Certificate certificate(const Graph& g) {
  const std::size_t n = g.node_count();
  const std::size_t m = g.edge_count();
  if (m == 0) return Certificate(edgeless_code(n));
  if (g.max_degree() <= 1) return Certificate(matching_code(n, m));
  return Certificate(canonical_code(BitGraph::from_graph(g)));
}

bool are_isomorphic_oracle(const Graph& a, const Graph& b) {
  if (a.node_count() > kOracleMaxNodes || b.node_count() > kOracleMaxNodes) {
    throw ParameterError("isomorphism oracle is limited to " + std::to_string(kOracleMaxNodes) +
                         " nodes");
  }
  const std::size_t n = a.node_count();
  if (n != b.node_count() || a.edge_count() != b.edge_count()) return false;

  auto degrees = [](const Graph& g) {
    std::vector<std::size_t> d(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) d[v] = g.degree(v);
    return d;
  };
  const auto deg_a = degrees(a);
  const auto deg_b = degrees(b);
  auto sorted_a = deg_a;
  auto sorted_b = deg_b;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  if (sorted_a != sorted_b) return false;

  std::vector<char> adj_b(n * n, 0);
  for (auto [u, v] : b.edges()) adj_b[u * n + v] = adj_b[v * n + u] = 1;
  const auto edges_a = a.edges();

  std::vector<NodeId> map(n);
  std::iota(map.begin(), map.end(), NodeId{0});
  do {
    bool ok = true;
    for (NodeId v = 0; v < n && ok; ++v) ok = deg_a[v] == deg_b[map[v]];
    for (std::size_t e = 0; e < edges_a.size() && ok; ++e) {
      ok = adj_b[map[edges_a[e].first] * n + map[edges_a[e].second]] != 0;
    }
    if (ok) return true;
  } while (std::next_permutation(map.begin(), map.end()));
  return false;
}

}  // namespace nbrisk
