#include "nbrisk/uniqueness.hpp"

#include <unordered_map>

#include "nbrisk/parallel.hpp"

namespace nbrisk {

namespace {

double fraction_of(std::size_t count, std::size_t n) {
  return n ? static_cast<double>(count) / static_cast<double>(n) : 0.0;
}

}  // namespace

std::vector<Certificate> neighborhood_certificates(const Graph& g, std::size_t jobs) {
  const std::size_t n = g.node_count();
  std::vector<Certificate> certs(n);
  constexpr std::size_t kChunk = 64;
  parallel_for((n + kChunk - 1) / kChunk, jobs, [&](std::size_t chunk) {
    const std::size_t end = std::min(n, (chunk + 1) * kChunk);
    for (std::size_t v = chunk * kChunk; v < end; ++v) {
      certs[v] = certificate(neighborhood(g, static_cast<NodeId>(v)));
    }
  });
  return certs;
}

std::vector<std::size_t> occurrence_frequencies(const Graph& g, std::size_t jobs) {
  const auto certs = neighborhood_certificates(g, jobs);
  std::unordered_map<Certificate, std::size_t, CertificateHash> class_size;
  class_size.reserve(certs.size());
  for (const auto& c : certs) ++class_size[c];
  std::vector<std::size_t> out(certs.size());
  for (std::size_t v = 0; v < certs.size(); ++v) out[v] = class_size.at(certs[v]);
  return out;
}

double neighborhood_uniqueness(const Graph& g, std::size_t jobs) {
  const auto occurrence = occurrence_frequencies(g, jobs);
  std::size_t unique = 0;
  for (auto o : occurrence) unique += o == 1;
  return fraction_of(unique, occurrence.size());
}

double degree_uniqueness(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> count(n, 0);
  for (NodeId v = 0; v < n; ++v) ++count[g.degree(v)];
  std::size_t unique = 0;
  for (NodeId v = 0; v < n; ++v) unique += count[g.degree(v)] == 1;
  return fraction_of(unique, n);
}

NonemptyStats nonempty_fraction(const Graph& g) {
  NonemptyStats out;
  const auto tri = node_triangles(g);
  std::size_t nonempty = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto& row = out.by_degree[g.degree(v)];
    ++row.nodes;
    if (tri[v] > 0) {
      ++row.nonempty;
      ++nonempty;
    }
  }
  out.fraction = fraction_of(nonempty, g.node_count());
  return out;
}

UniquenessReport uniqueness_report(const Graph& g, std::size_t jobs) {
  UniquenessReport r;
  const auto certs = neighborhood_certificates(g, jobs);
  std::unordered_map<Certificate, std::size_t, CertificateHash> class_size;
  class_size.reserve(certs.size());
  for (const auto& c : certs) ++class_size[c];
  r.classes = class_size.size();
  r.occurrence.resize(certs.size());
  std::size_t unique = 0;
  for (std::size_t v = 0; v < certs.size(); ++v) {
    r.occurrence[v] = class_size.at(certs[v]);
    unique += r.occurrence[v] == 1;
  }
  r.neighborhood_uniqueness = fraction_of(unique, certs.size());
  r.degree_uniqueness = degree_uniqueness(g);
  auto ne = nonempty_fraction(g);
  r.nonempty_fraction = ne.fraction;
  r.nonempty_by_degree = std::move(ne.by_degree);
  return r;
}

}  // namespace nbrisk
