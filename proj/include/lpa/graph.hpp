#pragma once

// Finitely presented directed graphs: finitely many vertices, named explicit
// edges and named bundles. A bundle src => dst stands for countably many
// parallel edges; representatives "bundle#i" can be minted on demand.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lpa {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using VertexSet = std::set<VertexId>;

/// Raw description of a graph, as read from JSON, before validation.
struct GraphSpec {
  struct Arc {
    std::string name;
    std::string src;
    std::string dst;
    bool operator==(const Arc&) const = default;
  };
  std::vector<std::string> vertices;
  std::vector<Arc> edges;
  std::vector<Arc> bundles;
  bool operator==(const GraphSpec&) const = default;
};

enum class VertexKind { Sink, Regular, InfiniteEmitter };

std::string_view to_string(VertexKind kind);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> errors;
  std::map<std::string, VertexKind> kinds;
};

/// A finite path. Length-0 paths are vertices; the source is stored
/// explicitly so that trivial paths stay distinguishable.
struct Path {
  VertexId source = 0;
  std::vector<EdgeId> edges;

  std::size_t length() const { return edges.size(); }
  bool is_trivial() const { return edges.empty(); }

  // Orders by (length, edges, source); edge ids follow name order.
  std::strong_ordering operator<=>(const Path& o) const {
    if (auto c = edges.size() <=> o.edges.size(); c != 0) return c;
    if (auto c = edges <=> o.edges; c != 0) return c;
    return source <=> o.source;
  }
  bool operator==(const Path& o) const = default;
};

class Graph {
 public:
  /// Validates and freezes. Vertex and edge ids follow name order.
  /// Throws DuplicateName, DanglingEndpoint, BundleLoop or EmptyGraph.
  static std::shared_ptr<const Graph> build(const GraphSpec& spec);

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t bundle_count() const { return bundles_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  /// Throws UnknownVertex.
  VertexId vertex(std::string_view name) const;
  VertexSet vertices(const std::vector<std::string>& names) const;
  VertexSet all_vertices() const;
  std::vector<std::string> names(const VertexSet& set) const;

  /// Explicit or minted edge by name; minted names are "bundle#i".
  std::optional<EdgeId> find_edge(std::string_view name) const;
  /// Throws UnknownEdge.
  EdgeId edge(std::string_view name) const;
  EdgeId mint(std::size_t bundle, std::size_t index) const;
  bool is_minted(EdgeId e) const { return e >= edges_.size(); }
  std::string edge_name(EdgeId e) const;
  VertexId src(EdgeId e) const;
  VertexId dst(EdgeId e) const;

  const std::string& bundle_name(std::size_t b) const { return bundles_.at(b).name; }
  VertexId bundle_src(std::size_t b) const { return bundles_.at(b).src; }
  VertexId bundle_dst(std::size_t b) const { return bundles_.at(b).dst; }

  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(v); }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_.at(v); }
  const std::vector<std::size_t>& out_bundles(VertexId v) const { return out_bundles_.at(v); }
  const std::vector<std::size_t>& in_bundles(VertexId v) const { return in_bundles_.at(v); }

  VertexKind kind(VertexId v) const;
  bool is_regular(VertexId v) const { return kind(v) == VertexKind::Regular; }
  /// The CK2 special edge of a regular vertex: its largest out-edge by name.
  std::optional<EdgeId> special_edge(VertexId v) const { return special_.at(v); }

  /// Returns r(p); validates composability (throws InvalidPath).
  VertexId range(const Path& p) const;
  void check_path(const Path& p) const;
  Path trivial_path(VertexId v) const { return Path{v, {}}; }
  Path edge_path(EdgeId e) const { return Path{src(e), {e}}; }
  std::string path_string(const Path& p) const;

  GraphSpec spec() const;

 private:
  struct Arc {
    std::string name;
    VertexId src;
    VertexId dst;
  };
  std::vector<std::string> vertex_names_;
  std::map<std::string, VertexId, std::less<>> vertex_index_;
  std::vector<Arc> edges_;
  std::map<std::string, EdgeId, std::less<>> edge_index_;
  std::vector<Arc> bundles_;
  std::map<std::string, std::size_t, std::less<>> bundle_index_;
  std::vector<std::vector<EdgeId>> out_, in_;
  std::vector<std::vector<std::size_t>> out_bundles_, in_bundles_;
  std::vector<std::optional<EdgeId>> special_;
};

using GraphPtr = std::shared_ptr<const Graph>;

/// Checks every invariant without throwing; reports vertex kinds when valid.
ValidationReport validate_graph(const GraphSpec& spec);

VertexKind vertex_kind(const Graph& g, VertexId v);

/// {u : u >= target}, reachability along edges and bundles.
VertexSet m_set(const Graph& g, VertexId target);
VertexSet m_set(const Graph& g, const Path& target);
/// All vertices reachable from v (including v).
VertexSet reachable_from(const Graph& g, VertexId v);
bool reaches(const Graph& g, VertexId from, VertexId to);

bool is_hereditary(const Graph& g, const VertexSet& h);
bool is_saturated(const Graph& g, const VertexSet& h);
bool is_hereditary_saturated(const Graph& g, const VertexSet& h);
/// Least hereditary saturated superset of seed.
VertexSet hs_closure(const Graph& g, const VertexSet& seed);
/// B_H. Throws NotHereditarySaturated.
VertexSet breaking_vertices(const Graph& g, const VertexSet& h);

struct Cycle {
  Path path;  // starts at the cycle's smallest vertex
  bool has_exit = false;
  bool exclusive = false;

  VertexSet vertices(const Graph& g) const;
};

struct CycleReport {
  std::vector<Cycle> cycles;
  bool condition_l = true;
};

/// All cycles among explicit edges, one representative per rotation class.
CycleReport cycle_report(const Graph& g);

/// Whether p is a cycle: closed, pairwise distinct sources.
bool is_cycle(const Graph& g, const Path& p);
/// Rotation of the reported cycle matching p, if any.
std::optional<Cycle> find_cycle(const Graph& g, const Path& p);

/// Every pair in m has a common lower bound in m.
bool mt3_check(const Graph& g, const VertexSet& m);

/// E/(H,S) together with the name correspondence back to E.
struct QuotientGraph {
  GraphPtr graph;
  std::map<VertexId, VertexId> vertex;        // E-vertex not in H -> same vertex
  std::map<VertexId, VertexId> vertex_prime;  // v in B_H \ S -> v'
  std::map<EdgeId, EdgeId> edge;              // r(e) not in H -> e
  std::map<EdgeId, EdgeId> edge_prime;        // r(e) in B_H \ S -> e'
  std::map<std::size_t, std::size_t> bundle;        // dst not in H
  std::map<std::size_t, std::size_t> bundle_prime;  // dst in B_H \ S
};

/// Throws NotAdmissible.
QuotientGraph quotient_graph(const Graph& g, const VertexSet& h, const VertexSet& s);

}  // namespace lpa
