#include "lpa/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "lpa/error.hpp"

namespace lpa {

std::string_view to_string(VertexKind kind) {
  switch (kind) {
    case VertexKind::Sink:
      return "sink";
    case VertexKind::Regular:
      return "regular";
    case VertexKind::InfiniteEmitter:
      return "infinite_emitter";
  }
  return "sink";
}

namespace {

// First violated invariant, or nullopt.
std::optional<Error> first_violation(const GraphSpec& spec,
                                     std::vector<std::string>* all = nullptr) {
  std::optional<Error> first;
  auto report = [&](ErrorKind kind, const std::string& msg) {
    if (all) all->push_back(std::string(to_string(kind)) + ": " + msg);
    if (!first) first = Error(kind, msg);
  };
  if (spec.vertices.empty()) report(ErrorKind::EmptyGraph, "graph has no vertices");
  std::set<std::string> names;
  std::set<std::string> vertex_names(spec.vertices.begin(), spec.vertices.end());
  auto claim = [&](const std::string& name) {
    if (name.empty()) {
      report(ErrorKind::DuplicateName, "empty name");
    } else if (!names.insert(name).second) {
      report(ErrorKind::DuplicateName, "name '" + name + "' used twice");
    }
  };
  for (const auto& v : spec.vertices) claim(v);
  auto check_arc = [&](const GraphSpec::Arc& a, const char* what) {
    claim(a.name);
    for (const auto* end : {&a.src, &a.dst}) {
      if (!vertex_names.contains(*end)) {
        report(ErrorKind::DanglingEndpoint,
               std::string(what) + " '" + a.name + "' references unknown vertex '" + *end + "'");
      }
    }
  };
  for (const auto& e : spec.edges) check_arc(e, "edge");
  for (const auto& b : spec.bundles) {
    check_arc(b, "bundle");
    if (b.src == b.dst) {
      report(ErrorKind::BundleLoop, "bundle '" + b.name + "' is a loop at '" + b.src + "'");
    }
    if (b.name.find('#') != std::string::npos) {
      report(ErrorKind::DuplicateName, "bundle name '" + b.name + "' may not contain '#'");
    }
  }
  return first;
}

}  // namespace

ValidationReport validate_graph(const GraphSpec& spec) {
  ValidationReport report;
  first_violation(spec, &report.errors);
  report.ok = report.errors.empty();
  if (report.ok) {
    auto g = Graph::build(spec);
    for (VertexId v = 0; v < g->vertex_count(); ++v) {
      report.kinds[g->vertex_name(v)] = g->kind(v);
    }
  }
  return report;
}

std::shared_ptr<const Graph> Graph::build(const GraphSpec& spec) {
  if (auto err = first_violation(spec)) throw *err;
  auto g = std::shared_ptr<Graph>(new Graph());
  g->vertex_names_ = spec.vertices;
  std::sort(g->vertex_names_.begin(), g->vertex_names_.end());
  for (VertexId v = 0; v < g->vertex_names_.size(); ++v) {
    g->vertex_index_.emplace(g->vertex_names_[v], v);
  }
  auto arcs = [&](std::vector<GraphSpec::Arc> in) {
    std::sort(in.begin(), in.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    std::vector<Arc> out;
    for (const auto& a : in) {
      out.push_back({a.name, g->vertex_index_.at(a.src), g->vertex_index_.at(a.dst)});
    }
    return out;
  };
  g->edges_ = arcs(spec.edges);
  g->bundles_ = arcs(spec.bundles);
  std::size_t n = g->vertex_names_.size();
  g->out_.resize(n);
  g->in_.resize(n);
  g->out_bundles_.resize(n);
  g->in_bundles_.resize(n);
  g->special_.resize(n);
  for (EdgeId e = 0; e < g->edges_.size(); ++e) {
    g->edge_index_.emplace(g->edges_[e].name, e);
    g->out_[g->edges_[e].src].push_back(e);
    g->in_[g->edges_[e].dst].push_back(e);
  }
  for (std::size_t b = 0; b < g->bundles_.size(); ++b) {
    g->bundle_index_.emplace(g->bundles_[b].name, b);
    g->out_bundles_[g->bundles_[b].src].push_back(b);
    g->in_bundles_[g->bundles_[b].dst].push_back(b);
  }
  for (VertexId v = 0; v < n; ++v) {
    if (g->kind(v) == VertexKind::Regular) g->special_[v] = g->out_[v].back();
  }
  return g;
}

std::optional<VertexId> Graph::find_vertex(std::string_view name) const {
  auto it = vertex_index_.find(name);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

VertexId Graph::vertex(std::string_view name) const {
  if (auto v = find_vertex(name)) return *v;
  throw Error(ErrorKind::UnknownVertex, "no vertex named '" + std::string(name) + "'");
}

VertexSet Graph::vertices(const std::vector<std::string>& names) const {
  VertexSet out;
  for (const auto& n : names) out.insert(vertex(n));
  return out;
}

VertexSet Graph::all_vertices() const {
  VertexSet out;
  for (VertexId v = 0; v < vertex_count(); ++v) out.insert(v);
  return out;
}

std::vector<std::string> Graph::names(const VertexSet& set) const {
  std::vector<std::string> out;
  for (VertexId v : set) out.push_back(vertex_name(v));
  return out;
}

std::optional<EdgeId> Graph::find_edge(std::string_view name) const {
  if (auto it = edge_index_.find(name); it != edge_index_.end()) return it->second;
  auto hash = name.rfind('#');
  if (hash == std::string_view::npos || hash + 1 >= name.size()) return std::nullopt;
  auto bit = bundle_index_.find(name.substr(0, hash));
  if (bit == bundle_index_.end()) return std::nullopt;
  std::string_view digits = name.substr(hash + 1);
  if (digits.size() > 6 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  if (digits.size() > 1 && digits[0] == '0') return std::nullopt;
  return mint(bit->second, std::stoul(std::string(digits)));
}

EdgeId Graph::edge(std::string_view name) const {
  if (auto e = find_edge(name)) return *e;
  throw Error(ErrorKind::UnknownEdge, "no edge named '" + std::string(name) + "'");
}

EdgeId Graph::mint(std::size_t bundle, std::size_t index) const {
  if (bundle >= bundles_.size()) {
    throw Error(ErrorKind::UnknownEdge, "no bundle #" + std::to_string(bundle));
  }
  return static_cast<EdgeId>(edges_.size() + index * bundles_.size() + bundle);
}

std::string Graph::edge_name(EdgeId e) const {
  if (e < edges_.size()) return edges_[e].name;
  std::size_t k = e - edges_.size();
  return bundles_.at(k % bundles_.size()).name + "#" + std::to_string(k / bundles_.size());
}

VertexId Graph::src(EdgeId e) const {
  if (e < edges_.size()) return edges_[e].src;
  return bundles_.at((e - edges_.size()) % bundles_.size()).src;
}

VertexId Graph::dst(EdgeId e) const {
  if (e < edges_.size()) return edges_[e].dst;
  return bundles_.at((e - edges_.size()) % bundles_.size()).dst;
}

VertexKind Graph::kind(VertexId v) const {
  if (!out_bundles_.at(v).empty()) return VertexKind::InfiniteEmitter;
  if (out_.at(v).empty()) return VertexKind::Sink;
  return VertexKind::Regular;
}

VertexId Graph::range(const Path& p) const {
  check_path(p);
  return p.edges.empty() ? p.source : dst(p.edges.back());
}

void Graph::check_path(const Path& p) const {
  if (p.source >= vertex_count()) throw Error(ErrorKind::InvalidPath, "bad source vertex");
  VertexId at = p.source;
  for (EdgeId e : p.edges) {
    if (src(e) != at) {
      throw Error(ErrorKind::InvalidPath, "edge '" + edge_name(e) + "' does not start at '" +
                                              vertex_name(at) + "'");
    }
    at = dst(e);
  }
}

std::string Graph::path_string(const Path& p) const {
  if (p.edges.empty()) return vertex_name(p.source);
  std::string out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) out += "*";
    out += edge_name(p.edges[i]);
  }
  return out;
}

GraphSpec Graph::spec() const {
  GraphSpec s;
  s.vertices = vertex_names_;
  for (const auto& e : edges_) {
    s.edges.push_back({e.name, vertex_names_[e.src], vertex_names_[e.dst]});
  }
  for (const auto& b : bundles_) {
    s.bundles.push_back({b.name, vertex_names_[b.src], vertex_names_[b.dst]});
  }
  return s;
}

// ------------------------------------------------------------------ analyses

VertexKind vertex_kind(const Graph& g, VertexId v) {
  if (v >= g.vertex_count()) throw Error(ErrorKind::UnknownVertex, "vertex id out of range");
  return g.kind(v);
}

namespace {

void check_set(const Graph& g, const VertexSet& s) {
  for (VertexId v : s) {
    if (v >= g.vertex_count()) throw Error(ErrorKind::UnknownVertex, "vertex id out of range");
  }
}

// Breadth-first search over edges and bundles, forward or backward.
VertexSet bfs(const Graph& g, VertexSet start, bool forward) {
  std::deque<VertexId> queue(start.begin(), start.end());
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    auto visit = [&](VertexId w) {
      if (start.insert(w).second) queue.push_back(w);
    };
    if (forward) {
      for (EdgeId e : g.out_edges(v)) visit(g.dst(e));
      for (std::size_t b : g.out_bundles(v)) visit(g.bundle_dst(b));
    } else {
      for (EdgeId e : g.in_edges(v)) visit(g.src(e));
      for (std::size_t b : g.in_bundles(v)) visit(g.bundle_src(b));
    }
  }
  return start;
}

}  // namespace

VertexSet m_set(const Graph& g, VertexId target) {
  check_set(g, {target});
  return bfs(g, {target}, false);
}

VertexSet m_set(const Graph& g, const Path& target) {
  g.check_path(target);
  VertexSet seeds{target.source};
  for (EdgeId e : target.edges) seeds.insert(g.dst(e));
  return bfs(g, std::move(seeds), false);
}

VertexSet reachable_from(const Graph& g, VertexId v) {
  check_set(g, {v});
  return bfs(g, {v}, true);
}

bool reaches(const Graph& g, VertexId from, VertexId to) {
  return reachable_from(g, from).contains(to);
}

bool is_hereditary(const Graph& g, const VertexSet& h) {
  check_set(g, h);
  return bfs(g, h, true) == h;
}

bool is_saturated(const Graph& g, const VertexSet& h) {
  check_set(g, h);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (h.contains(v) || !g.is_regular(v)) continue;
    const auto& out = g.out_edges(v);
    if (std::all_of(out.begin(), out.end(), [&](EdgeId e) { return h.contains(g.dst(e)); })) {
      return false;
    }
  }
  return true;
}

bool is_hereditary_saturated(const Graph& g, const VertexSet& h) {
  return is_hereditary(g, h) && is_saturated(g, h);
}

VertexSet hs_closure(const Graph& g, const VertexSet& seed) {
  check_set(g, seed);
  VertexSet h = bfs(g, seed, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (h.contains(v) || !g.is_regular(v)) continue;
      const auto& out = g.out_edges(v);
      if (std::all_of(out.begin(), out.end(), [&](EdgeId e) { return h.contains(g.dst(e)); })) {
        h.insert(v);
        changed = true;
      }
    }
    // Saturation adds vertices whose successors already lie in h, so h stays
    // hereditary; the forward pass is kept for clarity of the fixpoint.
    if (changed) h = bfs(g, h, true);
  }
  return h;
}

VertexSet breaking_vertices(const Graph& g, const VertexSet& h) {
  if (!is_hereditary_saturated(g, h)) {
    throw Error(ErrorKind::NotHereditarySaturated, "H is not hereditary and saturated");
  }
  VertexSet out;
  for (VertexId w = 0; w < g.vertex_count(); ++w) {
    if (h.contains(w) || g.kind(w) != VertexKind::InfiniteEmitter) continue;
    const auto& bundles = g.out_bundles(w);
    bool bundles_in_h = std::all_of(bundles.begin(), bundles.end(), [&](std::size_t b) {
      return h.contains(g.bundle_dst(b));
    });
    const auto& out_edges = g.out_edges(w);
    bool edge_out_of_h = std::any_of(out_edges.begin(), out_edges.end(),
                                     [&](EdgeId e) { return !h.contains(g.dst(e)); });
    if (bundles_in_h && edge_out_of_h) out.insert(w);
  }
  return out;
}

VertexSet Cycle::vertices(const Graph& g) const {
  VertexSet out;
  for (EdgeId e : path.edges) out.insert(g.src(e));
  (void)g;
  return out;
}

CycleReport cycle_report(const Graph& g) {
  CycleReport report;
  // Each cycle is found once, from its smallest vertex, by a DFS restricted to
  // larger vertices.
  for (VertexId start = 0; start < g.vertex_count(); ++start) {
    std::vector<EdgeId> stack;
    std::vector<bool> on_path(g.vertex_count(), false);
    std::function<void(VertexId)> dfs = [&](VertexId v) {
      on_path[v] = true;
      for (EdgeId e : g.out_edges(v)) {
        VertexId w = g.dst(e);
        if (w == start) {
          stack.push_back(e);
          report.cycles.push_back(Cycle{Path{start, stack}, false, false});
          stack.pop_back();
        } else if (w > start && !on_path[w]) {
          stack.push_back(e);
          dfs(w);
          stack.pop_back();
        }
      }
      on_path[v] = false;
    };
    dfs(start);
  }
  std::vector<VertexSet> vsets;
  for (const auto& c : report.cycles) vsets.push_back(c.vertices(g));
  for (std::size_t i = 0; i < report.cycles.size(); ++i) {
    auto& c = report.cycles[i];
    std::set<EdgeId> own(c.path.edges.begin(), c.path.edges.end());
    for (VertexId v : vsets[i]) {
      if (!g.out_bundles(v).empty()) c.has_exit = true;
      for (EdgeId e : g.out_edges(v)) {
        if (!own.contains(e)) c.has_exit = true;
      }
    }
    c.exclusive = true;
    for (std::size_t j = 0; j < report.cycles.size(); ++j) {
      if (i == j) continue;
      for (VertexId v : vsets[i]) {
        if (vsets[j].contains(v)) c.exclusive = false;
      }
    }
    if (!c.has_exit) report.condition_l = false;
  }
  return report;
}

bool is_cycle(const Graph& g, const Path& p) {
  if (p.edges.empty()) return false;
  try {
    if (g.range(p) != p.source) return false;
  } catch (const Error&) {
    return false;
  }
  VertexSet sources;
  for (EdgeId e : p.edges) {
    if (g.is_minted(e) || !sources.insert(g.src(e)).second) return false;
  }
  return true;
}

std::optional<Cycle> find_cycle(const Graph& g, const Path& p) {
  if (!is_cycle(g, p)) return std::nullopt;
  for (const auto& c : cycle_report(g).cycles) {
    if (c.path.length() != p.length()) continue;
    const auto& a = c.path.edges;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (std::equal(p.edges.begin(), p.edges.end() - static_cast<long>(k), a.begin() + static_cast<long>(k)) &&
          std::equal(p.edges.end() - static_cast<long>(k), p.edges.end(), a.begin())) {
        return c;
      }
    }
  }
  return std::nullopt;
}

bool mt3_check(const Graph& g, const VertexSet& m) {
  check_set(g, m);
  std::map<VertexId, VertexSet> below;
  for (VertexId v : m) below[v] = reachable_from(g, v);
  for (VertexId a : m) {
    for (VertexId b : m) {
      if (b < a) continue;
      bool found = std::any_of(m.begin(), m.end(), [&](VertexId w) {
        return below[a].contains(w) && below[b].contains(w);
      });
      if (!found) return false;
    }
  }
  return true;
}

QuotientGraph quotient_graph(const Graph& g, const VertexSet& h, const VertexSet& s) {
  if (!is_hereditary_saturated(g, h)) {
    throw Error(ErrorKind::NotAdmissible, "H is not hereditary and saturated");
  }
  VertexSet bh = breaking_vertices(g, h);
  for (VertexId v : s) {
    if (!bh.contains(v)) {
      throw Error(ErrorKind::NotAdmissible,
                  "'" + g.vertex_name(v) + "' is not a breaking vertex of H");
    }
  }
  std::set<std::string> taken;
  for (VertexId v = 0; v < g.vertex_count(); ++v) taken.insert(g.vertex_name(v));
  for (EdgeId e = 0; e < g.edge_count(); ++e) taken.insert(g.edge_name(e));
  for (std::size_t b = 0; b < g.bundle_count(); ++b) taken.insert(g.bundle_name(b));
  auto prime = [&](const std::string& name) {
    std::string p = name + "'";
    while (taken.contains(p)) p += "'";
    taken.insert(p);
    return p;
  };
  auto primed_target = [&](VertexId v) { return bh.contains(v) && !s.contains(v); };

  GraphSpec spec;
  std::map<VertexId, std::string> vname, vprime;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (h.contains(v)) continue;
    vname[v] = g.vertex_name(v);
    spec.vertices.push_back(vname[v]);
    if (primed_target(v)) {
      vprime[v] = prime(g.vertex_name(v));
      spec.vertices.push_back(vprime[v]);
    }
  }
  std::map<EdgeId, std::string> ename, eprime;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    VertexId r = g.dst(e);
    if (h.contains(r)) continue;
    const std::string& src = vname.at(g.src(e));
    ename[e] = g.edge_name(e);
    spec.edges.push_back({ename[e], src, vname.at(r)});
    if (primed_target(r)) {
      eprime[e] = prime(g.edge_name(e));
      spec.edges.push_back({eprime[e], src, vprime.at(r)});
    }
  }
  std::map<std::size_t, std::string> bname, bprime;
  for (std::size_t b = 0; b < g.bundle_count(); ++b) {
    VertexId r = g.bundle_dst(b);
    if (h.contains(r)) continue;
    const std::string& src = vname.at(g.bundle_src(b));
    bname[b] = g.bundle_name(b);
    spec.bundles.push_back({bname[b], src, vname.at(r)});
    if (primed_target(r)) {
      bprime[b] = prime(g.bundle_name(b));
      spec.bundles.push_back({bprime[b], src, vprime.at(r)});
    }
  }
  if (spec.vertices.empty()) {
    throw Error(ErrorKind::NotAdmissible, "quotient by H = E^0 is the zero algebra");
  }
  QuotientGraph q;
  q.graph = Graph::build(spec);
  const Graph& f = *q.graph;
  for (const auto& [v, n] : vname) q.vertex[v] = f.vertex(n);
  for (const auto& [v, n] : vprime) q.vertex_prime[v] = f.vertex(n);
  for (const auto& [e, n] : ename) q.edge[e] = f.edge(n);
  for (const auto& [e, n] : eprime) q.edge_prime[e] = f.edge(n);
  auto bundle_id = [&](const std::string& n) {
    for (std::size_t b = 0; b < f.bundle_count(); ++b) {
      if (f.bundle_name(b) == n) return b;
    }
    throw Error(ErrorKind::UnknownEdge, n);
  };
  for (const auto& [b, n] : bname) q.bundle[b] = bundle_id(n);
  for (const auto& [b, n] : bprime) q.bundle_prime[b] = bundle_id(n);
  return q;
}

}  // namespace lpa
