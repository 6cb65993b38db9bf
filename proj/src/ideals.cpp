#include "lpa/ideals.hpp"

#include <algorithm>

#include "lpa/error.hpp"

namespace lpa {

namespace {

std::string set_string(const Graph& g, const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (VertexId v : s) {
    out += (first ? "" : ",") + g.vertex_name(v);
    first = false;
  }
  return out + "}";
}

VertexSet complement(const Graph& g, const VertexSet& h) {
  VertexSet out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!h.contains(v)) out.insert(v);
  }
  return out;
}

}  // namespace

AdmissiblePair::AdmissiblePair(GraphPtr g, VertexSet h, VertexSet s)
    : graph_(std::move(g)), h_(std::move(h)), s_(std::move(s)) {
  for (VertexId v : h_) {
    if (v >= graph_->vertex_count()) throw Error(ErrorKind::UnknownVertex, "vertex id out of range");
  }
  if (!is_hereditary_saturated(*graph_, h_)) {
    throw Error(ErrorKind::NotAdmissible,
                "H = " + set_string(*graph_, h_) + " is not hereditary and saturated");
  }
  breaking_ = breaking_vertices(*graph_, h_);
  for (VertexId v : s_) {
    if (!breaking_.contains(v)) {
      throw Error(ErrorKind::NotAdmissible,
                  "S = " + set_string(*graph_, s_) + " is not contained in B_H = " +
                      set_string(*graph_, breaking_));
    }
  }
}

const QuotientGraph& AdmissiblePair::quotient() const {
  if (!quotient_) {
    quotient_ = std::make_shared<QuotientGraph>(quotient_graph(*graph_, h_, s_));
  }
  return *quotient_;
}

// ---------------------------------------------------------------------- phi

namespace {

// Image of an edge (explicit or minted) under phi.
AlgebraElement phi_edge(const AdmissiblePair& p, EdgeId e) {
  const Graph& g = *p.graph();
  const QuotientGraph& q = p.quotient();
  AlgebraElement out(q.graph);
  if (p.h().contains(g.dst(e))) return out;
  if (!g.is_minted(e)) {
    out += AlgebraElement::edge(q.graph, q.edge.at(e));
    if (auto it = q.edge_prime.find(e); it != q.edge_prime.end()) {
      out += AlgebraElement::edge(q.graph, it->second);
    }
    return out;
  }
  std::size_t k = e - g.edge_count();
  std::size_t bundle = k % g.bundle_count(), index = k / g.bundle_count();
  out += AlgebraElement::edge(q.graph, q.graph->mint(q.bundle.at(bundle), index));
  if (auto it = q.bundle_prime.find(bundle); it != q.bundle_prime.end()) {
    out += AlgebraElement::edge(q.graph, q.graph->mint(it->second, index));
  }
  return out;
}

AlgebraElement phi_vertex(const AdmissiblePair& p, VertexId v) {
  const QuotientGraph& q = p.quotient();
  AlgebraElement out(q.graph);
  if (p.h().contains(v)) return out;
  out += AlgebraElement::vertex(q.graph, q.vertex.at(v));
  if (auto it = q.vertex_prime.find(v); it != q.vertex_prime.end()) {
    out += AlgebraElement::vertex(q.graph, it->second);
  }
  return out;
}

AlgebraElement phi_path(const AdmissiblePair& p, const Path& path) {
  if (path.edges.empty()) return phi_vertex(p, path.source);
  AlgebraElement acc = phi_edge(p, path.edges.front());
  for (std::size_t i = 1; i < path.edges.size() && !acc.is_zero(); ++i) {
    acc *= phi_edge(p, path.edges[i]);
  }
  return acc;
}

}  // namespace

AlgebraElement phi_map(const AdmissiblePair& p, const AlgebraElement& a) {
  if (a.graph() != p.graph()) {
    throw Error(ErrorKind::MixedGraphs, "element is not over the pair's graph");
  }
  const QuotientGraph& q = p.quotient();
  AlgebraElement out(q.graph);
  for (const auto& [m, k] : a.terms()) {
    AlgebraElement left = phi_path(p, m.gamma);
    if (left.is_zero()) continue;
    AlgebraElement right = phi_path(p, m.lambda).star();
    out += (left * right).scale(k);
  }
  return out;
}

AlgebraElement breaking_vertex_element(const GraphPtr& g, const VertexSet& h, VertexId w) {
  VertexSet bh = breaking_vertices(*g, h);
  if (!bh.contains(w)) {
    throw Error(ErrorKind::NotBreakingVertex,
                "'" + g->vertex_name(w) + "' is not a breaking vertex of " + set_string(*g, h));
  }
  AlgebraElement out = AlgebraElement::vertex(g, w);
  for (EdgeId e : g->out_edges(w)) {
    if (h.contains(g->dst(e))) continue;
    out = out - AlgebraElement::edge(g, e) * AlgebraElement::ghost(g, e);
  }
  return out;
}

AlgebraElement poly_of_cycle(const GraphPtr& g, const Path& cycle, const LaurentPoly& f) {
  if (!is_cycle(*g, cycle)) {
    throw Error(ErrorKind::NotACycle, "'" + g->path_string(cycle) + "' is not a cycle");
  }
  if (f.coefficient(0) == 0) {
    throw Error(ErrorKind::ZeroConstantTerm, "constant term of " + f.to_string() + " is zero");
  }
  AlgebraElement c = AlgebraElement::path(g, cycle);
  AlgebraElement c_star = c.star();
  AlgebraElement out(g);
  for (const auto& [e, k] : f.coefficients()) {
    AlgebraElement term = AlgebraElement::vertex(g, cycle.source);
    for (int i = 0; i < std::abs(e); ++i) term *= (e > 0 ? c : c_star);
    out += term.scale(k);
  }
  return out;
}

IdealDescriptor IdealDescriptor::type_iii(AdmissiblePair p, Path c, LaurentPoly f) {
  if (p.s() != p.breaking()) {
    throw Error(ErrorKind::NotAdmissible, "a type III ideal requires S = B_H");
  }
  if (!is_cycle(*p.graph(), c)) {
    throw Error(ErrorKind::NotACycle, "'" + p.graph()->path_string(c) + "' is not a cycle");
  }
  return {std::move(p), Kind::TypeIII, std::move(c), std::move(f)};
}

bool ideal_membership(const IdealDescriptor& d, const AlgebraElement& a) {
  if (d.kind != IdealDescriptor::Kind::Graded) {
    throw Error(ErrorKind::TypeIIIMembershipUnsupported,
                "membership in I(H, B_H, f(c)) is not decided");
  }
  return phi_map(d.pair, a).is_zero();
}

// ------------------------------------------------------------ classification

std::string_view to_string(ClassificationResult::Verdict v) {
  switch (v) {
    case ClassificationResult::Verdict::TypeI:
      return "typeI";
    case ClassificationResult::Verdict::TypeII:
      return "typeII";
    case ClassificationResult::Verdict::TypeIII:
      return "typeIII";
    case ClassificationResult::Verdict::NotPrimitive:
      return "not_primitive";
  }
  return "not_primitive";
}

std::string ClassificationResult::verdict_string(const Graph& g) const {
  std::string out(to_string(verdict));
  if (w) out += "(" + g.vertex_name(*w) + ")";
  return out;
}

ClassificationResult classify_pair(const IdealDescriptor& d) {
  using V = ClassificationResult::Verdict;
  const AdmissiblePair& p = d.pair;
  const Graph& g = *p.graph();
  ClassificationResult res;
  auto record = [&](std::string cond, bool ok, std::string note = {}) {
    res.transcript.push_back({std::move(cond), ok, std::move(note)});
    return ok;
  };
  record("(H,S) admissible", true,
         "H = " + set_string(g, p.h()) + ", S = " + set_string(g, p.s()) +
             ", B_H = " + set_string(g, p.breaking()));
  VertexSet rest = complement(g, p.h());
  if (!record("proper ideal: E^0 \\ H nonempty", !rest.empty())) return res;

  if (d.kind == IdealDescriptor::Kind::TypeIII) {
    const Path& c = *d.cycle;
    const LaurentPoly& f = *d.poly;
    bool ok = record("S = B_H", p.s() == p.breaking());
    auto found = find_cycle(g, c);
    ok = record("c is a cycle", found.has_value(), g.path_string(c)) && ok;
    ok = record("c is exclusive", found && found->exclusive) && ok;
    VertexId u = c.source;
    ok = record("base u of c not in H", !p.h().contains(u), "u = " + g.vertex_name(u)) && ok;
    ok = record("E^0 \\ H = M(u)", m_set(g, u) == rest) && ok;
    bool no_exit = false;
    if (ok) {
      const QuotientGraph& q = p.quotient();
      Path qc{q.vertex.at(u), {}};
      for (EdgeId e : c.edges) qc.edges.push_back(q.edge.at(e));
      auto qcycle = find_cycle(*q.graph, qc);
      no_exit = qcycle && !qcycle->has_exit;
    }
    ok = record("c has no exit in E/(H,B_H)", no_exit) && ok;
    bool poly_ok = f.coefficient(0) != 0 && f.max_exponent() - f.min_exponent() >= 1;
    ok = record("f has nonzero constant term and degree >= 1", poly_ok, f.to_string()) && ok;
    if (poly_ok) {
      auto status = extension_of(f)->irreducibility();
      ok = record("f irreducible", status != Irreducibility::Reducible,
                  std::string(to_string(status)) +
                      (status == Irreducibility::Unchecked ? " (degree > 3, accepted)" : "")) &&
           ok;
    }
    if (ok) res.verdict = V::TypeIII;
    return res;
  }

  // Type I: S = B_H \ {w} with M(w) = E^0 \ H, scanning w in name order.
  bool shape = false;
  for (VertexId w : p.breaking()) {
    VertexSet expected = p.breaking();
    expected.erase(w);
    if (expected != p.s()) continue;
    shape = true;
    record("S = B_H \\ {w}", true, "w = " + g.vertex_name(w));
    if (record("M(w) = E^0 \\ H", m_set(g, w) == rest, "w = " + g.vertex_name(w))) {
      res.verdict = V::TypeI;
      res.w = w;
      return res;
    }
  }
  if (!shape) record("S = B_H \\ {w} for some w in B_H", false);

  if (!record("S = B_H", p.s() == p.breaking())) return res;
  bool ok = record("MT-3 on E^0 \\ H", mt3_check(g, rest));
  ok = record("countable separation", true, "vacuous: E^0 is finite") && ok;
  ok = record("Condition (L) in E/(H,B_H)", cycle_report(*p.quotient().graph).condition_l) && ok;
  if (ok) res.verdict = V::TypeII;
  return res;
}

std::vector<AdmissiblePair> enumerate_admissible(const GraphPtr& g, std::size_t max_vertices) {
  std::size_t n = g->vertex_count();
  if (n > max_vertices || n >= 31) {
    throw Error(ErrorKind::TooLarge, std::to_string(n) + " vertices exceed the bound " +
                                         std::to_string(max_vertices));
  }
  auto subsets = [](const VertexSet& base) {
    std::vector<VertexId> items(base.begin(), base.end());
    std::vector<VertexSet> out;
    for (std::uint32_t mask = 0; mask < (1U << items.size()); ++mask) {
      VertexSet s;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (mask & (1U << i)) s.insert(items[i]);
      }
      out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
  };
  std::vector<AdmissiblePair> out;
  for (const auto& h : subsets(g->all_vertices())) {
    if (!is_hereditary_saturated(*g, h)) continue;
    VertexSet bh = breaking_vertices(*g, h);
    for (const auto& s : subsets(bh)) out.emplace_back(g, h, s);
  }
  return out;
}

}  // namespace lpa
