#include "lpa/repr.hpp"

#include <algorithm>
#include <sstream>

#include "lpa/error.hpp"

namespace lpa {

namespace {

// Shortest p with c = p^(n/p).
std::vector<EdgeId> primitive_root(const std::vector<EdgeId>& c) {
  std::size_t n = c.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = c[i] == c[i - p];
    if (periodic) return std::vector<EdgeId>(c.begin(), c.begin() + static_cast<long>(p));
  }
  return c;
}

void add_into(ModuleVector& out, const BasisVector& b, const Scalar& k) {
  if (k.is_zero()) return;
  auto [it, inserted] = out.try_emplace(b, k);
  if (!inserted) {
    it->second += k;
    if (it->second.is_zero()) out.erase(it);
  }
}

}  // namespace

Module Module::sink(GraphPtr g, VertexId w) {
  if (w >= g->vertex_count() || g->kind(w) != VertexKind::Sink) {
    throw Error(ErrorKind::InvalidModule, "N_w requires a sink");
  }
  Module m;
  m.kind_ = Kind::Sink;
  m.anchor_ = w;
  m.base_ = BasisVector{g->trivial_path(w), std::nullopt};
  m.graph_ = std::move(g);
  return m;
}

Module Module::infinite_emitter(GraphPtr g, VertexId v) {
  if (v >= g->vertex_count() || g->kind(v) != VertexKind::InfiniteEmitter) {
    throw Error(ErrorKind::InvalidModule, "S_{v,inf} requires an infinite emitter");
  }
  Module m;
  m.kind_ = Kind::InfiniteEmitter;
  m.anchor_ = v;
  m.base_ = BasisVector{g->trivial_path(v), std::nullopt};
  m.graph_ = std::move(g);
  return m;
}

Module Module::rational(GraphPtr g, Path prefix, Path cycle) {
  if (cycle.edges.empty()) throw Error(ErrorKind::InvalidModule, "empty cycle");
  try {
    if (g->range(cycle) != cycle.source) {
      throw Error(ErrorKind::InvalidModule, "'" + g->path_string(cycle) + "' is not closed");
    }
    if (g->range(prefix) != cycle.source) {
      throw Error(ErrorKind::InvalidModule, "prefix does not end at the cycle's base");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidModule) throw;
    throw Error(ErrorKind::InvalidModule, e.what());
  }
  Module m;
  m.kind_ = Kind::Rational;
  m.graph_ = std::move(g);
  m.cycle_ = primitive_root(cycle.edges);
  m.base_ = m.rational_vector(std::move(prefix), 0);
  return m;
}

Module Module::twisted(GraphPtr g, Path prefix, Path cycle, FieldPtr field,
                       std::optional<EdgeId> twisted_edge) {
  if (!field) throw Error(ErrorKind::FieldMismatch, "twisted module needs an extension field");
  Module m = rational(std::move(g), std::move(prefix), std::move(cycle));
  EdgeId e1 = twisted_edge.value_or(m.cycle_.front());
  if (std::find(m.cycle_.begin(), m.cycle_.end(), e1) == m.cycle_.end()) {
    throw Error(ErrorKind::InvalidModule, "twisted edge must lie on the cycle");
  }
  m.kind_ = Kind::Twisted;
  m.field_ = std::move(field);
  m.twisted_edge_ = e1;
  return m;
}

BasisVector Module::rational_vector(Path prefix, std::size_t rotation) const {
  std::size_t n = cycle_.size();
  rotation %= n;
  while (!prefix.edges.empty() && prefix.edges.back() == cycle_[(rotation + n - 1) % n]) {
    prefix.edges.pop_back();
    rotation = (rotation + n - 1) % n;
  }
  if (prefix.edges.empty()) prefix.source = graph_->src(cycle_[rotation]);
  return BasisVector{std::move(prefix), rotation};
}

VertexId Module::source(const BasisVector& b) const { return b.prefix.source; }

void Module::check(const BasisVector& b) const {
  const Graph& g = *graph_;
  try {
    VertexId r = g.range(b.prefix);
    if (is_rational_kind()) {
      if (!b.rotation || *b.rotation >= cycle_.size() || r != g.src(cycle_[*b.rotation])) {
        throw Error(ErrorKind::InvalidModule, "bad rational basis vector");
      }
      if (rational_vector(b.prefix, *b.rotation) != b) {
        throw Error(ErrorKind::InvalidModule, "rational basis vector is not canonical");
      }
    } else if (b.rotation || r != anchor_) {
      throw Error(ErrorKind::InvalidModule, "path does not end at the module's vertex");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidModule) throw;
    throw Error(ErrorKind::InvalidModule, e.what());
  }
}

std::string Module::to_string(const BasisVector& b) const {
  const Graph& g = *graph_;
  if (!is_rational_kind()) return g.path_string(b.prefix);
  std::string out;
  if (!b.prefix.edges.empty()) out = g.path_string(b.prefix) + "·";
  out += "(";
  for (std::size_t i = 0; i < cycle_.size(); ++i) {
    out += (i ? "*" : "") + g.edge_name(cycle_[i]);
  }
  return out + ")^inf@" + std::to_string(b.rotation.value_or(0));
}

std::string Module::to_string(const ModuleVector& x) const {
  if (x.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [b, k] : x) {
    if (!first) out += " + ";
    first = false;
    if (!k.is_one()) out += k.to_string() + "*";
    out += to_string(b);
  }
  return out;
}

std::optional<BasisVector> Module::act_vertex(VertexId v, const BasisVector& b) const {
  if (source(b) != v) return std::nullopt;
  return b;
}

std::optional<BasisVector> Module::act_edge(EdgeId e, const BasisVector& b) const {
  if (graph_->dst(e) != source(b)) return std::nullopt;
  Path p{graph_->src(e), {e}};
  p.edges.insert(p.edges.end(), b.prefix.edges.begin(), b.prefix.edges.end());
  if (is_rational_kind()) return rational_vector(std::move(p), *b.rotation);
  return BasisVector{std::move(p), std::nullopt};
}

std::optional<BasisVector> Module::act_ghost(EdgeId e, const BasisVector& b) const {
  if (!b.prefix.edges.empty()) {
    if (b.prefix.edges.front() != e) return std::nullopt;
    BasisVector out = b;
    out.prefix.edges.erase(out.prefix.edges.begin());
    out.prefix.source = graph_->dst(e);
    return out;
  }
  if (!is_rational_kind()) return std::nullopt;  // e^* w = 0
  std::size_t k = *b.rotation;
  if (cycle_[k] != e) return std::nullopt;
  return rational_vector(Path{graph_->dst(e), {}}, (k + 1) % cycle_.size());
}

ModuleVector basis_vector(const BasisVector& b, const Scalar& k) {
  ModuleVector x;
  add_into(x, b, k);
  return x;
}

namespace {

void check_scalars(const Module& m, const ModuleVector& x) {
  if (m.kind() != Module::Kind::Twisted) return;
  for (const auto& [b, k] : x) {
    if (!k.is_rational() && !k.field()->same_field(*m.field())) {
      throw Error(ErrorKind::FieldMismatch, "vector scalars are not in the module's field");
    }
  }
}

void check_graph(const Module& m, const GraphPtr& g) {
  if (m.graph() != g) throw Error(ErrorKind::MixedGraphs, "element and module use different graphs");
}

Scalar twist(const Module& m, long exponent) {
  if (m.kind() != Module::Kind::Twisted || exponent == 0) return Scalar(1);
  return Scalar::generator(m.field()).pow(exponent);
}

long count_edge(const Path& p, std::optional<EdgeId> e) {
  if (!e) return 0;
  return static_cast<long>(std::count(p.edges.begin(), p.edges.end(), *e));
}

std::optional<BasisVector> act_monomial(const Module& m, const Monomial& mono, BasisVector b) {
  std::optional<BasisVector> cur = std::move(b);
  if (mono.lambda.edges.empty()) {
    cur = m.act_vertex(mono.lambda.source, *cur);
  } else {
    for (EdgeId e : mono.lambda.edges) {
      cur = m.act_ghost(e, *cur);
      if (!cur) return cur;
    }
  }
  for (auto it = mono.gamma.edges.rbegin(); cur && it != mono.gamma.edges.rend(); ++it) {
    cur = m.act_edge(*it, *cur);
  }
  return cur;
}

}  // namespace

ModuleVector act(const Module& m, const AlgebraElement& a, const ModuleVector& x) {
  check_graph(m, a.graph());
  check_scalars(m, x);
  ModuleVector out;
  for (const auto& [mono, k] : a.terms()) {
    Scalar factor = k * twist(m, count_edge(mono.gamma, m.twisted_edge()) -
                                     count_edge(mono.lambda, m.twisted_edge()));
    for (const auto& [b, c] : x) {
      if (auto img = act_monomial(m, mono, b)) add_into(out, *img, factor * c);
    }
  }
  return out;
}

ModuleVector act_expr(const Module& m, const Expr& a, const ModuleVector& x) {
  check_scalars(m, x);
  using K = Expr::Kind;
  auto map_basis = [&](auto&& step, const Scalar& factor) {
    ModuleVector out;
    for (const auto& [b, c] : x) {
      if (auto img = step(b)) add_into(out, *img, factor * c);
    }
    return out;
  };
  const Graph& g = *m.graph();
  auto check_edge = [&](EdgeId e) {
    if (e >= g.edge_count() && g.bundle_count() == 0) {
      throw Error(ErrorKind::UnknownSymbol, "edge id " + std::to_string(e));
    }
  };
  switch (a.kind) {
    case K::Scalar: {
      ModuleVector out;
      for (const auto& [b, c] : x) add_into(out, b, a.value * c);
      return out;
    }
    case K::One:
      return x;
    case K::Vertex:
      if (a.id >= g.vertex_count()) throw Error(ErrorKind::UnknownSymbol, "vertex id");
      return map_basis([&](const BasisVector& b) { return m.act_vertex(a.id, b); }, Scalar(1));
    case K::Edge:
      check_edge(a.id);
      return map_basis([&](const BasisVector& b) { return m.act_edge(a.id, b); },
                       twist(m, m.twisted_edge() == a.id ? 1 : 0));
    case K::Ghost:
      check_edge(a.id);
      return map_basis([&](const BasisVector& b) { return m.act_ghost(a.id, b); },
                       twist(m, m.twisted_edge() == a.id ? -1 : 0));
    case K::Sum: {
      ModuleVector out;
      for (const auto& c : a.children) {
        for (const auto& [b, k] : act_expr(m, c, x)) add_into(out, b, k);
      }
      return out;
    }
    case K::Difference: {
      ModuleVector out = act_expr(m, a.children.at(0), x);
      for (const auto& [b, k] : act_expr(m, a.children.at(1), x)) add_into(out, b, -k);
      return out;
    }
    case K::Negation: {
      ModuleVector out;
      for (const auto& [b, k] : act_expr(m, a.children.at(0), x)) add_into(out, b, -k);
      return out;
    }
    case K::Product: {
      ModuleVector cur = x;
      for (auto it = a.children.rbegin(); it != a.children.rend(); ++it) {
        cur = act_expr(m, *it, cur);
      }
      return cur;
    }
  }
  return {};
}

std::pair<BasisVector, BasisVector> invariant_pair(const Module& m, EdgeId f) {
  const Graph& g = *m.graph();
  if (f >= g.edge_count() && g.bundle_count() == 0) {
    throw Error(ErrorKind::NotAWitnessEdge, "unknown edge");
  }
  const BasisVector& p = m.base();
  VertexId base = m.source(p);
  if (g.dst(f) != base || g.src(f) == g.dst(f)) {
    throw Error(ErrorKind::NotAWitnessEdge,
                "'" + g.edge_name(f) + "' must satisfy s(f) != r(f) = " + g.vertex_name(base));
  }
  auto q = m.act_edge(f, p);
  if (!q || *q == p) {
    throw Error(ErrorKind::NotAWitnessEdge, "f * p collapses onto p");
  }
  return {*q, p};
}

Matrix2 identity_matrix() { return Matrix2{{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}}}; }

Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
  Matrix2 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  }
  return out;
}

bool operator==(const Matrix2& a, const Matrix2& b) {
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (!(a[i][j] == b[i][j])) return false;
    }
  }
  return true;
}

std::string to_string(const Matrix2& m) {
  return "[[" + m[0][0].to_string() + "," + m[0][1].to_string() + "],[" + m[1][0].to_string() +
         "," + m[1][1].to_string() + "]]";
}

Matrix2 matrix_of(const Module& m, const std::pair<BasisVector, BasisVector>& basis,
                  const AlgebraElement& a) {
  const auto& [q, p] = basis;
  Matrix2 out;
  int col = 0;
  for (const BasisVector* v : {&q, &p}) {
    ModuleVector img = act(m, a, basis_vector(*v));
    for (const auto& [b, k] : img) {
      if (b != q && b != p) {
        throw Error(ErrorKind::NotInvariant, "image contains " + m.to_string(b) +
                                                 " outside span{" + m.to_string(q) + ", " +
                                                 m.to_string(p) + "}");
      }
    }
    auto coord = [&](const BasisVector& b) {
      auto it = img.find(b);
      return it == img.end() ? Scalar(0) : it->second;
    };
    out[0][col] = coord(q);
    out[1][col] = coord(p);
    ++col;
  }
  return out;
}

}  // namespace lpa
