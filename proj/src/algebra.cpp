#include "lpa/algebra.hpp"

#include <random>
#include <sstream>

#include "lpa/error.hpp"

namespace lpa {

using Rng = std::mt19937_64;

Monomial vertex_monomial(VertexId v) { return Monomial{Path{v, {}}, Path{v, {}}}; }

Monomial edge_monomial(const Graph& g, EdgeId e) {
  return Monomial{g.edge_path(e), g.trivial_path(g.dst(e))};
}

Monomial ghost_monomial(const Graph& g, EdgeId e) {
  return Monomial{g.trivial_path(g.dst(e)), g.edge_path(e)};
}

namespace {

bool is_prefix(const Path& a, const Path& b) {
  if (a.source != b.source || a.edges.size() > b.edges.size()) return false;
  return std::equal(a.edges.begin(), a.edges.end(), b.edges.begin());
}

// Path b with its prefix a removed; a must be a prefix of b.
Path strip_prefix(const Graph& g, const Path& a, const Path& b) {
  VertexId start = a.edges.empty() ? a.source : g.dst(a.edges.back());
  return Path{start, std::vector<EdgeId>(b.edges.begin() + static_cast<long>(a.edges.size()),
                                          b.edges.end())};
}

Path concat(const Path& a, const Path& b) {
  Path out = a;
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  return out;
}

// CK1 and path composition: (gamma lambda^*)(rho nu^*).
std::optional<Monomial> monomial_product(const Graph& g, const Monomial& x, const Monomial& y) {
  if (is_prefix(x.lambda, y.gamma)) {
    return Monomial{concat(x.gamma, strip_prefix(g, x.lambda, y.gamma)), y.lambda};
  }
  if (is_prefix(y.gamma, x.lambda)) {
    return Monomial{x.gamma, concat(y.lambda, strip_prefix(g, y.gamma, x.lambda))};
  }
  return std::nullopt;
}

// The special edge both paths end in, if the monomial is CK2-reducible.
std::optional<EdgeId> reducible_edge(const Graph& g, const Monomial& m) {
  if (m.gamma.edges.empty() || m.lambda.edges.empty()) return std::nullopt;
  EdgeId d = m.gamma.edges.back();
  if (m.lambda.edges.back() != d) return std::nullopt;
  if (g.is_minted(d)) return std::nullopt;
  auto special = g.special_edge(g.src(d));
  if (!special || *special != d) return std::nullopt;
  return d;
}

void accumulate(AlgebraElement::Terms& out, const Monomial& m, const Scalar& k) {
  auto [it, inserted] = out.try_emplace(m, k);
  if (!inserted) {
    it->second += k;
    if (it->second.is_zero()) out.erase(it);
  } else if (k.is_zero()) {
    out.erase(it);
  }
}

// Rewrites m to canonical form, adding coeff * result into out.
void reduce_into(const Graph& g, const Monomial& m, const Scalar& coeff,
                 AlgebraElement::Terms& out, Rng* rng) {
  std::vector<std::pair<Monomial, Scalar>> work{{m, coeff}};
  while (!work.empty()) {
    std::size_t pick = work.size() - 1;
    if (rng) pick = std::uniform_int_distribution<std::size_t>(0, work.size() - 1)(*rng);
    std::swap(work[pick], work.back());
    auto [mono, k] = std::move(work.back());
    work.pop_back();
    auto d = reducible_edge(g, mono);
    if (!d) {
      accumulate(out, mono, k);
      continue;
    }
    Path alpha = mono.gamma, beta = mono.lambda;
    alpha.edges.pop_back();
    beta.edges.pop_back();
    for (EdgeId e : g.out_edges(g.src(*d))) {
      if (e == *d) continue;
      Path ae = alpha, be = beta;
      ae.edges.push_back(e);
      be.edges.push_back(e);
      work.push_back({Monomial{std::move(ae), std::move(be)}, -k});
    }
    work.push_back({Monomial{std::move(alpha), std::move(beta)}, k});
  }
}

void check_monomial(const Graph& g, const Monomial& m) {
  if (g.range(m.gamma) != g.range(m.lambda)) {
    throw Error(ErrorKind::InvalidPath, "r(gamma) != r(lambda) in monomial");
  }
}

}  // namespace

bool is_basis_monomial(const Graph& g, const Monomial& m) {
  return g.range(m.gamma) == g.range(m.lambda) && !reducible_edge(g, m);
}

// ------------------------------------------------------------ AlgebraElement

AlgebraElement AlgebraElement::one(GraphPtr g) {
  AlgebraElement out(g);
  for (VertexId v = 0; v < g->vertex_count(); ++v) out.terms_.emplace(vertex_monomial(v), 1);
  return out;
}

AlgebraElement AlgebraElement::scalar(GraphPtr g, const Scalar& k) {
  return one(std::move(g)).scale(k);
}

AlgebraElement AlgebraElement::vertex(GraphPtr g, VertexId v) {
  if (v >= g->vertex_count()) throw Error(ErrorKind::UnknownVertex, "vertex id out of range");
  AlgebraElement out(std::move(g));
  out.terms_.emplace(vertex_monomial(v), 1);
  return out;
}

AlgebraElement AlgebraElement::edge(GraphPtr g, EdgeId e) {
  Monomial m = edge_monomial(*g, e);
  AlgebraElement out(std::move(g));
  out.terms_.emplace(std::move(m), 1);
  return out;
}

AlgebraElement AlgebraElement::ghost(GraphPtr g, EdgeId e) {
  Monomial m = ghost_monomial(*g, e);
  AlgebraElement out(std::move(g));
  out.terms_.emplace(std::move(m), 1);
  return out;
}

AlgebraElement AlgebraElement::path(GraphPtr g, const Path& p) {
  VertexId r = g->range(p);
  return monomial(g, Monomial{p, g->trivial_path(r)});
}

AlgebraElement AlgebraElement::monomial(GraphPtr g, const Monomial& m, const Scalar& k,
                                        ReductionOrder order) {
  check_monomial(*g, m);
  AlgebraElement out(g);
  std::optional<Rng> rng;
  if (order.seed) rng.emplace(*order.seed);
  reduce_into(*g, m, k, out.terms_, rng ? &*rng : nullptr);
  return out;
}

bool AlgebraElement::is_one() const { return *this == one(graph_); }

Scalar AlgebraElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void AlgebraElement::check_same_graph(const AlgebraElement& o) const {
  if (graph_ != o.graph_) {
    throw Error(ErrorKind::MixedGraphs, "operands belong to different graphs");
  }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  check_same_graph(o);
  AlgebraElement out = *this;
  for (const auto& [m, k] : o.terms_) accumulate(out.terms_, m, k);
  return out;
}

AlgebraElement AlgebraElement::operator-() const { return scale(Scalar(-1)); }

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const { return *this + (-o); }

AlgebraElement AlgebraElement::scale(const Scalar& k) const {
  AlgebraElement out(graph_);
  if (k.is_zero()) return out;
  for (const auto& [m, c] : terms_) {
    Scalar p = c * k;
    if (!p.is_zero()) out.terms_.emplace(m, std::move(p));
  }
  return out;
}

AlgebraElement AlgebraElement::multiply(const AlgebraElement& o, ReductionOrder order) const {
  check_same_graph(o);
  std::optional<Rng> rng;
  if (order.seed) rng.emplace(*order.seed);
  AlgebraElement out(graph_);
  for (const auto& [x, kx] : terms_) {
    for (const auto& [y, ky] : o.terms_) {
      if (auto m = monomial_product(*graph_, x, y)) {
        reduce_into(*graph_, *m, kx * ky, out.terms_, rng ? &*rng : nullptr);
      }
    }
  }
  return out;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  return multiply(o, ReductionOrder{});
}

AlgebraElement AlgebraElement::star() const {
  AlgebraElement out(graph_);
  for (const auto& [m, k] : terms_) out.terms_.emplace(Monomial{m.lambda, m.gamma}, k);
  return out;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  return graph_ == o.graph_ && terms_ == o.terms_;
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  const Graph& g = *graph_;
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, k] : terms_) {
    std::vector<std::string> factors;
    for (EdgeId e : m.gamma.edges) factors.push_back(g.edge_name(e));
    for (auto it = m.lambda.edges.rbegin(); it != m.lambda.edges.rend(); ++it) {
      factors.push_back(g.edge_name(*it) + "^*");
    }
    if (factors.empty()) factors.push_back(g.vertex_name(m.gamma.source));
    std::string body;
    for (std::size_t i = 0; i < factors.size(); ++i) body += (i ? "*" : "") + factors[i];

    bool negative = k.is_rational() && k.rational() < 0;
    Scalar mag = negative ? -k : k;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (!mag.is_one()) out << mag.to_string() << "*";
    out << body;
  }
  return out.str();
}

AlgebraElement operator*(const Scalar& k, const AlgebraElement& a) { return a.scale(k); }
AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) { return a + b; }
AlgebraElement scale(const Scalar& k, const AlgebraElement& a) { return a.scale(k); }
AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }
AlgebraElement star(const AlgebraElement& a) { return a.star(); }

// ---------------------------------------------------------------------- Expr

Expr Expr::scalar(lpa::Scalar k) {
  Expr e;
  e.kind = Kind::Scalar;
  e.value = std::move(k);
  return e;
}

Expr Expr::one() { return Expr{}; }

Expr Expr::vertex(VertexId v) {
  Expr e;
  e.kind = Kind::Vertex;
  e.id = v;
  return e;
}

Expr Expr::edge(EdgeId id) {
  Expr e;
  e.kind = Kind::Edge;
  e.id = id;
  return e;
}

Expr Expr::ghost(EdgeId id) {
  Expr e;
  e.kind = Kind::Ghost;
  e.id = id;
  return e;
}

Expr Expr::sum(std::vector<Expr> terms) {
  Expr e;
  e.kind = Kind::Sum;
  e.children = std::move(terms);
  return e;
}

Expr Expr::difference(Expr a, Expr b) {
  Expr e;
  e.kind = Kind::Difference;
  e.children = {std::move(a), std::move(b)};
  return e;
}

Expr Expr::product(std::vector<Expr> factors) {
  Expr e;
  e.kind = Kind::Product;
  e.children = std::move(factors);
  return e;
}

Expr Expr::negation(Expr a) {
  Expr e;
  e.kind = Kind::Negation;
  e.children = {std::move(a)};
  return e;
}

Expr operator+(Expr a, Expr b) { return Expr::sum({std::move(a), std::move(b)}); }
Expr operator-(Expr a, Expr b) { return Expr::difference(std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return Expr::product({std::move(a), std::move(b)}); }

std::string Expr::to_string(const Graph& g) const {
  auto joined = [&](const char* sep) {
    std::string out = "(";
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (i) out += sep;
      out += children[i].to_string(g);
    }
    return out + ")";
  };
  switch (kind) {
    case Kind::Scalar:
      return value.is_rational() && value.rational() < 0 ? "(" + value.to_string() + ")"
                                                         : value.to_string();
    case Kind::One:
      return "1";
    case Kind::Vertex:
      return g.vertex_name(id);
    case Kind::Edge:
      return g.edge_name(id);
    case Kind::Ghost:
      return g.edge_name(id) + "^*";
    case Kind::Sum:
      return joined(" + ");
    case Kind::Difference:
      return joined(" - ");
    case Kind::Product:
      return joined("*");
    case Kind::Negation:
      return "-" + children.at(0).to_string(g);
  }
  return "";
}

namespace {

void check_edge_symbol(const Graph& g, EdgeId e) {
  if (e >= g.edge_count() && g.bundle_count() == 0) {
    throw Error(ErrorKind::UnknownSymbol, "edge id " + std::to_string(e) + " is not in the graph");
  }
}

AlgebraElement eval(const GraphPtr& g, const Expr& x, Rng* rng) {
  using K = Expr::Kind;
  switch (x.kind) {
    case K::Scalar:
      return AlgebraElement::scalar(g, x.value);
    case K::One:
      return AlgebraElement::one(g);
    case K::Vertex:
      if (x.id >= g->vertex_count()) {
        throw Error(ErrorKind::UnknownSymbol, "vertex id " + std::to_string(x.id));
      }
      return AlgebraElement::vertex(g, x.id);
    case K::Edge:
      check_edge_symbol(*g, x.id);
      return AlgebraElement::edge(g, x.id);
    case K::Ghost:
      check_edge_symbol(*g, x.id);
      return AlgebraElement::ghost(g, x.id);
    case K::Sum: {
      AlgebraElement acc(g);
      for (const auto& c : x.children) acc += eval(g, c, rng);
      return acc;
    }
    case K::Difference:
      return eval(g, x.children.at(0), rng) - eval(g, x.children.at(1), rng);
    case K::Negation:
      return -eval(g, x.children.at(0), rng);
    case K::Product: {
      std::vector<AlgebraElement> parts;
      for (const auto& c : x.children) parts.push_back(eval(g, c, rng));
      if (parts.empty()) return AlgebraElement::one(g);
      // Random bracketing: repeatedly merge a random adjacent pair.
      while (parts.size() > 1) {
        std::size_t i = 0;
        std::optional<std::uint64_t> seed;
        if (rng) {
          i = std::uniform_int_distribution<std::size_t>(0, parts.size() - 2)(*rng);
          seed = (*rng)();
        }
        parts[i] = parts[i].multiply(parts[i + 1], ReductionOrder{seed});
        parts.erase(parts.begin() + static_cast<long>(i) + 1);
      }
      return parts.front();
    }
  }
  return AlgebraElement(g);
}

}  // namespace

AlgebraElement normalize(const GraphPtr& g, const Expr& expr, ReductionOrder order) {
  std::optional<Rng> rng;
  if (order.seed) rng.emplace(*order.seed);
  return eval(g, expr, rng ? &*rng : nullptr);
}

std::pair<AlgebraElement, AlgebraElement> invert_unipotent(const AlgebraElement& t) {
  if (!(t * t).is_zero()) {
    throw Error(ErrorKind::NotSquareZero, "t^2 != 0 for t = " + t.to_string());
  }
  auto one = AlgebraElement::one(t.graph());
  return {one + t, one - t};
}

bool is_freely_reduced(std::string_view word) {
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    char a = word[i], b = word[i + 1];
    if (a != b && (a ^ 0x20) == b) return false;
  }
  return true;
}

AlgebraElement eval_group_word(const GeneratorPair& gens, std::string_view word) {
  for (char c : word) {
    if (c != 'a' && c != 'A' && c != 'b' && c != 'B') {
      throw Error(ErrorKind::NotReduced, "letter '" + std::string(1, c) + "' not in {a,A,b,B}");
    }
  }
  if (!is_freely_reduced(word)) {
    throw Error(ErrorKind::NotReduced, "word '" + std::string(word) + "' is not freely reduced");
  }
  AlgebraElement acc = AlgebraElement::one(gens.a.graph());
  for (char c : word) {
    switch (c) {
      case 'a': acc *= gens.a; break;
      case 'A': acc *= gens.a_inv; break;
      case 'b': acc *= gens.b; break;
      default: acc *= gens.b_inv; break;
    }
  }
  return acc;
}

}  // namespace lpa
