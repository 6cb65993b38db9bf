#pragma once

// Exact arithmetic in the Leavitt path algebra L_K(E) of a graph with finitely
// many vertices. Elements are kept in the canonical basis of monomials
// gamma * lambda^* with r(gamma) = r(lambda), where for every regular vertex
// the largest out-edge d is "special" and no basis monomial has both paths
// ending in the same special edge. Reduction uses CK2 in the form
//   alpha d d^* beta^*  ->  alpha beta^* - sum_{e != d, s(e) = s(d)} alpha e e^* beta^*
// and multiplication uses CK1, which together decide equality.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lpa/graph.hpp"
#include "lpa/scalar.hpp"

namespace lpa {

/// gamma * lambda^*.
struct Monomial {
  Path gamma;
  Path lambda;

  std::strong_ordering operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

/// Vertices, edges and ghost edges as monomials.
Monomial vertex_monomial(VertexId v);
Monomial edge_monomial(const Graph& g, EdgeId e);
Monomial ghost_monomial(const Graph& g, EdgeId e);
bool is_basis_monomial(const Graph& g, const Monomial& m);

/// Controls the order in which reducible terms are rewritten. With a seed, the
/// worklist is processed in pseudo-random order and products are bracketed
/// randomly; the normal form does not depend on it.
struct ReductionOrder {
  std::optional<std::uint64_t> seed;
};

class AlgebraElement {
 public:
  using Terms = std::map<Monomial, Scalar>;

  explicit AlgebraElement(GraphPtr graph) : graph_(std::move(graph)) {}

  static AlgebraElement zero(GraphPtr g) { return AlgebraElement(std::move(g)); }
  static AlgebraElement one(GraphPtr g);
  static AlgebraElement scalar(GraphPtr g, const Scalar& k);
  static AlgebraElement vertex(GraphPtr g, VertexId v);
  static AlgebraElement edge(GraphPtr g, EdgeId e);
  static AlgebraElement ghost(GraphPtr g, EdgeId e);
  static AlgebraElement path(GraphPtr g, const Path& p);
  /// Reduces m first; m need not be a basis monomial.
  static AlgebraElement monomial(GraphPtr g, const Monomial& m, const Scalar& k = Scalar(1),
                                 ReductionOrder order = {});

  const GraphPtr& graph() const { return graph_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  Scalar coefficient(const Monomial& m) const;

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement& operator+=(const AlgebraElement& o) { return *this = *this + o; }
  AlgebraElement& operator*=(const AlgebraElement& o) { return *this = *this * o; }

  AlgebraElement multiply(const AlgebraElement& o, ReductionOrder order) const;
  AlgebraElement scale(const Scalar& k) const;
  /// The K-linear involution gamma lambda^* -> lambda gamma^*.
  AlgebraElement star() const;

  /// Same graph object and identical canonical terms.
  bool operator==(const AlgebraElement& o) const;

  /// Canonical text, parseable by parse_expr: terms in basis order joined by
  /// " + " / " - ", factors joined by "*", ghosts as "e^*".
  std::string to_string() const;

 private:
  void check_same_graph(const AlgebraElement& o) const;
  GraphPtr graph_;
  Terms terms_;
};

AlgebraElement operator*(const Scalar& k, const AlgebraElement& a);

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement scale(const Scalar& k, const AlgebraElement& a);
AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement star(const AlgebraElement& a);

/// Syntax tree over the generators of L_K(E); symbols are already resolved.
struct Expr {
  enum class Kind { Scalar, One, Vertex, Edge, Ghost, Sum, Difference, Product, Negation };

  Kind kind = Kind::One;
  lpa::Scalar value;      // Kind::Scalar
  std::uint32_t id = 0;   // vertex or edge id
  std::vector<Expr> children;

  static Expr scalar(lpa::Scalar k);
  static Expr one();
  static Expr vertex(VertexId v);
  static Expr edge(EdgeId e);
  static Expr ghost(EdgeId e);
  static Expr sum(std::vector<Expr> terms);
  static Expr difference(Expr a, Expr b);
  static Expr product(std::vector<Expr> factors);
  static Expr negation(Expr a);

  std::string to_string(const Graph& g) const;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);

/// Throws UnknownSymbol when an id does not resolve in g.
AlgebraElement normalize(const GraphPtr& g, const Expr& expr, ReductionOrder order = {});

/// Returns (1 + t, 1 - t). Throws NotSquareZero unless t^2 = 0.
std::pair<AlgebraElement, AlgebraElement> invert_unipotent(const AlgebraElement& t);

struct GeneratorPair {
  AlgebraElement a, a_inv, b, b_inv;
};

/// Words over {a, A, b, B}; capitals are inverses. Throws NotReduced.
AlgebraElement eval_group_word(const GeneratorPair& gens, std::string_view word);
bool is_freely_reduced(std::string_view word);

}  // namespace lpa
