#pragma once

// Simple modules over L_K(E) as exact, finitely supported linear actions:
//   N_w          finite paths ending at a sink w
//   S_{v,inf}    finite paths ending at an infinite emitter v
//   V_[mu]       infinite paths tail-equivalent to mu = prefix c^inf
//   V_[mu]^f     V_[mu] over K' = Q[x,x^-1]/(f), first cycle edge twisted by x-bar
// Only eventually periodic infinite paths are representable.

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/graph.hpp"
#include "lpa/scalar.hpp"

namespace lpa {

/// A finite path (finite-path modules) or prefix * (c rotated by k)^inf.
/// Rational vectors are canonical: the prefix never ends in the edge the
/// periodic tail would absorb.
struct BasisVector {
  Path prefix;
  std::optional<std::size_t> rotation;

  std::strong_ordering operator<=>(const BasisVector&) const = default;
  bool operator==(const BasisVector&) const = default;
};

using ModuleVector = std::map<BasisVector, Scalar>;

class Module {
 public:
  enum class Kind { Sink, Rational, InfiniteEmitter, Twisted };

  /// Throws InvalidModule unless w is a sink.
  static Module sink(GraphPtr g, VertexId w);
  /// Throws InvalidModule unless v is an infinite emitter.
  static Module infinite_emitter(GraphPtr g, VertexId v);
  /// cycle: any closed path (reduced to its primitive root); prefix must end
  /// at s(cycle). Throws InvalidModule.
  static Module rational(GraphPtr g, Path prefix, Path cycle);
  /// twisted_edge must lie on the cycle; default is the cycle's first edge.
  static Module twisted(GraphPtr g, Path prefix, Path cycle, FieldPtr field,
                        std::optional<EdgeId> twisted_edge = std::nullopt);

  Kind kind() const { return kind_; }
  const GraphPtr& graph() const { return graph_; }
  const FieldPtr& field() const { return field_; }
  /// Sink / emitter vertex for finite-path modules.
  VertexId anchor() const { return anchor_; }
  const std::vector<EdgeId>& cycle() const { return cycle_; }
  std::optional<EdgeId> twisted_edge() const { return twisted_edge_; }
  /// The module's distinguished basis vector: the anchor vertex, or prefix*c^inf.
  const BasisVector& base() const { return base_; }

  bool is_rational_kind() const { return kind_ == Kind::Rational || kind_ == Kind::Twisted; }

  /// Canonical form of prefix * (c rotated by k)^inf.
  BasisVector rational_vector(Path prefix, std::size_t rotation) const;
  VertexId source(const BasisVector& b) const;
  /// Validates a basis vector for this module (throws InvalidModule).
  void check(const BasisVector& b) const;

  /// "e*f" / vertex name for finite paths; "prefix·(cycle)^inf@k" otherwise.
  std::string to_string(const BasisVector& b) const;
  std::string to_string(const ModuleVector& x) const;

  // Generator actions on a single basis vector.
  std::optional<BasisVector> act_vertex(VertexId v, const BasisVector& b) const;
  std::optional<BasisVector> act_edge(EdgeId e, const BasisVector& b) const;
  std::optional<BasisVector> act_ghost(EdgeId e, const BasisVector& b) const;

 private:
  Module() = default;
  Kind kind_ = Kind::Sink;
  GraphPtr graph_;
  FieldPtr field_;
  VertexId anchor_ = 0;
  std::vector<EdgeId> cycle_;
  std::optional<EdgeId> twisted_edge_;
  BasisVector base_;
};

ModuleVector basis_vector(const BasisVector& b, const Scalar& k = Scalar(1));

/// Linear extension of the basis rules. Throws MixedGraphs or FieldMismatch.
ModuleVector act(const Module& m, const AlgebraElement& a, const ModuleVector& x);
/// Acts factor by factor without normalizing, so relations can be tested.
ModuleVector act_expr(const Module& m, const Expr& a, const ModuleVector& x);

/// (q, p): p the base vector, q = f * p. Throws NotAWitnessEdge.
std::pair<BasisVector, BasisVector> invariant_pair(const Module& m, EdgeId f);

using Matrix2 = std::array<std::array<Scalar, 2>, 2>;

Matrix2 identity_matrix();
Matrix2 operator*(const Matrix2& a, const Matrix2& b);
bool operator==(const Matrix2& a, const Matrix2& b);
std::string to_string(const Matrix2& m);

/// Columns are the coordinates of a*q and a*p in the basis (q, p).
/// Throws NotInvariant when the image leaves the span.
Matrix2 matrix_of(const Module& m, const std::pair<BasisVector, BasisVector>& basis,
                  const AlgebraElement& a);

}  // namespace lpa
