#pragma once

// Graded ideals I(H, S), the quotient map phi onto L_K(E/(H,S)), and the
// classification of primitive ideals into types I, II and III.

#include <optional>
#include <string>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/graph.hpp"
#include "lpa/scalar.hpp"

namespace lpa {

class AdmissiblePair {
 public:
  /// Throws NotAdmissible unless H is hereditary saturated and S is in B_H.
  AdmissiblePair(GraphPtr g, VertexSet h, VertexSet s);

  const GraphPtr& graph() const { return graph_; }
  const VertexSet& h() const { return h_; }
  const VertexSet& s() const { return s_; }
  const VertexSet& breaking() const { return breaking_; }
  /// E/(H,S), built on first use.
  const QuotientGraph& quotient() const;

  bool operator==(const AdmissiblePair& o) const {
    return graph_ == o.graph_ && h_ == o.h_ && s_ == o.s_;
  }

 private:
  GraphPtr graph_;
  VertexSet h_, s_, breaking_;
  mutable std::shared_ptr<QuotientGraph> quotient_;
};

/// phi : L_K(E) -> L_K(E/(H,S)), with kernel I(H,S).
AlgebraElement phi_map(const AdmissiblePair& p, const AlgebraElement& a);

/// w - sum of e e^* over explicit edges e with s(e) = w, r(e) not in H.
/// Throws NotBreakingVertex.
AlgebraElement breaking_vertex_element(const GraphPtr& g, const VertexSet& h, VertexId w);

/// f(c): x -> c, x^-1 -> c^*, a_0 -> a_0 v with v = s(c).
/// Throws NotACycle or ZeroConstantTerm.
AlgebraElement poly_of_cycle(const GraphPtr& g, const Path& cycle, const LaurentPoly& f);

struct IdealDescriptor {
  enum class Kind { Graded, TypeIII };

  AdmissiblePair pair;
  Kind kind = Kind::Graded;
  std::optional<Path> cycle;          // type III
  std::optional<LaurentPoly> poly;    // type III

  static IdealDescriptor graded(AdmissiblePair p) { return {std::move(p), Kind::Graded, {}, {}}; }
  /// Throws NotAdmissible unless S = B_H; NotACycle unless c is a cycle.
  static IdealDescriptor type_iii(AdmissiblePair p, Path c, LaurentPoly f);
};

/// Graded ideals only: a in I(H,S) iff phi(a) = 0.
/// Throws TypeIIIMembershipUnsupported.
bool ideal_membership(const IdealDescriptor& d, const AlgebraElement& a);

struct TranscriptEntry {
  std::string condition;
  bool outcome = false;
  std::string note;
  bool operator==(const TranscriptEntry&) const = default;
};

struct ClassificationResult {
  enum class Verdict { TypeI, TypeII, TypeIII, NotPrimitive };

  Verdict verdict = Verdict::NotPrimitive;
  std::optional<VertexId> w;  // type I only
  std::vector<TranscriptEntry> transcript;

  std::string verdict_string(const Graph& g) const;
};

std::string_view to_string(ClassificationResult::Verdict v);

ClassificationResult classify_pair(const IdealDescriptor& d);

/// All admissible pairs, ordered by (|H|, H, |S|, S). Throws TooLarge.
std::vector<AdmissiblePair> enumerate_admissible(const GraphPtr& g, std::size_t max_vertices = 16);

}  // namespace lpa
