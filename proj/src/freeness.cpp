#include "lpa/freeness.hpp"

#include <deque>
#include <functional>
#include <set>

#include "lpa/error.hpp"

namespace lpa {

CommutativityReport is_commutative(const GraphPtr& g) {
  CommutativityReport out;
  auto noncommutative = [&](AlgebraElement x, AlgebraElement y, std::string note) {
    out.commutative = false;
    out.witness.emplace(std::move(x), std::move(y));
    out.note = std::move(note);
    return out;
  };
  for (EdgeId e = 0; e < g->edge_count(); ++e) {
    if (g->src(e) != g->dst(e)) {
      return noncommutative(AlgebraElement::edge(g, e), AlgebraElement::vertex(g, g->src(e)),
                            g->edge_name(e) + " * s(" + g->edge_name(e) + ") = 0");
    }
  }
  for (std::size_t b = 0; b < g->bundle_count(); ++b) {
    EdgeId e = g->mint(b, 0);
    return noncommutative(AlgebraElement::edge(g, e), AlgebraElement::vertex(g, g->src(e)),
                          g->edge_name(e) + " * s(" + g->edge_name(e) + ") = 0");
  }
  for (VertexId v = 0; v < g->vertex_count(); ++v) {
    const auto& outs = g->out_edges(v);
    if (outs.size() >= 2) {
      return noncommutative(AlgebraElement::edge(g, outs[0]), AlgebraElement::edge(g, outs[1]),
                            "two loops at " + g->vertex_name(v));
    }
  }
  out.note = "isolated vertices and single loops only";
  return out;
}

std::string_view to_string(Witness::Kind k) {
  switch (k) {
    case Witness::Kind::SinkEdge:
      return "sink_edge";
    case Witness::Kind::InfinitePathEdge:
      return "infinite_path_edge";
    case Witness::Kind::BreakingVertex:
      return "breaking_vertex";
  }
  return "sink_edge";
}

std::string_view to_string(VerifyMode m) {
  switch (m) {
    case VerifyMode::Algebra:
      return "algebra";
    case VerifyMode::Matrix:
      return "matrix";
    case VerifyMode::Both:
      return "both";
  }
  return "both";
}

VerifyMode parse_verify_mode(std::string_view s) {
  if (s == "algebra") return VerifyMode::Algebra;
  if (s == "matrix") return VerifyMode::Matrix;
  if (s == "both") return VerifyMode::Both;
  throw Error(ErrorKind::ParseError, "mode must be algebra, matrix or both, got '" +
                                         std::string(s) + "'");
}

std::string VerificationTranscript::bound_note() const {
  std::string l = std::to_string(max_len);
  if (first_violation) return "relation found at word " + *first_violation;
  return "no nontrivial relation of length <= " + l + " (bounded check, not a proof of freeness)";
}

FreePairCertificate make_certificate(const AlgebraElement& t_a, const AlgebraElement& t_b) {
  auto [a, a_inv] = invert_unipotent(t_a.scale(Scalar(2)));
  auto [b, b_inv] = invert_unipotent(t_b.scale(Scalar(2)));
  return FreePairCertificate{t_a.graph(), t_a, t_b, a, a_inv, b, b_inv, {}, {}, {}, {}};
}

namespace {

// Image of an E-edge in the quotient graph; prime selects the clone e'.
EdgeId quotient_edge(const Graph& g, const QuotientGraph& q, EdgeId e, bool prime) {
  if (!g.is_minted(e)) return prime ? q.edge_prime.at(e) : q.edge.at(e);
  std::size_t k = e - g.edge_count();
  std::size_t bundle = k % g.bundle_count(), index = k / g.bundle_count();
  return q.graph->mint(prime ? q.bundle_prime.at(bundle) : q.bundle.at(bundle), index);
}

// Out-edges used to build infinite paths: explicit edges, or additionally the
// first minted edge of each bundle.
std::vector<EdgeId> path_edges(const Graph& f, VertexId x, bool with_bundles) {
  std::vector<EdgeId> out = f.out_edges(x);
  if (with_bundles) {
    for (std::size_t b : f.out_bundles(x)) out.push_back(f.mint(b, 0));
  }
  return out;
}

// Shortest path from `from` to a vertex satisfying `stop`, as edges.
template <typename Stop>
std::optional<Path> bfs_path(const Graph& f, VertexId from, bool with_bundles, bool nonempty, Stop stop) {
  std::map<VertexId, std::optional<EdgeId>> parent;
  std::deque<VertexId> queue;
  auto unwind = [&](VertexId y, std::optional<EdgeId> last) {
    Path p{y, {}};
    if (last) {
      p.edges.push_back(*last);
      p.source = f.src(*last);
      y = f.src(*last);
    }
    for (; parent.at(y); y = f.src(*parent.at(y))) {
      p.edges.insert(p.edges.begin(), *parent.at(y));
      p.source = f.src(*parent.at(y));
    }
    return p;
  };
  parent.emplace(from, std::nullopt);
  queue.push_back(from);
  if (!nonempty && stop(from)) return Path{from, {}};
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    for (EdgeId e : path_edges(f, x, with_bundles)) {
      VertexId y = f.dst(e);
      if (stop(y)) return unwind(y, e);
      if (parent.try_emplace(y, e).second) queue.push_back(y);
    }
  }
  return std::nullopt;
}

// Shortest path from v to a vertex on a cycle, and a cycle based there.
std::optional<std::pair<Path, Path>> path_to_cycle(const Graph& f, VertexId v, bool with_bundles) {
  auto cycle_at = [&](VertexId x) {
    return bfs_path(f, x, with_bundles, true, [x](VertexId y) { return y == x; });
  };
  std::optional<Path> cycle;
  auto prefix = bfs_path(f, v, with_bundles, false, [&](VertexId x) {
    cycle = cycle_at(x);
    return cycle.has_value();
  });
  if (!prefix) return std::nullopt;
  return std::make_pair(*prefix, *cycle);
}

// Witness for f in the quotient of (H, B_H): r(f) a sink or on an infinite path.
std::optional<Witness> edge_witness(const Graph& g, const AdmissiblePair& pair, EdgeId f) {
  const QuotientGraph& q = pair.quotient();
  VertexId r = q.vertex.at(g.dst(f));
  Witness w;
  w.edge = f;
  w.vertex = g.dst(f);
  w.h = pair.h();
  w.s = pair.s();
  if (q.graph->kind(r) == VertexKind::Sink) {
    w.kind = Witness::Kind::SinkEdge;
    return w;
  }
  auto tail = path_to_cycle(*q.graph, r, false);
  if (!tail) tail = path_to_cycle(*q.graph, r, true);
  if (!tail) return std::nullopt;
  w.kind = Witness::Kind::InfinitePathEdge;
  w.tail_prefix = tail->first;
  w.tail_cycle = tail->second;
  return w;
}

LaurentPoly default_poly() { return LaurentPoly::parse("1 + x + x^2"); }

}  // namespace

std::vector<FreePairCertificate> find_free_generators(const GraphPtr& g) {
  CommutativityReport comm = is_commutative(g);
  if (comm.commutative) {
    throw Error(ErrorKind::NoWitnessFound, "L_K(E) is commutative (" + comm.note + ")");
  }
  std::vector<FreePairCertificate> out;
  std::set<std::pair<std::string, std::string>> seen;
  auto emit = [&](AlgebraElement t_a, AlgebraElement t_b, Witness w,
                  const ClassificationResult& res) {
    FreePairCertificate cert = make_certificate(t_a, t_b);
    if (!seen.insert({cert.a.to_string(), cert.b.to_string()}).second) return;
    if (g->is_minted(w.edge)) cert.minted.push_back(w.edge);
    cert.witness = std::move(w);
    cert.classification = res;
    out.push_back(std::move(cert));
  };

  std::vector<Cycle> exclusive;
  for (const Cycle& c : cycle_report(*g).cycles) {
    if (c.exclusive) exclusive.push_back(c);
  }

  for (const AdmissiblePair& pair : enumerate_admissible(g)) {
    if (pair.h().size() == g->vertex_count()) continue;
    if (is_commutative(pair.quotient().graph).commutative) continue;

    std::vector<ClassificationResult> results;
    ClassificationResult graded = classify_pair(IdealDescriptor::graded(pair));
    if (graded.verdict != ClassificationResult::Verdict::NotPrimitive) results.push_back(graded);
    if (pair.s() == pair.breaking()) {
      for (const Cycle& c : exclusive) {
        auto res = classify_pair(IdealDescriptor::type_iii(pair, c.path, default_poly()));
        if (res.verdict == ClassificationResult::Verdict::TypeIII) results.push_back(res);
      }
    }

    for (const ClassificationResult& res : results) {
      if (res.verdict == ClassificationResult::Verdict::TypeI) {
        VertexId w = *res.w;
        std::vector<EdgeId> edges = g->in_edges(w);
        if (edges.empty() && !g->in_bundles(w).empty()) edges.push_back(g->mint(g->in_bundles(w)[0], 0));
        AlgebraElement wh = breaking_vertex_element(g, pair.h(), w);
        for (EdgeId f : edges) {
          Witness wit;
          wit.kind = Witness::Kind::BreakingVertex;
          wit.edge = f;
          wit.vertex = w;
          wit.h = pair.h();
          wit.s = pair.s();
          emit(wh * AlgebraElement::ghost(g, f), AlgebraElement::edge(g, f) * wh, std::move(wit),
               res);
        }
        continue;
      }
      std::vector<std::pair<EdgeId, Witness>> found;
      for (EdgeId f = 0; f < g->edge_count(); ++f) {
        if (pair.h().contains(g->dst(f)) || g->src(f) == g->dst(f)) continue;
        if (auto w = edge_witness(*g, pair, f)) found.emplace_back(f, *w);
      }
      if (found.empty()) {
        for (std::size_t b = 0; b < g->bundle_count(); ++b) {
          if (pair.h().contains(g->bundle_dst(b))) continue;
          EdgeId f = g->mint(b, 0);
          if (auto w = edge_witness(*g, pair, f)) {
            found.emplace_back(f, *w);
            break;
          }
        }
      }
      for (auto& [f, w] : found) {
        emit(AlgebraElement::ghost(g, f), AlgebraElement::edge(g, f), std::move(w), res);
      }
    }
  }
  if (out.empty()) {
    throw Error(ErrorKind::NoWitnessFound,
                "no admissible pair yields a sink, infinite-path or breaking-vertex witness");
  }
  return out;
}

WitnessModule witness_module(const FreePairCertificate& cert) {
  if (!cert.witness) throw Error(ErrorKind::NoWitnessFound, "certificate carries no witness");
  const Witness& w = *cert.witness;
  const Graph& g = *cert.graph;
  AdmissiblePair pair(cert.graph, w.h, w.s);
  const QuotientGraph& q = pair.quotient();
  switch (w.kind) {
    case Witness::Kind::SinkEdge: {
      Module m = Module::sink(q.graph, q.vertex.at(w.vertex));
      auto basis = invariant_pair(m, quotient_edge(g, q, w.edge, false));
      return {pair, m, basis};
    }
    case Witness::Kind::BreakingVertex: {
      Module m = Module::sink(q.graph, q.vertex_prime.at(w.vertex));
      auto basis = invariant_pair(m, quotient_edge(g, q, w.edge, true));
      return {pair, m, basis};
    }
    case Witness::Kind::InfinitePathEdge: {
      if (!w.tail_prefix || !w.tail_cycle) {
        throw Error(ErrorKind::NoWitnessFound, "infinite-path witness without tail");
      }
      Module m = Module::rational(q.graph, *w.tail_prefix, *w.tail_cycle);
      auto basis = invariant_pair(m, quotient_edge(g, q, w.edge, false));
      return {pair, m, basis};
    }
  }
  throw Error(ErrorKind::NoWitnessFound, "unknown witness kind");
}

std::size_t reduced_word_count(std::size_t max_len) {
  std::size_t total = 0, level = 4;
  for (std::size_t k = 1; k <= max_len; ++k, level *= 3) total += level;
  return total;
}

VerificationTranscript verify_free_words(const FreePairCertificate& cert, std::size_t max_len,
                                         VerifyMode mode) {
  if (max_len < 1) throw Error(ErrorKind::ParseError, "max_len must be at least 1");
  VerificationTranscript t;
  t.max_len = max_len;
  t.mode = mode;
  bool use_alg = mode != VerifyMode::Matrix;
  bool use_mat = mode != VerifyMode::Algebra;
  bool cross = mode == VerifyMode::Both;

  const std::string letters = "aAbB";
  std::vector<AlgebraElement> elems{cert.a, cert.a_inv, cert.b, cert.b_inv};
  std::vector<Matrix2> mats;
  std::optional<WitnessModule> wm;
  if (use_mat) {
    wm = witness_module(cert);
    for (const auto& x : elems) mats.push_back(matrix_of(wm->module, wm->basis, phi_map(wm->pair, x)));
    t.matrix_a = mats[0];
    t.matrix_b = mats[2];
  }
  const Matrix2 id = identity_matrix();

  std::string word;
  std::function<void(const AlgebraElement&, const Matrix2&)> visit =
      [&](const AlgebraElement& elem, const Matrix2& mat) {
        for (std::size_t i = 0; i < letters.size(); ++i) {
          char c = letters[i];
          if (!word.empty() && word.back() != c && (word.back() ^ 0x20) == c) continue;
          word.push_back(c);
          AlgebraElement next = use_alg ? elem * elems[i] : elem;
          Matrix2 next_mat = use_mat ? mat * mats[i] : mat;
          ++t.words_checked;
          bool trivial = (use_alg && next.is_one()) || (use_mat && next_mat == id);
          if (trivial) {
            t.all_nontrivial = false;
            if (!t.first_violation) t.first_violation = word;
          }
          if (cross) {
            Matrix2 direct = matrix_of(wm->module, wm->basis, phi_map(wm->pair, next));
            if (!(direct == next_mat)) {
              t.cross_check = false;
              if (!t.first_violation) t.first_violation = word + " (matrix/algebra mismatch)";
            }
          }
          if (word.size() < max_len) visit(next, next_mat);
          word.pop_back();
        }
      };
  visit(AlgebraElement::one(cert.graph), id);
  return t;
}

}  // namespace lpa
