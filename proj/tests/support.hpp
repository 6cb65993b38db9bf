#pragma once

// Fixtures, random generators and independent oracles shared by the unit and
// acceptance tests. Oracles here do not call into the library's algorithms.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/graph.hpp"
#include "lpa/io.hpp"
#include "lpa/repr.hpp"

namespace lpa::test {

inline std::string data_path(const std::string& name) {
  return std::string(LPA_DATA_DIR) + "/" + name;
}

inline GraphPtr fixture(const std::string& name) { return load_graph(data_path(name + ".json")); }

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"toeplitz", "g1", "g2", "g3", "g4"};
  return names;
}

inline GraphPtr make_graph(std::vector<std::string> vertices, std::vector<GraphSpec::Arc> edges,
                           std::vector<GraphSpec::Arc> bundles = {}) {
  return Graph::build(GraphSpec{std::move(vertices), std::move(edges), std::move(bundles)});
}

/// Random graph on 1..max_vertices vertices; bundles never form loops.
inline GraphSpec random_spec(std::mt19937_64& rng, std::size_t max_vertices = 5,
                             bool with_bundles = true) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  GraphSpec s;
  std::size_t n = 1 + pick(max_vertices);
  for (std::size_t i = 0; i < n; ++i) s.vertices.push_back("v" + std::to_string(i));
  std::size_t m = pick(2 * n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    s.edges.push_back({"e" + std::to_string(i), s.vertices[pick(n)], s.vertices[pick(n)]});
  }
  if (with_bundles && n > 1) {
    std::size_t k = pick(3);
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t a = pick(n), b = pick(n - 1);
      if (b >= a) ++b;
      s.bundles.push_back({"b" + std::to_string(i), s.vertices[a], s.vertices[b]});
    }
  }
  return s;
}

// ------------------------------------------------------------------ relations

struct Relation {
  std::string name;
  Expr expr;  // should vanish in L_K(E)
};

/// Every instance of V, E1, E2, CK1, CK2 over explicit edges.
inline std::vector<Relation> relation_instances(const Graph& g) {
  std::vector<Relation> out;
  auto V = [](VertexId v) { return Expr::vertex(v); };
  auto E = [](EdgeId e) { return Expr::edge(e); };
  auto G = [](EdgeId e) { return Expr::ghost(e); };
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (VertexId w = 0; w < g.vertex_count(); ++w) {
      if (v == w) {
        out.push_back({"V " + g.vertex_name(v), V(v) * V(v) - V(v)});
      } else {
        out.push_back({"V " + g.vertex_name(v) + "," + g.vertex_name(w), V(v) * V(w)});
      }
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const std::string n = g.edge_name(e);
    out.push_back({"E1 s " + n, V(g.src(e)) * E(e) - E(e)});
    out.push_back({"E1 r " + n, E(e) * V(g.dst(e)) - E(e)});
    out.push_back({"E2 r " + n, V(g.dst(e)) * G(e) - G(e)});
    out.push_back({"E2 s " + n, G(e) * V(g.src(e)) - G(e)});
    for (EdgeId f = 0; f < g.edge_count(); ++f) {
      if (e == f) {
        out.push_back({"CK1 " + n, G(e) * E(e) - V(g.dst(e))});
      } else {
        out.push_back({"CK1 " + n + "," + g.edge_name(f), G(e) * E(f)});
      }
    }
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_regular(v)) continue;
    std::vector<Expr> terms{V(v)};
    for (EdgeId e : g.out_edges(v)) terms.push_back(Expr::negation(E(e) * G(e)));
    out.push_back({"CK2 " + g.vertex_name(v), Expr::sum(std::move(terms))});
  }
  return out;
}

// ------------------------------------------------------------------ generators

/// Random expressions over vertices, edges, ghosts and small rationals.
class ExprGen {
 public:
  ExprGen(const Graph& g, std::uint64_t seed) : g_(g), rng_(seed) {}

  Expr atom() {
    std::size_t nv = g_.vertex_count(), ne = g_.edge_count();
    std::size_t pick = uniform(nv + 2 * ne + 1);
    if (pick < nv) return Expr::vertex(static_cast<VertexId>(pick));
    pick -= nv;
    if (pick < ne) return Expr::edge(static_cast<EdgeId>(pick));
    pick -= ne;
    if (pick < ne) return Expr::ghost(static_cast<EdgeId>(pick));
    return Expr::one();
  }

  Scalar coefficient() {
    long p = static_cast<long>(uniform(7)) - 3;
    if (p == 0) p = 1;
    long q = static_cast<long>(uniform(3)) + 1;
    return Scalar(Rational(p, q));
  }

  Expr monomial(std::size_t max_len) {
    std::size_t len = 1 + uniform(max_len);
    std::vector<Expr> factors;
    for (std::size_t i = 0; i < len; ++i) factors.push_back(atom());
    return Expr::product(std::move(factors));
  }

  /// Sum of up to max_terms scaled monomials.
  Expr expr(std::size_t max_terms = 3, std::size_t max_len = 4) {
    std::size_t n = 1 + uniform(max_terms);
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < n; ++i) {
      terms.push_back(Expr::scalar(coefficient()) * monomial(max_len));
    }
    return Expr::sum(std::move(terms));
  }

  std::size_t uniform(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::mt19937_64& rng() { return rng_; }

 private:
  const Graph& g_;
  std::mt19937_64 rng_;
};

// ------------------------------------------------------------------ oracles

using IntMatrix = std::array<std::array<long long, 2>, 2>;

inline IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline const IntMatrix kSanovA{{{1, 0}, {2, 1}}};
inline const IntMatrix kSanovB{{{1, 2}, {0, 1}}};
inline const IntMatrix kSanovAInv{{{1, 0}, {-2, 1}}};
inline const IntMatrix kSanovBInv{{{1, -2}, {0, 1}}};

inline IntMatrix word_matrix(const std::string& word) {
  IntMatrix m{{{1, 0}, {0, 1}}};
  for (char c : word) {
    m = int_mul(m, c == 'a' ? kSanovA : c == 'A' ? kSanovAInv : c == 'b' ? kSanovB : kSanovBInv);
  }
  return m;
}

inline bool same(const Matrix2& m, const IntMatrix& o) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!(m[i][j] == Scalar(static_cast<long>(o[i][j])))) return false;
  return true;
}

/// All strings over {a,A,b,B} of length 1..L that are freely reduced, by brute force.
inline std::vector<std::string> brute_force_reduced_words(std::size_t max_len) {
  std::vector<std::string> out;
  const std::string alphabet = "aAbB";
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
      std::string w;
      std::size_t c = code;
      for (std::size_t i = 0; i < len; ++i, c /= 4) w += alphabet[c % 4];
      bool reduced = true;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if ((w[i] == 'a' && w[i + 1] == 'A') || (w[i] == 'A' && w[i + 1] == 'a') ||
            (w[i] == 'b' && w[i + 1] == 'B') || (w[i] == 'B' && w[i + 1] == 'b')) {
          reduced = false;
        }
      }
      if (reduced) out.push_back(w);
    }
  }
  return out;
}

/// Transitive closure over edges and bundles by Floyd-Warshall on an adjacency matrix.
inline std::vector<std::vector<bool>> reach_matrix(const GraphSpec& s) {
  std::size_t n = s.vertices.size();
  auto idx = [&](const std::string& name) {
    for (std::size_t i = 0; i < n; ++i)
      if (s.vertices[i] == name) return i;
    return n;
  };
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (const auto* arcs : {&s.edges, &s.bundles})
    for (const auto& a : *arcs) r[idx(a.src)][idx(a.dst)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

inline std::size_t spec_index(const GraphSpec& s, const std::string& name) {
  for (std::size_t i = 0; i < s.vertices.size(); ++i)
    if (s.vertices[i] == name) return i;
  return s.vertices.size();
}

/// Hereditary and saturated straight from the definitions; `in` is indexed like s.vertices.
inline bool hs_oracle(const GraphSpec& s, const std::vector<bool>& in) {
  for (const auto* arcs : {&s.edges, &s.bundles}) {
    for (const auto& a : *arcs) {
      if (in[spec_index(s, a.src)] && !in[spec_index(s, a.dst)]) return false;
    }
  }
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    if (in[v]) continue;
    bool emits = false, bundle = false, all_in = true;
    for (const auto& a : s.edges) {
      if (spec_index(s, a.src) != v) continue;
      emits = true;
      all_in = all_in && in[spec_index(s, a.dst)];
    }
    for (const auto& a : s.bundles) bundle = bundle || spec_index(s, a.src) == v;
    if (emits && !bundle && all_in) return false;
  }
  return true;
}

/// Infinite emitters outside H whose bundles all land in H and that keep at least
/// one explicit edge leaving H.
inline std::vector<bool> breaking_oracle(const GraphSpec& s, const std::vector<bool>& in) {
  std::vector<bool> out(s.vertices.size(), false);
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    if (in[v]) continue;
    bool has_bundle = false, bundles_in = true, leaves = false;
    for (const auto& a : s.bundles) {
      if (spec_index(s, a.src) != v) continue;
      has_bundle = true;
      bundles_in = bundles_in && in[spec_index(s, a.dst)];
    }
    for (const auto& a : s.edges) {
      if (spec_index(s, a.src) == v && !in[spec_index(s, a.dst)]) leaves = true;
    }
    out[v] = has_bundle && bundles_in && leaves;
  }
  return out;
}

/// Dense polynomial remainder over Q (coefficients low to high), schoolbook.
inline std::vector<Rational> poly_rem(std::vector<Rational> a, const std::vector<Rational>& m) {
  while (a.size() >= m.size()) {
    Rational lead = a.back() / m.back();
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] -= lead * m[i];
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace lpa::test
