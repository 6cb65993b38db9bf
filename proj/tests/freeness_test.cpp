#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "lpa/error.hpp"
#include "lpa/freeness.hpp"
#include "support.hpp"

using namespace lpa;
using namespace lpa::test;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception";
  return ErrorKind::ParseError;
}

// Commutative iff every edge is a loop, no bundles, and each vertex has at most one loop.
bool commutative_oracle(const GraphSpec& s) {
  if (!s.bundles.empty()) return false;
  std::vector<int> loops(s.vertices.size(), 0);
  for (const auto& a : s.edges) {
    if (a.src != a.dst) return false;
    if (++loops[spec_index(s, a.src)] > 1) return false;
  }
  return true;
}

void expect_certificate_sound(const FreePairCertificate& c, std::size_t max_len) {
  EXPECT_TRUE((c.t_a * c.t_a).is_zero());
  EXPECT_TRUE((c.t_b * c.t_b).is_zero());
  EXPECT_TRUE((c.a * c.a_inv).is_one());
  EXPECT_TRUE((c.b * c.b_inv).is_one());
  VerificationTranscript t = verify_free_words(c, max_len, VerifyMode::Both);
  EXPECT_EQ(t.words_checked, brute_force_reduced_words(max_len).size());
  EXPECT_TRUE(t.all_nontrivial) << *t.first_violation;
  EXPECT_TRUE(t.cross_check);
  ASSERT_TRUE(t.matrix_a && t.matrix_b);
  EXPECT_TRUE(same(*t.matrix_a, kSanovA)) << to_string(*t.matrix_a);
  EXPECT_TRUE(same(*t.matrix_b, kSanovB)) << to_string(*t.matrix_b);
}

}  // namespace

TEST(Freeness, CommutativeGraphs) {
  EXPECT_TRUE(is_commutative(make_graph({"v"}, {{"e", "v", "v"}})).commutative);
  EXPECT_TRUE(is_commutative(make_graph({"u", "v"}, {})).commutative);
  GraphPtr g = make_graph({"u", "v"}, {{"e", "u", "u"}});
  EXPECT_TRUE(is_commutative(g).commutative);
  EXPECT_EQ(kind_of([&] { find_free_generators(g); }), ErrorKind::NoWitnessFound);
}

TEST(Freeness, NoncommutativeWitnesses) {
  std::vector<GraphPtr> graphs{fixture("toeplitz"), make_graph({"v"}, {{"e", "v", "v"}, {"f", "v", "v"}}),
                               make_graph({"u", "v"}, {}, {{"b", "u", "v"}})};
  for (const auto& g : graphs) {
    CommutativityReport r = is_commutative(g);
    ASSERT_FALSE(r.commutative);
    ASSERT_TRUE(r.witness);
    const auto& [x, y] = *r.witness;
    EXPECT_FALSE(x * y == y * x);
    EXPECT_FALSE(r.note.empty());
  }
}

TEST(Freeness, CommutativityMatchesOracle) {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 300; ++i) {
    GraphSpec s = random_spec(rng, 3);
    GraphPtr g = Graph::build(s);
    CommutativityReport r = is_commutative(g);
    ASSERT_EQ(r.commutative, commutative_oracle(s));
    if (r.witness) ASSERT_FALSE(r.witness->first * r.witness->second == r.witness->second * r.witness->first);
  }
}

TEST(Freeness, ReducedWordCount) {
  for (std::size_t l = 1; l <= 7; ++l) {
    EXPECT_EQ(reduced_word_count(l), brute_force_reduced_words(l).size());
  }
}

TEST(Freeness, VerifyModes) {
  EXPECT_EQ(parse_verify_mode("matrix"), VerifyMode::Matrix);
  EXPECT_EQ(to_string(VerifyMode::Both), "both");
  EXPECT_EQ(kind_of([] { parse_verify_mode("fast"); }), ErrorKind::ParseError);
}

TEST(Freeness, VerifyLengthOne) {
  auto certs = find_free_generators(fixture("toeplitz"));
  ASSERT_FALSE(certs.empty());
  VerificationTranscript t = verify_free_words(certs[0], 1, VerifyMode::Algebra);
  EXPECT_EQ(t.words_checked, 4u);
  EXPECT_TRUE(t.all_nontrivial);
  EXPECT_FALSE(t.matrix_a.has_value());
  EXPECT_EQ(t.bound_note(), "no nontrivial relation of length <= 1 (bounded check, not a proof of freeness)");
  EXPECT_EQ(kind_of([&] { verify_free_words(certs[0], 0, VerifyMode::Algebra); }), ErrorKind::ParseError);
}

TEST(Freeness, RelationIsReported) {
  GraphPtr t = fixture("toeplitz");
  AlgebraElement tf = parse_element(t, "f^*");
  FreePairCertificate c = make_certificate(tf, tf);
  VerificationTranscript r = verify_free_words(c, 3, VerifyMode::Algebra);
  EXPECT_FALSE(r.all_nontrivial);
  ASSERT_TRUE(r.first_violation);
  EXPECT_TRUE(eval_group_word(c.generators(), *r.first_violation).is_one());
  EXPECT_EQ(r.bound_note().rfind("relation found", 0), 0u);
  EXPECT_EQ(kind_of([&] { verify_free_words(c, 2, VerifyMode::Matrix); }), ErrorKind::NoWitnessFound);
  EXPECT_EQ(kind_of([&] { witness_module(c); }), ErrorKind::NoWitnessFound);
  EXPECT_EQ(kind_of([&] { make_certificate(parse_element(t, "e"), tf); }), ErrorKind::NotSquareZero);
}

TEST(Freeness, FixtureCertificatesAreSound) {
  for (const auto& name : fixture_names()) {
    auto certs = find_free_generators(fixture(name));
    ASSERT_FALSE(certs.empty()) << name;
    for (const auto& c : certs) {
      SCOPED_TRACE(name + ": " + c.t_a.to_string());
      ASSERT_TRUE(c.witness);
      expect_certificate_sound(c, 5);
    }
  }
}

TEST(Freeness, ToeplitzWitnessModule) {
  GraphPtr t = fixture("toeplitz");
  auto certs = find_free_generators(t);
  const auto& c = certs.front();
  EXPECT_EQ(c.t_a, parse_element(t, "f^*"));
  EXPECT_EQ(c.t_b, parse_element(t, "f"));
  WitnessModule wm = witness_module(c);
  EXPECT_EQ(wm.module.kind(), Module::Kind::Sink);
  EXPECT_EQ(wm.module.to_string(wm.basis.first), "f");
  EXPECT_EQ(wm.module.to_string(wm.basis.second), "v");
}

TEST(Freeness, CertificatesAreDistinct) {
  auto certs = find_free_generators(fixture("g1"));
  for (std::size_t i = 0; i < certs.size(); ++i)
    for (std::size_t j = i + 1; j < certs.size(); ++j)
      EXPECT_FALSE(certs[i].t_a == certs[j].t_a && certs[i].t_b == certs[j].t_b);
}

// A witness edge needs s(f) != r(f), so loop-only graphs such as the two-petal rose
// have no certificate even though they are noncommutative.
TEST(Freeness, RoseHasNoWitness) {
  GraphPtr rose = make_graph({"v"}, {{"e", "v", "v"}, {"f", "v", "v"}});
  EXPECT_FALSE(is_commutative(rose).commutative);
  EXPECT_EQ(kind_of([&] { find_free_generators(rose); }), ErrorKind::NoWitnessFound);
}

TEST(Freeness, RandomNoncommutativeGraphsYieldSoundCertificates) {
  std::mt19937_64 rng(52);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    GraphSpec s = random_spec(rng, 4);
    GraphPtr g = Graph::build(s);
    if (commutative_oracle(s)) continue;
    SCOPED_TRACE(graph_to_json(*g));
    bool loops_only = s.bundles.empty() &&
                      std::all_of(s.edges.begin(), s.edges.end(), [](const auto& a) { return a.src == a.dst; });
    std::vector<FreePairCertificate> certs;
    try {
      certs = find_free_generators(g);
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::NoWitnessFound);
      ASSERT_TRUE(loops_only);
      continue;
    }
    ASSERT_FALSE(certs.empty());
    expect_certificate_sound(certs.front(), 4);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Freeness, TailThroughBundle) {
  GraphPtr g = make_graph({"a", "b"}, {{"e", "a", "b"}}, {{"k", "b", "a"}});
  auto certs = find_free_generators(g);
  ASSERT_FALSE(certs.empty());
  const auto& c = certs.front();
  ASSERT_TRUE(c.witness);
  EXPECT_EQ(c.witness->kind, Witness::Kind::InfinitePathEdge);
  EXPECT_EQ(c.witness->edge, g->edge("e"));
  WitnessModule wm = witness_module(c);
  const Graph& q = *wm.module.graph();
  EXPECT_EQ(q.path_string(*c.witness->tail_cycle), "k#0*e");
  expect_certificate_sound(c, 5);
}
