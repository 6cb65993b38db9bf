#include "lpa/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "lpa/error.hpp"

namespace lpa {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorKind::SchemaError, msg); }

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    schema("invalid JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

void only_keys(const Json& obj, std::initializer_list<std::string_view> keys, const std::string& what) {
  if (!obj.is_object()) schema(what + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (auto key : keys) known = known || k == key;
    if (!known) schema("unknown key '" + k + "' in " + what);
  }
}

const std::string& string_field(const Json& obj, const std::string& key, const std::string& what) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(what + " lacks \"" + key + "\"");
  if (!it->is_string()) schema("\"" + key + "\" in " + what + " must be a string");
  return it->get_ref<const std::string&>();
}

std::vector<std::string> string_list(const Json& j, const std::string& what) {
  if (!j.is_array()) schema(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) schema(what + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::vector<GraphSpec::Arc> arcs(const Json& j, const std::string& what) {
  if (!j.is_array()) schema("\"" + what + "\" must be an array");
  std::vector<GraphSpec::Arc> out;
  for (const auto& a : j) {
    only_keys(a, {"name", "src", "dst"}, what + " entry");
    out.push_back({string_field(a, "name", what + " entry"), string_field(a, "src", what + " entry"),
                   string_field(a, "dst", what + " entry")});
  }
  return out;
}

Json arcs_json(const std::vector<GraphSpec::Arc>& as) {
  Json out = Json::array();
  for (const auto& a : as) out.push_back({{"name", a.name}, {"src", a.src}, {"dst", a.dst}});
  return out;
}

Json names_json(const Graph& g, const VertexSet& s) {
  Json out = Json::array();
  for (const auto& n : g.names(s)) out.push_back(n);
  return out;
}

VertexSet vertex_set(const Graph& g, const Json& j, const std::string& what) {
  return g.vertices(string_list(j, what));
}

Json path_json(const Graph& g, const Path& p) {
  Json edges = Json::array();
  for (EdgeId e : p.edges) edges.push_back(g.edge_name(e));
  return {{"source", g.vertex_name(p.source)}, {"edges", edges}};
}

Path parse_path(const Graph& g, const Json& j) {
  only_keys(j, {"source", "edges"}, "path");
  Path p{g.vertex(string_field(j, "source", "path")), {}};
  for (const auto& n : string_list(j.at("edges"), "path edges")) p.edges.push_back(g.edge(n));
  g.check_path(p);
  return p;
}

Json matrix_json(const Matrix2& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back({row[0].to_string(), row[1].to_string()});
  return out;
}

Matrix2 parse_matrix(const Json& j) {
  if (!j.is_array() || j.size() != 2) schema("matrix must be 2x2");
  Matrix2 m;
  for (std::size_t i = 0; i < 2; ++i) {
    auto row = string_list(j[i], "matrix row");
    if (row.size() != 2) schema("matrix must be 2x2");
    for (std::size_t k = 0; k < 2; ++k) m[i][k] = Scalar(parse_rational(row[k]));
  }
  return m;
}

}  // namespace

// --------------------------------------------------------------------- graphs

GraphSpec parse_graph_spec(std::string_view text) {
  Json j = parse_json(text);
  only_keys(j, {"vertices", "edges", "bundles"}, "graph");
  if (!j.contains("vertices")) schema("graph lacks \"vertices\"");
  GraphSpec spec;
  spec.vertices = string_list(j["vertices"], "\"vertices\"");
  if (spec.vertices.empty()) schema("empty vertex set: the algebra must be unital and nonzero");
  if (j.contains("edges")) spec.edges = arcs(j["edges"], "edges");
  if (j.contains("bundles")) spec.bundles = arcs(j["bundles"], "bundles");
  return spec;
}

GraphPtr parse_graph(std::string_view text) { return Graph::build(parse_graph_spec(text)); }

Json graph_json(const Graph& g) {
  GraphSpec s = g.spec();
  Json out;
  out["vertices"] = s.vertices;
  out["edges"] = arcs_json(s.edges);
  out["bundles"] = arcs_json(s.bundles);
  return out;
}

std::string graph_to_json(const Graph& g) { return graph_json(g).dump(2); }

GraphPtr load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::SchemaError, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::vector<std::string> split_names(std::string_view list) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : list) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// ---------------------------------------------------------------- expressions

namespace {

struct Token {
  enum class Kind { Number, Ident, Plus, Minus, Star, Ghost, LParen, RParen, End };
  Kind kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  using K = Token::Kind;
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '\'';
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i + 1 < s.size() && s[i] == '/' && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      out.push_back({K::Number, std::string(s.substr(start, i - start)), start});
    } else if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({K::Ident, std::string(s.substr(start, i - start)), start});
    } else if (c == '^') {
      if (i + 1 >= s.size() || s[i + 1] != '*') {
        throw Error(ErrorKind::ParseError, "expected '^*' at position " + std::to_string(i));
      }
      out.push_back({K::Ghost, "^*", start});
      i += 2;
    } else {
      K k;
      switch (c) {
        case '+': k = K::Plus; break;
        case '-': k = K::Minus; break;
        case '*': k = K::Star; break;
        case '(': k = K::LParen; break;
        case ')': k = K::RParen; break;
        default:
          throw Error(ErrorKind::ParseError,
                      "unexpected '" + std::string(1, c) + "' at position " + std::to_string(i));
      }
      out.push_back({k, std::string(1, c), start});
      ++i;
    }
  }
  out.push_back({K::End, "", s.size()});
  return out;
}

class ExprParser {
 public:
  ExprParser(const Graph& g, std::string_view text) : g_(g), tokens_(tokenize(text)) {}

  Expr parse() {
    Expr e = expr();
    if (peek().kind != Token::Kind::End) unexpected();
    return e;
  }

 private:
  using K = Token::Kind;

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void unexpected() const {
    const Token& t = peek();
    std::string what = t.kind == K::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorKind::ParseError,
                "unexpected " + what + " at position " + std::to_string(t.pos));
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    while (peek().kind == K::Plus || peek().kind == K::Minus) {
      bool minus = next().kind == K::Minus;
      Expr t = term();
      terms.push_back(minus ? Expr::negation(std::move(t)) : std::move(t));
    }
    return terms.size() == 1 ? std::move(terms[0]) : Expr::sum(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> factors{factor()};
    while (peek().kind == K::Star) {
      next();
      factors.push_back(factor());
    }
    return factors.size() == 1 ? std::move(factors[0]) : Expr::product(std::move(factors));
  }

  Expr factor() {
    const Token& t = peek();
    switch (t.kind) {
      case K::Number: {
        next();
        Rational q = parse_rational(t.text);
        return q == 1 ? Expr::one() : Expr::scalar(Scalar(q));
      }
      case K::Minus:
        next();
        return Expr::negation(factor());
      case K::LParen: {
        next();
        Expr e = expr();
        if (peek().kind != K::RParen) unexpected();
        next();
        return e;
      }
      case K::Ident: {
        next();
        bool ghost = peek().kind == K::Ghost;
        if (ghost) next();
        if (auto v = g_.find_vertex(t.text)) return Expr::vertex(*v);
        if (auto e = g_.find_edge(t.text)) return ghost ? Expr::ghost(*e) : Expr::edge(*e);
        throw Error(ErrorKind::UnknownSymbol, "'" + t.text + "' is neither a vertex nor an edge");
      }
      default:
        unexpected();
    }
  }

  const Graph& g_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(const Graph& g, std::string_view text) { return ExprParser(g, text).parse(); }

AlgebraElement parse_element(const GraphPtr& g, std::string_view text) {
  return normalize(g, parse_expr(*g, text));
}

// ---------------------------------------------------------------- ideals

Json pair_json(const AdmissiblePair& p) {
  return {{"H", names_json(*p.graph(), p.h())}, {"S", names_json(*p.graph(), p.s())}};
}

std::string pair_to_json(const AdmissiblePair& p) { return pair_json(p).dump(); }

AdmissiblePair parse_pair(const GraphPtr& g, std::string_view text) {
  Json j = parse_json(text);
  only_keys(j, {"H", "S"}, "admissible pair");
  if (!j.contains("H") || !j.contains("S")) schema("admissible pair needs \"H\" and \"S\"");
  return AdmissiblePair(g, vertex_set(*g, j["H"], "\"H\""), vertex_set(*g, j["S"], "\"S\""));
}

Json classification_json(const Graph& g, const ClassificationResult& r) {
  Json out;
  out["verdict"] = std::string(to_string(r.verdict));
  if (r.w) out["w"] = g.vertex_name(*r.w);
  Json tr = Json::array();
  for (const auto& e : r.transcript) {
    tr.push_back({{"condition", e.condition}, {"outcome", e.outcome}, {"note", e.note}});
  }
  out["transcript"] = tr;
  return out;
}

std::string classification_to_json(const Graph& g, const ClassificationResult& r) {
  return classification_json(g, r).dump(2);
}

namespace {

ClassificationResult classification_from(const Graph& g, const Json& j) {
  only_keys(j, {"verdict", "w", "transcript"}, "classification");
  ClassificationResult r;
  const std::string& v = string_field(j, "verdict", "classification");
  using V = ClassificationResult::Verdict;
  bool known = false;
  for (V x : {V::TypeI, V::TypeII, V::TypeIII, V::NotPrimitive}) {
    if (to_string(x) == v) {
      r.verdict = x;
      known = true;
    }
  }
  if (!known) schema("unknown verdict '" + v + "'");
  if (j.contains("w")) r.w = g.vertex(string_field(j, "w", "classification"));
  if (!j.contains("transcript") || !j["transcript"].is_array()) schema("transcript must be an array");
  for (const auto& e : j["transcript"]) {
    only_keys(e, {"condition", "outcome", "note"}, "transcript entry");
    if (!e.contains("outcome") || !e["outcome"].is_boolean()) schema("outcome must be a boolean");
    r.transcript.push_back({string_field(e, "condition", "transcript entry"), e["outcome"].get<bool>(),
                            e.contains("note") ? string_field(e, "note", "transcript entry") : ""});
  }
  return r;
}

}  // namespace

ClassificationResult parse_classification(const Graph& g, std::string_view text) {
  return classification_from(g, parse_json(text));
}

// ---------------------------------------------------------------- certificates

Json transcript_json(const VerificationTranscript& t) {
  Json out;
  out["verified_to_length"] = t.max_len;
  out["mode"] = std::string(to_string(t.mode));
  out["words_checked"] = t.words_checked;
  out["all_nontrivial"] = t.all_nontrivial;
  out["cross_check"] = t.cross_check;
  out["first_violation"] = t.first_violation ? Json(*t.first_violation) : Json(nullptr);
  if (t.matrix_a) out["matrix_a"] = matrix_json(*t.matrix_a);
  if (t.matrix_b) out["matrix_b"] = matrix_json(*t.matrix_b);
  out["bound"] = t.bound_note();
  return out;
}

Json certificate_json(const FreePairCertificate& c) {
  const Graph& g = *c.graph;
  Json out;
  std::string ta = c.t_a.to_string(), tb = c.t_b.to_string();
  out["a"] = "1 + 2*(" + ta + ")";
  out["a_inv"] = "1 - 2*(" + ta + ")";
  out["b"] = "1 + 2*(" + tb + ")";
  out["b_inv"] = "1 - 2*(" + tb + ")";
  if (c.witness) {
    const Witness& w = *c.witness;
    Json wj;
    wj["kind"] = std::string(to_string(w.kind));
    wj["edge"] = g.edge_name(w.edge);
    wj["vertex"] = g.vertex_name(w.vertex);
    wj["H"] = names_json(g, w.h);
    wj["S"] = names_json(g, w.s);
    if (w.tail_prefix && w.tail_cycle) {
      GraphPtr q_ptr = AdmissiblePair(c.graph, w.h, w.s).quotient().graph;
      const Graph& q = *q_ptr;
      wj["tail_prefix"] = path_json(q, *w.tail_prefix);
      wj["tail_cycle"] = path_json(q, *w.tail_cycle);
    }
    out["witness"] = wj;
  } else {
    out["witness"] = nullptr;
  }
  out["classification"] = c.classification ? classification_json(g, *c.classification) : Json(nullptr);
  Json minted = Json::array();
  for (EdgeId e : c.minted) minted.push_back(g.edge_name(e));
  out["minted"] = minted;
  if (c.verification) {
    Json t = transcript_json(*c.verification);
    for (auto& [k, v] : t.items()) out[k] = v;
  } else {
    out["verified_to_length"] = nullptr;
    out["mode"] = nullptr;
  }
  return out;
}

std::string certificate_to_json(const FreePairCertificate& c) { return certificate_json(c).dump(2); }

namespace {

// "1 + 2*(t)" -> t, matching what certificate_json prints.
std::string unipotent_part(const std::string& s, bool inverse, const std::string& key) {
  std::string head = inverse ? "1 - 2*(" : "1 + 2*(";
  if (s.size() < head.size() + 1 || s.compare(0, head.size(), head) != 0 || s.back() != ')') {
    schema("\"" + key + "\" must have the form " + head + "t)");
  }
  return s.substr(head.size(), s.size() - head.size() - 1);
}

}  // namespace

FreePairCertificate parse_certificate(const GraphPtr& g, std::string_view text) {
  Json j = parse_json(text);
  only_keys(j,
            {"a", "a_inv", "b", "b_inv", "witness", "classification", "minted",
             "verified_to_length", "mode", "words_checked", "all_nontrivial", "cross_check",
             "first_violation", "matrix_a", "matrix_b", "bound"},
            "certificate");
  std::string ta = unipotent_part(string_field(j, "a", "certificate"), false, "a");
  std::string tb = unipotent_part(string_field(j, "b", "certificate"), false, "b");
  if (unipotent_part(string_field(j, "a_inv", "certificate"), true, "a_inv") != ta ||
      unipotent_part(string_field(j, "b_inv", "certificate"), true, "b_inv") != tb) {
    schema("inverses do not match the generators");
  }
  FreePairCertificate c = make_certificate(parse_element(g, ta), parse_element(g, tb));

  if (j.contains("witness") && !j["witness"].is_null()) {
    const Json& wj = j["witness"];
    only_keys(wj, {"kind", "edge", "vertex", "H", "S", "tail_prefix", "tail_cycle"}, "witness");
    Witness w;
    const std::string& kind = string_field(wj, "kind", "witness");
    bool known = false;
    for (auto k : {Witness::Kind::SinkEdge, Witness::Kind::InfinitePathEdge,
                   Witness::Kind::BreakingVertex}) {
      if (to_string(k) == kind) {
        w.kind = k;
        known = true;
      }
    }
    if (!known) schema("unknown witness kind '" + kind + "'");
    w.edge = g->edge(string_field(wj, "edge", "witness"));
    w.vertex = g->vertex(string_field(wj, "vertex", "witness"));
    if (!wj.contains("H") || !wj.contains("S")) schema("witness needs \"H\" and \"S\"");
    w.h = vertex_set(*g, wj["H"], "\"H\"");
    w.s = vertex_set(*g, wj["S"], "\"S\"");
    if (wj.contains("tail_prefix") || wj.contains("tail_cycle")) {
      if (!wj.contains("tail_prefix") || !wj.contains("tail_cycle")) schema("incomplete tail");
      GraphPtr q_ptr = AdmissiblePair(g, w.h, w.s).quotient().graph;
      const Graph& q = *q_ptr;
      w.tail_prefix = parse_path(q, wj["tail_prefix"]);
      w.tail_cycle = parse_path(q, wj["tail_cycle"]);
    }
    c.witness = std::move(w);
  }
  if (j.contains("classification") && !j["classification"].is_null()) {
    c.classification = classification_from(*g, j["classification"]);
  }
  if (j.contains("minted")) {
    for (const auto& n : string_list(j["minted"], "\"minted\"")) c.minted.push_back(g->edge(n));
  }
  if (j.contains("verified_to_length") && !j["verified_to_length"].is_null()) {
    VerificationTranscript t;
    if (!j["verified_to_length"].is_number_unsigned()) schema("verified_to_length must be a count");
    t.max_len = j["verified_to_length"].get<std::size_t>();
    t.mode = parse_verify_mode(string_field(j, "mode", "certificate"));
    if (j.contains("words_checked")) t.words_checked = j["words_checked"].get<std::size_t>();
    if (j.contains("all_nontrivial")) t.all_nontrivial = j["all_nontrivial"].get<bool>();
    if (j.contains("cross_check")) t.cross_check = j["cross_check"].get<bool>();
    if (j.contains("first_violation") && !j["first_violation"].is_null()) {
      t.first_violation = string_field(j, "first_violation", "certificate");
    }
    if (j.contains("matrix_a")) t.matrix_a = parse_matrix(j["matrix_a"]);
    if (j.contains("matrix_b")) t.matrix_b = parse_matrix(j["matrix_b"]);
    c.verification = std::move(t);
  }
  return c;
}

}  // namespace lpa
