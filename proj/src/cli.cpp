#include "lpa/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "lpa/error.hpp"
#include "lpa/freeness.hpp"
#include "lpa/ideals.hpp"
#include "lpa/io.hpp"

namespace lpa {

namespace {

std::string set_string(const Graph& g, const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& n : g.names(s)) {
    out += (first ? "" : ",") + n;
    first = false;
  }
  return out + "}";
}

struct Options {
  bool json = false;
  std::string graph;
  std::string set, h, s, cycle, poly, expr, a, b, mode = "both";
  std::size_t max_len = 6;
  std::size_t verify = 0;
};

Path parse_cycle(const Graph& g, const std::string& names) {
  auto edges = split_names(names);
  if (edges.empty()) throw Error(ErrorKind::ParseError, "--cycle needs at least one edge");
  Path p{g.src(g.edge(edges.front())), {}};
  for (const auto& n : edges) p.edges.push_back(g.edge(n));
  return p;
}

AdmissiblePair pair_from(const GraphPtr& g, const Options& o) {
  return AdmissiblePair(g, g->vertices(split_names(o.h)), g->vertices(split_names(o.s)));
}

void print_transcript(std::ostream& out, const std::vector<TranscriptEntry>& tr) {
  for (const auto& e : tr) {
    out << "  [" << (e.outcome ? "yes" : "no ") << "] " << e.condition;
    if (!e.note.empty()) out << "  (" << e.note << ")";
    out << "\n";
  }
}

std::string witness_string(const Graph& g, const Witness& w) {
  std::string out = std::string(to_string(w.kind)) + " " + g.edge_name(w.edge) + " -> " +
                    g.vertex_name(w.vertex);
  return out + ", H = " + set_string(g, w.h) + ", S = " + set_string(g, w.s);
}

void print_verification(std::ostream& out, const VerificationTranscript& t) {
  out << "mode: " << to_string(t.mode) << "\n";
  out << "words checked: " << t.words_checked << " (reduced words of length 1.." << t.max_len
      << ")\n";
  out << "all nontrivial: " << (t.all_nontrivial ? "yes" : "no") << "\n";
  if (t.mode == VerifyMode::Both) out << "matrix/algebra agreement: " << (t.cross_check ? "yes" : "no") << "\n";
  if (t.matrix_a) out << "matrix of a: " << to_string(*t.matrix_a) << "\n";
  if (t.matrix_b) out << "matrix of b: " << to_string(*t.matrix_b) << "\n";
  out << t.bound_note() << "\n";
}

int cmd_validate(const Options& o, std::ostream& out) {
  std::ifstream in(o.graph);
  if (!in) throw Error(ErrorKind::SchemaError, "cannot read '" + o.graph + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  ValidationReport r = validate_graph(parse_graph_spec(buf.str()));
  if (o.json) {
    Json j;
    j["ok"] = r.ok;
    j["errors"] = r.errors;
    Json kinds = Json::object();
    for (const auto& [n, k] : r.kinds) kinds[n] = std::string(to_string(k));
    j["kinds"] = kinds;
    out << j.dump(2) << "\n";
  } else {
    out << (r.ok ? "valid" : "invalid") << "\n";
    for (const auto& e : r.errors) out << "  " << e << "\n";
    for (const auto& [n, k] : r.kinds) out << "  " << n << ": " << to_string(k) << "\n";
  }
  return r.ok ? 0 : 1;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  GraphPtr g = load_graph(o.graph);
  CycleReport cr = cycle_report(*g);
  CommutativityReport comm = is_commutative(g);
  if (o.json) {
    Json j;
    Json kinds = Json::object();
    for (VertexId v = 0; v < g->vertex_count(); ++v) {
      kinds[g->vertex_name(v)] = std::string(to_string(g->kind(v)));
    }
    j["kinds"] = kinds;
    Json cycles = Json::array();
    for (const auto& c : cr.cycles) {
      cycles.push_back({{"cycle", g->path_string(c.path)},
                        {"has_exit", c.has_exit},
                        {"exclusive", c.exclusive}});
    }
    j["cycles"] = cycles;
    j["condition_l"] = cr.condition_l;
    j["commutative"] = comm.commutative;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "vertices:\n";
  for (VertexId v = 0; v < g->vertex_count(); ++v) {
    out << "  " << g->vertex_name(v) << ": " << to_string(g->kind(v)) << "\n";
  }
  out << "cycles:\n";
  for (const auto& c : cr.cycles) {
    out << "  " << g->path_string(c.path) << (c.has_exit ? "  exit" : "  no exit")
        << (c.exclusive ? ", exclusive" : "") << "\n";
  }
  out << "Condition (L): " << (cr.condition_l ? "holds" : "fails") << "\n";
  out << "commutative: " << (comm.commutative ? "yes" : "no") << " (" << comm.note << ")\n";
  return 0;
}

int cmd_hs_closure(const Options& o, std::ostream& out) {
  GraphPtr g = load_graph(o.graph);
  VertexSet h = hs_closure(*g, g->vertices(split_names(o.set)));
  if (o.json) {
    out << Json(g->names(h)).dump() << "\n";
  } else {
    out << set_string(*g, h) << "\n";
  }
  return 0;
}

int cmd_quotient(const Options& o, std::ostream& out) {
  GraphPtr g = load_graph(o.graph);
  AdmissiblePair p = pair_from(g, o);
  out << graph_to_json(*p.quotient().graph) << "\n";
  return 0;
}

int cmd_normalize(const Options& o, std::ostream& out) {
  GraphPtr g = load_graph(o.graph);
  AlgebraElement x = parse_element(g, o.expr);
  if (o.json) {
    out << Json{{"normal_form", x.to_string()}}.dump() << "\n";
  } else {
    out << x.to_string() << "\n";
  }
  return 0;
}

int cmd_classify(const Options& o, std::ostream& out) {
  GraphPtr g = load_graph(o.graph);
  AdmissiblePair p = pair_from(g, o);
  if (o.cycle.empty() != o.poly.empty()) {
    throw Error(ErrorKind::ParseError, "--cycle and --poly go together");
  }
  IdealDescriptor d = o.cycle.empty()
                          ? IdealDescriptor::graded(p)
                          : IdealDescriptor::type_iii(p, parse_cycle(*g, o.cycle),
                                                      LaurentPoly::parse(o.poly));
  ClassificationResult r = classify_pair(d);
  if (o.json) {
    out << classification_to_json(*g, r) << "\n";
  } else {
    out << "verdict: " << r.verdict_string(*g) << "\n";
    print_transcript(out, r.transcript);
  }
  return 0;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  GraphPtr g = load_graph(o.graph);
  Json list = Json::array();
  for (const auto& p : enumerate_admissible(g)) {
    ClassificationResult r = classify_pair(IdealDescriptor::graded(p));
    if (o.json) {
      Json j = pair_json(p);
      j["verdict"] = r.verdict_string(*g);
      list.push_back(j);
    } else {
      out << "H = " << set_string(*g, p.h()) << ", S = " << set_string(*g, p.s()) << ": "
          << r.verdict_string(*g) << "\n";
    }
  }
  if (o.json) out << list.dump(2) << "\n";
  return 0;
}

int cmd_free_gens(const Options& o, std::ostream& out) {
  GraphPtr g = load_graph(o.graph);
  auto certs = find_free_generators(g);
  if (o.verify > 0) {
    for (auto& c : certs) c.verification = verify_free_words(c, o.verify, VerifyMode::Both);
  }
  if (o.json) {
    Json list = Json::array();
    for (const auto& c : certs) list.push_back(certificate_json(c));
    out << list.dump(2) << "\n";
    return 0;
  }
  for (const auto& c : certs) {
    out << "a = 1 + 2*(" << c.t_a.to_string() << ")\n";
    out << "b = 1 + 2*(" << c.t_b.to_string() << ")\n";
    if (c.witness) out << "witness: " << witness_string(*g, *c.witness) << "\n";
    if (c.classification) out << "ideal: " << c.classification->verdict_string(*g) << "\n";
    if (c.verification) print_verification(out, *c.verification);
    out << "\n";
  }
  return 0;
}

int cmd_verify_free(const Options& o, std::ostream& out) {
  GraphPtr g = load_graph(o.graph);
  VerifyMode mode = parse_verify_mode(o.mode);
  AlgebraElement one = AlgebraElement::one(g);
  Scalar half = Scalar(Rational(1, 2));
  FreePairCertificate cert = make_certificate((parse_element(g, o.a) - one).scale(half),
                                              (parse_element(g, o.b) - one).scale(half));
  if (mode != VerifyMode::Algebra) {
    try {
      for (auto& c : find_free_generators(g)) {
        if (c.a == cert.a && c.b == cert.b) {
          cert = std::move(c);
          break;
        }
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoWitnessFound) throw;
    }
  }
  VerificationTranscript t = verify_free_words(cert, o.max_len, mode);
  if (o.json) {
    out << transcript_json(t).dump(2) << "\n";
  } else {
    print_verification(out, t);
  }
  return t.all_nontrivial && t.cross_check ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in unital Leavitt path algebras", "lpa"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable output");

  auto graph_cmd = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("graph", o.graph, "Graph JSON file")->required();
    sub->add_flag("--json", o.json, "Machine-readable output");
    return sub;
  };
  auto pair_opts = [&](CLI::App* sub) {
    sub->add_option("--H", o.h, "Comma-separated vertices of H");
    sub->add_option("--S", o.s, "Comma-separated breaking vertices in S");
  };

  std::vector<std::pair<CLI::App*, int (*)(const Options&, std::ostream&)>> cmds;
  cmds.emplace_back(graph_cmd("validate", "Check the graph and report vertex kinds"), cmd_validate);
  cmds.emplace_back(graph_cmd("analyze", "Vertex kinds, cycles, Condition (L)"), cmd_analyze);
  CLI::App* hs = graph_cmd("hs-closure", "Hereditary saturated closure");
  hs->add_option("--set", o.set, "Comma-separated seed vertices")->required();
  cmds.emplace_back(hs, cmd_hs_closure);
  CLI::App* quo = graph_cmd("quotient", "Quotient graph E/(H,S) as JSON");
  pair_opts(quo);
  cmds.emplace_back(quo, cmd_quotient);
  CLI::App* norm = graph_cmd("normalize", "Canonical normal form of an expression");
  norm->add_option("expr", o.expr, "Expression")->required();
  cmds.emplace_back(norm, cmd_normalize);
  CLI::App* cls = graph_cmd("classify", "Classify the ideal of (H,S)");
  pair_opts(cls);
  cls->add_option("--cycle", o.cycle, "Comma-separated cycle edges (type III)");
  cls->add_option("--poly", o.poly, "Laurent polynomial f (type III)");
  cmds.emplace_back(cls, cmd_classify);
  cmds.emplace_back(graph_cmd("enumerate-ideals", "All admissible pairs with verdicts"),
                    cmd_enumerate);
  CLI::App* fg = graph_cmd("free-gens", "Free generator pairs");
  fg->add_option("--verify", o.verify, "Also verify every certificate to this word length");
  cmds.emplace_back(fg, cmd_free_gens);
  CLI::App* vf = graph_cmd("verify-free", "Bounded freeness check of 1+2t_a, 1+2t_b");
  vf->add_option("--a", o.a, "First generator")->required();
  vf->add_option("--b", o.b, "Second generator")->required();
  vf->add_option("--max-len", o.max_len, "Maximal word length")->check(CLI::PositiveNumber);
  vf->add_option("--mode", o.mode, "algebra, matrix or both");
  cmds.emplace_back(vf, cmd_verify_free);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    for (auto& [sub, fn] : cmds) {
      if (sub->parsed()) return fn(o, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: SchemaError: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace lpa
