#pragma once

// JSON for graphs, admissible pairs, classifications and certificates, and
// the expression parser.

#include <string>
#include <string_view>

#include "lpa/algebra.hpp"
#include "lpa/freeness.hpp"
#include "lpa/graph.hpp"
#include "lpa/ideals.hpp"
#include "json.hpp"

namespace lpa {

/// Schema check only. Throws SchemaError (with line/column for syntax errors).
GraphSpec parse_graph_spec(std::string_view text);
/// parse_graph_spec followed by Graph::build.
GraphPtr parse_graph(std::string_view text);
std::string graph_to_json(const Graph& g);
GraphPtr load_graph(const std::string& path);

/// Throws ParseError or UnknownSymbol.
Expr parse_expr(const Graph& g, std::string_view text);
AlgebraElement parse_element(const GraphPtr& g, std::string_view text);

using Json = nlohmann::ordered_json;

Json graph_json(const Graph& g);
Json pair_json(const AdmissiblePair& p);
Json classification_json(const Graph& g, const ClassificationResult& r);
Json certificate_json(const FreePairCertificate& c);
Json transcript_json(const VerificationTranscript& t);

std::string pair_to_json(const AdmissiblePair& p);
AdmissiblePair parse_pair(const GraphPtr& g, std::string_view text);

std::string classification_to_json(const Graph& g, const ClassificationResult& r);
ClassificationResult parse_classification(const Graph& g, std::string_view text);

std::string certificate_to_json(const FreePairCertificate& c);
FreePairCertificate parse_certificate(const GraphPtr& g, std::string_view text);

/// Comma-separated names.
std::vector<std::string> split_names(std::string_view list);

}  // namespace lpa
