#ifndef COUPLINGS_IO_HPP
#define COUPLINGS_IO_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "couplings/graph.hpp"
#include "couplings/instance.hpp"

namespace couplings {

/// Parses the JSON instance document:
///   {"A": [...], "B": [...], "P": {label: mass}, "P_prime": {...},
///    "R": [[a, b], ...]}
/// Masses are "p/q" rational strings or exact decimal strings. The result
/// is validated via validate_instance. Throws ToolkitError (ParseError
/// names the offending field).
Instance parse_instance_json(const std::string& text);

/// Reads and parses an instance file from disk.
Instance load_instance(const std::string& path);

// Machine-readable result. Optional sections are emitted only when set;
// masses are serialized as exact "p/q" strings, so reparsing reproduces
// the rationals bit for bit.
struct ResultStats {
  std::optional<int> support_size;
  std::optional<bool> is_forest;
  std::optional<Rational> relation_mass;
  std::optional<Rational> epsilon_used;
  std::string algorithm;
};

struct ResultDocument {
  std::string status;  // "feasible" | "infeasible" | "error"
  std::optional<Coupling> coupling;
  std::optional<Certificate> certificate;
  // Matching edges as plain label pairs.
  std::optional<std::vector<std::pair<std::string, std::string>>> matching;
  ResultStats stats;
  std::optional<std::string> error_code;
  std::optional<std::string> error_message;
};

/// Deterministic serialization: fixed key order, coupling entries sorted
/// by (a, b) label, two-space indentation, trailing newline.
std::string result_to_json(const ResultDocument& document);

/// Inverse of result_to_json; result_to_json(result_from_json(s)) == s for
/// any document produced by this toolkit.
ResultDocument result_from_json(const std::string& text);

/// Human-readable rendering for --output text.
std::string result_to_text(const ResultDocument& document);

}  // namespace couplings

#endif
