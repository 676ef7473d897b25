#include "couplings/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "couplings/errors.hpp"

namespace couplings {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& field,
                             const std::string& what) {
  throw ToolkitError(ErrorCode::ParseError, "field \"" + field + "\": " + what);
}

std::vector<std::string> parse_label_list(const json& doc,
                                          const std::string& field) {
  if (!doc.contains(field)) parse_fail(field, "missing");
  const json& node = doc.at(field);
  if (!node.is_array()) parse_fail(field, "expected an array of labels");
  std::vector<std::string> labels;
  for (const auto& item : node) {
    if (!item.is_string()) parse_fail(field, "labels must be strings");
    labels.push_back(item.get<std::string>());
  }
  return labels;
}

std::map<std::string, Rational> parse_mass_map(const json& doc,
                                               const std::string& field) {
  if (!doc.contains(field)) parse_fail(field, "missing");
  const json& node = doc.at(field);
  if (!node.is_object()) parse_fail(field, "expected an object of masses");
  std::map<std::string, Rational> masses;
  for (const auto& [label, value] : node.items()) {
    if (!value.is_string()) {
      parse_fail(field, "mass for \"" + label + "\" must be a string");
    }
    try {
      masses[label] = parse_rational(value.get<std::string>());
    } catch (const ToolkitError&) {
      parse_fail(field, "mass for \"" + label + "\" is not a rational: \"" +
                            value.get<std::string>() + "\"");
    }
  }
  return masses;
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ToolkitError(ErrorCode::ParseError,
                       std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ToolkitError(ErrorCode::ParseError, "top level must be an object");
  }

  Instance raw;
  raw.a_labels = parse_label_list(doc, "A");
  raw.b_labels = parse_label_list(doc, "B");
  raw.p = parse_mass_map(doc, "P");
  raw.p_prime = parse_mass_map(doc, "P_prime");

  if (!doc.contains("R")) parse_fail("R", "missing");
  const json& rel = doc.at("R");
  if (!rel.is_array()) parse_fail("R", "expected an array of [a, b] pairs");
  for (const auto& item : rel) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_string() ||
        !item[1].is_string()) {
      parse_fail("R", "each pair must be [a_label, b_label]");
    }
    raw.relation.emplace(item[0].get<std::string>(),
                         item[1].get<std::string>());
  }
  return validate_instance(std::move(raw));
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ToolkitError(ErrorCode::ParseError, "cannot open \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance_json(buffer.str());
}

std::string result_to_json(const ResultDocument& document) {
  json doc;
  doc["status"] = document.status;
  if (document.coupling) {
    json entries = json::array();
    for (const auto& [pair, mass] : document.coupling->mass) {
      entries.push_back({{"a", pair.first},
                         {"b", pair.second},
                         {"mass", format_rational(mass)}});
    }
    doc["coupling"] = entries;
  }
  if (document.certificate) {
    doc["certificate"] = {
        {"violating_set", document.certificate->violating_set},
        {"lhs", format_rational(document.certificate->lhs)},
        {"rhs", format_rational(document.certificate->rhs)},
        {"deficiency", format_rational(document.certificate->deficiency)}};
  }
  if (document.matching) {
    json entries = json::array();
    for (const auto& [a, b] : *document.matching) {
      entries.push_back({{"a", a}, {"b", b}});
    }
    doc["matching"] = entries;
  }
  {
    json stats = json::object();
    if (document.stats.support_size) {
      stats["support_size"] = *document.stats.support_size;
    }
    if (document.stats.is_forest) stats["is_forest"] = *document.stats.is_forest;
    if (document.stats.relation_mass) {
      stats["relation_mass"] = format_rational(*document.stats.relation_mass);
    }
    if (document.stats.epsilon_used) {
      stats["epsilon_used"] = format_rational(*document.stats.epsilon_used);
    }
    if (!document.stats.algorithm.empty()) {
      stats["algorithm"] = document.stats.algorithm;
    }
    if (!stats.empty()) doc["stats"] = stats;
  }
  if (document.error_code) doc["error"] = *document.error_code;
  if (document.error_message) doc["message"] = *document.error_message;
  return doc.dump(2) + "\n";
}

ResultDocument result_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ToolkitError(ErrorCode::ParseError,
                       std::string("invalid result JSON: ") + e.what());
  }
  ResultDocument document;
  document.status = doc.at("status").get<std::string>();
  if (doc.contains("coupling")) {
    Coupling coupling;
    for (const auto& entry : doc.at("coupling")) {
      coupling.mass[{entry.at("a").get<std::string>(),
                     entry.at("b").get<std::string>()}] =
          parse_rational(entry.at("mass").get<std::string>());
    }
    document.coupling = std::move(coupling);
  }
  if (doc.contains("certificate")) {
    const json& cert = doc.at("certificate");
    Certificate certificate;
    certificate.violating_set =
        cert.at("violating_set").get<std::vector<std::string>>();
    certificate.lhs = parse_rational(cert.at("lhs").get<std::string>());
    certificate.rhs = parse_rational(cert.at("rhs").get<std::string>());
    certificate.deficiency =
        parse_rational(cert.at("deficiency").get<std::string>());
    document.certificate = std::move(certificate);
  }
  if (doc.contains("matching")) {
    std::vector<std::pair<std::string, std::string>> matching;
    for (const auto& entry : doc.at("matching")) {
      matching.emplace_back(entry.at("a").get<std::string>(),
                            entry.at("b").get<std::string>());
    }
    document.matching = std::move(matching);
  }
  if (doc.contains("stats")) {
    const json& stats = doc.at("stats");
    if (stats.contains("support_size")) {
      document.stats.support_size = stats.at("support_size").get<int>();
    }
    if (stats.contains("is_forest")) {
      document.stats.is_forest = stats.at("is_forest").get<bool>();
    }
    if (stats.contains("relation_mass")) {
      document.stats.relation_mass =
          parse_rational(stats.at("relation_mass").get<std::string>());
    }
    if (stats.contains("epsilon_used")) {
      document.stats.epsilon_used =
          parse_rational(stats.at("epsilon_used").get<std::string>());
    }
    if (stats.contains("algorithm")) {
      document.stats.algorithm = stats.at("algorithm").get<std::string>();
    }
  }
  if (doc.contains("error")) {
    document.error_code = doc.at("error").get<std::string>();
  }
  if (doc.contains("message")) {
    document.error_message = doc.at("message").get<std::string>();
  }
  return document;
}

std::string result_to_text(const ResultDocument& document) {
  std::ostringstream out;
  out << "status: " << document.status << "\n";
  if (document.certificate) {
    out << "violating set:";
    for (const auto& label : document.certificate->violating_set) {
      out << " " << label;
    }
    out << "\n";
    out << "P(U) = " << format_rational(document.certificate->lhs)
        << ", P'(N(U)) = " << format_rational(document.certificate->rhs)
        << ", deficiency = "
        << format_rational(document.certificate->deficiency) << "\n";
  }
  if (document.coupling) {
    for (const auto& [pair, mass] : document.coupling->mass) {
      out << pair.first << " " << pair.second << " " << format_rational(mass)
          << "\n";
    }
  }
  if (document.matching) {
    for (const auto& [a, b] : *document.matching) {
      out << a << " -- " << b << "\n";
    }
  }
  if (document.stats.epsilon_used) {
    out << "epsilon: " << format_rational(*document.stats.epsilon_used)
        << "\n";
  }
  if (document.stats.relation_mass) {
    out << "relation mass: "
        << format_rational(*document.stats.relation_mass) << "\n";
  }
  if (document.error_message) out << *document.error_message << "\n";
  return out.str();
}

}  // namespace couplings
