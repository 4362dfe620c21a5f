#include <cmath>
#include <set>

#include "ndmm/io.hpp"
#include "json.hpp"

namespace ndmm {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr double kMaxExactInteger = 9007199254740992.0;  // 2^53

ordered_json number(double x) {
  if (std::isfinite(x) && x == std::trunc(x) && std::abs(x) < kMaxExactInteger) {
    return static_cast<std::int64_t>(x);
  }
  return x;
}

[[noreturn]] void structure(const std::string& where, const std::string& what) {
  throw DocumentError(DocumentError::Kind::kStructure, where, what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) structure(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) structure(where + "/" + key, std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

double require_number(const json& v, const std::string& where) {
  if (!v.is_number()) structure(where, "expected a number");
  return v.get<double>();
}

double optional_number(const json& obj, const char* key, double fallback, const std::string& where) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : require_number(*it, where + "/" + key);
}

RatingScheme read_scheme(const json& v) {
  if (!v.is_object()) structure("/scheme", "'scheme' must be an object");
  const std::string name = require_string(v, "kind", "/scheme");
  const auto kind = scheme_kind_from_string(name);
  if (!kind) structure("/scheme/kind", "unknown scheme kind '" + name + "'");
  RatingScheme scheme{*kind};
  if (*kind == RatingScheme::Kind::kScale) {
    scheme.min = require_number(require(v, "min", "/scheme"), "/scheme/min");
    scheme.max = require_number(require(v, "max", "/scheme"), "/scheme/max");
  }
  return scheme;
}

NeutroValue read_rating(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_string()) {
    throw DocumentError(DocumentError::Kind::kInvalidRating, where, "rating must be a number or a string");
  }
  try {
    return parse_rating(v.get<std::string>());
  } catch (const ParseError& e) {
    throw DocumentError(DocumentError::Kind::kInvalidRating, where, std::string("invalid rating: ") + e.what());
  }
}

DocumentError::Kind classify(const std::vector<Diagnostic>& diagnostics) {
  bool all_scheme = true;
  for (const auto& d : diagnostics) {
    if (d.code == Diagnostic::Code::kDimensionMismatch) return DocumentError::Kind::kDimensionMismatch;
    all_scheme = all_scheme && d.code == Diagnostic::Code::kSchemeViolation;
  }
  return all_scheme ? DocumentError::Kind::kSchemeViolation : DocumentError::Kind::kInvalidProblem;
}

std::string diagnostic_location(const Diagnostic& d) {
  if (d.row && d.column) return "/ratings/" + std::to_string(*d.row) + "/" + std::to_string(*d.column);
  if (d.row) return d.code == Diagnostic::Code::kDimensionMismatch ? "/ratings/" + std::to_string(*d.row)
                                                                  : "/criteria/" + std::to_string(*d.row);
  if (d.column) return "/alternatives/" + std::to_string(*d.column);
  return {};
}

}  // namespace

std::string_view to_string(DocumentError::Kind kind) noexcept {
  using K = DocumentError::Kind;
  switch (kind) {
    case K::kMalformedJson: return "malformed-json";
    case K::kUnsupportedVersion: return "unsupported-version";
    case K::kStructure: return "structure";
    case K::kInvalidRating: return "invalid-rating";
    case K::kDimensionMismatch: return "dimension-mismatch";
    case K::kSchemeViolation: return "scheme-violation";
    case K::kInvalidProblem: return "invalid-problem";
  }
  return "unknown";
}

DocumentError::DocumentError(Kind kind, std::string location, const std::string& message,
                             std::vector<Diagnostic> diagnostics)
    : Error(location.empty() ? message : location + ": " + message),
      kind_(kind),
      location_(std::move(location)),
      diagnostics_(std::move(diagnostics)) {}

ParsedDocument parse_problem(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DocumentError(DocumentError::Kind::kMalformedJson, "", e.what());
  }
  if (!root.is_object()) structure("", "document must be a JSON object");

  ParsedDocument out;
  static const std::set<std::string> kKnown{"version", "title", "scheme", "criteria",
                                            "alternatives", "ratings", "defaults"};
  for (const auto& [key, _] : root.items()) {
    if (!kKnown.contains(key)) out.warnings.push_back("ignoring unknown field '" + key + "'");
  }

  const auto& version = require(root, "version", "");
  if (!version.is_number_integer() || version.get<std::int64_t>() != kFormatVersion) {
    throw DocumentError(DocumentError::Kind::kUnsupportedVersion, "/version",
                        "unsupported version " + version.dump() + ", expected " + std::to_string(kFormatVersion));
  }

  ProblemDocument& doc = out.document;
  if (root.contains("title")) doc.title = require_string(root, "title", "");

  DecisionProblem& p = doc.problem;
  p.scheme = root.contains("scheme") ? read_scheme(root["scheme"]) : RatingScheme::unrestricted();

  const auto& criteria = require(root, "criteria", "");
  if (!criteria.is_array()) structure("/criteria", "'criteria' must be an array");
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const std::string where = "/criteria/" + std::to_string(i);
    const auto& c = criteria[i];
    if (!c.is_object()) structure(where, "criterion must be an object");
    Criterion crit;
    crit.id = require_string(c, "id", where);
    crit.label = c.contains("label") ? require_string(c, "label", where) : crit.id;
    crit.weight = require_number(require(c, "weight", where), where + "/weight");
    p.criteria.push_back(std::move(crit));
  }

  const auto& alternatives = require(root, "alternatives", "");
  if (!alternatives.is_array()) structure("/alternatives", "'alternatives' must be an array");
  for (std::size_t j = 0; j < alternatives.size(); ++j) {
    const std::string where = "/alternatives/" + std::to_string(j);
    const auto& a = alternatives[j];
    if (!a.is_object()) structure(where, "alternative must be an object");
    Alternative alt;
    alt.id = require_string(a, "id", where);
    alt.label = a.contains("label") ? require_string(a, "label", where) : alt.id;
    p.alternatives.push_back(std::move(alt));
  }

  const auto& ratings = require(root, "ratings", "");
  if (!ratings.is_array()) structure("/ratings", "'ratings' must be an array of rows");
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    const std::string where = "/ratings/" + std::to_string(i);
    if (!ratings[i].is_array()) structure(where, "ratings row must be an array");
    std::vector<NeutroValue> row;
    for (std::size_t j = 0; j < ratings[i].size(); ++j) {
      row.push_back(read_rating(ratings[i][j], where + "/" + std::to_string(j)));
    }
    p.ratings.push_back(std::move(row));
  }

  if (root.contains("defaults")) {
    const auto& d = root["defaults"];
    if (!d.is_object()) structure("/defaults", "'defaults' must be an object");
    EvaluationConfig cfg;
    cfg.i_min = optional_number(d, "iMin", cfg.i_min, "/defaults");
    cfg.i_max = optional_number(d, "iMax", cfg.i_max, "/defaults");
    cfg.k = optional_number(d, "k", cfg.k, "/defaults");
    try {
      check_config(cfg);
    } catch (const ConfigError& e) {
      structure("/defaults", e.what());
    }
    doc.defaults = cfg;
  }

  if (auto diagnostics = validate_problem(p); !diagnostics.empty()) {
    const auto kind = classify(diagnostics);
    const std::string location = diagnostic_location(diagnostics.front());
    const std::string message = diagnostics.front().to_string();
    throw DocumentError(kind, location, message, std::move(diagnostics));
  }
  return out;
}

std::string serialize_problem(const ProblemDocument& doc) {
  const DecisionProblem& p = doc.problem;
  ordered_json root;
  root["version"] = doc.version;
  root["title"] = doc.title;

  ordered_json scheme;
  scheme["kind"] = std::string(to_string(p.scheme.kind));
  if (p.scheme.kind == RatingScheme::Kind::kScale) {
    scheme["min"] = number(p.scheme.min);
    scheme["max"] = number(p.scheme.max);
  }
  root["scheme"] = std::move(scheme);

  ordered_json criteria = ordered_json::array();
  for (const auto& c : p.criteria) {
    ordered_json o;
    o["id"] = c.id;
    o["label"] = c.label;
    o["weight"] = number(c.weight);
    criteria.push_back(std::move(o));
  }
  root["criteria"] = std::move(criteria);

  ordered_json alternatives = ordered_json::array();
  for (const auto& a : p.alternatives) {
    ordered_json o;
    o["id"] = a.id;
    o["label"] = a.label;
    alternatives.push_back(std::move(o));
  }
  root["alternatives"] = std::move(alternatives);

  ordered_json ratings = ordered_json::array();
  for (const auto& row : p.ratings) {
    ordered_json r = ordered_json::array();
    for (const auto& v : row) r.push_back(format_rating(v));
    ratings.push_back(std::move(r));
  }
  root["ratings"] = std::move(ratings);

  if (doc.defaults) {
    ordered_json d;
    d["iMin"] = number(doc.defaults->i_min);
    d["iMax"] = number(doc.defaults->i_max);
    d["k"] = number(doc.defaults->k);
    root["defaults"] = std::move(d);
  }
  return root.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

std::string evaluation_to_json(const DecisionProblem& problem, const EvaluationResult& result) {
  const auto id = [&](std::size_t j) { return problem.alternatives.at(j).id; };

  ordered_json root;
  ordered_json cfg;
  cfg["iMin"] = number(result.config.i_min);
  cfg["iMax"] = number(result.config.i_max);
  cfg["k"] = number(result.config.k);
  root["config"] = std::move(cfg);

  ordered_json ids = ordered_json::array();
  ordered_json scores = ordered_json::array();
  ordered_json intervals = ordered_json::array();
  for (std::size_t j = 0; j < result.neutro_scores.size(); ++j) {
    ids.push_back(id(j));
    scores.push_back(format_rating(result.neutro_scores[j]));
    intervals.push_back(ordered_json::array({number(result.intervals[j].lo), number(result.intervals[j].hi)}));
  }
  root["alternatives"] = std::move(ids);
  root["neutroScores"] = std::move(scores);
  root["intervals"] = std::move(intervals);

  ordered_json ranking = ordered_json::array();
  for (auto j : result.ranking) ranking.push_back(id(j));
  root["ranking"] = std::move(ranking);
  root["selected"] = id(result.selected_index);
  root["selectedIndex"] = result.selected_index;

  ordered_json contentions = ordered_json::array();
  for (const auto& c : result.contentions) {
    ordered_json o;
    o["crisp"] = id(c.crisp_index);
    o["interval"] = id(c.interval_index);
    o["threshold"] = number(c.threshold);
    o["kCritical"] = number(c.k_critical);
    o["kAdmissible"] = number(c.k_admissible);
    contentions.push_back(std::move(o));
  }
  root["contentions"] = std::move(contentions);
  root["warnings"] = result.warnings;
  return root.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

std::string sensitivity_to_json(const DecisionProblem& problem, std::span<const KSegment> segments) {
  ordered_json out = ordered_json::array();
  for (const auto& s : segments) {
    ordered_json o;
    if (s.is_point()) {
      o["k"] = number(s.from);
    } else {
      o[s.from_inclusive ? "kFrom" : "kAbove"] = number(s.from);
      if (!s.unbounded()) o["kAtMost"] = number(s.to);
    }
    o["selected"] = problem.alternatives.at(s.selected_index).id;
    out.push_back(std::move(o));
  }
  return out.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

std::string describe_segment(const KSegment& s) {
  if (s.is_point()) return "k=" + format_number(s.from);
  const std::string from = format_number(s.from);
  if (s.unbounded()) return (s.from_inclusive ? "k>=" : "k>") + from;
  return from + (s.from_inclusive ? "<=k<=" : "<k<=") + format_number(s.to);
}

}  // namespace ndmm
