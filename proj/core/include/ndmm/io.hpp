#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ndmm/engine.hpp"
#include "ndmm/error.hpp"
#include "ndmm/neutro.hpp"
#include "ndmm/problem.hpp"

namespace ndmm {

inline constexpr int kFormatVersion = 1;

/// Parses a rating expression such as "7", "I", "-I", "2.5-0.5I" or "1+1+I".
///
///   value  := term (("+" | "-") term)*
///   term   := number | [number] "I"
///
/// Whitespace is ignored and the first term may carry a sign. Throws
/// ParseError with the byte offset of the offending input.
NeutroValue parse_rating(std::string_view token);

/// Canonical text of v; parse_rating(format_rating(v)) == v.
std::string format_rating(const NeutroValue& v);

/// Shortest decimal text that reads back to exactly x.
std::string format_number(double x);

struct ProblemDocument {
  int version = kFormatVersion;
  std::string title;
  DecisionProblem problem;
  std::optional<EvaluationConfig> defaults;

  friend bool operator==(const ProblemDocument&, const ProblemDocument&) = default;
};

class DocumentError : public Error {
 public:
  enum class Kind {
    kMalformedJson,
    kUnsupportedVersion,
    kStructure,       // missing field or wrong JSON type
    kInvalidRating,
    kDimensionMismatch,
    kSchemeViolation,
    kInvalidProblem,  // any other validate_problem diagnostic
  };

  DocumentError(Kind kind, std::string location, const std::string& message,
                std::vector<Diagnostic> diagnostics = {});

  Kind kind() const noexcept { return kind_; }
  /// JSON pointer into the document ("/ratings/1/2"), empty when not applicable.
  const std::string& location() const noexcept { return location_; }
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  Kind kind_;
  std::string location_;
  std::vector<Diagnostic> diagnostics_;
};

std::string_view to_string(DocumentError::Kind kind) noexcept;

struct ParsedDocument {
  ProblemDocument document;
  std::vector<std::string> warnings;  // e.g. unknown top-level fields
};

ParsedDocument parse_problem(std::string_view text);

/// Deterministic JSON: fixed key order, 2-space indent, canonical rating strings.
std::string serialize_problem(const ProblemDocument& doc);

/// JSON mirror of an EvaluationResult with alternatives referenced by id.
std::string evaluation_to_json(const DecisionProblem& problem, const EvaluationResult& result);

/// JSON array of winner segments; see KSegment.
std::string sensitivity_to_json(const DecisionProblem& problem, std::span<const KSegment> segments);

/// Human-readable k range of a segment: "k=0", "k>0", "0<=k<=2", "1<k<=3", "k>=0".
std::string describe_segment(const KSegment& segment);

}  // namespace ndmm
