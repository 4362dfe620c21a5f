#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ndmm/error.hpp"
#include "ndmm/neutro.hpp"

namespace ndmm {

struct Criterion {
  std::string id;
  std::string label;
  double weight = 0.0;

  friend bool operator==(const Criterion&, const Criterion&) = default;
};

struct Alternative {
  std::string id;
  std::string label;

  friend bool operator==(const Alternative&, const Alternative&) = default;
};

/// Admissible rating domain.
///
///  - kBaseline: det in {-1, 0, +1}, comparison against a reference.
///  - kScale: det in [min, max].
///  - kRankOrder: det is an integer rank in 1..m per criterion, 1 = least fit; ties allowed.
///  - kUnrestricted: any finite value.
///
/// The bare indeterminate entry "I" (det 0, |ind| 1) is admitted by every
/// scheme. Any other entry with ind != 0 needs det in range and |ind| no
/// larger than the span of the scheme.
struct RatingScheme {
  enum class Kind { kBaseline, kScale, kRankOrder, kUnrestricted };

  Kind kind = Kind::kUnrestricted;
  double min = 0.0;  // kScale only
  double max = 0.0;  // kScale only

  static RatingScheme baseline() { return {Kind::kBaseline}; }
  static RatingScheme scale(double lo, double hi) { return {Kind::kScale, lo, hi}; }
  static RatingScheme rank_order() { return {Kind::kRankOrder}; }
  static RatingScheme unrestricted() { return {Kind::kUnrestricted}; }

  friend bool operator==(const RatingScheme&, const RatingScheme&) = default;
};

std::string_view to_string(RatingScheme::Kind kind) noexcept;
std::optional<RatingScheme::Kind> scheme_kind_from_string(std::string_view s) noexcept;

/// Criteria x alternatives decision matrix. ratings[i][j] rates alternative j
/// on criterion i. Rows are stored individually so that malformed input can be
/// represented and reported by validate_problem.
struct DecisionProblem {
  std::vector<Criterion> criteria;
  std::vector<Alternative> alternatives;
  std::vector<std::vector<NeutroValue>> ratings;
  RatingScheme scheme;

  std::size_t criterion_count() const noexcept { return criteria.size(); }
  std::size_t alternative_count() const noexcept { return alternatives.size(); }

  friend bool operator==(const DecisionProblem&, const DecisionProblem&) = default;
};

struct Diagnostic {
  enum class Code {
    kNoCriteria,
    kNoAlternatives,
    kDimensionMismatch,
    kNegativeWeight,
    kNonFiniteWeight,
    kNonFiniteRating,
    kDuplicateCriterionId,
    kDuplicateAlternativeId,
    kEmptyId,
    kInvalidScheme,
    kSchemeViolation,
    kIndeterminateRating,
  };

  Code code;
  std::string message;
  std::optional<std::size_t> row;     // criterion index
  std::optional<std::size_t> column;  // alternative index

  /// "row 2, column 1: message" style single line.
  std::string to_string() const;
};

std::string_view to_string(Diagnostic::Code code) noexcept;

/// Checks every structural and scheme invariant. Empty result means valid.
std::vector<Diagnostic> validate_problem(const DecisionProblem& problem);

/// Thrown by operations whose precondition is a valid problem.
class InvalidProblemError : public Error {
 public:
  explicit InvalidProblemError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace ndmm
