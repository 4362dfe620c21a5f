#include "ndmm/problem.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace ndmm {

namespace {

bool is_bare_indeterminate(const NeutroValue& v) {
  return v.det == 0.0 && std::abs(v.ind) == 1.0;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

Diagnostic at(Diagnostic::Code code, std::string message, std::size_t row, std::size_t column) {
  return {code, std::move(message), row, column};
}

// Returns an empty string when det satisfies the scheme.
std::string check_det(const RatingScheme& scheme, double det, std::size_t alternatives) {
  switch (scheme.kind) {
    case RatingScheme::Kind::kBaseline:
      if (det != -1.0 && det != 0.0 && det != 1.0) {
        return "baseline rating " + fmt(det) + " not in {-1, 0, +1}";
      }
      break;
    case RatingScheme::Kind::kScale:
      if (det < scheme.min || det > scheme.max) {
        return "rating " + fmt(det) + " outside scale [" + fmt(scheme.min) + ", " + fmt(scheme.max) + "]";
      }
      break;
    case RatingScheme::Kind::kRankOrder:
      if (det != std::floor(det) || det < 1.0 || det > static_cast<double>(alternatives)) {
        return "rank " + fmt(det) + " is not an integer in 1.." + std::to_string(alternatives);
      }
      break;
    case RatingScheme::Kind::kUnrestricted:
      break;
  }
  return {};
}

double scheme_span(const RatingScheme& scheme, std::size_t alternatives) {
  switch (scheme.kind) {
    case RatingScheme::Kind::kBaseline: return 2.0;
    case RatingScheme::Kind::kScale: return scheme.max - scheme.min;
    case RatingScheme::Kind::kRankOrder: return static_cast<double>(alternatives) - 1.0;
    case RatingScheme::Kind::kUnrestricted: break;
  }
  return INFINITY;
}

}  // namespace

std::string_view to_string(RatingScheme::Kind kind) noexcept {
  switch (kind) {
    case RatingScheme::Kind::kBaseline: return "baseline";
    case RatingScheme::Kind::kScale: return "scale";
    case RatingScheme::Kind::kRankOrder: return "rank-order";
    case RatingScheme::Kind::kUnrestricted: return "unrestricted";
  }
  return "unknown";
}

std::optional<RatingScheme::Kind> scheme_kind_from_string(std::string_view s) noexcept {
  if (s == "baseline") return RatingScheme::Kind::kBaseline;
  if (s == "scale") return RatingScheme::Kind::kScale;
  if (s == "rank-order") return RatingScheme::Kind::kRankOrder;
  if (s == "unrestricted") return RatingScheme::Kind::kUnrestricted;
  return std::nullopt;
}

std::string_view to_string(Diagnostic::Code code) noexcept {
  using C = Diagnostic::Code;
  switch (code) {
    case C::kNoCriteria: return "no-criteria";
    case C::kNoAlternatives: return "no-alternatives";
    case C::kDimensionMismatch: return "dimension-mismatch";
    case C::kNegativeWeight: return "negative-weight";
    case C::kNonFiniteWeight: return "non-finite-weight";
    case C::kNonFiniteRating: return "non-finite-rating";
    case C::kDuplicateCriterionId: return "duplicate-criterion-id";
    case C::kDuplicateAlternativeId: return "duplicate-alternative-id";
    case C::kEmptyId: return "empty-id";
    case C::kInvalidScheme: return "invalid-scheme";
    case C::kSchemeViolation: return "scheme-violation";
    case C::kIndeterminateRating: return "indeterminate-rating";
  }
  return "unknown";
}

std::string Diagnostic::to_string() const {
  std::string out{ndmm::to_string(code)};
  if (row) out += " row " + std::to_string(*row + 1);
  if (column) out += (row ? ", column " : " column ") + std::to_string(*column + 1);
  out += ": " + message;
  return out;
}

std::vector<Diagnostic> validate_problem(const DecisionProblem& p) {
  using C = Diagnostic::Code;
  std::vector<Diagnostic> out;
  const std::size_t n = p.criteria.size();
  const std::size_t m = p.alternatives.size();

  if (n == 0) out.push_back({C::kNoCriteria, "at least one criterion is required", {}, {}});
  if (m == 0) out.push_back({C::kNoAlternatives, "at least one alternative is required", {}, {}});

  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = p.criteria[i];
    if (c.id.empty()) {
      out.push_back({C::kEmptyId, "criterion id is empty", i, {}});
    } else if (!seen.insert(c.id).second) {
      out.push_back({C::kDuplicateCriterionId, "duplicate criterion id '" + c.id + "'", i, {}});
    }
    if (!std::isfinite(c.weight)) {
      out.push_back({C::kNonFiniteWeight, "weight of '" + c.id + "' is not finite", i, {}});
    } else if (c.weight < 0.0) {
      out.push_back({C::kNegativeWeight, "weight of '" + c.id + "' is negative (" + fmt(c.weight) + ")", i, {}});
    }
  }

  seen.clear();
  for (std::size_t j = 0; j < m; ++j) {
    const auto& a = p.alternatives[j];
    if (a.id.empty()) {
      out.push_back({C::kEmptyId, "alternative id is empty", {}, j});
    } else if (!seen.insert(a.id).second) {
      out.push_back({C::kDuplicateAlternativeId, "duplicate alternative id '" + a.id + "'", {}, j});
    }
  }

  bool scheme_ok = true;
  if (p.scheme.kind == RatingScheme::Kind::kScale &&
      !(std::isfinite(p.scheme.min) && std::isfinite(p.scheme.max) && p.scheme.min < p.scheme.max)) {
    out.push_back({C::kInvalidScheme, "scale requires finite min < max", {}, {}});
    scheme_ok = false;
  }

  if (p.ratings.size() != n) {
    out.push_back({C::kDimensionMismatch,
                   "ratings have " + std::to_string(p.ratings.size()) + " rows, expected " + std::to_string(n),
                   {}, {}});
  }
  const double span = scheme_span(p.scheme, m);
  for (std::size_t i = 0; i < p.ratings.size(); ++i) {
    const auto& row = p.ratings[i];
    if (row.size() != m) {
      out.push_back({C::kDimensionMismatch,
                     "row has " + std::to_string(row.size()) + " ratings, expected " + std::to_string(m), i, {}});
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      const NeutroValue& v = row[j];
      if (!std::isfinite(v.det) || !std::isfinite(v.ind)) {
        out.push_back(at(C::kNonFiniteRating, "rating is not finite", i, j));
        continue;
      }
      if (!scheme_ok || is_bare_indeterminate(v)) continue;
      if (auto why = check_det(p.scheme, v.det, m); !why.empty()) {
        out.push_back(at(C::kSchemeViolation, std::move(why), i, j));
      } else if (!v.is_crisp() && std::abs(v.ind) > span) {
        out.push_back(at(C::kSchemeViolation,
                         "indeterminacy coefficient " + fmt(v.ind) + " exceeds scheme span " + fmt(span), i, j));
      }
    }
  }
  return out;
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  std::string msg = "invalid problem";
  if (!diagnostics.empty()) {
    msg += ": " + diagnostics.front().to_string();
    if (diagnostics.size() > 1) msg += " (+" + std::to_string(diagnostics.size() - 1) + " more)";
  }
  return msg;
}

}  // namespace

InvalidProblemError::InvalidProblemError(std::vector<Diagnostic> diagnostics)
    : Error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

}  // namespace ndmm
