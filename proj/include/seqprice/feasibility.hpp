#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqprice/rational.hpp"

namespace seqprice {

/// sum_j coeffs[j] * x_j  (< or <=)  bound
struct LinearConstraint {
  std::vector<Rational> coeffs;
  bool strict = false;
  Rational bound;
  /// Non-negative multipliers over the original constraints whose sum
  /// yields this constraint.
  std::vector<Rational> origin;

  bool variable_free() const;
  /// A variable-free constraint that no point satisfies (0 < b with b <= 0,
  /// or 0 <= b with b < 0).
  bool contradictory() const;
};

enum class Relation { Less, LessEqual, Greater, GreaterEqual };

class LinearSystem {
 public:
  LinearSystem() = default;
  explicit LinearSystem(std::vector<std::string> variables) : variables_(std::move(variables)) {}

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  std::size_t variable_index(std::string_view name) const;
  /// Index of the variable, adding it (with zero coefficients everywhere)
  /// when it is new.
  std::size_t ensure_variable(const std::string& name);

  /// lhs terms (variable -> coefficient) plus lhs_constant REL rhs terms
  /// plus rhs_constant; normalized to a.x < b or a.x <= b.
  void add(const std::map<std::string, Rational>& lhs, const Rational& lhs_constant, Relation rel,
           const std::map<std::string, Rational>& rhs, const Rational& rhs_constant);
  /// Shorthand for sum(terms) REL bound.
  void add(const std::map<std::string, Rational>& terms, Relation rel, const Rational& bound);
  /// Appends c as a new original constraint (origin reset to itself).
  void add_raw(LinearConstraint c);
  /// Appends a derived constraint, keeping its origin multipliers.
  void add_derived(LinearConstraint c);

  bool satisfied_by(const std::vector<Rational>& point) const;
  std::string format(const LinearConstraint& c) const;
  std::string to_text() const;

 private:
  std::vector<std::string> variables_;
  std::vector<LinearConstraint> constraints_;
};

/// Projects out variable `var`: constraints not mentioning it are kept,
/// and every pair with opposite signs is combined so the variable cancels.
/// A combination is strict when either parent is.
LinearSystem eliminate(const LinearSystem& sys, std::size_t var);

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> point;  // when feasible
  /// When infeasible: multipliers over the original constraints and the
  /// contradiction they produce.
  std::vector<Rational> multipliers;
  LinearConstraint contradiction;
  std::vector<LinearSystem> stages;  // system before each elimination, then the final one
};

/// Exact feasibility by eliminating the variables in declaration order.
/// A sample point is recovered by back-substitution, preferring 0 for
/// each coordinate when allowed.
FeasibilityResult feasible(const LinearSystem& sys);

/// Human-readable certificate: the weighted sum of original constraints
/// that collapses to a false statement.
std::string format_certificate(const LinearSystem& sys, const FeasibilityResult& r);

/// One constraint per line, e.g. "6 - p(a) > 12 - p(b)" or "2/3 x + y <= 1".
/// '#' starts a comment. Errors are ParseError with line and column.
LinearSystem parse_system(std::string_view text);

/// Conditions an optimal outcome on the coverage instance would need:
/// p(d) < 1, p(a) < p(d), p(b) < p(a), p(c) < p(a), p(b) + p(c) - p(a) > 1.
LinearSystem coverage_condition_system();

/// The two singleton-demand cases of the three-buyer running example:
/// case 1: 6 - p(a) > 12 - p(b), 8 - p(b) > 8 - p(c), 10 - p(c) > 4 - p(a);
/// case 2: 12 - p(b) > 6 - p(a), 8 - p(c) > 8 - p(b), 4 - p(a) > 10 - p(c).
std::vector<LinearSystem> static_example_systems();

}  // namespace seqprice
