#include "seqprice/feasibility.hpp"

#include <cctype>
#include <sstream>
#include <utility>

#include "seqprice/errors.hpp"

namespace seqprice {

bool LinearConstraint::variable_free() const {
  for (const auto& c : coeffs)
    if (!c.is_zero()) return false;
  return true;
}

bool LinearConstraint::contradictory() const {
  if (!variable_free()) return false;
  return strict ? bound.sign() <= 0 : bound.sign() < 0;
}

std::size_t LinearSystem::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  throw InputError("unknown variable '" + std::string(name) + "'");
}

std::size_t LinearSystem::ensure_variable(const std::string& name) {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  variables_.push_back(name);
  for (auto& c : constraints_) c.coeffs.emplace_back(0);
  return variables_.size() - 1;
}

void LinearSystem::add_raw(LinearConstraint c) {
  if (c.coeffs.size() != variables_.size()) throw InputError("constraint arity does not match the variables");
  const std::size_t index = constraints_.size();
  for (auto& c2 : constraints_) c2.origin.emplace_back(0);
  c.origin.assign(index + 1, Rational(0));
  c.origin[index] = 1;
  constraints_.push_back(std::move(c));
}

void LinearSystem::add_derived(LinearConstraint c) {
  if (c.coeffs.size() != variables_.size()) throw InputError("constraint arity does not match the variables");
  constraints_.push_back(std::move(c));
}

void LinearSystem::add(const std::map<std::string, Rational>& lhs, const Rational& lhs_constant, Relation rel,
                       const std::map<std::string, Rational>& rhs, const Rational& rhs_constant) {
  for (const auto& [name, _] : lhs) ensure_variable(name);
  for (const auto& [name, _] : rhs) ensure_variable(name);
  // lhs - rhs REL rhs_constant - lhs_constant
  LinearConstraint c;
  c.coeffs.assign(variables_.size(), Rational(0));
  for (const auto& [name, a] : lhs) c.coeffs[variable_index(name)] += a;
  for (const auto& [name, a] : rhs) c.coeffs[variable_index(name)] -= a;
  c.bound = rhs_constant - lhs_constant;
  if (rel == Relation::Greater || rel == Relation::GreaterEqual) {
    for (auto& a : c.coeffs) a = -a;
    c.bound = -c.bound;
  }
  c.strict = rel == Relation::Less || rel == Relation::Greater;
  add_raw(std::move(c));
}

void LinearSystem::add(const std::map<std::string, Rational>& terms, Relation rel, const Rational& bound) {
  add(terms, Rational(0), rel, {}, bound);
}

bool LinearSystem::satisfied_by(const std::vector<Rational>& point) const {
  if (point.size() != variables_.size()) throw InputError("point arity does not match the variables");
  for (const auto& c : constraints_) {
    Rational lhs;
    for (std::size_t j = 0; j < point.size(); ++j) lhs += c.coeffs[j] * point[j];
    if (c.strict ? !(lhs < c.bound) : !(lhs <= c.bound)) return false;
  }
  return true;
}

std::string LinearSystem::format(const LinearConstraint& c) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
    const Rational& a = c.coeffs[j];
    if (a.is_zero()) continue;
    const Rational mag = a.sign() < 0 ? -a : a;
    if (first) {
      if (a.sign() < 0) os << "-";
    } else {
      os << (a.sign() < 0 ? " - " : " + ");
    }
    if (mag != Rational(1)) os << mag << " ";
    os << variables_[j];
    first = false;
  }
  if (first) os << "0";
  os << (c.strict ? " < " : " <= ") << c.bound;
  return os.str();
}

std::string LinearSystem::to_text() const {
  std::string out;
  for (const auto& c : constraints_) out += format(c) + "\n";
  return out;
}

LinearSystem eliminate(const LinearSystem& sys, std::size_t var) {
  if (var >= sys.variables().size()) throw InputError("variable index out of range");
  std::vector<const LinearConstraint*> pos, neg;
  std::vector<LinearConstraint> kept;
  for (const auto& c : sys.constraints()) {
    const int s = c.coeffs[var].sign();
    if (s > 0) pos.push_back(&c);
    else if (s < 0) neg.push_back(&c);
    else kept.push_back(c);
  }
  for (const auto* p : pos) {
    for (const auto* n : neg) {
      const Rational fp = Rational(1) / p->coeffs[var];
      const Rational fn = Rational(1) / -n->coeffs[var];
      LinearConstraint c;
      c.coeffs.resize(p->coeffs.size());
      for (std::size_t j = 0; j < c.coeffs.size(); ++j) c.coeffs[j] = p->coeffs[j] * fp + n->coeffs[j] * fn;
      c.coeffs[var] = 0;
      c.bound = p->bound * fp + n->bound * fn;
      c.strict = p->strict || n->strict;
      c.origin.resize(p->origin.size());
      for (std::size_t k = 0; k < c.origin.size(); ++k) c.origin[k] = p->origin[k] * fp + n->origin[k] * fn;
      kept.push_back(std::move(c));
    }
  }
  LinearSystem result(sys.variables());
  for (auto& c : kept) result.add_derived(std::move(c));
  return result;
}

namespace {

struct Bound {
  bool set = false;
  Rational value;
  bool strict = false;
};

// Tighter lower bound wins: larger value, or equal value and strict.
void raise_lower(Bound& b, const Rational& v, bool strict) {
  if (!b.set || v > b.value || (v == b.value && strict)) b = Bound{true, v, strict};
}

void lower_upper(Bound& b, const Rational& v, bool strict) {
  if (!b.set || v < b.value || (v == b.value && strict)) b = Bound{true, v, strict};
}

bool admits(const Bound& lo, const Bound& hi, const Rational& x) {
  if (lo.set && (lo.strict ? !(x > lo.value) : !(x >= lo.value))) return false;
  if (hi.set && (hi.strict ? !(x < hi.value) : !(x <= hi.value))) return false;
  return true;
}

}  // namespace

FeasibilityResult feasible(const LinearSystem& sys) {
  FeasibilityResult r;
  const std::size_t n = sys.variables().size();
  r.stages.push_back(sys);
  for (std::size_t v = 0; v < n; ++v) r.stages.push_back(eliminate(r.stages.back(), v));

  for (const auto& stage : r.stages) {
    for (const auto& c : stage.constraints()) {
      if (c.contradictory()) {
        r.feasible = false;
        r.contradiction = c;
        r.multipliers = c.origin;
        return r;
      }
    }
  }

  r.feasible = true;
  r.point.assign(n, Rational(0));
  for (std::size_t v = n; v-- > 0;) {
    Bound lo, hi;
    for (const auto& c : r.stages[v].constraints()) {
      const Rational& a = c.coeffs[v];
      if (a.is_zero()) continue;
      Rational rest = c.bound;
      for (std::size_t j = v + 1; j < n; ++j) rest -= c.coeffs[j] * r.point[j];
      const Rational limit = rest / a;
      if (a.sign() > 0) lower_upper(hi, limit, c.strict);
      else raise_lower(lo, limit, c.strict);
    }
    Rational x(0);
    if (!admits(lo, hi, x)) {
      if (lo.set && hi.set) x = lo.value == hi.value ? lo.value : (lo.value + hi.value) / Rational(2);
      else if (lo.set) x = lo.value + Rational(1);
      else x = hi.value - Rational(1);
    }
    if (!admits(lo, hi, x)) throw InvariantViolation("back-substitution found no value for " + sys.variables()[v]);
    r.point[v] = x;
  }
  if (!sys.satisfied_by(r.point)) throw InvariantViolation("sample point violates the system");
  return r;
}

std::string format_certificate(const LinearSystem& sys, const FeasibilityResult& r) {
  if (r.feasible) return "";
  std::ostringstream os;
  for (std::size_t k = 0; k < r.multipliers.size(); ++k) {
    if (r.multipliers[k].is_zero()) continue;
    os << r.multipliers[k] << " * [" << sys.format(sys.constraints()[k]) << "]\n";
  }
  os << "sum: " << (r.contradiction.strict ? "0 < " : "0 <= ") << r.contradiction.bound << "\n";
  return os.str();
}

namespace {

class SystemParser {
 public:
  explicit SystemParser(std::string_view text) : text_(text) {}

  LinearSystem run() {
    LinearSystem sys;
    while (pos_ < text_.size()) {
      skip_blank();
      if (at_line_end()) {
        next_line();
        continue;
      }
      Side lhs = expression();
      skip_blank();
      const Relation rel = relation();
      Side rhs = expression();
      skip_blank();
      if (!at_line_end()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
      sys.add(lhs.terms, lhs.constant, rel, rhs.terms, rhs.constant);
      next_line();
    }
    return sys;
  }

 private:
  struct Side {
    std::map<std::string, Rational> terms;
    Rational constant;
  };

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, pos_ - line_start_ + 1); }

  bool at_line_end() const { return pos_ >= text_.size() || text_[pos_] == '\n' || text_[pos_] == '#'; }

  void next_line() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    if (pos_ < text_.size()) {
      ++pos_;
      ++line_;
      line_start_ = pos_;
    }
  }

  void skip_blank() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }

  bool peek(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  Relation relation() {
    if (peek("<=")) { pos_ += 2; return Relation::LessEqual; }
    if (peek(">=")) { pos_ += 2; return Relation::GreaterEqual; }
    if (peek("≤")) { pos_ += 3; return Relation::LessEqual; }
    if (peek("≥")) { pos_ += 3; return Relation::GreaterEqual; }
    if (peek("<")) { pos_ += 1; return Relation::Less; }
    if (peek(">")) { pos_ += 1; return Relation::Greater; }
    fail("expected one of <, <=, >, >=");
  }

  bool number_start() const { return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }
  bool name_start() const {
    return pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_');
  }

  Rational number() {
    const std::size_t start = pos_;
    while (number_start()) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      if (!number_start()) fail("expected a denominator");
      while (number_start()) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
      fail("numbers must be integers or fractions p/q");
    try {
      return Rational::parse(text_.substr(start, pos_ - start));
    } catch (const InputError& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  std::string name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != ')' && text_[pos_] != '\n') ++pos_;
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("unclosed '(' in variable name");
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Side expression() {
    Side side;
    bool first = true;
    while (true) {
      skip_blank();
      int sign = 1;
      if (!first) {
        if (peek("+")) ++pos_;
        else if (peek("-")) { ++pos_; sign = -1; }
        else break;
        skip_blank();
      } else if (peek("-")) {
        ++pos_;
        sign = -1;
        skip_blank();
      } else if (peek("+")) {
        ++pos_;
        skip_blank();
      }
      first = false;
      Rational coeff(sign);
      bool has_number = false;
      if (number_start()) {
        coeff *= number();
        has_number = true;
        skip_blank();
        if (peek("*")) {
          ++pos_;
          skip_blank();
          if (!name_start()) fail("expected a variable after '*'");
        }
      }
      if (name_start()) {
        side.terms[name()] += coeff;
      } else if (has_number) {
        side.constant += coeff;
      } else {
        fail("expected a number or a variable");
      }
    }
    return side;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

LinearSystem with_variables(std::vector<std::string> names) { return LinearSystem(std::move(names)); }

}  // namespace

LinearSystem parse_system(std::string_view text) { return SystemParser(text).run(); }

LinearSystem coverage_condition_system() {
  auto sys = with_variables({"p(a)", "p(b)", "p(c)", "p(d)"});
  sys.add({{"p(d)", 1}}, Relation::Less, 1);
  sys.add({{"p(a)", 1}, {"p(d)", -1}}, Relation::Less, 0);
  sys.add({{"p(b)", 1}, {"p(a)", -1}}, Relation::Less, 0);
  sys.add({{"p(c)", 1}, {"p(a)", -1}}, Relation::Less, 0);
  sys.add({{"p(b)", 1}, {"p(c)", 1}, {"p(a)", -1}}, Relation::Greater, 1);
  return sys;
}

std::vector<LinearSystem> static_example_systems() {
  const auto pa = std::map<std::string, Rational>{{"p(a)", -1}};
  const auto pb = std::map<std::string, Rational>{{"p(b)", -1}};
  const auto pc = std::map<std::string, Rational>{{"p(c)", -1}};
  auto one = with_variables({"p(a)", "p(b)", "p(c)"});
  one.add(pa, 6, Relation::Greater, pb, 12);
  one.add(pb, 8, Relation::Greater, pc, 8);
  one.add(pc, 10, Relation::Greater, pa, 4);
  auto two = with_variables({"p(a)", "p(b)", "p(c)"});
  two.add(pb, 12, Relation::Greater, pa, 6);
  two.add(pc, 8, Relation::Greater, pb, 8);
  two.add(pa, 4, Relation::Greater, pc, 10);
  return {one, two};
}

}  // namespace seqprice
