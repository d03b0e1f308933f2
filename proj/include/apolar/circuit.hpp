#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apolar/polynomial.hpp"

namespace apolar {

/// Homogeneous linear form sum_v c_v x_v, sparse and sorted by variable.
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(std::vector<std::pair<int, Rational>> coeffs);
  static LinearForm variable(int var, const Rational& c = 1);

  const std::vector<std::pair<int, Rational>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support() const { return terms_.size(); }
  Rational coefficient(int var) const;
  int max_variable() const { return terms_.empty() ? 0 : terms_.back().first; }
  bool is_integral() const;

  LinearForm operator+(const LinearForm& o) const;
  LinearForm operator*(const Rational& c) const;
  LinearForm operator-() const { return *this * Rational(-1); }
  bool operator==(const LinearForm& o) const { return terms_ == o.terms_; }

  SparsePoly to_poly() const;
  /// "c1:v1,c2:v2,..." or "0" for the zero form.
  std::string to_string() const;

 private:
  std::vector<std::pair<int, Rational>> terms_;
};

/// Parses the `c1:v1,c2:v2` form syntax ("0" is the zero form).
LinearForm parse_linear_form(std::string_view text);

enum class GateKind {
  Input,   // x_var
  Const,   // scalar leaf
  Add,     // lhs + rhs
  MulLin,  // form * lhs (skew multiplication)
  Scale,   // constant * lhs (skew multiplication by a scalar)
  Mul,     // lhs * rhs, general circuits only
};

struct Gate {
  GateKind kind = GateKind::Const;
  int var = 0;
  Rational constant;
  LinearForm form;
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  /// Homogeneous degree of the polynomial computed at this gate.
  int degree = 0;
};

/// Arithmetic circuit in topological order. Every operand precedes its
/// user and every Add joins gates of equal degree, so each gate computes a
/// homogeneous polynomial. A circuit without Mul gates is skew.
class SkewCircuit {
 public:
  SkewCircuit() = default;

  std::size_t input(int var);
  std::size_t constant(const Rational& c);
  std::size_t add(std::size_t a, std::size_t b);
  /// Sum of a nonempty list, as a chain of Add gates.
  std::size_t add_all(std::span<const std::size_t> operands);
  std::size_t mul_linear(const LinearForm& form, std::size_t a);
  std::size_t scale(const Rational& c, std::size_t a);
  std::size_t mul(std::size_t a, std::size_t b);
  /// The zero polynomial of the given degree (a chain of zero-form products).
  std::size_t zero(int degree);

  void set_output(std::size_t g);
  std::size_t output() const;
  bool has_output() const { return !gates_.empty(); }

  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& gate(std::size_t g) const { return gates_.at(g); }
  std::size_t size() const { return gates_.size(); }
  int nvars() const { return nvars_; }
  void set_nvars(int n) { nvars_ = std::max(nvars_, n); }
  /// Degree of the output polynomial.
  int degree() const { return gate(output()).degree; }
  bool is_skew() const;
  /// All Const, Scale and linear-form coefficients are integers.
  bool is_integral() const;

  /// Gates the output depends on.
  std::vector<bool> live_gates() const;
  /// Number of live users of each gate (the output counts as one use).
  std::vector<std::size_t> use_counts() const;

  /// Re-emits the circuit in the text format with contiguous ids g1..gN.
  std::string serialize() const;

 private:
  std::size_t push(Gate g);
  void check_operand(std::size_t g) const;

  std::vector<Gate> gates_;
  std::size_t output_ = 0;
  bool output_set_ = false;
  int nvars_ = 0;
};

enum class CircuitDialect {
  skew,     // `mul` must have a var or const leaf operand
  general,  // `mul` of two arbitrary gates is allowed
};

/// Parses the line-oriented SSA format:
///   g<id> = var <i> | const <rational> | add g<a> g<b>
///         | mullin <c1>:<v1>[,<c2>:<v2>...] g<a> | scale <rational> g<a>
///         | mul g<a> g<b>
///   out g<id>
/// `#` starts a comment. Without an `out` line the last gate is the output.
SkewCircuit parse_circuit(std::string_view text, CircuitDialect dialect = CircuitDialect::skew);

struct ExpandLimits {
  std::size_t max_terms = 1000000;
};

/// Exact polynomial computed by the circuit. Throws SizeLimit when a gate's
/// projected expansion exceeds the limit.
SparsePoly expand_circuit(const SkewCircuit& c, const ExpandLimits& limits = {});

}  // namespace apolar
