#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "apolar/error.hpp"

namespace apolar {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses `p/q` or an integer. Throws Error{SyntaxError} on malformed text.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

bool is_prime(std::uint64_t n);

enum class ArithmeticMode { exact, modular };

/// Selects the scalar ring used by the evaluation engines. Modular mode has
/// one-sided error: a nonzero exact value may reduce to zero mod p.
struct Arithmetic {
  ArithmeticMode mode = ArithmeticMode::exact;
  std::uint64_t prime = 0;

  static Arithmetic exact() { return {}; }
  /// Throws InvalidArgument unless p > 2 is prime and fits in 63 bits.
  static Arithmetic modular(std::uint64_t p);

  bool is_exact() const { return mode == ArithmeticMode::exact; }
  std::string name() const;
};

/// A scalar result: an exact rational, or a residue modulo a prime.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(Rational value) : value_(std::move(value)) { value_.canonicalize(); }
  ExactScalar(long value) : value_(value) {}

  static ExactScalar modular(std::uint64_t residue, std::uint64_t prime);

  bool is_modular() const { return prime_ != 0; }
  std::uint64_t prime() const { return prime_; }
  const Rational& rational() const;
  std::uint64_t residue() const;

  bool is_zero() const;
  std::string to_string() const;

  ExactScalar operator+(const ExactScalar& o) const;
  ExactScalar operator-(const ExactScalar& o) const;
  ExactScalar operator*(const ExactScalar& o) const;
  ExactScalar operator-() const;
  bool operator==(const ExactScalar& o) const;

 private:
  void require_same_mode(const ExactScalar& o) const;

  Rational value_{0};
  std::uint64_t residue_ = 0;
  std::uint64_t prime_ = 0;
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& s);

// Coefficient rings for the evaluation engines. Each exposes the same
// static-dispatch surface so engine kernels can be written once as templates.

struct IntegerRing {
  using value_type = Integer;

  value_type zero() const { return 0; }
  value_type from(const Rational& q) const;
  ExactScalar to_scalar(const value_type& v) const { return ExactScalar(Rational(v)); }

  static bool is_zero(const value_type& v) { return mpz_sgn(v.get_mpz_t()) == 0; }
  static void set_zero(value_type& v) { mpz_set_ui(v.get_mpz_t(), 0); }
  static void add(value_type& acc, const value_type& x) {
    mpz_add(acc.get_mpz_t(), acc.get_mpz_t(), x.get_mpz_t());
  }
  static void addmul(value_type& acc, const value_type& a, const value_type& b) {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  static void submul(value_type& acc, const value_type& a, const value_type& b) {
    mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  static void scale(value_type& v, const value_type& c) {
    mpz_mul(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
  }
};

struct RationalField {
  using value_type = Rational;

  value_type zero() const { return 0; }
  value_type from(const Rational& q) const { return q; }
  ExactScalar to_scalar(const value_type& v) const { return ExactScalar(v); }

  static bool is_zero(const value_type& v) { return mpq_sgn(v.get_mpq_t()) == 0; }
  static void set_zero(value_type& v) { v = 0; }
  static void add(value_type& acc, const value_type& x) { acc += x; }
  static void addmul(value_type& acc, const value_type& a, const value_type& b) { acc += a * b; }
  static void submul(value_type& acc, const value_type& a, const value_type& b) { acc -= a * b; }
  static void scale(value_type& v, const value_type& c) { v *= c; }
};

class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t prime() const { return p_; }
  value_type zero() const { return 0; }
  /// Reduces p/q mod the prime; throws InvalidArgument if q vanishes mod p.
  value_type from(const Rational& q) const;
  ExactScalar to_scalar(const value_type& v) const { return ExactScalar::modular(v, p_); }

  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  value_type inverse(value_type a) const;

  static bool is_zero(const value_type& v) { return v == 0; }
  static void set_zero(value_type& v) { v = 0; }
  void add(value_type& acc, const value_type& x) const {
    acc += x;
    if (acc >= p_) acc -= p_;
  }
  void addmul(value_type& acc, const value_type& a, const value_type& b) const { add(acc, mul(a, b)); }
  void submul(value_type& acc, const value_type& a, const value_type& b) const {
    value_type t = mul(a, b);
    acc = acc >= t ? acc - t : acc + (p_ - t);
  }
  void scale(value_type& v, const value_type& c) const { v = mul(v, c); }

 private:
  std::uint64_t p_;
};

}  // namespace apolar
