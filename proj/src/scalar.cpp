#include "apolar/scalar.hpp"

#include <cctype>
#include <sstream>

namespace apolar {

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t reduce(const Integer& z, std::uint64_t p) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!valid_integer_text(num) || (slash != std::string_view::npos && !valid_integer_text(den))) {
    fail(ErrorKind::SyntaxError, "malformed rational '" + std::string(text) + "'");
  }
  std::string n(num.front() == '+' ? num.substr(1) : num);
  Rational q;
  q.get_num() = Integer(n);
  if (slash != std::string_view::npos) {
    std::string d(den.front() == '+' ? den.substr(1) : den);
    q.get_den() = Integer(d);
    if (q.get_den() == 0) fail(ErrorKind::SyntaxError, "zero denominator in '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are deterministic for all 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Arithmetic Arithmetic::modular(std::uint64_t p) {
  if (p <= 2 || p >= (1ULL << 63) || !is_prime(p)) {
    fail(ErrorKind::InvalidArgument, "modulus " + std::to_string(p) + " must be an odd prime below 2^63");
  }
  return {ArithmeticMode::modular, p};
}

std::string Arithmetic::name() const {
  return is_exact() ? std::string("exact") : "mod " + std::to_string(prime);
}

ExactScalar ExactScalar::modular(std::uint64_t residue, std::uint64_t prime) {
  ExactScalar s;
  s.prime_ = prime;
  s.residue_ = residue % prime;
  return s;
}

const Rational& ExactScalar::rational() const {
  if (is_modular()) fail(ErrorKind::InvalidArgument, "modular scalar has no exact rational value");
  return value_;
}

std::uint64_t ExactScalar::residue() const {
  if (!is_modular()) fail(ErrorKind::InvalidArgument, "exact scalar has no residue");
  return residue_;
}

bool ExactScalar::is_zero() const { return is_modular() ? residue_ == 0 : value_ == 0; }

std::string ExactScalar::to_string() const {
  return is_modular() ? std::to_string(residue_) : value_.get_str();
}

void ExactScalar::require_same_mode(const ExactScalar& o) const {
  if (prime_ != o.prime_) fail(ErrorKind::InvalidArgument, "mixing scalars of different arithmetic modes");
}

ExactScalar ExactScalar::operator+(const ExactScalar& o) const {
  require_same_mode(o);
  if (!is_modular()) return ExactScalar(Rational(value_ + o.value_));
  return modular((residue_ + o.residue_) % prime_, prime_);
}

ExactScalar ExactScalar::operator-(const ExactScalar& o) const { return *this + (-o); }

ExactScalar ExactScalar::operator*(const ExactScalar& o) const {
  require_same_mode(o);
  if (!is_modular()) return ExactScalar(Rational(value_ * o.value_));
  return modular(mulmod(residue_, o.residue_, prime_), prime_);
}

ExactScalar ExactScalar::operator-() const {
  if (!is_modular()) return ExactScalar(Rational(-value_));
  return modular((prime_ - residue_) % prime_, prime_);
}

bool ExactScalar::operator==(const ExactScalar& o) const {
  if (prime_ != o.prime_) return false;
  return is_modular() ? residue_ == o.residue_ : value_ == o.value_;
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& s) { return os << s.to_string(); }

IntegerRing::value_type IntegerRing::from(const Rational& q) const {
  if (q.get_den() != 1) fail(ErrorKind::InvalidArgument, "integer ring cannot hold " + q.get_str());
  return q.get_num();
}

PrimeField::PrimeField(std::uint64_t p) : p_(Arithmetic::modular(p).prime) {}

PrimeField::value_type PrimeField::from(const Rational& q) const {
  std::uint64_t den = reduce(q.get_den(), p_);
  if (den == 0) fail(ErrorKind::InvalidArgument, "denominator of " + q.get_str() + " vanishes mod p");
  return mul(reduce(q.get_num(), p_), inverse(den));
}

PrimeField::value_type PrimeField::inverse(value_type a) const {
  if (a % p_ == 0) fail(ErrorKind::InvalidArgument, "inverse of zero mod p");
  return powmod(a, p_ - 2, p_);
}

}  // namespace apolar
