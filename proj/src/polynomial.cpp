#include "apolar/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "apolar/linalg.hpp"

namespace apolar {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::pair<int, int>> powers) {
  std::sort(powers.begin(), powers.end());
  for (auto [v, e] : powers) {
    if (v < 1) fail(ErrorKind::IndexOutOfRange, "variables are 1-based");
    if (e < 0) fail(ErrorKind::InvalidArgument, "negative exponent");
    if (e == 0) continue;
    if (!powers_.empty() && powers_.back().first == v) {
      powers_.back().second += e;
    } else {
      powers_.emplace_back(v, e);
    }
    degree_ += e;
  }
}

Monomial Monomial::variable(int var, int exponent) { return Monomial({{var, exponent}}); }

int Monomial::exponent(int var) const {
  auto it = std::lower_bound(powers_.begin(), powers_.end(), std::make_pair(var, 0));
  return (it != powers_.end() && it->first == var) ? it->second : 0;
}

bool Monomial::is_square_free() const {
  return std::all_of(powers_.begin(), powers_.end(), [](const auto& p) { return p.second == 1; });
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (auto [v, e] : powers_) {
    if (other.exponent(v) < e) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<std::pair<int, int>> merged = powers_;
  merged.insert(merged.end(), other.powers_.begin(), other.powers_.end());
  return Monomial(std::move(merged));
}

Monomial Monomial::operator/(const Monomial& other) const {
  if (!other.divides(*this)) fail(ErrorKind::InvalidArgument, "monomial does not divide");
  std::vector<std::pair<int, int>> out;
  for (auto [v, e] : powers_) out.emplace_back(v, e - other.exponent(v));
  return Monomial(std::move(out));
}

Integer Monomial::factorial() const {
  Integer result = 1;
  for (auto [v, e] : powers_) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(e));
    result *= f;
  }
  return result;
}

std::string Monomial::to_string(const std::string& symbol) const {
  if (powers_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (auto [v, e] : powers_) {
    if (!first) os << '*';
    first = false;
    os << symbol << v;
    if (e > 1) os << '^' << e;
  }
  return os.str();
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
  if (degree_ != o.degree_) return degree_ <=> o.degree_;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < powers_.size() && j < o.powers_.size()) {
    const auto& [va, ea] = powers_[i];
    const auto& [vb, eb] = o.powers_[j];
    if (va != vb) {
      // The monomial that uses the smaller variable index is lex-larger.
      return va < vb ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (ea != eb) return ea <=> eb;
    ++i;
    ++j;
  }
  if (i < powers_.size()) return std::strong_ordering::greater;
  if (j < o.powers_.size()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

// -------------------------------------------------------------- SparsePoly

SparsePoly::SparsePoly(int nvars, TermMap terms) : nvars_(nvars) {
  for (auto& [m, c] : terms) add_term(m, c);
}

SparsePoly SparsePoly::constant(const Rational& c, int nvars) {
  SparsePoly p(nvars);
  p.add_term(Monomial(), c);
  return p;
}

SparsePoly SparsePoly::variable(int var, int nvars) {
  return monomial(Monomial::variable(var), 1, std::max(nvars, var));
}

SparsePoly SparsePoly::monomial(const Monomial& m, const Rational& c, int nvars) {
  SparsePoly p(std::max(nvars, m.max_variable()));
  p.add_term(m, c);
  return p;
}

int SparsePoly::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

bool SparsePoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

Rational SparsePoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SparsePoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  nvars_ = std::max(nvars_, m.max_variable());
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  nvars_ = std::max(nvars_, o.nvars_);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  nvars_ = std::max(nvars_, o.nvars_);
  return *this;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  SparsePoly r = *this;
  r += o;
  return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const {
  SparsePoly r = *this;
  r -= o;
  return r;
}

SparsePoly SparsePoly::operator-() const { return *this * Rational(-1); }

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  SparsePoly r(std::max(nvars_, o.nvars_));
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

SparsePoly SparsePoly::operator*(const Rational& c) const {
  SparsePoly r(nvars_);
  if (c == 0) return r;
  for (const auto& [m, coef] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, coef * c);
  return r;
}

SparsePoly SparsePoly::pow(int e) const {
  SparsePoly result = constant(1, nvars_);
  for (int i = 0; i < e; ++i) result = result * *this;
  return result;
}

SparsePoly SparsePoly::derivative(int var) const { return derivative(Monomial::variable(var)); }

SparsePoly SparsePoly::derivative(const Monomial& alpha) const {
  SparsePoly r(nvars_);
  for (const auto& [beta, c] : terms_) {
    if (!alpha.divides(beta)) continue;
    // beta!/(beta - alpha)! as a falling factorial per variable.
    Integer weight = 1;
    for (auto [v, a] : alpha.powers()) {
      int b = beta.exponent(v);
      for (int t = 0; t < a; ++t) weight *= b - t;
    }
    r.add_term(beta / alpha, c * Rational(weight));
  }
  return r;
}

SparsePoly SparsePoly::zero_variable(int var) const {
  SparsePoly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m.exponent(var) == 0) r.add_term(m, c);
  }
  return r;
}

Rational SparsePoly::evaluate(const std::vector<Rational>& point) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (auto [v, e] : m.powers()) {
      if (v > static_cast<int>(point.size())) fail(ErrorKind::IndexOutOfRange, "evaluation point too short");
      for (int i = 0; i < e; ++i) t *= point[v - 1];
    }
    total += t;
  }
  return total;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    Rational a = abs(c);
    if (m.is_one()) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << '*';
      os << m.to_string();
    }
  }
  return os.str();
}

// ------------------------------------------------------------- operations

SparsePoly apply_diff_operator(const SparsePoly& h, const SparsePoly& f) {
  SparsePoly r(std::max(h.nvars(), f.nvars()));
  for (const auto& [alpha, c] : h.terms()) r += f.derivative(alpha) * c;
  return r;
}

ExactScalar apolar_inner_product(const SparsePoly& f, const SparsePoly& g) {
  if (!f.is_homogeneous() || !g.is_homogeneous()) {
    fail(ErrorKind::DegreeMismatch, "apolar inner product needs homogeneous inputs");
  }
  if (!f.is_zero() && !g.is_zero() && f.degree() != g.degree()) {
    fail(ErrorKind::DegreeMismatch,
         "degrees " + std::to_string(f.degree()) + " and " + std::to_string(g.degree()) + " differ");
  }
  const SparsePoly& small = f.size() <= g.size() ? f : g;
  const SparsePoly& large = f.size() <= g.size() ? g : f;
  Rational total = 0;
  for (const auto& [m, c] : small.terms()) {
    auto it = large.terms().find(m);
    if (it == large.terms().end()) continue;
    total += c * it->second * Rational(m.factorial());
  }
  return ExactScalar(total);
}

Rational permanent(const RationalMatrix& a, int limit) {
  const int n = static_cast<int>(a.size());
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != n) fail(ErrorKind::BadDims, "permanent needs a square matrix");
  }
  if (n > limit) fail(ErrorKind::SizeLimit, "permanent enumeration limited to n <= " + std::to_string(limit));
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  Rational total = 0;
  do {
    Rational prod = 1;
    for (int i = 0; i < n && prod != 0; ++i) prod *= a[i][sigma[i]];
    total += prod;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

SparsePoly symbolic_determinant(const PolyMatrix& m) {
  const int n = static_cast<int>(m.size());
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != n) fail(ErrorKind::BadDims, "determinant needs a square matrix");
  }
  SparsePoly total;
  if (n == 0) return SparsePoly::constant(1);
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) inversions += sigma[i] > sigma[j];
    }
    SparsePoly prod = SparsePoly::constant(inversions % 2 ? -1 : 1);
    for (int i = 0; i < n && !prod.is_zero(); ++i) prod = prod * m[i][sigma[i]];
    total += prod;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

std::vector<std::pair<Monomial, SparsePoly>> all_derivatives(const SparsePoly& f, const DiffSpanLimits& limits) {
  // Every alpha dividing some term of f: enumerate divisors term by term.
  std::set<Monomial> alphas;
  for (const auto& [beta, c] : f.terms()) {
    std::vector<Monomial> divisors{Monomial()};
    for (auto [v, e] : beta.powers()) {
      std::vector<Monomial> next;
      next.reserve(divisors.size() * (e + 1));
      for (const auto& d : divisors) {
        for (int t = 0; t <= e; ++t) next.push_back(t == 0 ? d : d * Monomial::variable(v, t));
      }
      divisors = std::move(next);
    }
    alphas.insert(divisors.begin(), divisors.end());
    if (alphas.size() > limits.max_derivatives) {
      fail(ErrorKind::SizeLimit, "more than " + std::to_string(limits.max_derivatives) + " derivatives");
    }
  }
  std::vector<std::pair<Monomial, SparsePoly>> out;
  out.reserve(alphas.size());
  for (const auto& alpha : alphas) {
    SparsePoly d = f.derivative(alpha);
    if (!d.is_zero()) out.emplace_back(alpha, std::move(d));
  }
  return out;
}

std::size_t diff_span_dim(const SparsePoly& f, const DiffSpanLimits& limits) {
  if (f.is_zero()) return 0;
  auto derivs = all_derivatives(f, limits);
  // Highest-degree derivatives first; exact pivots, no tolerance.
  std::stable_sort(derivs.begin(), derivs.end(),
                   [](const auto& a, const auto& b) { return a.second.degree() > b.second.degree(); });
  PolynomialSpan span;
  for (const auto& [alpha, d] : derivs) span.insert(d);
  return span.dimension();
}

}  // namespace apolar
