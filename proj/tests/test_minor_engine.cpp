#include <random>

#include "apolar/builders.hpp"
#include "apolar/combinatorics.hpp"
#include "apolar/minor_engine.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace apolar;
using testing::x;

namespace {

SymbolicMatrix hankel2() {
  auto v = [](int i) { return LinearForm::variable(i); };
  return SymbolicMatrix({{v(1), v(2)}, {v(2), v(3)}});
}

SymbolicMatrix random_symbolic(std::mt19937_64& rng, int d, int n, bool fractions) {
  std::vector<std::vector<LinearForm>> e(d);
  for (auto& row : e)
    for (int j = 0; j < d; ++j) row.push_back(oracle::random_form(rng, n, fractions));
  return SymbolicMatrix(std::move(e));
}

MinorVector random_minor_vector(std::mt19937_64& rng, int d) {
  MinorVector p(d);
  for (int k = 0; k <= d; ++k)
    for (auto& c : p.block(k)) c = rng() % 3 ? Rational(0) : oracle::small_rational(rng);
  return p;
}

}  // namespace

TEST_CASE("symbolic matrices") {
  auto g = SymbolicMatrix::generic(3);
  CHECK(g.dim() == 3);
  CHECK(g.nvars() == 9);
  CHECK(g.entry(2, 3) == LinearForm::variable(6));
  CHECK(g.coefficients(6).size() == 1);
  CHECK(g.coefficients(42).empty());
  CHECK(g.is_integral());
  CHECK_THROWS_AS(SymbolicMatrix({{LinearForm::variable(1), LinearForm()}}), Error);

  auto pencil = SymbolicMatrix::pencil({testing::matrix({{1, 0}, {0, 1}}), testing::matrix({{0, 2}, {0, 0}})});
  CHECK(pencil.determinant_poly() == x(1) * x(1));
  CHECK(pencil.entry(1, 2) == LinearForm::variable(2, 2));

  // B diag(x) B^T with B = [1 1; 0 1].
  auto gram = SymbolicMatrix::gram(testing::matrix({{1, 1}, {0, 1}}));
  CHECK(gram.entry(1, 1) == parse_linear_form("1:1,1:2"));
  CHECK(gram.entry(1, 2) == LinearForm::variable(2));
  CHECK(gram.determinant_poly() == x(1) * x(2));
}

TEST_CASE("minor vector layout") {
  for (int d = 0; d <= 5; ++d) {
    CHECK(MinorVector(d).length() == binomial(2 * d, d));
    CHECK(MinorVector::determinant(d).block(d).size() == 1);
  }
  MinorVector p(3);
  p.at({1, 3}, {2, 3}) = 5;
  CHECK(p.block(2)[colex_rank(std::vector<int>{1, 3}) * 3 + colex_rank(std::vector<int>{2, 3})] == 5);
  auto g = SymbolicMatrix::generic(3);
  CHECK(p.expand(g) == (x(2) * x(9) - x(3) * x(8)) * Rational(5));
  CHECK(MinorVector::determinant(3).expand(g) == g.determinant_poly());
}

TEST_CASE("minor_derivative") {
  SUBCASE("cofactor of x11") {
    auto d = minor_derivative(SymbolicMatrix::generic(2), MinorVector::determinant(2), 1);
    MinorVector want(2);
    want.at({2}, {2}) = 1;
    CHECK(d == want);
  }
  SUBCASE("symmetric 2x2") {
    auto d = minor_derivative(hankel2(), MinorVector::determinant(2), 2);
    MinorVector want(2);
    want.at({2}, {1}) = -1;
    want.at({1}, {2}) = -1;
    CHECK(d == want);
  }
  SUBCASE("constant has zero derivative") {
    MinorVector p(3);
    p.block(0)[0] = 7;
    CHECK(minor_derivative(SymbolicMatrix::generic(3), p, 4).is_zero());
  }
  SUBCASE("variable out of range") {
    CHECK_THROWS_AS(minor_derivative(hankel2(), MinorVector::determinant(2), 0), Error);
    CHECK_THROWS_AS(minor_derivative(hankel2(), MinorVector::determinant(2), 4), Error);
  }
}

TEST_CASE("minor derivative matches symbolic differentiation") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 3), n = 1 + static_cast<int>(rng() % 4);
    auto m = random_symbolic(rng, d, n, trial % 2);
    auto p = random_minor_vector(rng, d);
    const auto expanded = p.expand(m);
    for (int l = 1; l <= m.nvars(); ++l) {
      auto dp = minor_derivative(m, p, l);
      CHECK(dp.block(d) == MinorVector(d).block(d));
      CHECK(dp.expand(m) == expanded.derivative(l));
    }
  }
}

TEST_CASE("minor derivatives commute") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 4), n = 1 + static_cast<int>(rng() % 4);
    auto m = random_symbolic(rng, d, n, false);
    auto p = random_minor_vector(rng, d);
    if (m.nvars() == 0) continue;
    const int a = 1 + static_cast<int>(rng() % m.nvars()), b = 1 + static_cast<int>(rng() % m.nvars());
    CHECK(minor_derivative(m, minor_derivative(m, p, a), b) == minor_derivative(m, minor_derivative(m, p, b), a));
  }
}

TEST_CASE("gendiff_evaluate") {
  auto c13 = build_monomial(Monomial({{1, 1}, {3, 1}}));
  auto c22 = build_monomial(Monomial({{2, 2}}));
  auto c11 = build_monomial(Monomial({{1, 2}}));
  CHECK(gendiff_evaluate(hankel2(), c13) == ExactScalar(1L));
  CHECK(gendiff_evaluate(hankel2(), c22) == ExactScalar(-2L));
  CHECK(gendiff_evaluate(hankel2(), c11) == ExactScalar(0L));

  EvaluationStats stats;
  gendiff_evaluate(hankel2(), c13, Arithmetic::exact(), &stats);
  CHECK(stats.basis_dim == 6);
  CHECK(stats.gates == c13.size());

  try {
    gendiff_evaluate(hankel2(), build_monomial(Monomial({{1, 3}})));
    FAIL("expected DegreeMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeMismatch);
  }
  auto general = parse_circuit("g1 = var 1\ng2 = var 2\ng3 = add g1 g2\ng4 = mul g3 g3", CircuitDialect::general);
  try {
    gendiff_evaluate(hankel2(), general);
    FAIL("expected NonSkewMul");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonSkewMul);
  }
  CHECK_THROWS_AS(gendiff_evaluate(SymbolicMatrix::generic(15), build_monomial(Monomial({{1, 15}}))), Error);
}

TEST_CASE("gendiff matches the polynomial oracle") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 120; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 3), n = 1 + static_cast<int>(rng() % 4);
    const bool fractions = trial % 3 == 0;
    auto m = random_symbolic(rng, d, n, fractions);
    auto c = oracle::random_skew_circuit(rng, n, d, fractions);
    const Rational want = oracle::inner(oracle::det_of_forms(m.entries()), expand_circuit(c));
    CHECK(gendiff_evaluate(m, c).rational() == want);

    const std::uint64_t p = 1000000007ULL;
    const auto modular = gendiff_evaluate(m, c, Arithmetic::modular(p));
    CHECK(modular.residue() == PrimeField(p).from(want));
  }
}

TEST_CASE("larger determinants against themselves") {
  // <det X, det X> = sum of squared coefficients times alpha! for generic X.
  for (int d = 1; d <= 4; ++d) {
    auto g = SymbolicMatrix::generic(d);
    auto c = build_mv_determinant(g.entries());
    CHECK(gendiff_evaluate(g, c).rational() == oracle::factorial(d));
  }
}
