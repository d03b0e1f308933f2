#include <random>

#include "apolar/builders.hpp"
#include "apolar/combinatorics.hpp"
#include "apolar/hankel_engine.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace apolar;
using testing::x;

namespace {

HankelArrangement random_hankel(std::mt19937_64& rng, int d, int n, bool fractions) {
  std::vector<LinearForm> forms;
  for (int m = 0; m < 2 * d - 1; ++m) forms.push_back(oracle::random_form(rng, n, fractions));
  return HankelArrangement(d, forms, n);
}

MaxMinorVector random_max_minor_vector(std::mt19937_64& rng, int d) {
  MaxMinorVector p(d);
  for (int k = 0; k <= d; ++k)
    for (auto& c : p.block(k)) c = rng() % 3 ? Rational(0) : oracle::small_rational(rng);
  return p;
}

IndexSequence without(int k, int i) {
  IndexSequence rows;
  for (int r = 1; r <= k; ++r)
    if (r != i) rows.push_back(r);
  return rows;
}

}  // namespace

TEST_CASE("hankel arrangement shape") {
  auto h = HankelArrangement::generic(3);
  CHECK(h.forms().size() == 5);
  CHECK(h.entry(2, 3) == LinearForm::variable(4));
  CHECK(h.entry(3, 4).is_zero());
  CHECK(h.entry(1, 5) == LinearForm::variable(5));
  CHECK(h.materialize().determinant_poly() == oracle::det_of_forms(h.materialize().entries()));
  CHECK(h.minor_poly({1}, {4}) == x(4));
  CHECK_THROWS_AS(HankelArrangement(2, {LinearForm::variable(1)}), Error);
  for (int d = 1; d <= 3; ++d) {
    auto g = HankelArrangement::generic(d);
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) CHECK(g.materialize().entry(i, j) == LinearForm::variable(i + j - 1));
  }
}

TEST_CASE("basis size is a Fibonacci number") {
  std::uint64_t a = 1, b = 1;  // F_1, F_2
  for (int d = 0; d <= 30; ++d) {
    CHECK(hankel_basis_size(d) == a);  // F_{2d+1}
    if (d <= 10) CHECK(MaxMinorVector(d).length() == a);
    const std::uint64_t c = a + b, e = b + c;
    a = c;
    b = e;
  }
}

TEST_CASE("straighten_row_omitted") {
  SUBCASE("both minors equal l2") {
    auto s = straighten_row_omitted(2, 1, 2, {1});
    MaxMinorVector want(2);
    want.at({2}) = 1;
    CHECK(s == want);
  }
  SUBCASE("omitting the last row is the identity") {
    for (int d = 1; d <= 4; ++d)
      for (int k = 1; k <= d; ++k)
        for (const auto& beta : increasing_sequences(2 * d - k, k - 1)) {
          MaxMinorVector want(d);
          want.at(beta) = 1;
          CHECK(straighten_row_omitted(d, k, k, beta) == want);
        }
  }
  SUBCASE("colliding shifts drop out") {
    // beta = (1, 2), J in {{1}, {2}}: (2, 2) collides, (1, 3) survives.
    auto s = straighten_row_omitted(3, 2, 3, {1, 2});
    MaxMinorVector want(3);
    want.at({1, 3}) = 1;
    CHECK(s == want);
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(straighten_row_omitted(2, 0, 1, {}), Error);
    CHECK_THROWS_AS(straighten_row_omitted(2, 2, 1, {}), Error);
    CHECK_THROWS_AS(straighten_row_omitted(2, 1, 3, {1, 2}), Error);
    CHECK_THROWS_AS(straighten_row_omitted(2, 1, 2, {4}), Error);
  }
}

TEST_CASE("straightening matches symbolic minors") {
  for (int d = 1; d <= 4; ++d) {
    auto h = HankelArrangement::generic(d);
    for (int k = 1; k <= d; ++k)
      for (int i = 1; i <= k; ++i)
        for (const auto& beta : increasing_sequences(2 * d - k, k - 1))
          CHECK(straighten_row_omitted(d, i, k, beta).expand(h) == h.minor_poly(without(k, i), beta));
  }
}

TEST_CASE("hankel_derivative") {
  auto h = HankelArrangement::generic(2);
  MaxMinorVector det = MaxMinorVector::determinant(2);
  CHECK(det.expand(h) == x(1) * x(3) - x(2) * x(2));
  MaxMinorVector want1(2), want2(2);
  want1.at({3}) = 1;
  want2.at({2}) = -2;
  CHECK(hankel_derivative(h, det, 1) == want1);
  CHECK(hankel_derivative(h, det, 2) == want2);
  MaxMinorVector scalar(2);
  scalar.block(0)[0] = 3;
  CHECK(hankel_derivative(h, scalar, 1).is_zero());
  CHECK_THROWS_AS(hankel_derivative(h, det, 0), Error);
  CHECK_THROWS_AS(hankel_derivative(h, det, 4), Error);
}

TEST_CASE("hankel derivative matches symbolic differentiation") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 3), n = 1 + static_cast<int>(rng() % 4);
    auto h = trial % 4 == 0 ? HankelArrangement::generic(d) : random_hankel(rng, d, n, trial % 2);
    auto p = random_max_minor_vector(rng, d);
    const auto expanded = p.expand(h);
    for (int l = 1; l <= h.nvars(); ++l) CHECK(hankel_derivative(h, p, l).expand(h) == expanded.derivative(l));
  }
}

TEST_CASE("iterated derivatives of det stay in the maximal minor span") {
  std::mt19937_64 rng(42);
  for (int d = 1; d <= 4; ++d) {
    auto h = HankelArrangement::generic(d);
    for (int trial = 0; trial < 8; ++trial) {
      MaxMinorVector p = MaxMinorVector::determinant(d);
      SparsePoly f = p.expand(h);
      for (int step = 0; step < d; ++step) {
        const int l = 1 + static_cast<int>(rng() % (2 * d - 1));
        p = hankel_derivative(h, p, l);
        f = f.derivative(l);
        CHECK(p.expand(h) == f);
      }
    }
  }
}

TEST_CASE("hankeldiff_evaluate") {
  auto h = HankelArrangement::generic(2);
  CHECK(hankeldiff_evaluate(h, build_monomial(Monomial({{1, 1}, {3, 1}}))) == ExactScalar(1L));
  CHECK(hankeldiff_evaluate(h, build_monomial(Monomial({{2, 2}}))) == ExactScalar(-2L));
  CHECK(hankeldiff_evaluate(h, build_monomial(Monomial({{1, 2}}))) == ExactScalar(0L));
  auto h3 = HankelArrangement::generic(3);
  CHECK(hankeldiff_evaluate(h3, build_monomial(Monomial({{1, 1}, {2, 1}, {4, 1}}))) == ExactScalar(0L));

  EvaluationStats stats;
  hankeldiff_evaluate(h3, build_monomial(Monomial({{1, 1}, {3, 1}, {5, 1}})), Arithmetic::exact(), &stats);
  CHECK(stats.basis_dim == 13);

  try {
    hankeldiff_evaluate(h, build_monomial(Monomial({{1, 1}})));
    FAIL("expected DegreeMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeMismatch);
  }
  auto square = parse_circuit("g1 = var 1\ng2 = var 2\ng3 = add g1 g2\ng4 = mul g3 g3", CircuitDialect::general);
  CHECK_FALSE(square.is_skew());
  CHECK_THROWS_AS(hankeldiff_evaluate(h, square), Error);
}

TEST_CASE("hankel engine agrees with the general engine and the oracle") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 120; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 3), n = 1 + static_cast<int>(rng() % 4);
    const bool fractions = trial % 3 == 0;
    auto h = random_hankel(rng, d, n, fractions);
    auto c = oracle::random_skew_circuit(rng, n, d, fractions);
    const auto value = hankeldiff_evaluate(h, c);
    CHECK(value == gendiff_evaluate(h.materialize(), c));
    CHECK(value.rational() == oracle::inner(oracle::det_of_forms(h.materialize().entries()), expand_circuit(c)));
    const std::uint64_t p = 998244353ULL;
    CHECK(hankeldiff_evaluate(h, c, Arithmetic::modular(p)).residue() == PrimeField(p).from(value.rational()));
  }
}

TEST_CASE("vandermonde_hankel") {
  auto v21 = vandermonde_hankel(2, 1);
  CHECK(v21.forms().size() == 1);
  CHECK(v21.form(1) == parse_linear_form("1:1,4:2"));
  CHECK(vandermonde_hankel(1, 1).form(1) == LinearForm::variable(1));
  for (int n = 1; n <= 5; ++n)
    for (int d = 1; d <= n; ++d) CHECK(vandermonde_hankel(n, d).forms().size() == static_cast<std::size_t>(2 * d - 1));
  CHECK_THROWS_AS(vandermonde_hankel(2, 3), Error);
  CHECK_THROWS_AS(vandermonde_hankel(2, 0), Error);

  // H_d = V diag(x) V^T with V_{i,k} = k^i.
  const int n = 4, d = 3;
  auto h = vandermonde_hankel(n, d);
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      std::vector<std::pair<int, Rational>> want;
      for (int k = 1; k <= n; ++k) {
        Rational c = 1;
        for (int e = 0; e < i + j; ++e) c *= k;
        want.emplace_back(k, c);
      }
      CHECK(h.materialize().entry(i, j) == LinearForm(want));
    }
  // Cauchy-Binet: every square-free monomial of det H_d has a positive coefficient.
  for (const auto& [m, c] : h.materialize().determinant_poly().terms())
    if (m.is_square_free()) CHECK(c > 0);
}
