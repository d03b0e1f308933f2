#include <random>

#include "apolar/builders.hpp"
#include "apolar/circuit.hpp"
#include "apolar/minor_engine.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace apolar;
using testing::x;

namespace {

ErrorKind parse_error(std::string_view text, CircuitDialect dialect = CircuitDialect::skew) {
  try {
    parse_circuit(text, dialect);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse error");
  return ErrorKind::InvalidArgument;
}

std::string parse_message(std::string_view text) {
  try {
    parse_circuit(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("linear forms") {
  auto l = parse_linear_form("2:1,-1/2:3,1:1");
  CHECK(l.terms().size() == 2);
  CHECK(l.coefficient(1) == 3);
  CHECK(l.coefficient(3) == Rational(-1, 2));
  CHECK(l.to_string() == "3:1,-1/2:3");
  CHECK(parse_linear_form("0").is_zero());
  CHECK(parse_linear_form("1:1,-1:1").is_zero());
  CHECK_THROWS_AS(parse_linear_form("1:0"), Error);
  CHECK_THROWS_AS(parse_linear_form("1:"), Error);
  CHECK_THROWS_AS(parse_linear_form("abc"), Error);
  CHECK(l.to_poly() == x(1) * Rational(3) - x(3) * Rational(1, 2));
}

TEST_CASE("parse_circuit") {
  SUBCASE("two gate product") {
    auto c = parse_circuit("g1 = var 1\ng2 = var 2\ng3 = mullin 1:1 g2");
    CHECK(expand_circuit(c) == x(1) * x(2));
    CHECK(c.degree() == 2);
    CHECK(c.is_skew());
  }
  SUBCASE("undefined gate") {
    CHECK(parse_error("g1 = var 1\ng2 = add g1 g9") == ErrorKind::UndefinedGate);
    CHECK(parse_error("out g4\n") == ErrorKind::UndefinedGate);
  }
  SUBCASE("non skew product") {
    const char* text = "g1 = var 1\ng2 = mullin 1:2 g1\ng3 = mullin 1:3 g1\ng4 = mul g2 g3";
    CHECK(parse_error(text) == ErrorKind::NonSkewMul);
    auto general = parse_circuit(text, CircuitDialect::general);
    CHECK_FALSE(general.is_skew());
    CHECK(expand_circuit(general) == x(1) * x(1) * x(2) * x(3));
  }
  SUBCASE("mul with a leaf is skew") {
    auto c = parse_circuit("g1 = var 1\ng2 = const 3\ng3 = mul g1 g2\ng4 = var 2\ng5 = mul g3 g4");
    CHECK(c.is_skew());
    CHECK(expand_circuit(c) == x(1) * x(2) * Rational(3));
  }
  SUBCASE("duplicate ids") { CHECK(parse_error("g1 = var 1\ng1 = var 2") == ErrorKind::DuplicateGateId); }
  SUBCASE("syntax errors carry line numbers") {
    CHECK(parse_error("g1 = var 1\ng2 = frob g1") == ErrorKind::SyntaxError);
    CHECK(parse_message("# comment\ng1 = var 1\n\ng2 = frob g1").find("line 4") != std::string::npos);
    CHECK(parse_error("g1 = const 1/0") == ErrorKind::SyntaxError);
    CHECK(parse_error("") == ErrorKind::SyntaxError);
  }
  SUBCASE("inhomogeneous add") {
    CHECK(parse_error("g1 = var 1\ng2 = const 1\ng3 = add g1 g2") == ErrorKind::DegreeMismatch);
  }
  SUBCASE("out selects a gate") {
    auto c = parse_circuit("g1 = var 1  # x1\ng2 = var 2\nout g1\n");
    CHECK(expand_circuit(c) == x(1));
  }
}

TEST_CASE("serialize round trip") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    auto c = oracle::random_skew_circuit(rng, 4, 1 + static_cast<int>(rng() % 4), true);
    auto back = parse_circuit(c.serialize());
    CHECK(expand_circuit(back) == expand_circuit(c));
    CHECK(back.serialize() == parse_circuit(back.serialize()).serialize());
  }
}

TEST_CASE("expand_circuit size limit") {
  // (x1 + ... + x6)^6 has 462 terms.
  SkewCircuit c;
  std::vector<std::pair<int, Rational>> all;
  for (int v = 1; v <= 6; ++v) all.emplace_back(v, 1);
  std::size_t g = c.constant(1);
  for (int k = 0; k < 6; ++k) g = c.mul_linear(LinearForm(all), g);
  c.set_output(g);
  ExpandLimits limits;
  limits.max_terms = 100;
  CHECK_THROWS_AS(expand_circuit(c, limits), Error);
  CHECK(expand_circuit(c).size() == 462);
}

TEST_CASE("build_trace_power") {
  DirectedGraph tri(3);
  tri.add_edge(1, 2);
  tri.add_edge(2, 3);
  tri.add_edge(3, 1);
  CHECK(expand_circuit(build_trace_power(tri, 3)) == x(1) * x(2) * x(3) * Rational(3));

  DirectedGraph loop(1);
  loop.add_edge(1, 1);
  CHECK(expand_circuit(build_trace_power(loop, 1)) == x(1));

  DirectedGraph path(3);
  path.add_edge(1, 2);
  path.add_edge(2, 3);
  CHECK(expand_circuit(build_trace_power(path, 3)).is_zero());

  CHECK_THROWS_AS(build_trace_power(DirectedGraph(0), 2), Error);

  DirectedGraph parallel(2);
  parallel.add_edge(1, 2);
  parallel.add_edge(1, 2);
  CHECK(parallel.edge_count() == 1);
}

TEST_CASE("trace power matches closed walk enumeration") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5), d = 1 + static_cast<int>(rng() % 5);
    auto g = oracle::random_digraph(rng, n, 0.4, true);
    auto c = build_trace_power(g, d);
    CHECK(c.is_skew());
    CHECK(expand_circuit(c) == oracle::closed_walks(g, d));
    // Regression bound on the layered construction.
    CHECK(c.size() <= 4 * static_cast<std::size_t>(d) * n * (n + g.edge_count()) + 8);
  }
}

TEST_CASE("build_path_walks") {
  DirectedGraph p(3);
  p.add_edge(1, 2);
  p.add_edge(2, 3);
  CHECK(expand_circuit(build_path_walks(p, 1, 3, 3)) == x(1) * x(2) * x(3));
  CHECK(expand_circuit(build_path_walks(p, 1, 3, 2)).is_zero());
}

TEST_CASE("build_part_product_power") {
  CHECK(expand_circuit(build_part_product_power({{1}, {2}}, 1)) == x(1) + x(2));
  CHECK(expand_circuit(build_part_product_power({{1}, {2}}, 2)) == (x(1) + x(2)).pow(2));
  CHECK(expand_circuit(build_part_product_power({{1, 2}}, 1)) == x(1) * x(2));
  CHECK_THROWS_AS(build_part_product_power({{1}, {1}}, 1), Error);
  CHECK_THROWS_AS(build_part_product_power({{1}, {3}}, 1), Error);
  CHECK_THROWS_AS(build_part_product_power({{1, 2}, {3}}, 1), Error);
  try {
    validate_partition({{1, 2}, {2, 3}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadPartition);
  }

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 3), n = 1 + static_cast<int>(rng() % 3);
    const int m = 1 + static_cast<int>(rng() % 3);
    std::vector<int> perm(k * n);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    Partition parts(n);
    SparsePoly sum;
    for (int p = 0; p < n; ++p) {
      SparsePoly prod = SparsePoly::constant(1);
      for (int j = 0; j < k; ++j) {
        parts[p].push_back(perm[p * k + j]);
        prod = prod * x(perm[p * k + j]);
      }
      sum += prod;
    }
    auto c = build_part_product_power(parts, m);
    CHECK(c.is_skew());
    CHECK(expand_circuit(c) == sum.pow(m));
    CHECK(c.size() <= 4 * static_cast<std::size_t>(m) * k * n + 8);
  }
}

TEST_CASE("build_mv_determinant") {
  CHECK(expand_circuit(build_mv_determinant({{LinearForm::variable(1)}})) == x(1));
  auto g2 = SymbolicMatrix::generic(2);
  CHECK(expand_circuit(build_mv_determinant(g2.entries())) == x(1) * x(4) - x(2) * x(3));
  auto g3 = SymbolicMatrix::generic(3);
  auto det3 = expand_circuit(build_mv_determinant(g3.entries()));
  CHECK(det3.size() == 6);
  CHECK(det3 == oracle::det_of_forms(g3.entries()));
}

TEST_CASE("mv determinant matches Leibniz on random forms") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 4), n = 1 + static_cast<int>(rng() % 4);
    std::vector<std::vector<LinearForm>> e(d);
    std::size_t support = 1;
    for (auto& row : e)
      for (int j = 0; j < d; ++j) {
        row.push_back(oracle::random_form(rng, n, true));
        support = std::max(support, row.back().support());
      }
    auto c = build_mv_determinant(e);
    CHECK(c.is_skew());
    CHECK(expand_circuit(c) == oracle::det_of_forms(e));
    CHECK(c.size() <= 4 * static_cast<std::size_t>(d * d * d * d) * support + 8);
  }
}

TEST_CASE("linear product and monomial builders") {
  auto pa = build_linear_product({parse_linear_form("1:1,2:2"), parse_linear_form("3:1,4:2")});
  CHECK(expand_circuit(pa) == (x(1) + x(2) * Rational(2)) * (x(1) * Rational(3) + x(2) * Rational(4)));
  auto m = build_monomial(Monomial({{1, 2}, {3, 1}}), Rational(5));
  CHECK(expand_circuit(m) == x(1) * x(1) * x(3) * Rational(5));
  CHECK(build_monomial(Monomial()).degree() == 0);
}

TEST_CASE("live gates and use counts") {
  auto c = parse_circuit("g1 = var 1\ng2 = var 2\ng3 = mullin 1:1 g1\ng4 = add g3 g3\nout g4");
  auto live = c.live_gates();
  CHECK_FALSE(live[1]);
  CHECK(live[0]);
  CHECK(c.use_counts()[2] == 2);
}
