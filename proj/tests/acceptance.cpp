// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are exact equality throughout; the time
// ceilings below are wall-clock seconds.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <gmpxx.h>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "apolar/apolar_algebra.hpp"
#include "apolar/builders.hpp"
#include "apolar/clifford.hpp"
#include "apolar/combinatorics.hpp"
#include "apolar/detect.hpp"
#include "apolar/hankel_engine.hpp"
#include "apolar/minor_engine.hpp"
#include "apolar/subset_convolution.hpp"
#include "oracles.hpp"

using namespace apolar;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first failure and keeps counting.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void check(bool cond, const std::function<std::string()>& what) {
    ++checks;
    if (cond) return;
    if (failures++ == 0) first = what();
  }
  Outcome outcome(const std::string& summary) const {
    std::string d = summary + ", " + std::to_string(checks - failures) + "/" + std::to_string(checks) + " agree";
    if (failures) d += "; first failure: " + first;
    return {failures == 0, d};
  }
};

SparsePoly variable(int i) {
  SparsePoly p;
  p.add_term(Monomial({{i, 1}}), 1);
  return p;
}

IndexSequence without(int k, int i) {
  IndexSequence rows;
  for (int r = 1; r <= k; ++r)
    if (r != i) rows.push_back(r);
  return rows;
}

SymbolicMatrix random_symbolic(std::mt19937_64& rng, int d, int n, bool fractions) {
  std::vector<std::vector<LinearForm>> e(d);
  for (auto& row : e)
    for (int j = 0; j < d; ++j) row.push_back(oracle::random_form(rng, n, fractions));
  return SymbolicMatrix(std::move(e));
}

HankelArrangement random_hankel(std::mt19937_64& rng, int d, int n, bool fractions) {
  std::vector<LinearForm> forms;
  for (int m = 0; m < 2 * d - 1; ++m) forms.push_back(oracle::random_form(rng, n, fractions));
  return HankelArrangement(d, forms, n);
}

std::uint64_t fibonacci_sum(int d) {
  std::uint64_t s = 0;
  for (int k = 0; k <= d; ++k) s += binomial(2 * d - k, k);
  return s;
}

Outcome dimension_formulas() {
  Tally t;
  for (int d = 2; d <= 3; ++d) {
    const auto generic = diff_span_dim(SymbolicMatrix::generic(d).determinant_poly());
    t.check(generic == binomial(2 * d, d), [&] { return "generic d=" + std::to_string(d) + " dim " + std::to_string(generic); });
    const auto hankel = diff_span_dim(HankelArrangement::generic(d).materialize().determinant_poly());
    t.check(hankel == fibonacci_sum(d), [&] { return "hankel d=" + std::to_string(d) + " dim " + std::to_string(hankel); });
  }
  return t.outcome("generic 6, 20; hankel 5, 13");
}

// phi^{2d} = (L_{2d} + F_{2d} sqrt5) / 2, so s < phi^{2d} iff
// 2s - L < F sqrt5, decided by squaring when the left side is nonnegative.
Outcome fibonacci_bound() {
  Tally t;
  std::vector<mpz_class> fib{0, 1}, luc{2, 1};
  for (int i = 2; i <= 66; ++i) {
    fib.push_back(fib[i - 1] + fib[i - 2]);
    luc.push_back(luc[i - 1] + luc[i - 2]);
  }
  for (int d = 1; d <= 32; ++d) {
    mpz_class s = 0;
    for (int k = 0; k <= d; ++k) {
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), 2 * d - k, k);
      s += b;
    }
    t.check(s == fib[2 * d + 1], [&] { return "sum is not F_{2d+1} at d=" + std::to_string(d); });
    t.check(s == fibonacci_sum(d), [&] { return "basis size mismatch at d=" + std::to_string(d); });
    const mpz_class lhs = 2 * s - luc[2 * d];
    const bool below = lhs < 0 || lhs * lhs < 5 * fib[2 * d] * fib[2 * d];
    t.check(below, [&] { return "bound fails at d=" + std::to_string(d); });
  }
  return t.outcome("d = 1..32");
}

Outcome gendiff_vs_oracle() {
  Tally t;
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 3), n = 1 + static_cast<int>(rng() % 4);
    const bool fractions = trial % 4 == 0;
    auto m = random_symbolic(rng, d, n, fractions);
    auto c = oracle::random_skew_circuit(rng, n, d, fractions);
    const Rational want = oracle::inner(oracle::det_of_forms(m.entries()), expand_circuit(c));
    const Rational got = gendiff_evaluate(m, c).rational();
    t.check(got == want, [&] { return "trial " + std::to_string(trial) + ": " + to_string(got) + " vs " + to_string(want); });
  }
  return t.outcome("200 pairs, n <= 4, d <= 3");
}

Outcome hankel_vs_general() {
  Tally t;
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 3), n = 1 + static_cast<int>(rng() % 4);
    const bool fractions = trial % 4 == 0;
    auto h = trial % 10 == 0 ? HankelArrangement::generic(d) : random_hankel(rng, d, n, fractions);
    auto c = oracle::random_skew_circuit(rng, h.nvars(), d, fractions);
    const auto a = hankeldiff_evaluate(h, c), b = gendiff_evaluate(h.materialize(), c);
    t.check(a == b, [&] { return "trial " + std::to_string(trial) + ": " + to_string(a.rational()) + " vs " + to_string(b.rational()); });
  }
  return t.outcome("200 instances, d <= 3");
}

// Isomorphism classes of digraphs (loops allowed) on n vertices, as
// adjacency bitmasks with bit u * n + v for the edge u -> v. A mask is kept
// when no vertex permutation maps it to a smaller mask.
std::vector<std::uint32_t> digraph_classes(int n) {
  const int bits = n * n;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  // Per permutation, byte-indexed lookup tables of permuted bits.
  const int chunks = (bits + 7) / 8;
  std::vector<std::vector<std::array<std::uint32_t, 256>>> tables;
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::vector<std::array<std::uint32_t, 256>> tab(chunks);
    for (int c = 0; c < chunks; ++c)
      for (int byte = 0; byte < 256; ++byte) {
        std::uint32_t out = 0;
        for (int b = 0; b < 8; ++b) {
          const int bit = c * 8 + b;
          if (bit >= bits || !(byte >> b & 1)) continue;
          out |= std::uint32_t{1} << (perm[bit / n] * n + perm[bit % n]);
        }
        tab[c][byte] = out;
      }
    tables.push_back(std::move(tab));
  }
  std::vector<std::uint32_t> out;
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    bool minimal = true;
    for (const auto& tab : tables) {
      std::uint32_t image = 0;
      for (int c = 0; c < chunks; ++c) image |= tab[c][(mask >> (8 * c)) & 0xff];
      if (image < mask) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(static_cast<std::uint32_t>(mask));
  }
  return out;
}

Outcome exhaustive_cycles() {
  Tally t;
  // Binary relations up to isomorphism on 1..5 points.
  const std::array<std::size_t, 6> expected_classes{1, 2, 10, 104, 3044, 291968};
  std::size_t graphs = 0, calls = 0;
  for (int n = 1; n <= 5; ++n) {
    const auto classes = digraph_classes(n);
    t.check(classes.size() == expected_classes[n], [&] { return "class count " + std::to_string(classes.size()) + " at n=" + std::to_string(n); });
    for (const auto mask : classes) {
      DirectedGraph g(n);
      for (int bit = 0; bit < n * n; ++bit)
        if (mask >> bit & 1) g.add_edge(bit / n + 1, bit % n + 1);
      ++graphs;
      for (int d = 1; d <= n; ++d) {
        ++calls;
        const bool got = detect_cycle(g, d).found;
        t.check(got == oracle::has_cycle(g, d), [&] { return "n=" + std::to_string(n) + " mask " + std::to_string(mask) + " d=" + std::to_string(d); });
      }
    }
  }
  return t.outcome(std::to_string(graphs) + " classes, " + std::to_string(calls) + " detections");
}

Outcome scale_check(double ceiling) {
  Tally t;
  std::mt19937_64 rng(106);
  const std::uint64_t want_dim = fibonacci_sum(10);
  std::ostringstream times;
  for (int inst = 0; inst < 3; ++inst) {
    // Sparse background plus, in the first two instances, a planted 10-cycle.
    auto g = oracle::random_digraph(rng, 30, inst == 2 ? 0.08 : 0.05);
    if (inst < 2) {
      std::vector<int> order(30);
      std::iota(order.begin(), order.end(), 1);
      std::shuffle(order.begin(), order.end(), rng);
      for (int i = 0; i < 10; ++i) g.add_edge(order[i], order[(i + 1) % 10]);
    }
    const auto start = std::chrono::steady_clock::now();
    const auto r = detect_cycle(g, 10, {Engine::hankel, Arithmetic::exact()});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    times << (inst ? ", " : "") << static_cast<int>(secs * 10) / 10.0 << " s";
    t.check(secs < ceiling, [&] { return "instance " + std::to_string(inst) + " took " + std::to_string(secs) + " s"; });
    t.check(r.stats.basis_dim == want_dim, [&] { return "basis dim " + std::to_string(r.stats.basis_dim); });
    t.check(r.found == oracle::has_cycle(g, 10), [&] { return "instance " + std::to_string(inst) + " disagrees with DFS"; });
  }
  return t.outcome("n=30 d=10 basis dim " + std::to_string(want_dim) + ", per instance " + times.str());
}

Outcome sing_agreement() {
  Tally t;
  std::mt19937_64 rng(107);
  std::size_t yes = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 4), n = 1 + static_cast<int>(rng() % 4);
    std::vector<RationalMatrix> mats;
    for (int i = 0; i < n; ++i) mats.push_back(oracle::random_matrix(rng, d, d, 2, static_cast<int>(rng() % 4)));
    switch (trial % 4) {
      case 0:  // shared zero row
        for (auto& m : mats) m[0].assign(d, 0);
        break;
      case 1:  // rank at most d - 1 through a shared zero column
        for (auto& m : mats)
          for (auto& row : m) row[d - 1] = 0;
        break;
      case 2:  // skew-symmetric
        for (auto& m : mats)
          for (int i = 0; i < d; ++i) {
            m[i][i] = 0;
            for (int j = 0; j < i; ++j) m[i][j] = -m[j][i];
          }
        break;
      default:
        break;
    }
    const bool got = sing_decide(mats).found;
    yes += got;
    t.check(got == oracle::sing_random_eval(mats, rng), [&] { return "trial " + std::to_string(trial); });
  }
  return t.outcome("100 instances, " + std::to_string(yes) + " nonsingular");
}

Outcome matroid_agreement() {
  Tally t;
  std::mt19937_64 rng(108);
  std::size_t parity = 0, intersect = 0, yes = 0;
  for (int trial = 0; trial < 200; ++trial) {
    bool got, want;
    if (trial % 2 == 0) {
      // k-parity: km x kn matrix, km <= 6, kn <= 8.
      const int k = 1 + static_cast<int>(rng() % 3);
      const int m = 1 + static_cast<int>(rng() % (6 / k));
      const int n = m + static_cast<int>(rng() % (8 / k - m + 1));
      auto b = oracle::random_matrix(rng, k * m, k * n, 1, static_cast<int>(rng() % 3));
      std::vector<int> perm(k * n);
      std::iota(perm.begin(), perm.end(), 1);
      std::shuffle(perm.begin(), perm.end(), rng);
      Partition parts(n);
      for (int p = 0; p < n; ++p) parts[p].assign(perm.begin() + p * k, perm.begin() + (p + 1) * k);
      got = matroid_parity_decide(b, parts).found;
      want = oracle::parity(b, parts, m);
      ++parity;
    } else {
      // k matroids of rank <= m on n elements, km <= 6, kn <= 8.
      const int k = 2 + static_cast<int>(rng() % 2);
      const int m = 1 + static_cast<int>(rng() % (6 / k));
      const int n = m + static_cast<int>(rng() % (8 / k - m + 1));
      std::vector<RationalMatrix> mats;
      for (int i = 0; i < k; ++i) mats.push_back(oracle::random_matrix(rng, m, n, 1, static_cast<int>(rng() % 3)));
      got = matroid_intersection_decide(mats).found;
      want = oracle::common_base(mats);
      ++intersect;
    }
    yes += got;
    t.check(got == want, [&] { return "trial " + std::to_string(trial); });
  }
  return t.outcome(std::to_string(parity) + " parity, " + std::to_string(intersect) + " intersection, " +
                   std::to_string(yes) + " yes");
}

Outcome subset_convolution() {
  Tally t;
  using Vec = std::vector<long long>;
  auto compare = [&](const Vec& s, const Vec& u, const std::string& tag) {
    t.check(subset_convolution_fast(s, u) == subset_convolution_naive(s, u), [&] { return tag; });
  };
  // All pairs of {-2..2}-vectors for n <= 2.
  for (int n = 0; n <= 2; ++n) {
    const std::size_t size = std::size_t{1} << n;
    std::size_t count = 1;
    for (std::size_t i = 0; i < size; ++i) count *= 5;
    auto decode = [&](std::size_t code) {
      Vec v(size);
      for (auto& e : v) {
        e = static_cast<long long>(code % 5) - 2;
        code /= 5;
      }
      return v;
    };
    for (std::size_t a = 0; a < count; ++a)
      for (std::size_t b = 0; b < count; ++b) compare(decode(a), decode(b), "exhaustive n=" + std::to_string(n));
  }
  // Both sides are bilinear, so scaled basis pairs cover every input for n = 3, 4.
  for (int n = 3; n <= 4; ++n) {
    const std::size_t size = std::size_t{1} << n;
    for (std::size_t u = 0; u < size; ++u)
      for (std::size_t v = 0; v < size; ++v)
        for (long long c = -2; c <= 2; ++c)
          for (long long c2 = -2; c2 <= 2; ++c2) {
            Vec s(size, 0), w(size, 0);
            s[u] = c;
            w[v] = c2;
            compare(s, w, "basis pair n=" + std::to_string(n));
          }
  }
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<long long> entry(-2, 2);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = trial % 13;
    Vec s(std::size_t{1} << n), w(s.size());
    for (auto& e : s) e = entry(rng);
    for (auto& e : w) e = entry(rng);
    compare(s, w, "random n=" + std::to_string(n));
  }
  std::uint64_t worst = 0;
  for (int n = 0; n <= 12; ++n) {
    Vec s(std::size_t{1} << n, 1);
    ConvolutionStats stats;
    subset_convolution_fast(s, s, &stats);
    const std::uint64_t bound = static_cast<std::uint64_t>(n + 1) * (n + 1) << n;
    worst = std::max(worst, stats.multiplications);
    t.check(stats.multiplications <= bound, [&] { return "n=" + std::to_string(n) + " used " + std::to_string(stats.multiplications); });
  }
  return t.outcome("largest multiplication count " + std::to_string(worst));
}

Outcome permanents() {
  Tally t;
  std::vector<ApolarAlgebra> algebras;
  std::vector<StructureTensor> tensors;
  for (int n = 1; n <= 6; ++n) {
    SparsePoly f = variable(1);
    for (int i = 2; i <= n; ++i) f = f * variable(i);
    algebras.emplace_back(f);
    tensors.push_back(structure_tensor(algebras.back()));
  }
  auto run = [&](const RationalMatrix& a, const std::string& tag) {
    const int n = static_cast<int>(a.size());
    std::vector<LinearForm> rows;
    for (const auto& row : a) {
      std::vector<std::pair<int, Rational>> coeffs;
      for (int j = 0; j < n; ++j) coeffs.emplace_back(j + 1, row[j]);
      rows.emplace_back(coeffs);
    }
    const auto c = build_linear_product(rows);
    const Rational via_algebra = algebra_evaluate(algebras[n - 1], tensors[n - 1], c).rational();
    const Rational via_oracle = oracle::inner(algebras[n - 1].polynomial(), expand_circuit(c));
    const Rational want = oracle::permanent(a);
    t.check(via_algebra == want && via_oracle == want,
            [&] { return tag + ": " + to_string(via_algebra) + ", " + to_string(via_oracle) + " vs " + to_string(want); });
    return via_algebra;
  };
  const Rational fixed = run({{1, 2}, {3, 4}}, "[[1,2],[3,4]]");
  t.check(fixed == 10, [&] { return "fixed case gives " + to_string(fixed); });
  std::mt19937_64 rng(110);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    run(oracle::random_matrix(rng, n, n, 3, 0), "trial " + std::to_string(trial));
  }
  return t.outcome("101 matrices, n <= 6");
}

Outcome waring() {
  Tally t;
  const SparsePoly f = variable(1) * variable(2) * variable(3);
  const Rational c(1, 24);
  const std::vector<WaringTerm> identity = {{c, parse_linear_form("1:1,1:2,1:3")},
                                            {-c, parse_linear_form("-1:1,1:2,1:3")},
                                            {-c, parse_linear_form("1:1,-1:2,1:3")},
                                            {-c, parse_linear_form("1:1,1:2,-1:3")}};
  const auto dec = waring_to_tensor(f, identity);
  t.check(dec.size() <= 40, [&] { return std::to_string(dec.size()) + " terms"; });
  const auto target = structure_tensor(ApolarAlgebra(f));
  const auto diff = dec.sum().first_difference(target);
  t.check(!diff, [&] { return *diff; });
  return t.outcome(std::to_string(dec.size()) + " simple terms");
}

Outcome clifford() {
  Tally t;
  const auto check = verify_clifford_iso(2, clifford_matrix_iso(2));
  t.check(check.pairs_checked == 16 && check.homomorphism && check.independent,
          [&] { return "isomorphism check on " + std::to_string(check.pairs_checked) + " pairs"; });
  TensorDecomposition dec;
  const auto report = clifford_det_decomposition(2, &dec);
  std::vector<Monomial> labels;
  for (const auto& l : det_label_basis(2)) labels.push_back(det_label_monomial(l, 2));
  const auto target = structure_tensor(ApolarAlgebra(SymbolicMatrix::generic(2).determinant_poly(), labels));
  const auto diff = dec.sum().first_difference(target);
  t.check(!diff, [&] { return *diff; });
  t.check(report.term_count >= 6 && report.term_count == dec.size(), [&] { return std::to_string(report.term_count) + " terms"; });
  return t.outcome(std::to_string(report.term_count) + " simple terms");
}

Outcome straightening() {
  Tally t;
  for (int d = 1; d <= 3; ++d) {
    auto h = HankelArrangement::generic(d);
    for (int k = 1; k <= d; ++k)
      for (int i = 1; i <= k; ++i)
        for (const auto& beta : increasing_sequences(2 * d - k, k - 1))
          t.check(straighten_row_omitted(d, i, k, beta).expand(h) == h.minor_poly(without(k, i), beta),
                  [&] { return "d=" + std::to_string(d) + " k=" + std::to_string(k) + " i=" + std::to_string(i); });
  }
  return t.outcome("d <= 3");
}

struct Criterion {
  const char* name;
  double ceiling;
  std::function<Outcome()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"dimension-formulas", 30, dimension_formulas},
      {"fibonacci-bound", 1, fibonacci_bound},
      {"gendiff-vs-oracle", 60, gendiff_vs_oracle},
      {"hankel-vs-general", 60, hankel_vs_general},
      {"exhaustive-cycles", 600, exhaustive_cycles},
      {"cycle-scale", 900, [] { return scale_check(300); }},
      {"sing-random-eval", 300, sing_agreement},
      {"matroid-parity-intersection", 300, matroid_agreement},
      {"subset-convolution", 120, subset_convolution},
      {"permanent-identity", 60, permanents},
      {"waring-to-tensor", 30, waring},
      {"clifford-n2", 120, clifford},
      {"straightening", 60, straightening},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const Error& e) {
      o = {false, "threw " + std::string(to_string(e.kind())) + ": " + e.message()};
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.ok && secs < c.ceiling;
    failed += !pass;
    std::printf("%2zu %s %-28s %8.2f s (limit %g s)  %s\n", i + 1, pass ? "PASS" : "FAIL", c.name, secs, c.ceiling,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
