#include "apolar/clifford.hpp"

#include <bit>
#include <map>

#include "apolar/linalg.hpp"
#include "apolar/minor_engine.hpp"

namespace apolar {

GaussianRational GaussianRational::operator/(const GaussianRational& o) const {
  const Rational norm = o.re * o.re + o.im * o.im;
  if (norm == 0) fail(ErrorKind::InvalidArgument, "division by zero");
  return {(re * o.re + im * o.im) / norm, (im * o.re - re * o.im) / norm};
}

std::string GaussianRational::to_string() const {
  if (im == 0) return apolar::to_string(re);
  return apolar::to_string(re) + (im < 0 ? "-" : "+") + apolar::to_string(abs(im)) + "i";
}

IndexSequence mask_elements(SubsetMask m) {
  IndexSequence out;
  for (int i = 0; m; ++i, m >>= 1) {
    if (m & 1u) out.push_back(i + 1);
  }
  return out;
}

int clifford_sign(SubsetMask u, SubsetMask v) { return merge_sign(mask_elements(u), mask_elements(v)); }

namespace {

void check_even(int n, int max_n) {
  if (n < 0 || n % 2 != 0) fail(ErrorKind::OddN, "n must be even, got " + std::to_string(n));
  if (n > max_n) fail(ErrorKind::SizeLimit, "n must be at most " + std::to_string(max_n));
}

GaussianMatrix identity(std::size_t s) {
  GaussianMatrix m(s, std::vector<GaussianRational>(s));
  for (std::size_t i = 0; i < s; ++i) m[i][i] = 1;
  return m;
}

GaussianMatrix multiply(const GaussianMatrix& a, const GaussianMatrix& b) {
  const std::size_t s = a.size();
  GaussianMatrix c(s, std::vector<GaussianRational>(s));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t k = 0; k < s; ++k) {
      if (a[i][k] == GaussianRational()) continue;
      for (std::size_t j = 0; j < s; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

GaussianMatrix kron(const GaussianMatrix& a, const GaussianMatrix& b) {
  const std::size_t sa = a.size(), sb = b.size();
  GaussianMatrix c(sa * sb, std::vector<GaussianRational>(sa * sb));
  for (std::size_t i = 0; i < sa; ++i) {
    for (std::size_t j = 0; j < sa; ++j) {
      for (std::size_t k = 0; k < sb; ++k) {
        for (std::size_t l = 0; l < sb; ++l) c[i * sb + k][j * sb + l] = a[i][j] * b[k][l];
      }
    }
  }
  return c;
}

GaussianMatrix scaled(GaussianMatrix m, int sign) {
  if (sign == 1) return m;
  for (auto& row : m) {
    for (auto& x : row) x = -x;
  }
  return m;
}

const GaussianMatrix kPauliX{{0, 1}, {1, 0}};
const GaussianMatrix kPauliY{{0, GaussianRational(0, -1)}, {GaussianRational(0, 1), 0}};
const GaussianMatrix kPauliZ{{1, 0}, {0, -1}};

// eps^e for a possibly negative exponent.
Rational power(const Rational& eps, int e) {
  Rational out = 1;
  for (int i = 0; i < std::abs(e); ++i) out *= eps;
  return e >= 0 ? out : Rational(1) / out;
}

}  // namespace

std::vector<CliffordEntry> clifford_structure_tensor(int n) {
  check_even(n, 6);
  const SubsetMask size = 1u << n;
  std::vector<CliffordEntry> out;
  out.reserve(static_cast<std::size_t>(size) * size);
  for (SubsetMask u = 0; u < size; ++u) {
    for (SubsetMask v = 0; v < size; ++v) out.push_back({u, v, u ^ v, clifford_sign(u, v)});
  }
  return out;
}

std::vector<GaussianMatrix> clifford_matrix_iso(int n) {
  check_even(n, 4);
  const int m = n / 2;
  // Generator 2p+1 is Y^(p) (x) X (x) I..., generator 2p+2 is Y^(p) (x) Z (x) I...
  std::vector<GaussianMatrix> gens;
  for (int p = 0; p < m; ++p) {
    for (const GaussianMatrix* core : {&kPauliX, &kPauliZ}) {
      GaussianMatrix g = identity(1);
      for (int q = 0; q < m; ++q) g = kron(g, q < p ? kPauliY : (q == p ? *core : identity(2)));
      gens.push_back(std::move(g));
    }
  }
  const std::size_t s = std::size_t{1} << m;
  std::vector<GaussianMatrix> images(std::size_t{1} << n);
  for (SubsetMask u = 0; u < images.size(); ++u) {
    GaussianMatrix g = identity(s);
    for (int e : mask_elements(u)) g = multiply(g, gens[e - 1]);
    images[u] = std::move(g);
  }
  return images;
}

CliffordIsoCheck verify_clifford_iso(int n, const std::vector<GaussianMatrix>& images) {
  CliffordIsoCheck check;
  check.homomorphism = true;
  for (const auto& e : clifford_structure_tensor(n)) {
    ++check.pairs_checked;
    if (!(multiply(images.at(e.u), images.at(e.v)) == scaled(images.at(e.w), e.sign))) check.homomorphism = false;
  }
  std::vector<std::vector<GaussianRational>> rows;
  for (const auto& m : images) {
    std::vector<GaussianRational> flat;
    for (const auto& row : m) flat.insert(flat.end(), row.begin(), row.end());
    rows.push_back(std::move(flat));
  }
  check.independent = matrix_rank(rows) == images.size();
  return check;
}

CliffordReport clifford_det_decomposition(int n, TensorDecomposition* decomposition) {
  check_even(n, 6);
  if (n != 2) fail(ErrorKind::InvalidArgument, "the decomposition is built for n = 2 only");
  CliffordReport report;
  report.n = n;
  const SubsetMask size = 1u << n;
  const auto clifford = clifford_structure_tensor(n);
  report.clifford_entries = clifford.size();

  const auto images = clifford_matrix_iso(n);
  const auto iso = verify_clifford_iso(n, images);
  report.iso_pairs_checked = iso.pairs_checked;
  if (!iso.homomorphism) fail(ErrorKind::VerificationFailure, "matrix images do not multiply like the Clifford basis");
  if (!iso.independent) fail(ErrorKind::VerificationFailure, "matrix images are linearly dependent");

  const std::vector<DetBasisLabel> labels = det_label_basis(n);
  const std::size_t r = labels.size();
  report.algebra_dim = r;
  const StructureTensor expected = det_label_tensor(n);
  report.label_tensor_entries = expected.entries().size();

  // The product rule agrees with differentiating det_n in the same basis.
  {
    std::vector<Monomial> basis;
    for (const auto& l : labels) basis.push_back(det_label_monomial(l, n));
    const ApolarAlgebra algebra(SymbolicMatrix::generic(n).determinant_poly(), basis);
    if (auto diff = structure_tensor(algebra).first_difference(expected)) {
      fail(ErrorKind::VerificationFailure, "product rule differs from differentiation at " + *diff);
    }
  }

  auto label_of = [&](SubsetMask u, SubsetMask v) -> std::optional<std::size_t> {
    if (std::popcount(u) != std::popcount(v)) return std::nullopt;
    return det_label_index({mask_elements(u), mask_elements(v)}, n);
  };

  // Exponent of eps on each transformed entry, and the direct eps^0 part.
  StructureTensor direct(r);
  for (const auto& a : clifford) {
    for (const auto& b : clifford) {
      const int exponent = std::popcount(a.u) + std::popcount(b.u) + std::popcount(a.v) + std::popcount(b.v) -
                           std::popcount(a.w) - std::popcount(b.w);
      const bool disjoint = (a.u & a.v) == 0 && (b.u & b.v) == 0;
      if (exponent < 0 || (exponent == 0) != disjoint) {
        fail(ErrorKind::VerificationFailure, "eps exponent identity fails");
      }
      report.max_exponent = std::max(report.max_exponent, exponent);
      if (exponent != 0) continue;
      auto i = label_of(a.u, b.u), j = label_of(a.v, b.v), k = label_of(a.w, b.w);
      if (i && j && k) direct.add(*i, *j, *k, Rational(a.sign * b.sign));
    }
  }
  if (auto diff = direct.first_difference(expected)) {
    fail(ErrorKind::VerificationFailure, "eps^0 part differs from the structure tensor at " + *diff);
  }

  // Simple terms of one Clifford factor: the standard s^3-term matrix
  // product E_ij (x) E_jk (x) E_ik pulled back through the isomorphism.
  const std::size_t s = images[0].size();
  std::vector<std::vector<Rational>> basis_rows(s * s, std::vector<Rational>(size));
  for (SubsetMask u = 0; u < size; ++u) {
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        if (!images[u][i][j].is_real()) fail(ErrorKind::VerificationFailure, "matrix image is not real");
        basis_rows[i * s + j][u] = images[u][i][j].re;
      }
    }
  }
  struct CliffordTerm {
    std::vector<Rational> x, y, z;  // over masks
  };
  std::vector<CliffordTerm> factor;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      for (std::size_t k = 0; k < s; ++k) {
        CliffordTerm t{std::vector<Rational>(size), std::vector<Rational>(size), {}};
        for (SubsetMask u = 0; u < size; ++u) {
          t.x[u] = images[u][i][j].re;
          t.y[u] = images[u][j][k].re;
        }
        std::vector<Rational> unit(s * s, Rational(0));
        unit[i * s + k] = 1;
        auto coords = solve_linear(basis_rows, unit);
        if (!coords) fail(ErrorKind::VerificationFailure, "matrix images do not span the matrix algebra");
        t.z = std::move(*coords);
        factor.push_back(std::move(t));
      }
    }
  }
  report.matrix_terms = factor.size();
  {
    std::map<std::tuple<SubsetMask, SubsetMask, SubsetMask>, Rational> sum;
    for (const auto& t : factor) {
      for (SubsetMask u = 0; u < size; ++u) {
        for (SubsetMask v = 0; v < size; ++v) {
          for (SubsetMask w = 0; w < size; ++w) sum[{u, v, w}] += t.x[u] * t.y[v] * t.z[w];
        }
      }
    }
    for (const auto& e : clifford) {
      for (SubsetMask w = 0; w < size; ++w) {
        const Rational want = w == e.w ? Rational(e.sign) : Rational(0);
        if (sum[{e.u, e.v, w}] != want) fail(ErrorKind::VerificationFailure, "matrix decomposition misses a Clifford product");
      }
    }
  }

  // eps_t = t + 1 for t = 0..4n; sum_t w_t eps_t^j = [j == 0] for j = 0..4n.
  const int nodes = 4 * n + 1;
  std::vector<std::vector<Rational>> vander(nodes, std::vector<Rational>(nodes));
  std::vector<Rational> rhs(nodes, Rational(0));
  rhs[0] = 1;
  for (int j = 0; j < nodes; ++j) {
    for (int t = 0; t < nodes; ++t) vander[j][t] = power(Rational(t + 1), j);
  }
  const auto weights = solve_linear(vander, rhs);
  if (!weights) fail(ErrorKind::VerificationFailure, "interpolation system is singular");
  report.nodes = nodes;

  TensorDecomposition out{r, {}};
  std::size_t products = 0;
  for (const auto& a : factor) {
    for (const auto& b : factor) {
      ++products;
      for (int t = 0; t < nodes; ++t) {
        const Rational eps = t + 1;
        SimpleTerm term{std::vector<Rational>(r, Rational(0)), std::vector<Rational>(r, Rational(0)),
                        std::vector<Rational>(r, Rational(0))};
        for (SubsetMask u = 0; u < size; ++u) {
          for (SubsetMask v = 0; v < size; ++v) {
            auto l = label_of(u, v);
            if (!l) continue;
            const int e = std::popcount(u) + std::popcount(v);
            term.x[*l] = (*weights)[t] * a.x[u] * b.x[v] * power(eps, e);
            term.y[*l] = a.y[u] * b.y[v] * power(eps, e);
            term.z[*l] = a.z[u] * b.z[v] * power(eps, -e);
          }
        }
        out.terms.push_back(std::move(term));
      }
    }
  }
  report.product_terms = products;
  report.term_count = out.size();
  if (auto diff = out.sum().first_difference(expected)) {
    fail(ErrorKind::VerificationFailure, "interpolated decomposition differs from the structure tensor at " + *diff);
  }
  if (report.term_count < r) fail(ErrorKind::VerificationFailure, "fewer simple terms than the algebra dimension");
  if (decomposition) *decomposition = std::move(out);
  return report;
}

}  // namespace apolar
