#include "apolar/minor_engine.hpp"

#include "engine_driver.hpp"

namespace apolar {

namespace {

// Cofactor kernel over the dense minor blocks.
template <class Ring>
class MinorKernel {
 public:
  using Value = typename Ring::value_type;
  using Block = std::vector<Value>;

  struct Table {
    std::vector<Value> a;     // d x d, coefficient of the operator in entry (r, c)
    std::vector<char> nz;     // a[idx] != 0
    std::vector<char> row_nz; // 1-based rows with any nonzero entry
  };

  MinorKernel(const SymbolicMatrix& x, const Ring& ring) : x_(x), ring_(ring), d_(x.dim()) {
    seqs_.resize(d_ + 1);
    drop_.resize(d_ + 1);
    for (int k = 0; k <= d_; ++k) {
      seqs_[k] = increasing_sequences(d_, k);
      drop_[k].resize(seqs_[k].size() * k);
      for (std::size_t r = 0; r < seqs_[k].size(); ++r) {
        for (int i = 0; i < k; ++i) drop_[k][r * k + i] = colex_rank(omit(seqs_[k][r], i));
      }
    }
  }

  std::size_t block_size(int k) const {
    const std::size_t b = binomial(d_, k);
    return b * b;
  }

  Table coeffs(const LinearForm& form) const {
    std::vector<Rational> acc(static_cast<std::size_t>(d_) * d_, Rational(0));
    for (const auto& [v, c] : form.terms()) {
      for (const auto& e : x_.coefficients(v)) acc[(e.row - 1) * d_ + (e.col - 1)] += c * e.value;
    }
    Table t{std::vector<Value>(acc.size(), ring_.zero()), std::vector<char>(acc.size(), 0),
            std::vector<char>(d_ + 1, 0)};
    for (std::size_t idx = 0; idx < acc.size(); ++idx) {
      if (acc[idx] == 0) continue;
      t.a[idx] = ring_.from(acc[idx]);
      if (Ring::is_zero(t.a[idx])) continue;
      t.nz[idx] = 1;
      t.row_nz[idx / d_ + 1] = 1;
    }
    return t;
  }

  // out (block k-1) += derivative of in (block k).
  void apply(const Block& in, int k, const Table& t, Block& out) const {
    if (k == 0) return;
    const std::size_t nk = binomial(d_, k);
    const std::size_t nk1 = binomial(d_, k - 1);
    const auto& seqs = seqs_[k];
    const auto& drop = drop_[k];
    for (std::size_t ra = 0; ra < nk; ++ra) {
      for (int i = 0; i < k; ++i) {
        const int row = seqs[ra][i];
        if (!t.row_nz[row]) continue;
        const std::size_t ta = drop[ra * k + i];
        const std::size_t row_base = static_cast<std::size_t>(row - 1) * d_;
        for (std::size_t rb = 0; rb < nk; ++rb) {
          const Value& c = in[ra * nk + rb];
          if (Ring::is_zero(c)) continue;
          for (int j = 0; j < k; ++j) {
            const std::size_t idx = row_base + (seqs[rb][j] - 1);
            if (!t.nz[idx]) continue;
            Value& slot = out[ta * nk1 + drop[rb * k + j]];
            if ((i + j) & 1) {
              ring_.submul(slot, t.a[idx], c);
            } else {
              ring_.addmul(slot, t.a[idx], c);
            }
          }
        }
      }
    }
  }

 private:
  const SymbolicMatrix& x_;
  const Ring& ring_;
  int d_;
  std::vector<std::vector<IndexSequence>> seqs_;
  std::vector<std::vector<std::size_t>> drop_;
};

const std::vector<EntryCoefficient> kNoCoefficients;

}  // namespace

SymbolicMatrix::SymbolicMatrix(std::vector<std::vector<LinearForm>> entries) : entries_(std::move(entries)) {
  const std::size_t d = entries_.size();
  for (const auto& row : entries_) {
    if (row.size() != d) fail(ErrorKind::BadDims, "symbolic matrix must be square");
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) nvars_ = std::max(nvars_, entries_[i][j].max_variable());
  }
  by_var_.assign(nvars_ + 1, {});
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (const auto& [v, c] : entries_[i][j].terms()) {
        by_var_[v].push_back({static_cast<int>(i + 1), static_cast<int>(j + 1), c});
      }
    }
  }
}

SymbolicMatrix SymbolicMatrix::generic(int d) {
  if (d < 1) fail(ErrorKind::BadDims, "dimension must be positive");
  std::vector<std::vector<LinearForm>> e(d, std::vector<LinearForm>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) e[i][j] = LinearForm::variable(i * d + j + 1);
  }
  return SymbolicMatrix(std::move(e));
}

SymbolicMatrix SymbolicMatrix::pencil(const std::vector<RationalMatrix>& matrices) {
  if (matrices.empty()) fail(ErrorKind::BadDims, "empty matrix list");
  const std::size_t d = matrices[0].size();
  if (d == 0) fail(ErrorKind::BadDims, "matrices must be nonempty");
  for (const auto& m : matrices) {
    if (m.size() != d) fail(ErrorKind::BadDims, "matrices differ in size");
    for (const auto& row : m) {
      if (row.size() != d) fail(ErrorKind::BadDims, "matrices must be square");
    }
  }
  std::vector<std::vector<LinearForm>> e(d, std::vector<LinearForm>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<std::pair<int, Rational>> terms;
      for (std::size_t l = 0; l < matrices.size(); ++l) {
        if (matrices[l][i][j] != 0) terms.emplace_back(static_cast<int>(l + 1), matrices[l][i][j]);
      }
      e[i][j] = LinearForm(std::move(terms));
    }
  }
  SymbolicMatrix x(std::move(e));
  x.nvars_ = std::max<int>(x.nvars_, static_cast<int>(matrices.size()));
  x.by_var_.resize(x.nvars_ + 1);
  return x;
}

SymbolicMatrix SymbolicMatrix::gram(const RationalMatrix& b) {
  const std::size_t rows = b.size();
  if (rows == 0) fail(ErrorKind::BadDims, "empty representation matrix");
  const std::size_t cols = b[0].size();
  for (const auto& row : b) {
    if (row.size() != cols) fail(ErrorKind::BadDims, "ragged representation matrix");
  }
  std::vector<std::vector<LinearForm>> e(rows, std::vector<LinearForm>(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < rows; ++j) {
      std::vector<std::pair<int, Rational>> terms;
      for (std::size_t l = 0; l < cols; ++l) {
        Rational w = b[i][l] * b[j][l];
        if (w != 0) terms.emplace_back(static_cast<int>(l + 1), w);
      }
      e[i][j] = LinearForm(std::move(terms));
    }
  }
  SymbolicMatrix x(std::move(e));
  x.nvars_ = std::max<int>(x.nvars_, static_cast<int>(cols));
  x.by_var_.resize(x.nvars_ + 1);
  return x;
}

const std::vector<EntryCoefficient>& SymbolicMatrix::coefficients(int var) const {
  if (var < 1 || var >= static_cast<int>(by_var_.size())) return kNoCoefficients;
  return by_var_[var];
}

bool SymbolicMatrix::is_integral() const {
  for (const auto& row : entries_) {
    for (const auto& f : row) {
      if (!f.is_integral()) return false;
    }
  }
  return true;
}

PolyMatrix SymbolicMatrix::to_poly_matrix() const {
  PolyMatrix m(dim(), std::vector<SparsePoly>(dim()));
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      m[i][j] = entries_[i][j].to_poly();
      m[i][j].set_nvars(nvars_);
    }
  }
  return m;
}

SparsePoly SymbolicMatrix::determinant_poly() const { return symbolic_determinant(to_poly_matrix()); }

MinorVector::MinorVector(int d) : d_(d) {
  if (d < 0) fail(ErrorKind::BadDims, "negative dimension");
  blocks_.resize(d + 1);
  for (int k = 0; k <= d; ++k) {
    const std::size_t b = binomial(d, k);
    blocks_[k].assign(b * b, Rational(0));
  }
}

MinorVector MinorVector::determinant(int d) {
  MinorVector v(d);
  v.blocks_[d][0] = 1;
  return v;
}

std::size_t MinorVector::length() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.size();
  return n;
}

namespace {

void check_sequence(const IndexSequence& s, int d) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1 || s[i] > d || (i > 0 && s[i] <= s[i - 1])) {
      fail(ErrorKind::IndexOutOfRange, "index sequence must be strictly increasing within 1.." + std::to_string(d));
    }
  }
}

}  // namespace

Rational& MinorVector::at(const IndexSequence& rows, const IndexSequence& cols) {
  return const_cast<Rational&>(std::as_const(*this).at(rows, cols));
}

const Rational& MinorVector::at(const IndexSequence& rows, const IndexSequence& cols) const {
  if (rows.size() != cols.size() || static_cast<int>(rows.size()) > d_) {
    fail(ErrorKind::IndexOutOfRange, "row and column sets must have equal size at most d");
  }
  check_sequence(rows, d_);
  check_sequence(cols, d_);
  const int k = static_cast<int>(rows.size());
  return blocks_[k][colex_rank(rows) * binomial(d_, k) + colex_rank(cols)];
}

bool MinorVector::is_zero() const {
  for (const auto& b : blocks_) {
    for (const auto& c : b) {
      if (c != 0) return false;
    }
  }
  return true;
}

SparsePoly MinorVector::expand(const SymbolicMatrix& x) const {
  if (x.dim() != d_) fail(ErrorKind::BadDims, "matrix dimension differs from vector dimension");
  PolyMatrix m = x.to_poly_matrix();
  SparsePoly total(x.nvars());
  for (int k = 0; k <= d_; ++k) {
    const auto seqs = increasing_sequences(d_, k);
    const std::size_t nk = seqs.size();
    for (std::size_t ra = 0; ra < nk; ++ra) {
      for (std::size_t rb = 0; rb < nk; ++rb) {
        const Rational& c = blocks_[k][ra * nk + rb];
        if (c == 0) continue;
        PolyMatrix sub(k, std::vector<SparsePoly>(k));
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < k; ++j) sub[i][j] = m[seqs[ra][i] - 1][seqs[rb][j] - 1];
        }
        SparsePoly minor = k == 0 ? SparsePoly::constant(1, x.nvars()) : symbolic_determinant(sub);
        total += minor * c;
      }
    }
  }
  return total;
}

MinorVector minor_derivative(const SymbolicMatrix& x, const MinorVector& p, int var) {
  if (x.dim() != p.dim()) fail(ErrorKind::BadDims, "matrix dimension differs from vector dimension");
  if (var < 1 || var > x.nvars()) {
    fail(ErrorKind::IndexOutOfRange, "variable " + std::to_string(var) + " outside 1.." + std::to_string(x.nvars()));
  }
  RationalField ring;
  MinorKernel<RationalField> kernel(x, ring);
  auto table = kernel.coeffs(LinearForm::variable(var));
  MinorVector out(x.dim());
  for (int k = 1; k <= x.dim(); ++k) kernel.apply(p.block(k), k, table, out.block(k - 1));
  return out;
}

ExactScalar gendiff_evaluate(const SymbolicMatrix& x, const SkewCircuit& c, const Arithmetic& arithmetic,
                             EvaluationStats* stats) {
  const int d = x.dim();
  if (d < 1) fail(ErrorKind::BadDims, "matrix dimension must be positive");
  if (d > kMinorEngineMaxDim) {
    fail(ErrorKind::SizeLimit,
         "minor engine supports d <= " + std::to_string(kMinorEngineMaxDim) + ", got " + std::to_string(d));
  }
  if (!arithmetic.is_exact()) {
    PrimeField ring(arithmetic.prime);
    MinorKernel<PrimeField> kernel(x, ring);
    return detail::run_engine(c, d, ring, kernel, stats);
  }
  if (x.is_integral() && c.is_integral()) {
    IntegerRing ring;
    MinorKernel<IntegerRing> kernel(x, ring);
    return detail::run_engine(c, d, ring, kernel, stats);
  }
  RationalField ring;
  MinorKernel<RationalField> kernel(x, ring);
  return detail::run_engine(c, d, ring, kernel, stats);
}

}  // namespace apolar
