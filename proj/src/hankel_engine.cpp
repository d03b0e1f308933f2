#include "apolar/hankel_engine.hpp"

#include <limits>
#include <memory>

#include "engine_driver.hpp"

namespace apolar {

namespace {

constexpr std::size_t kInvalid = std::numeric_limits<std::size_t>::max();

// Index tables for the straightening pass that turns omitted-row minors of
// size K into maximal minors of size K (column bound M = 2d - K).
//
// Positions are decided left to right; after deciding position j the cell
// holds sequences that are strictly increasing except possibly for an
// equality at (j, j+1). Layout: [0, S) strict sequences by colex rank,
// [S, S + E) sequences with that equality, ranked after dropping the
// duplicate at position j+1.
struct StraightenPlan {
  int K = 0;
  int M = 0;
  std::size_t S = 0;
  std::size_t E = 0;
  // shift[j - 1][src]: cell index after adding 1 at position j, given a
  // source cell laid out for step j - 1.
  std::vector<std::vector<std::size_t>> shift;

  StraightenPlan(int K_, int M_) : K(K_), M(M_) {
    S = binomial(M, K);
    E = K >= 1 ? binomial(M, K - 1) : 0;
    shift.resize(K);
    for (int j = 1; j <= K; ++j) {
      auto& map = shift[j - 1];
      map.assign(S + E, kInvalid);
      auto place = [&](IndexSequence s) -> std::size_t {
        if (s[j - 1] > M) return kInvalid;
        if (j < K && s[j - 1] == s[j]) return S + colex_rank(omit(s, j));
        return colex_rank(s);
      };
      for (std::size_t idx = 0; idx < S; ++idx) {
        IndexSequence s = colex_unrank(idx, K);
        s[j - 1] += 1;
        map[idx] = place(std::move(s));
      }
      if (j >= 2) {
        for (std::size_t e = 0; e < E; ++e) {
          IndexSequence t = colex_unrank(e, K - 1);
          if (t.size() < static_cast<std::size_t>(j - 1)) continue;
          IndexSequence s(t.begin(), t.begin() + (j - 1));
          s.push_back(t[j - 2]);
          s.insert(s.end(), t.begin() + (j - 1), t.end());
          s[j - 1] += 1;
          map[S + e] = place(std::move(s));
        }
      }
    }
  }
};

// Per-size tables for block k: the sequences of I(2d - k, k) and the rank of
// each with one position removed.
struct BlockIndex {
  std::vector<IndexSequence> seqs;
  std::vector<std::size_t> drop;
};

BlockIndex make_block_index(int d, int k) {
  BlockIndex b;
  b.seqs = increasing_sequences(2 * d - k, k);
  b.drop.resize(b.seqs.size() * k);
  for (std::size_t r = 0; r < b.seqs.size(); ++r) {
    for (int i = 0; i < k; ++i) b.drop[r * k + i] = colex_rank(omit(b.seqs[r], i));
  }
  return b;
}

template <class Ring>
class HankelKernel {
 public:
  using Value = typename Ring::value_type;
  using Block = std::vector<Value>;

  struct Table {
    std::vector<Value> a;  // a[m], m = 1..2d-1
    std::vector<char> nz;
  };

  HankelKernel(const HankelArrangement* h, int d, const Ring& ring)
      : h_(h), ring_(ring), d_(d), index_(d + 1), plans_(d + 1), scratch_(d + 1) {}

  std::size_t block_size(int k) const { return binomial(2 * d_ - k, k); }

  Table coeffs(const LinearForm& form) const {
    std::vector<Rational> acc(2 * d_, Rational(0));
    for (const auto& [v, c] : form.terms()) {
      for (const auto& [m, a] : h_->coefficients(v)) acc[m] += c * a;
    }
    Table t{std::vector<Value>(acc.size(), ring_.zero()), std::vector<char>(acc.size(), 0)};
    for (std::size_t m = 1; m < acc.size(); ++m) {
      if (acc[m] == 0) continue;
      t.a[m] = ring_.from(acc[m]);
      t.nz[m] = !Ring::is_zero(t.a[m]);
    }
    return t;
  }

  // out (block k-1) += derivative of in (block k).
  void apply(const Block& in, int k, const Table& t, Block& out) {
    if (k == 0) return;
    const int K = k - 1;
    const BlockIndex& bi = block_index(k);
    auto& cells = cells_for(K);
    for (int r = 0; r <= K; ++r) {
      for (auto& v : cells[r]) Ring::set_zero(v);
    }
    // Cofactor step: [beta] -> sum_{i,j} (-1)^{i+j} a_{i+beta_j-1} [rows without i | beta without beta_j].
    // The omitted-row minor with row i missing needs r = k - i shifted positions.
    const int limit = 2 * d_;
    for (std::size_t rb = 0; rb < bi.seqs.size(); ++rb) {
      const Value& c = in[rb];
      if (Ring::is_zero(c)) continue;
      const IndexSequence& beta = bi.seqs[rb];
      for (int j = 1; j <= k; ++j) {
        const std::size_t gamma = bi.drop[rb * k + (j - 1)];
        for (int i = 1; i <= k; ++i) {
          const int m = i + beta[j - 1] - 1;
          if (m + 1 > limit) break;
          if (!t.nz[m]) continue;
          Value& slot = cells[k - i][gamma];
          if ((i + j) & 1) {
            ring_.submul(slot, t.a[m], c);
          } else {
            ring_.addmul(slot, t.a[m], c);
          }
        }
      }
    }
    straighten(K, cells);
    const std::size_t S = binomial(2 * d_ - K, K);
    for (std::size_t idx = 0; idx < S; ++idx) {
      if (!Ring::is_zero(cells[0][idx])) ring_.add(out[idx], cells[0][idx]);
    }
  }

  // Distributes cells[r] (omitted-row minors needing r more shifts) over
  // maximal minors, leaving the result in the strict part of cells[0].
  void straighten(int K, std::vector<Block>& cells) {
    if (K == 0) return;
    const StraightenPlan& plan = plan_for(K);
    for (int j = 1; j <= K; ++j) {
      const auto& map = plan.shift[j - 1];
      for (int r = 0; r + j <= K; ++r) {
        Block& dst = cells[r];
        // Equalities at (j-1, j) can no longer be repaired.
        for (std::size_t e = plan.S; e < plan.S + plan.E; ++e) Ring::set_zero(dst[e]);
        const Block& src = cells[r + 1];
        for (std::size_t idx = 0; idx < src.size(); ++idx) {
          if (Ring::is_zero(src[idx])) continue;
          const std::size_t target = map[idx];
          if (target == kInvalid) fail(ErrorKind::IndexOutOfRange, "straightening left the column range");
          ring_.add(dst[target], src[idx]);
        }
      }
    }
  }

  std::vector<Block>& cells_for(int K) {
    auto& cells = scratch_[K];
    if (cells.empty()) {
      const StraightenPlan& plan = plan_for(K);
      cells.assign(K + 1, Block(plan.S + plan.E, ring_.zero()));
    }
    return cells;
  }

 private:
  const BlockIndex& block_index(int k) {
    if (!index_[k]) index_[k] = std::make_unique<BlockIndex>(make_block_index(d_, k));
    return *index_[k];
  }
  const StraightenPlan& plan_for(int K) {
    if (!plans_[K]) plans_[K] = std::make_unique<StraightenPlan>(K, 2 * d_ - K);
    return *plans_[K];
  }

  const HankelArrangement* h_;
  const Ring& ring_;
  int d_;
  std::vector<std::unique_ptr<BlockIndex>> index_;
  std::vector<std::unique_ptr<StraightenPlan>> plans_;
  std::vector<std::vector<Block>> scratch_;
};

const std::vector<std::pair<int, Rational>> kNoTerms;

void check_columns(const IndexSequence& s, int bound) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1 || s[i] > bound || (i > 0 && s[i] <= s[i - 1])) {
      fail(ErrorKind::IndexOutOfRange,
           "column sequence must be strictly increasing within 1.." + std::to_string(bound));
    }
  }
}

}  // namespace

HankelArrangement::HankelArrangement(int d, std::vector<LinearForm> forms, int nvars)
    : d_(d), nvars_(nvars), forms_(std::move(forms)) {
  if (d < 1) fail(ErrorKind::BadDims, "arrangement needs d >= 1");
  if (static_cast<int>(forms_.size()) != 2 * d - 1) {
    fail(ErrorKind::BadDims, "arrangement of size " + std::to_string(d) + " needs " + std::to_string(2 * d - 1) +
                                 " forms, got " + std::to_string(forms_.size()));
  }
  for (const auto& f : forms_) nvars_ = std::max(nvars_, f.max_variable());
  by_var_.assign(nvars_ + 1, {});
  for (int m = 1; m <= 2 * d - 1; ++m) {
    for (const auto& [v, c] : forms_[m - 1].terms()) by_var_[v].emplace_back(m, c);
  }
}

HankelArrangement HankelArrangement::generic(int d) {
  std::vector<LinearForm> forms;
  for (int m = 1; m <= 2 * d - 1; ++m) forms.push_back(LinearForm::variable(m));
  return HankelArrangement(d, std::move(forms));
}

LinearForm HankelArrangement::entry(int i, int j) const {
  if (i < 1 || i > d_ || j < 1 || j > 2 * d_ - 1) fail(ErrorKind::IndexOutOfRange, "arrangement entry out of range");
  if (i + j > 2 * d_) return {};
  return forms_[i + j - 2];
}

const std::vector<std::pair<int, Rational>>& HankelArrangement::coefficients(int var) const {
  if (var < 1 || var >= static_cast<int>(by_var_.size())) return kNoTerms;
  return by_var_[var];
}

bool HankelArrangement::is_integral() const {
  for (const auto& f : forms_) {
    if (!f.is_integral()) return false;
  }
  return true;
}

SymbolicMatrix HankelArrangement::materialize() const {
  std::vector<std::vector<LinearForm>> e(d_, std::vector<LinearForm>(d_));
  for (int i = 1; i <= d_; ++i) {
    for (int j = 1; j <= d_; ++j) e[i - 1][j - 1] = entry(i, j);
  }
  return SymbolicMatrix(std::move(e));
}

SparsePoly HankelArrangement::minor_poly(const IndexSequence& rows, const IndexSequence& cols) const {
  if (rows.size() != cols.size()) fail(ErrorKind::IndexOutOfRange, "minor needs as many rows as columns");
  check_columns(rows, d_);
  check_columns(cols, 2 * d_ - 1);
  const std::size_t k = rows.size();
  if (k == 0) return SparsePoly::constant(1, nvars_);
  PolyMatrix m(k, std::vector<SparsePoly>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      m[i][j] = entry(rows[i], cols[j]).to_poly();
      m[i][j].set_nvars(nvars_);
    }
  }
  return symbolic_determinant(m);
}

std::size_t hankel_basis_size(int d) {
  std::size_t total = 0;
  for (int k = 0; k <= d; ++k) total += binomial(2 * d - k, k);
  return total;
}

MaxMinorVector::MaxMinorVector(int d) : d_(d) {
  if (d < 0) fail(ErrorKind::BadDims, "negative dimension");
  blocks_.resize(d + 1);
  for (int k = 0; k <= d; ++k) blocks_[k].assign(binomial(2 * d - k, k), Rational(0));
}

MaxMinorVector MaxMinorVector::determinant(int d) {
  MaxMinorVector v(d);
  v.blocks_[d][0] = 1;
  return v;
}

std::size_t MaxMinorVector::length() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.size();
  return n;
}

Rational& MaxMinorVector::at(const IndexSequence& beta) {
  return const_cast<Rational&>(std::as_const(*this).at(beta));
}

const Rational& MaxMinorVector::at(const IndexSequence& beta) const {
  const int k = static_cast<int>(beta.size());
  if (k > d_) fail(ErrorKind::IndexOutOfRange, "maximal minor larger than d");
  check_columns(beta, 2 * d_ - k);
  return blocks_[k][colex_rank(beta)];
}

bool MaxMinorVector::is_zero() const {
  for (const auto& b : blocks_) {
    for (const auto& c : b) {
      if (c != 0) return false;
    }
  }
  return true;
}

SparsePoly MaxMinorVector::expand(const HankelArrangement& h) const {
  if (h.dim() != d_) fail(ErrorKind::BadDims, "arrangement size differs from vector size");
  SparsePoly total(h.nvars());
  for (int k = 0; k <= d_; ++k) {
    IndexSequence rows(k);
    for (int i = 0; i < k; ++i) rows[i] = i + 1;
    for (std::size_t r = 0; r < blocks_[k].size(); ++r) {
      if (blocks_[k][r] == 0) continue;
      total += h.minor_poly(rows, colex_unrank(r, k)) * blocks_[k][r];
    }
  }
  return total;
}

MaxMinorVector straighten_row_omitted(int d, int i, int k, const IndexSequence& beta) {
  if (d < 1 || k < 1 || k > d || i < 1 || i > k) {
    fail(ErrorKind::IndexOutOfRange, "need 1 <= i <= k <= d");
  }
  if (static_cast<int>(beta.size()) != k - 1) fail(ErrorKind::IndexOutOfRange, "beta must have k - 1 entries");
  check_columns(beta, 2 * d - k);
  RationalField ring;
  HankelKernel<RationalField> kernel(nullptr, d, ring);
  const int K = k - 1;
  auto& cells = kernel.cells_for(K);
  cells[k - i][colex_rank(beta)] = 1;
  kernel.straighten(K, cells);
  MaxMinorVector out(d);
  auto& block = out.block(K);
  for (std::size_t idx = 0; idx < block.size(); ++idx) block[idx] = cells[0][idx];
  return out;
}

MaxMinorVector hankel_derivative(const HankelArrangement& h, const MaxMinorVector& p, int var) {
  if (h.dim() != p.dim()) fail(ErrorKind::BadDims, "arrangement size differs from vector size");
  if (var < 1 || var > h.nvars()) {
    fail(ErrorKind::IndexOutOfRange, "variable " + std::to_string(var) + " outside 1.." + std::to_string(h.nvars()));
  }
  RationalField ring;
  HankelKernel<RationalField> kernel(&h, h.dim(), ring);
  auto table = kernel.coeffs(LinearForm::variable(var));
  MaxMinorVector out(h.dim());
  for (int k = 1; k <= h.dim(); ++k) kernel.apply(p.block(k), k, table, out.block(k - 1));
  return out;
}

ExactScalar hankeldiff_evaluate(const HankelArrangement& h, const SkewCircuit& c, const Arithmetic& arithmetic,
                                EvaluationStats* stats) {
  const int d = h.dim();
  if (d < 1) fail(ErrorKind::BadDims, "arrangement needs d >= 1");
  if (d > kHankelEngineMaxDim) {
    fail(ErrorKind::SizeLimit,
         "hankel engine supports d <= " + std::to_string(kHankelEngineMaxDim) + ", got " + std::to_string(d));
  }
  if (!arithmetic.is_exact()) {
    PrimeField ring(arithmetic.prime);
    HankelKernel<PrimeField> kernel(&h, d, ring);
    return detail::run_engine(c, d, ring, kernel, stats);
  }
  if (h.is_integral() && c.is_integral()) {
    IntegerRing ring;
    HankelKernel<IntegerRing> kernel(&h, d, ring);
    return detail::run_engine(c, d, ring, kernel, stats);
  }
  RationalField ring;
  HankelKernel<RationalField> kernel(&h, d, ring);
  return detail::run_engine(c, d, ring, kernel, stats);
}

HankelArrangement vandermonde_hankel(int n, int d) {
  if (d < 1 || n < d) fail(ErrorKind::BadDims, "vandermonde arrangement needs n >= d >= 1");
  std::vector<LinearForm> forms;
  for (int m = 1; m <= 2 * d - 1; ++m) {
    std::vector<std::pair<int, Rational>> terms;
    for (int k = 1; k <= n; ++k) {
      Integer w;
      mpz_ui_pow_ui(w.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(m + 1));
      terms.emplace_back(k, Rational(w));
    }
    forms.emplace_back(std::move(terms));
  }
  return HankelArrangement(d, std::move(forms), n);
}

}  // namespace apolar
