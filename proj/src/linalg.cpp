#include "apolar/linalg.hpp"

namespace apolar {

std::vector<Rational> PolynomialSpan::reduce(SparsePoly& p, bool full) const {
  std::vector<Rational> row_combo(rows_.size(), Rational(0));
  std::optional<Monomial> bound;
  while (true) {
    const auto& terms = p.terms();
    auto it = bound ? terms.lower_bound(*bound) : terms.end();
    if (it == terms.begin()) break;
    --it;
    const Monomial m = it->first;
    auto pivot = pivot_row_.find(m);
    if (pivot != pivot_row_.end()) {
      const Row& row = rows_[pivot->second];
      Rational c = it->second / row.poly.terms().rbegin()->second;
      p -= row.poly * c;
      row_combo[pivot->second] += c;
    } else if (!full) {
      break;
    }
    bound = m;
  }
  return row_combo;
}

bool PolynomialSpan::insert(const SparsePoly& p) {
  SparsePoly q = p;
  std::vector<Rational> row_combo = reduce(q, false);
  if (q.is_zero()) return false;
  const std::size_t generator = rows_.size();
  Row row{q, std::vector<Rational>(generator + 1, Rational(0))};
  row.combo[generator] = 1;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (row_combo[r] == 0) continue;
    const auto& rc = rows_[r].combo;
    for (std::size_t g = 0; g < rc.size(); ++g) row.combo[g] -= row_combo[r] * rc[g];
  }
  pivot_row_.emplace(q.leading_monomial(), rows_.size());
  rows_.push_back(std::move(row));
  return true;
}

bool PolynomialSpan::contains(const SparsePoly& p) const {
  SparsePoly q = p;
  reduce(q, true);
  return q.is_zero();
}

std::vector<Rational> PolynomialSpan::project(const SparsePoly& p, SparsePoly* remainder) const {
  SparsePoly q = p;
  std::vector<Rational> row_combo = reduce(q, true);
  std::vector<Rational> coords(rows_.size(), Rational(0));
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (row_combo[r] == 0) continue;
    const auto& rc = rows_[r].combo;
    for (std::size_t g = 0; g < rc.size(); ++g) coords[g] += row_combo[r] * rc[g];
  }
  if (remainder) *remainder = std::move(q);
  return coords;
}

std::vector<Rational> PolynomialSpan::coordinates(const SparsePoly& p) const {
  SparsePoly remainder;
  auto coords = project(p, &remainder);
  if (!remainder.is_zero()) fail(ErrorKind::SolveFailure, "polynomial lies outside the span");
  return coords;
}

std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[c]);
    std::swap(b[pivot], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational factor = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= factor * a[c][k];
      b[r] -= factor * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

std::vector<std::vector<Rational>> row_space_basis(std::vector<std::vector<Rational>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    const Rational lead = m[rank][c];
    for (std::size_t k = c; k < cols; ++k) m[rank][k] /= lead;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Rational factor = m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  m.resize(rank);
  return m;
}

}  // namespace apolar
