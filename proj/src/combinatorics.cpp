#include "apolar/combinatorics.hpp"

#include <array>

#include "apolar/error.hpp"

namespace apolar {

namespace {

constexpr int kMaxBinomial = 64;

const std::array<std::array<std::uint64_t, kMaxBinomial + 1>, kMaxBinomial + 1>& binomial_table() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kMaxBinomial + 1>, kMaxBinomial + 1> t{};
    for (int n = 0; n <= kMaxBinomial; ++n) {
      t[n][0] = 1;
      for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
    }
    return t;
  }();
  return table;
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n > kMaxBinomial) fail(ErrorKind::SizeLimit, "binomial table limited to n <= 64");
  return binomial_table()[n][k];
}

std::uint64_t colex_rank(std::span<const int> seq) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) r += binomial(seq[i] - 1, static_cast<int>(i) + 1);
  return r;
}

IndexSequence colex_unrank(std::uint64_t rank, int k) {
  IndexSequence seq(k);
  for (int i = k; i >= 1; --i) {
    int c = i - 1;
    while (binomial(c + 1, i) <= rank) ++c;
    seq[i - 1] = c + 1;
    rank -= binomial(c, i);
  }
  return seq;
}

std::vector<IndexSequence> increasing_sequences(int m, int k) {
  std::vector<IndexSequence> out;
  std::uint64_t count = binomial(m, k);
  out.reserve(count);
  for (std::uint64_t r = 0; r < count; ++r) out.push_back(colex_unrank(r, k));
  return out;
}

IndexSequence omit(std::span<const int> seq, std::size_t pos) {
  IndexSequence out;
  out.reserve(seq.size() - 1);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i != pos) out.push_back(seq[i]);
  }
  return out;
}

int merge_sign(std::span<const int> a, std::span<const int> b) {
  // Count pairs (x in a, y in b) with x > y; both inputs sorted.
  std::size_t inversions = 0;
  std::size_t j = 0;
  for (int x : a) {
    while (j < b.size() && b[j] < x) ++j;
    inversions += j;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace apolar
