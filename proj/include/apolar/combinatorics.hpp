#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace apolar {

/// Strictly increasing sequence of 1-based indices, e.g. a row set of a minor.
using IndexSequence = std::vector<int>;

/// binom(n, k) for 0 <= n <= 64; zero when k is out of range.
std::uint64_t binomial(int n, int k);

/// Colex rank of a strictly increasing 1-based sequence: sum_i binom(s_i - 1, i).
/// The ranks of I(m, k) are exactly 0 .. binom(m, k) - 1 for every m.
std::uint64_t colex_rank(std::span<const int> seq);
IndexSequence colex_unrank(std::uint64_t rank, int k);

/// All of I(m, k) in colex order.
std::vector<IndexSequence> increasing_sequences(int m, int k);

/// Sequence with the element at 0-based position `pos` removed.
IndexSequence omit(std::span<const int> seq, std::size_t pos);

/// Sign of the permutation sorting the concatenation a ++ b, with both a and b
/// sorted. Equal elements keep their relative order.
int merge_sign(std::span<const int> a, std::span<const int> b);

}  // namespace apolar
