#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "apolar/error.hpp"

namespace apolar {

/// (sigma * tau)(S) = sum over U subset of S of sigma(U) tau(S \ U), with
/// subsets encoded as bitmasks over n = log2(size) elements.
template <class T>
std::vector<T> subset_convolution_naive(const std::vector<T>& sigma, const std::vector<T>& tau) {
  const std::size_t size = sigma.size();
  if (tau.size() != size) fail(ErrorKind::LengthMismatch, "inputs differ in length");
  if (size == 0 || !std::has_single_bit(size)) fail(ErrorKind::LengthMismatch, "length must be a power of two");
  std::vector<T> out(size, T(0));
  for (std::size_t s = 0; s < size; ++s) {
    // Enumerate every submask u of s, including 0.
    for (std::size_t u = s;; u = (u - 1) & s) {
      out[s] += sigma[u] * tau[s ^ u];
      if (u == 0) break;
    }
  }
  return out;
}

struct ConvolutionStats {
  /// Products of two transformed values (the non-scalar multiplications).
  std::uint64_t multiplications = 0;
};

/// Ranked zeta transform, rank-indexed pointwise products, ranked Moebius
/// inversion. Only additions and subtractions appear outside the counted
/// products.
template <class T>
std::vector<T> subset_convolution_fast(const std::vector<T>& sigma, const std::vector<T>& tau,
                                       ConvolutionStats* stats = nullptr) {
  const std::size_t size = sigma.size();
  if (tau.size() != size) fail(ErrorKind::LengthMismatch, "inputs differ in length");
  if (size == 0 || !std::has_single_bit(size)) fail(ErrorKind::LengthMismatch, "length must be a power of two");
  const int n = std::countr_zero(size);

  // ranked[k][S]: sum over U subset of S with |U| = k.
  auto ranked_zeta = [&](const std::vector<T>& f) {
    std::vector<std::vector<T>> r(n + 1, std::vector<T>(size, T(0)));
    for (std::size_t s = 0; s < size; ++s) r[std::popcount(s)][s] = f[s];
    for (int k = 0; k <= n; ++k) {
      for (int bit = 0; bit < n; ++bit) {
        const std::size_t b = std::size_t{1} << bit;
        for (std::size_t s = 0; s < size; ++s) {
          if (s & b) r[k][s] += r[k][s ^ b];
        }
      }
    }
    return r;
  };
  const auto zs = ranked_zeta(sigma);
  const auto zt = ranked_zeta(tau);

  std::uint64_t mults = 0;
  std::vector<std::vector<T>> h(n + 1, std::vector<T>(size, T(0)));
  for (int k = 0; k <= n; ++k) {
    for (std::size_t s = 0; s < size; ++s) {
      // The rank-i transform vanishes at S when i > |S|.
      const int pc = std::popcount(s);
      for (int i = std::max(0, k - pc); i <= std::min(k, pc); ++i) {
        h[k][s] += zs[i][s] * zt[k - i][s];
        ++mults;
      }
    }
  }
  // Moebius inversion of each rank, then read rank |S| at S.
  for (int k = 0; k <= n; ++k) {
    for (int bit = 0; bit < n; ++bit) {
      const std::size_t b = std::size_t{1} << bit;
      for (std::size_t s = 0; s < size; ++s) {
        if (s & b) h[k][s] -= h[k][s ^ b];
      }
    }
  }
  std::vector<T> out(size);
  for (std::size_t s = 0; s < size; ++s) out[s] = h[std::popcount(s)][s];
  if (stats) stats->multiplications = mults;
  return out;
}

}  // namespace apolar
