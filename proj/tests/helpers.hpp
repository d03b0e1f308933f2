#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "apolar/polynomial.hpp"

namespace testing {

using Powers = std::vector<std::pair<int, int>>;

// poly({{{{1, 2}, {2, 1}}, 3}}) is 3 x1^2 x2.
inline apolar::SparsePoly poly(std::initializer_list<std::pair<Powers, apolar::Rational>> terms) {
  apolar::SparsePoly p;
  for (const auto& [powers, c] : terms) p.add_term(apolar::Monomial(powers), c);
  return p;
}

inline apolar::SparsePoly x(int v) { return apolar::SparsePoly::variable(v); }

inline apolar::RationalMatrix matrix(std::initializer_list<std::initializer_list<int>> rows) {
  apolar::RationalMatrix m;
  for (const auto& r : rows) {
    m.emplace_back();
    for (int v : r) m.back().emplace_back(v);
  }
  return m;
}

}  // namespace testing
