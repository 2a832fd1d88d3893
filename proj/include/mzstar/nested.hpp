#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mzstar/chain.hpp"

namespace mzstar {

/// sum over top >= v_0 >= v_1 >= ... >= v_L >= 1 of
///   outer(v_0) * prod_j weight(j, v_j) * prod_j link_j(v_j, v_{j+1})
/// in O(top * L) ring operations, summing in increasing v.
///
/// `lift(i)` builds the ring element i; T needs +, -, * and +=.
template <class T, class Lift, class Weight, class Outer>
T nested_chain_sum(std::uint64_t top, std::size_t levels, std::span<const Link> links, Lift&& lift,
                   Weight&& weight, Outer&& outer) {
  T total = lift(0);
  if (levels == 0) return total;
  std::vector<T> prefix(levels, lift(0));
  const T two = lift(2);
  for (std::uint64_t x = 1; x <= top; ++x) {
    T below = lift(1);
    for (std::size_t j = levels; j-- > 0;) {
      T term = weight(j, x) * below;
      prefix[j] += term;
      if (j > 0) {
        below = links[j - 1] == Link::COND2 ? T(two * prefix[j] - term) : prefix[j];
      } else {
        total += outer(x) * term;
      }
    }
  }
  return total;
}

}  // namespace mzstar
