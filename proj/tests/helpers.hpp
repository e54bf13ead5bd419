#pragma once

#include <doctest.h>

#include "cellspec/error.hpp"
#include "cellspec/preorder.hpp"

namespace testing {

using namespace cellspec;

// 2 below both 0 and 1.
inline Preorder vee() { return Preorder::from_pairs(3, {{2, 0}, {2, 1}}, Closure::close); }

// flat-n plus a new largest element n.
inline Preorder flat_with_top(std::size_t n) {
  std::vector<IndexPair> pairs;
  for (Index i = 0; i < n; ++i) pairs.emplace_back(i, n);
  return Preorder::from_pairs(n + 1, pairs, Closure::close);
}

// flat-n plus a new least element n.
inline Preorder flat_with_bottom(std::size_t n) {
  std::vector<IndexPair> pairs;
  for (Index i = 0; i < n; ++i) pairs.emplace_back(n, i);
  return Preorder::from_pairs(n + 1, pairs, Closure::close);
}

template <class F>
Errc error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::parse_error;
}

}  // namespace testing
