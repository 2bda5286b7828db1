// support.hpp — tiny helpers shared by the unit-test suites.
#pragma once

#include <algorithm>
#include <vector>

#include "doctest.h"
#include "noisyvoter/errors.hpp"

namespace nvtest {

// Runs f expecting an nv::Error and returns its kind; fails the test if
// nothing (or something else) was thrown.
template <class F>
nv::Err thrown_kind(F&& f) {
  try {
    f();
  } catch (const nv::Error& e) {
    return e.kind;
  } catch (...) {
  }
  FAIL("expected an nv::Error");
  return nv::Err::BadParams;
}

inline bool contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace nvtest
