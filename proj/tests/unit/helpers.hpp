#pragma once

#include "tpds/error.hpp"
#include "tpds/expr.hpp"
#include "tpds/system.hpp"

#include <doctest.h>

#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace testutil {

// Error code raised by f; fails the test when nothing is thrown.
inline std::optional<tpds::ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const tpds::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Segment from row-major entry strings over t.
inline tpds::Segment segment(double t0, double t1, std::initializer_list<const char*> entries) {
  tpds::Segment s{t0, t1, {}};
  for (const char* e : entries) s.entries.push_back(tpds::parse_expr(e, tpds::Scope::time_only()));
  return s;
}

}  // namespace testutil
