#pragma once

#include <optional>

#include "qhr/error.hpp"

// The kind of qhr::Error thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<qhr::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const qhr::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

#define CHECK_ERROR(expr, kind) CHECK(error_kind([&] { (void)(expr); }) == qhr::ErrorKind::kind)
