#pragma once

#include <functional>
#include <optional>

#include "selectra/complex.hpp"
#include "selectra/errors.hpp"

namespace selectra::testing {

inline Rational q(long p, long d = 1) { return make_rational(p, d); }

inline ComplexPtr segment() { return build_complex({{q(0)}, {q(1)}}, {{0, 1}}); }

inline ComplexPtr triangle() { return build_complex({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}}, {{0, 1, 2}}); }

/// Code of the Error thrown by `fn`, or nullopt when nothing is thrown.
inline std::optional<ErrorCode> error_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace selectra::testing
