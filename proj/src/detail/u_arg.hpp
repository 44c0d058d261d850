#pragma once

// Shared by the composition routines: an argument x of u carried together
// with its radicand 1 - 4x.

#include "cantor/geometry.hpp"
#include "cantor/real.hpp"

namespace cantor::detail {

template <Real T>
struct UArg {
  T x;
  T radicand;
};

template <Real T>
T u_of(const UArg<T>& a) {
  return T(2.0) * a.x / (T(1.0) + sqrtval(a.radicand));
}

/// Argument for the next outer level: x' = gamma * g, with g = w (L) or
/// 1 - w (R). For R the radicand (1 - 4 gamma) + 4 gamma w avoids the
/// cancellation in 1 - 4 gamma (1 - w).
template <Real T>
UArg<T> next_arg(const T& gamma, const T& w, Letter letter) {
  const T gw = gamma * w;
  if (letter == Letter::L) return {gw, T(1.0) - T(4.0) * gw};
  return {gamma - gw, (T(1.0) - T(4.0) * gamma) + T(4.0) * gw};
}

template <Real T>
UArg<T> inner_arg(const T& inner) {
  return {inner, T(1.0) - T(4.0) * inner};
}

}  // namespace cantor::detail
