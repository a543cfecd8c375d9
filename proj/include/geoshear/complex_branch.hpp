#pragma once

#include <cmath>
#include <complex>

#include "geoshear/errors.hpp"

namespace geoshear {

// Principal logarithm: imaginary part in (-pi, pi].
inline Complex principal_log(Complex w) {
  if (w == Complex(0.0, 0.0)) throw EvalError("log of zero", w);
  return std::log(w);
}

// Principal power w^a = exp(a * Log w).
//
// w = 0 is a branch point: returns 0 when Re(a) > 0 (the limit), otherwise
// it is a genuine domain error.
inline Complex principal_pow(Complex w, Complex a) {
  if (w == Complex(0.0, 0.0)) {
    if (a.real() > 0.0) return {0.0, 0.0};
    throw DomainError("0 raised to power with non-positive real part");
  }
  if (a == Complex(0.0, 0.0)) return {1.0, 0.0};
  if (a == Complex(1.0, 0.0)) return w;
  return std::exp(a * std::log(w));
}

inline Complex principal_sqrt(Complex w) { return std::sqrt(w); }

inline bool finite(Complex w) {
  return std::isfinite(w.real()) && std::isfinite(w.imag());
}

}  // namespace geoshear
