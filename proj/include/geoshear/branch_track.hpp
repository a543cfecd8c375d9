#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "geoshear/complex_branch.hpp"
#include "geoshear/errors.hpp"

namespace geoshear {

// Analytic continuation of log u(zeta) along a path, seeded at a point
// where the branch is pinned (u(0) = 1 for the transform integrands).
// Steps walk straight chords; a step is accepted only while u stays in
// the half-plane of its previous value, otherwise the chord is bisected.
// State is a single (zeta, u, log) triple, so rewinding for adaptive
// quadrature is a cheap stack of snapshots.
template <class UFn>
class LogTracker {
 public:
  struct State {
    Complex zeta, w, log;
  };

  LogTracker(UFn u, Complex seed_zeta, Complex seed_w, Complex seed_log)
      : u_(std::move(u)), state_{seed_zeta, seed_w, seed_log} {}

  // Longest chord walked in one go; a winding of u across a longer jump
  // could alias past the ratio test below.
  static constexpr double kMaxStep = 0.05;

  Complex log_at(Complex zeta) {
    if (zeta == state_.zeta) return state_.log;
    double dist = std::abs(zeta - state_.zeta);
    int substeps = dist > kMaxStep ? int(std::ceil(dist / kMaxStep)) : 1;
    Complex from = state_.zeta;
    for (int k = 1; k <= substeps; ++k) {
      Complex target = k == substeps
                           ? zeta
                           : from + (zeta - from) * (double(k) / substeps);
      step(target, 0);
    }
    return state_.log;
  }

  std::size_t save() {
    stack_.push_back(state_);
    return stack_.size() - 1;
  }

  void restore(std::size_t token) {
    state_ = stack_[token];
    stack_.resize(token);
  }

  void discard(std::size_t token) { stack_.resize(token); }

  const State& state() const { return state_; }

 private:
  void step(Complex zeta, int depth) {
    if (depth > 48)
      throw NumericError(
          "branch tracking failed: integrand vanishes or is singular on the path");
    Complex w = u_(zeta);
    if (!finite(w) || w == Complex{0, 0})
      throw NumericError(
          "branch tracking failed: integrand vanishes or is singular on the path");
    Complex ratio = w / state_.w;
    // require the argument increment to be well under pi/2
    if (ratio.real() <= 0.0 || std::abs(ratio - Complex{1, 0}) > 0.8) {
      Complex mid = 0.5 * (state_.zeta + zeta);
      if (mid == state_.zeta || mid == zeta)
        throw NumericError("branch tracking failed: step underflow near singularity");
      step(mid, depth + 1);
      step(zeta, depth + 1);
      return;
    }
    state_ = {zeta, w, state_.log + std::log(ratio)};
  }

  UFn u_;
  State state_;
  std::vector<State> stack_;
};

}  // namespace geoshear
