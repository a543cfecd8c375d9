#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "geoshear/errors.hpp"

namespace geoshear {

enum class Verdict { Certified, BoundViolated, Inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::BoundViolated: return "bound-violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct Witness {
  Complex z{};
  double value = 0.0;
};

// Outcome of one criterion run.  sup_value dominates every sampled value
// and argmax is the sampled point attaining it; a grid supremum is a
// lower bound of the true supremum, so "certified" carries slack.
struct CheckReport {
  std::string criterion;
  double sup_value = 0.0;
  Complex argmax{};
  double bound = 0.0;
  std::string condition;  // textual form of the bound / case used
  Verdict verdict = Verdict::Inconclusive;
  std::vector<Witness> witnesses;
  std::vector<std::string> flags;
};

// Criterion parameters with their admissible ranges enforced at
// construction: alpha, beta >= 0; delta in [0,1); gamma >= 1 (order of
// the linearly invariant family); c in (-1/2, 0]; |lambda| = 1.
struct Params {
  double alpha = 0.0;
  double beta = 0.0;
  double theta = 0.0;
  double delta = 0.0;
  double gamma = 2.0;
  double c = 0.0;
  Complex lambda{1.0, 0.0};

  void validate() const {
    if (!(alpha >= 0.0)) throw DomainError("alpha must be >= 0");
    if (!(beta >= 0.0)) throw DomainError("beta must be >= 0");
    if (!(delta >= 0.0 && delta < 1.0)) throw DomainError("delta must be in [0,1)");
    if (!(gamma >= 1.0)) throw DomainError("gamma must be >= 1");
    if (!(c > -0.5 && c <= 0.0)) throw DomainError("c must be in (-1/2, 0]");
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
      throw DomainError("lambda must have unit modulus");
  }
};

}  // namespace geoshear
