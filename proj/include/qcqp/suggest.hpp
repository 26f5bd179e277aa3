#pragma once

#include "qcqp/relax.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qcqp {

enum class SuggestMethod { Random, Spectral, Sdr };

const char* to_string(SuggestMethod m);

/// Bound attached to a suggestion, always in the internal minimization sense.
struct SuggestBound {
  double value = -std::numeric_limits<double>::infinity();
  bool valid = false;
  std::vector<double> trace;  // cutting-plane bound after each LP solve
};

struct SuggestOutcome {
  std::vector<Vec> candidates;
  SuggestMethod method = SuggestMethod::Random;
  std::optional<SuggestBound> bound;
  std::optional<SpectralBound> spectral;
  std::optional<CuttingPlaneResult> sdr;
  double repair = 0.0;  // covariance eigenvalue clipped before sampling
};

/// Raised when the spectral relaxation has no finite value to take a candidate from.
struct DualUnboundedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// count draws from N(0, scale^2 I); candidate k uses seed + k.
SuggestOutcome suggest_random(const Problem& p, int count, double scale, std::uint64_t seed);

/// Minimizer of the aggregated one-constraint problem. Infeasible aggregates give a
/// zero candidate with bound +inf; an unbounded dual raises DualUnboundedError.
SuggestOutcome suggest_spectral(const Problem& p, const Vec& lambda = Vec());

/// Samples from the cutting-plane certificate; sample k uses seed + k.
SuggestOutcome suggest_sdr(const Problem& p, int count, std::uint64_t seed, const CuttingPlaneOptions& opts = {});

}  // namespace qcqp
