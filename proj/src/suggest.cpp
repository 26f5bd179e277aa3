#include "qcqp/suggest.hpp"

#include "qcqp/rng.hpp"

namespace qcqp {

const char* to_string(SuggestMethod m) {
  switch (m) {
    case SuggestMethod::Random: return "random";
    case SuggestMethod::Spectral: return "spectral";
    case SuggestMethod::Sdr: return "sdr";
  }
  return "?";
}

SuggestOutcome suggest_random(const Problem& p, int count, double scale, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("count must be at least 1");
  SuggestOutcome out;
  out.method = SuggestMethod::Random;
  out.candidates.reserve(count);
  for (int k = 0; k < count; ++k) {
    Rng rng(seed + static_cast<std::uint64_t>(k));
    Vec x(p.n);
    for (int i = 0; i < p.n; ++i) x[i] = scale * rng.normal();
    out.candidates.push_back(std::move(x));
  }
  return out;
}

SuggestOutcome suggest_spectral(const Problem& p, const Vec& lambda) {
  SuggestOutcome out;
  out.method = SuggestMethod::Spectral;
  SpectralBound sb = spectral_bound(p, lambda);
  if (sb.status == OneConstraintStatus::DualUnbounded)
    throw DualUnboundedError("spectral relaxation is unbounded below");
  out.candidates.push_back(sb.status == OneConstraintStatus::Optimal ? sb.x : Vec(Vec::Zero(p.n)));
  out.bound = SuggestBound{sb.bound, true, {}};
  out.spectral = std::move(sb);
  return out;
}

SuggestOutcome suggest_sdr(const Problem& p, int count, std::uint64_t seed, const CuttingPlaneOptions& opts) {
  if (count < 1) throw std::invalid_argument("count must be at least 1");
  SuggestOutcome out;
  out.method = SuggestMethod::Sdr;
  CuttingPlaneResult cp = sdr_bound_cutting_plane(p, opts);
  if (cp.infeasible) {
    out.candidates.assign(count, Vec::Zero(p.n));
  } else if (cp.x.size() == p.n && cp.X.rows() == p.n) {
    out.candidates = sample_from_lifted(cp.X, cp.x, count, seed, opts.psd_tol, &out.repair);
  } else {
    throw NumericalFailure(std::string("cutting-plane LP failed: ") + to_string(cp.lp_status));
  }
  out.bound = SuggestBound{cp.bound, cp.valid, cp.trace};
  out.sdr = std::move(cp);
  return out;
}

}  // namespace qcqp
