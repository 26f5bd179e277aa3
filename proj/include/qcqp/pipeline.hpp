#pragma once

#include "qcqp/improve.hpp"
#include "qcqp/suggest.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qcqp {

struct PipelineConfig {
  SuggestMethod suggest = SuggestMethod::Random;
  double random_scale = 1.0;
  Vec lambda;  // spectral weights; empty means all ones
  CuttingPlaneOptions cutting_plane;
  std::vector<ImproveKind> improve;
  ImproveOptions improve_options;
  int candidates = 1;
  std::uint64_t seed = 0;
  int parallel = 1;
  bool timing = false;  // adds wall and CPU seconds to the report
};

struct CandidateReport {
  int index = 0;
  Vec start;
  Assessment start_assessment;
  Vec x;
  Assessment assessment;
  int iterations = 0;
  bool converged = false;
  std::string method;
  std::string error;  // nonempty when the Improve sequence threw
};

struct RunReport {
  Vec x;
  Assessment assessment;
  int best_index = -1;
  bool maximize = false;
  std::optional<SuggestBound> bound;  // internal minimization sense
  std::vector<CandidateReport> candidates;
  double wall_seconds = 0.0;
  double cpu_seconds = 0.0;
};

/// Raised when every candidate failed.
struct PipelineFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Suggest, then run the Improve sequence on each candidate (parallel over candidates),
/// and keep the lexicographically best result, lowest index first on ties.
RunReport run_pipeline(const Problem& p, const PipelineConfig& cfg);

/// Report as JSON text; objectives and bounds in the sense the problem was posed.
std::string report_json(const RunReport& r, const PipelineConfig& cfg);

/// Config to and from JSON text; unknown keys are rejected.
std::string config_json(const PipelineConfig& cfg);
PipelineConfig parse_config(const std::string& text);

}  // namespace qcqp
