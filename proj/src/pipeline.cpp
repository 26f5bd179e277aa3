#include "qcqp/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <thread>

namespace qcqp {

using nlohmann::json;

RunReport run_pipeline(const Problem& p, const PipelineConfig& cfg) {
  p.validate();
  if (cfg.candidates < 1) throw std::invalid_argument("candidates must be at least 1");
  const auto wall0 = std::chrono::steady_clock::now();
  const std::clock_t cpu0 = std::clock();

  SuggestOutcome sug;
  switch (cfg.suggest) {
    case SuggestMethod::Random: sug = suggest_random(p, cfg.candidates, cfg.random_scale, cfg.seed); break;
    case SuggestMethod::Spectral: sug = suggest_spectral(p, cfg.lambda); break;
    case SuggestMethod::Sdr: sug = suggest_sdr(p, cfg.candidates, cfg.seed, cfg.cutting_plane); break;
  }

  RunReport rep;
  rep.maximize = p.maximize;
  rep.bound = sug.bound;
  const int K = static_cast<int>(sug.candidates.size());
  rep.candidates.resize(K);

  auto work = [&](int k) {
    CandidateReport& c = rep.candidates[k];
    c.index = k;
    c.start = sug.candidates[k];
    c.start_assessment = assess(p, c.start);
    c.x = c.start;
    c.assessment = c.start_assessment;
    try {
      ImproveReport r = improve_sequence(p, c.start, cfg.improve, cfg.improve_options);
      c.x = r.x;
      c.assessment = r.assessment;
      c.iterations = r.iterations;
      c.converged = r.converged;
      c.method = r.method;
    } catch (const std::exception& e) {
      c.error = e.what();
      if (c.error.empty()) c.error = "failure";
    }
  };

  const int workers = std::max(1, std::min(cfg.parallel, K));
  if (workers == 1) {
    for (int k = 0; k < K; ++k) work(k);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int k = next++; k < K; k = next++) work(k);
      });
    for (auto& t : pool) t.join();
  }

  for (const auto& c : rep.candidates) {
    if (!c.error.empty()) continue;
    if (rep.best_index < 0 || better(c.assessment, rep.assessment)) {
      rep.best_index = c.index;
      rep.x = c.x;
      rep.assessment = c.assessment;
    }
  }
  if (rep.best_index < 0) throw PipelineFailure("every candidate failed: " + rep.candidates.front().error);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  rep.cpu_seconds = static_cast<double>(std::clock() - cpu0) / CLOCKS_PER_SEC;
  return rep;
}

namespace {

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

// JSON has no infinity; null stands for it in limits.
json limit_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double limit_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

const char* split_name(SplitMethod m) {
  switch (m) {
    case SplitMethod::Shift: return "shift";
    case SplitMethod::Eigen: return "eigen";
    case SplitMethod::CholeskyDiff: return "cholesky";
    case SplitMethod::Ldl: return "ldl";
  }
  return "?";
}

SplitMethod parse_split(const std::string& s) {
  for (SplitMethod m : {SplitMethod::Shift, SplitMethod::Eigen, SplitMethod::CholeskyDiff, SplitMethod::Ldl})
    if (s == split_name(m)) return m;
  throw std::invalid_argument("unknown split method: " + s);
}

SuggestMethod parse_suggest(const std::string& s) {
  for (SuggestMethod m : {SuggestMethod::Random, SuggestMethod::Spectral, SuggestMethod::Sdr})
    if (s == to_string(m)) return m;
  throw std::invalid_argument("unknown suggest method: " + s);
}

json config_to(const PipelineConfig& c) {
  const auto& cp = c.cutting_plane;
  const auto& io = c.improve_options;
  json improve = json::array();
  for (ImproveKind k : c.improve) improve.push_back(to_string(k));
  return json{
      {"suggest", to_string(c.suggest)},
      {"random_scale", c.random_scale},
      {"lambda", vec_json(c.lambda)},
      {"cutting_plane",
       {{"max_cuts", cp.max_cuts},
        {"psd_tol", cp.psd_tol},
        {"box", cp.box},
        {"cut_rule", cp.cut_rule == CutRule::MinEigenvector ? "min-eigenvector" : "all-negative"},
        {"seed_spectral", cp.seed_spectral},
        {"inactive_age", cp.inactive_age},
        {"time_limit", limit_json(cp.time_limit)}}},
      {"improve", improve},
      {"cd",
       {{"max_sweeps", io.cd.max_sweeps},
        {"bisection_tol", io.cd.bisection_tol},
        {"stall_tol", io.cd.stall_tol},
        {"eq_tol", io.cd.eq_tol},
        {"time_limit", limit_json(io.cd.time_limit)}}},
      {"admm",
       {{"rho", io.admm.rho},
        {"max_iter", io.admm.max_iter},
        {"eps_feas", io.admm.eps_feas},
        {"tol", io.admm.tol},
        {"two_phase", io.admm.two_phase},
        {"time_limit", limit_json(io.admm.time_limit)}}},
      {"ccp",
       {{"tau0", io.ccp.tau0},
        {"tau_max", io.ccp.tau_max},
        {"mu", io.ccp.mu},
        {"max_iter", io.ccp.max_iter},
        {"split", split_name(io.ccp.split_method)},
        {"stop_on_feasible", io.ccp.stop_on_feasible},
        {"slack_tol", io.ccp.slack_tol},
        {"sub_rho", io.ccp.subsolver.rho},
        {"sub_max_iter", io.ccp.subsolver.max_iter},
        {"sub_tol", io.ccp.subsolver.tol},
        {"time_limit", limit_json(io.ccp.time_limit)}}},
      {"candidates", c.candidates},
      {"seed", c.seed},
      {"parallel", c.parallel},
      {"timing", c.timing}};
}

/// Reads keys present in j into the fields; rejects unknown keys.
class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j.is_object()) throw std::invalid_argument(where_ + ": expected an object");
  }
  template <typename T>
  void get(const char* key, T& out) {
    seen_.push_back(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw std::invalid_argument(where_ + "." + key + ": wrong type");
    }
  }
  void limit(const char* key, double& out) {
    seen_.push_back(key);
    if (j_.contains(key)) out = limit_from(j_.at(key));
  }
  const json* sub(const char* key) {
    seen_.push_back(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end())
        throw std::invalid_argument(where_ + ": unknown key \"" + it.key() + "\"");
  }

 private:
  const json& j_;
  std::string where_;
  std::vector<std::string> seen_;
};

}  // namespace

std::string config_json(const PipelineConfig& cfg) { return config_to(cfg).dump(1) + "\n"; }

PipelineConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(e.what());
  }
  PipelineConfig c;
  Reader r(j, "config");
  if (const json* v = r.sub("suggest")) c.suggest = parse_suggest(v->get<std::string>());
  r.get("random_scale", c.random_scale);
  if (const json* v = r.sub("lambda")) {
    auto l = v->get<std::vector<double>>();
    c.lambda = Eigen::Map<const Vec>(l.data(), static_cast<Eigen::Index>(l.size()));
  }
  if (const json* v = r.sub("cutting_plane")) {
    Reader q(*v, "config.cutting_plane");
    auto& cp = c.cutting_plane;
    q.get("max_cuts", cp.max_cuts);
    q.get("psd_tol", cp.psd_tol);
    q.get("box", cp.box);
    if (const json* rule = q.sub("cut_rule")) {
      std::string name = rule->get<std::string>();
      if (name == "min-eigenvector") cp.cut_rule = CutRule::MinEigenvector;
      else if (name == "all-negative") cp.cut_rule = CutRule::AllNegative;
      else throw std::invalid_argument("config.cutting_plane.cut_rule: unknown rule " + name);
    }
    q.get("seed_spectral", cp.seed_spectral);
    q.get("inactive_age", cp.inactive_age);
    q.limit("time_limit", cp.time_limit);
    q.finish();
  }
  if (const json* v = r.sub("improve")) {
    c.improve.clear();
    for (const auto& name : v->get<std::vector<std::string>>()) c.improve.push_back(parse_improve_kind(name));
  }
  auto& io = c.improve_options;
  if (const json* v = r.sub("cd")) {
    Reader q(*v, "config.cd");
    q.get("max_sweeps", io.cd.max_sweeps);
    q.get("bisection_tol", io.cd.bisection_tol);
    q.get("stall_tol", io.cd.stall_tol);
    q.get("eq_tol", io.cd.eq_tol);
    q.limit("time_limit", io.cd.time_limit);
    q.finish();
  }
  if (const json* v = r.sub("admm")) {
    Reader q(*v, "config.admm");
    q.get("rho", io.admm.rho);
    q.get("max_iter", io.admm.max_iter);
    q.get("eps_feas", io.admm.eps_feas);
    q.get("tol", io.admm.tol);
    q.get("two_phase", io.admm.two_phase);
    q.limit("time_limit", io.admm.time_limit);
    q.finish();
  }
  if (const json* v = r.sub("ccp")) {
    Reader q(*v, "config.ccp");
    q.get("tau0", io.ccp.tau0);
    q.get("tau_max", io.ccp.tau_max);
    q.get("mu", io.ccp.mu);
    q.get("max_iter", io.ccp.max_iter);
    if (const json* sp = q.sub("split")) io.ccp.split_method = parse_split(sp->get<std::string>());
    q.get("stop_on_feasible", io.ccp.stop_on_feasible);
    q.get("slack_tol", io.ccp.slack_tol);
    q.get("sub_rho", io.ccp.subsolver.rho);
    q.get("sub_max_iter", io.ccp.subsolver.max_iter);
    q.get("sub_tol", io.ccp.subsolver.tol);
    q.limit("time_limit", io.ccp.time_limit);
    q.finish();
  }
  r.get("candidates", c.candidates);
  r.get("seed", c.seed);
  r.get("parallel", c.parallel);
  r.get("timing", c.timing);
  r.finish();
  return c;
}

std::string report_json(const RunReport& r, const PipelineConfig& cfg) {
  const double sgn = r.maximize ? -1.0 : 1.0;
  json j;
  j["sense"] = r.maximize ? "maximize" : "minimize";
  j["best"] = {{"index", r.best_index},
               {"x", vec_json(r.x)},
               {"violation", r.assessment.violation},
               {"objective", sgn * r.assessment.objective}};
  if (r.bound) {
    json trace = json::array();
    for (double t : r.bound->trace) trace.push_back(sgn * t);
    json b{{"value", sgn * r.bound->value}, {"valid", r.bound->valid}, {"trace", trace}};
    if (r.bound->valid && std::isfinite(r.bound->value) && r.assessment.violation <= 1e-6)
      b["gap"] = r.assessment.objective - r.bound->value;
    j["bound"] = std::move(b);
  } else {
    j["bound"] = nullptr;
  }
  json cands = json::array();
  for (const auto& c : r.candidates) {
    json e{{"index", c.index},
           {"start_violation", c.start_assessment.violation},
           {"start_objective", sgn * c.start_assessment.objective},
           {"violation", c.assessment.violation},
           {"objective", sgn * c.assessment.objective},
           {"iterations", c.iterations},
           {"converged", c.converged},
           {"method", c.method}};
    if (!c.error.empty()) e["error"] = c.error;
    cands.push_back(std::move(e));
  }
  j["candidates"] = std::move(cands);
  j["config"] = config_to(cfg);
  if (cfg.timing) j["timing"] = {{"wall_seconds", r.wall_seconds}, {"cpu_seconds", r.cpu_seconds}};
  return j.dump(1) + "\n";
}

}  // namespace qcqp
