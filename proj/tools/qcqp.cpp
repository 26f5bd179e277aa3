// qcqp: solve, bound, generate and brute-force quadratically constrained quadratic programs.
#include "qcqp/generators.hpp"
#include "qcqp/pipeline.hpp"
#include "qcqp/problem_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace qcqp;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Problem load(const std::string& path) {
  try {
    return parse_problem(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Suggest-and-improve heuristics and bounds for quadratically constrained quadratic programs"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "suggest candidates, improve them, report the best point");
  std::string solve_file, config_file, suggest_name = "random", improve_list, solve_out;
  int candidates = -1, parallel = -1;
  std::uint64_t seed = 0;
  bool seed_set = false, timing = false;
  double scale = -1.0, rho = -1.0, time_limit = -1.0;
  int max_iter = -1, max_cuts = -1;
  solve->add_option("problem", solve_file, "problem file (JSON)")->required();
  solve->add_option("--config", config_file, "pipeline config (JSON); flags override it");
  auto* suggest_opt = solve->add_option("--suggest", suggest_name, "random | spectral | sdr");
  auto* improve_opt = solve->add_option("--improve", improve_list, "comma list of sign,balanced,scale,clique,cd,admm,ccp");
  solve->add_option("--candidates", candidates, "number of candidates");
  solve->add_option("--seed", seed, "seed; candidate k uses seed + k")->each([&](const std::string&) { seed_set = true; });
  solve->add_option("--parallel", parallel, "worker threads over candidates");
  solve->add_option("--scale", scale, "standard deviation of random candidates");
  solve->add_option("--rho", rho, "ADMM penalty");
  solve->add_option("--max-iter", max_iter, "iteration cap for ADMM and CCP");
  solve->add_option("--max-cuts", max_cuts, "cutting-plane cut budget");
  solve->add_option("--time-limit", time_limit, "seconds per Improve call");
  solve->add_flag("--timing", timing, "add wall and CPU seconds to the report");
  solve->add_option("--out", solve_out, "report path (default stdout)");

  // bound
  auto* bound = app.add_subcommand("bound", "lower bound (upper bound when maximizing)");
  std::string bound_file, bound_method = "spectral", bound_out;
  double psd_tol = 1e-6, box = -1.0;
  int bound_cuts = -1;
  bound->add_option("problem", bound_file, "problem file (JSON)")->required();
  bound->add_option("--method", bound_method, "spectral | sdr")->check(CLI::IsMember({"spectral", "sdr"}));
  bound->add_option("--max-cuts", bound_cuts, "cut budget");
  bound->add_option("--psd-tol", psd_tol, "eigenvalue tolerance for convergence");
  bound->add_option("--box", box, "safeguard box half-width");
  std::string cut_rule = "min-eigenvector";
  bound->add_option("--cut-rule", cut_rule, "min-eigenvector | all-negative")
      ->check(CLI::IsMember({"min-eigenvector", "all-negative"}));
  bound->add_option("--out", bound_out, "output path (default stdout)");

  // generate
  auto* gen = app.add_subcommand("generate", "write a problem instance");
  std::string family, gen_out;
  int gn = 10, gm = 10, gl = 3, clauses = -1;
  double tau = 20.0, eta = 2.0, prob = 0.5;
  std::uint64_t gseed = 0;
  gen->add_option("--family", family, "problem family")
      ->required()
      ->check(CLI::IsMember({"boolean-ls", "partitioning", "psd-partitioning", "maxcut", "bisection", "maxclique",
                             "3sat", "beamforming"}));
  gen->add_option("--n", gn, "variables (complex dimension for beamforming)");
  gen->add_option("--m", gm, "rows of A (boolean-ls) or lower-bound constraints (beamforming)");
  gen->add_option("--l", gl, "upper-bound constraints (beamforming)");
  gen->add_option("--tau", tau, "beamforming lower level");
  gen->add_option("--eta", eta, "beamforming upper level");
  gen->add_option("--p", prob, "edge probability");
  gen->add_option("--clauses", clauses, "3-SAT clause count (default 4n)");
  gen->add_option("--seed", gseed, "seed");
  gen->add_option("--out", gen_out, "output path (default stdout)");

  // brute
  auto* brute = app.add_subcommand("brute", "exhaustive search (Boolean or grid)");
  std::string brute_file, brute_out;
  std::vector<double> grid;
  int threads = 0;
  brute->add_option("problem", brute_file, "problem file (JSON)")->required();
  brute->add_option("--grid", grid, "grid search: lo hi steps")->expected(3);
  brute->add_option("--threads", threads, "worker threads");
  brute->add_option("--out", brute_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) {
      Problem p = load(solve_file);
      PipelineConfig cfg;
      if (!config_file.empty()) {
        try {
          cfg = parse_config(read_file(config_file));
        } catch (const std::invalid_argument& e) {
          throw UsageError(config_file + ": " + e.what());
        }
      }
      try {
        if (suggest_opt->count() || config_file.empty()) {
          if (suggest_name == "random") cfg.suggest = SuggestMethod::Random;
          else if (suggest_name == "spectral") cfg.suggest = SuggestMethod::Spectral;
          else if (suggest_name == "sdr") cfg.suggest = SuggestMethod::Sdr;
          else throw UsageError("unknown suggest method " + suggest_name);
        }
        if (improve_opt->count()) {
          cfg.improve.clear();
          for (const auto& name : split_list(improve_list)) cfg.improve.push_back(parse_improve_kind(name));
        }
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      if (candidates > 0) cfg.candidates = candidates;
      if (seed_set) cfg.seed = seed;
      if (parallel > 0) cfg.parallel = parallel;
      if (scale >= 0.0) cfg.random_scale = scale;
      if (rho > 0.0) cfg.improve_options.admm.rho = rho;
      if (max_iter > 0) cfg.improve_options.admm.max_iter = cfg.improve_options.ccp.max_iter = max_iter;
      if (max_cuts > 0) cfg.cutting_plane.max_cuts = max_cuts;
      if (time_limit > 0.0) {
        cfg.improve_options.cd.time_limit = time_limit;
        cfg.improve_options.admm.time_limit = time_limit;
        cfg.improve_options.ccp.time_limit = time_limit;
      }
      if (timing) cfg.timing = true;
      RunReport rep = run_pipeline(p, cfg);
      emit(report_json(rep, cfg), solve_out);
    } else if (*bound) {
      Problem p = load(bound_file);
      const double sgn = p.maximize ? -1.0 : 1.0;
      json out;
      out["method"] = bound_method;
      if (bound_method == "spectral") {
        SpectralBound sb = spectral_bound(p);
        out["bound"] = sgn * sb.bound;
        out["valid"] = true;
        out["trace"] = json::array({sgn * sb.bound});
        if (sb.x.size()) out["x"] = vec_json(sb.x);
      } else {
        CuttingPlaneOptions o;
        o.max_cuts = bound_cuts;
        o.psd_tol = psd_tol;
        o.box = box;
        o.cut_rule = cut_rule == "all-negative" ? CutRule::AllNegative : CutRule::MinEigenvector;
        CuttingPlaneResult cp = sdr_bound_cutting_plane(p, o);
        json trace = json::array();
        for (double t : cp.trace) trace.push_back(sgn * t);
        out["bound"] = sgn * cp.bound;
        out["valid"] = cp.valid;
        out["trace"] = trace;
        out["converged"] = cp.converged;
        out["infeasible"] = cp.infeasible;
        out["cuts"] = cp.cuts;
      }
      emit(out.dump(1) + "\n", bound_out);
    } else if (*gen) {
      Problem p;
      if (family == "boolean-ls") p = gen_boolean_ls(gm, gn, gseed);
      else if (family == "partitioning") p = gen_partitioning(random_weights(gn, prob, true, gseed));
      else if (family == "psd-partitioning") p = gen_partitioning(random_psd_weights(gn, gseed));
      else if (family == "maxcut") p = gen_maxcut(random_weights(gn, prob, false, gseed));
      else if (family == "bisection") p = gen_maxbisection(random_weights(gn, prob, false, gseed));
      else if (family == "maxclique") p = gen_maxclique(random_graph(gn, prob, gseed));
      else if (family == "3sat") p = gen_3sat(gn, random_clauses(gn, clauses > 0 ? clauses : 4 * gn, gseed));
      else p = gen_beamforming(gn, gm, gl, tau, eta, gseed);
      emit(dump_problem(p), gen_out);
    } else if (*brute) {
      Problem p = load(brute_file);
      BruteOptions o;
      o.threads = threads;
      if (!grid.empty()) {
        o.mode = BruteMode::Grid;
        o.lo = grid[0];
        o.hi = grid[1];
        o.steps = static_cast<int>(grid[2]);
      }
      BruteResult r = brute_force(p, o);
      json out;
      out["feasible"] = r.feasible;
      out["x"] = vec_json(r.x);
      out["f"] = r.feasible || o.mode == BruteMode::Grid ? json(p.reported_objective(r.value)) : json(nullptr);
      out["violation"] = r.assessment.violation;
      out["points"] = r.points;
      emit(out.dump(1) + "\n", brute_out);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
