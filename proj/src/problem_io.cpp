#include "qcqp/problem_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qcqp {

using nlohmann::json;

namespace {

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

QuadraticForm parse_form(const json& j, int n, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  std::vector<Triplet> P;
  if (j.contains("P")) {
    const json& jp = j.at("P");
    if (!jp.is_array()) throw ParseError(where + ".P: expected an array of [row, col, value]");
    for (size_t k = 0; k < jp.size(); ++k) {
      const std::string w = where + ".P[" + std::to_string(k) + "]";
      const json& t = jp[k];
      if (!t.is_array() || t.size() != 3) throw ParseError(w + ": expected [row, col, value]");
      if (!t[0].is_number_integer() || !t[1].is_number_integer()) throw ParseError(w + ": indices must be integers");
      long long r = t[0].get<long long>(), c = t[1].get<long long>();
      if (r < 0 || c < 0 || r >= n || c >= n) throw ParseError(w + ": index out of range for n = " + std::to_string(n));
      P.push_back({static_cast<int>(r), static_cast<int>(c), number(t[2], w + "[2]")});
    }
  }
  Vec q = Vec::Zero(n);
  if (j.contains("q")) {
    const json& jq = j.at("q");
    if (!jq.is_array() || static_cast<int>(jq.size()) != n)
      throw ParseError(where + ".q: expected an array of length " + std::to_string(n));
    for (int i = 0; i < n; ++i) q[i] = number(jq[i], where + ".q[" + std::to_string(i) + "]");
  }
  double r = j.contains("r") ? number(j.at("r"), where + ".r") : 0.0;
  return QuadraticForm(n, std::move(P), std::move(q), r);
}

json form_json(const QuadraticForm& f) {
  std::vector<Triplet> P = f.P();
  std::sort(P.begin(), P.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  json jp = json::array();
  for (const auto& t : P) jp.push_back({t.row, t.col, t.value});
  json jq = json::array();
  for (Eigen::Index i = 0; i < f.q().size(); ++i) jq.push_back(f.q()[i]);
  return json{{"P", jp}, {"q", jq}, {"r", f.r()}};
}

}  // namespace

Problem parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports the line and column in its message
    throw ParseError(e.what());
  }
  if (!j.is_object()) throw ParseError("top level: expected an object");
  if (!j.contains("n") || !j.at("n").is_number_integer()) throw ParseError("n: expected an integer");
  Problem p;
  long long n = j.at("n").get<long long>();
  if (n < 1 || n > 1000000) throw ParseError("n: must be positive");
  p.n = static_cast<int>(n);
  if (j.contains("maximize")) {
    if (!j.at("maximize").is_boolean()) throw ParseError("maximize: expected true or false");
    p.maximize = j.at("maximize").get<bool>();
  }
  if (!j.contains("objective")) throw ParseError("objective: missing");
  p.objective = parse_form(j.at("objective"), p.n, "objective");
  if (j.contains("constraints")) {
    const json& jc = j.at("constraints");
    if (!jc.is_array()) throw ParseError("constraints: expected an array");
    for (size_t i = 0; i < jc.size(); ++i) {
      const std::string where = "constraints[" + std::to_string(i) + "]";
      Constraint c;
      c.f = parse_form(jc[i], p.n, where);
      if (jc[i].contains("sense")) {
        const json& s = jc[i].at("sense");
        if (s == "leq") c.sense = Sense::LeqZero;
        else if (s == "eq") c.sense = Sense::EqZero;
        else throw ParseError(where + ".sense: expected \"leq\" or \"eq\"");
      }
      p.constraints.push_back(std::move(c));
    }
  }
  try {
    p.validate();
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  return p;
}

std::string dump_problem(const Problem& p) {
  json j;
  j["n"] = p.n;
  j["maximize"] = p.maximize;
  j["objective"] = form_json(p.objective);
  json jc = json::array();
  for (const auto& c : p.constraints) {
    json f = form_json(c.f);
    f["sense"] = c.sense == Sense::EqZero ? "eq" : "leq";
    jc.push_back(std::move(f));
  }
  j["constraints"] = std::move(jc);
  return j.dump(1) + "\n";
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

void save_problem(const Problem& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << dump_problem(p);
}

}  // namespace qcqp
