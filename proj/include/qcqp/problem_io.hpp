#pragma once

#include "qcqp/core.hpp"

#include <string>

namespace qcqp {

/// Malformed problem text; the message names the line or the offending field.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// JSON layout:
///   {"n": 2, "maximize": false,
///    "objective": {"P": [[row, col, value], ...], "q": [...], "r": 0},
///    "constraints": [{"P": [...], "q": [...], "r": -1, "sense": "leq" | "eq"}, ...]}
/// P triplets are 0-based; entries below the diagonal are folded into the upper triangle.
/// "q" defaults to zeros, "r" to 0, "sense" to "leq".
Problem parse_problem(const std::string& text);
/// Triplets written in row-major order; doubles round-trip exactly.
std::string dump_problem(const Problem& p);

Problem load_problem(const std::string& path);
void save_problem(const Problem& p, const std::string& path);

}  // namespace qcqp
