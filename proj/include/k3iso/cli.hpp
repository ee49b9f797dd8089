#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3iso/decide.hpp"
#include "k3iso/error.hpp"
#include "k3iso/json_io.hpp"

namespace k3iso::cli {

inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitError = 3;

struct Output {
  Json body;
  int exit_code = 0;
};

// {"error": detail, "code": name}
Json error_json(const Error& e);

// {"r", "s", "d", "lattice", "full"?, "series"?} -> verdict JSON.
Output run_decide(const Json& input);

// {"gamma", "delta", "m", "constraints"?} -> {"solvable", "witness", "status"}.
// Constraints: {"on": "x"|"y", "residue", "modulus"} or
// {"on": "x-mu*y", "mu", "modulus"}.
Output run_solve_form(const Json& input);

// {"a", "b", "c", "d1"?, "d2"?} or an array of those.
Output run_verify_model(const Json& input);

struct Range {
  Int lo;
  Int hi;
};

struct ScanSpec {
  Range r{1, 1};
  Range s{1, 1};
  Range d{1, 1};
  Int max_n_half = 1;
  Int max_gamma_delta = 1;
  bool full = false;
  std::vector<Series> series = {Series::A, Series::B};
  bool oracle = true;  // cross-check each searched cell by bounded enumeration
};

// Ranges are [lo, hi] pairs or single integers. Throws Error{InvalidInput}.
ScanSpec parse_scan_spec(const Json& j);

struct ScanCell {
  Int r;
  Int s;
  Int d;
  PolarizedLattice lattice;
};

// Cells in lexicographic (r, s, d, gamma, delta, mu) order; Mukai data that
// is not primitive or not divisible is skipped, as is n_half > max_n_half.
std::vector<ScanCell> scan_cells(const ScanSpec& spec);

struct ScanRow {
  ScanCell cell;
  std::string verdict;  // yes / no / unknown / error
  std::optional<Series> series;
  std::optional<int> sign;
  std::optional<Int> d2;
  std::optional<LatticeVector> witness;
  SolverStats stats;
  std::optional<OracleAgreement> oracle;
  std::string reason;
};

ScanRow evaluate_cell(const ScanCell& cell, const ScanSpec& spec, const Int& bound);

// Evaluates every cell on `jobs` threads; rows come back in cell order.
std::vector<ScanRow> run_scan(const ScanSpec& spec, const Int& bound, unsigned jobs);

std::string scan_csv(const std::vector<ScanRow>& rows);
Json scan_json(const std::vector<ScanRow>& rows);

}  // namespace k3iso::cli
