#pragma once

#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

#include "hak/core.hpp"

namespace hak {

/// One LHS/RHS sample row (for CSV export).
struct RatioSample {
  std::string label;
  double lhs = 0, rhs = 0;
  double ratio() const { return rhs != 0 ? lhs / rhs : std::nan(""); }
};

/// Empirical-constant record for a claimed "<=" bound: the sup of LHS/RHS
/// over a declared sample family, re-measured at doubled density. The bound
/// is accepted when the constant is finite and moves by at most 10% under
/// refinement.
struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::size_t sample_count = 0;
  double constant = std::nan("");
  double refined_constant = std::nan("");
  double refinement_ratio = std::nan("");
  bool finite = false;
  bool pass = false;
  std::string worst_sample;
  std::vector<RatioSample> base_rows;  // for CSV export

  void add_param(const std::string& k, const std::string& v) { params.emplace_back(k, v); }
  void add_param(const std::string& k, double v) { params.emplace_back(k, format_double(v)); }
  std::string summary_line() const;
};

/// Assemble a report from pre-evaluated base and refined sample rows.
BoundReport make_bound_report(std::string name, const std::vector<RatioSample>& base,
                              const std::vector<RatioSample>& refined,
                              double stability_tol = 1.1);

void write_bound_report_csv(std::ostream& os, const BoundReport& report);

}  // namespace hak
