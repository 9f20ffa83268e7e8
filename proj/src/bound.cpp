#include "hak/bound.hpp"

#include <algorithm>
#include <ostream>

namespace hak {

std::string BoundReport::summary_line() const {
  std::string s = name + ": C=" + format_double(constant) +
                  " refined=" + format_double(refined_constant) +
                  " ratio=" + format_double(refinement_ratio) + (pass ? " PASS" : " FAIL");
  if (!worst_sample.empty()) s += " worst=" + worst_sample;
  return s;
}

BoundReport make_bound_report(std::string name, const std::vector<RatioSample>& base,
                              const std::vector<RatioSample>& refined, double stability_tol) {
  BoundReport r;
  r.name = std::move(name);
  r.sample_count = base.size() + refined.size();
  double c = 0;
  const RatioSample* worst = nullptr;
  for (const auto& s : base) {
    double q = s.ratio();
    if (std::isnan(q)) continue;
    if (q > c) {
      c = q;
      worst = &s;
    }
  }
  double cr = c;
  for (const auto& s : refined) {
    double q = s.ratio();
    if (std::isnan(q)) continue;
    if (q > cr) cr = q;
  }
  r.constant = c;
  r.refined_constant = cr;
  r.refinement_ratio = c > 0 ? cr / c : (cr == 0 ? 1.0 : std::nan(""));
  r.finite = std::isfinite(c) && std::isfinite(cr);
  r.pass = r.finite && std::isfinite(r.refinement_ratio) && r.refinement_ratio <= stability_tol;
  if (worst) r.worst_sample = worst->label;
  r.base_rows = base;
  return r;
}

void write_bound_report_csv(std::ostream& os, const BoundReport& report) {
  const std::vector<RatioSample>& base = report.base_rows;
  os << "# bound=" << report.name << " C=" << format_double(report.constant)
     << " refined=" << format_double(report.refined_constant)
     << " ratio=" << format_double(report.refinement_ratio) << " pass=" << (report.pass ? 1 : 0)
     << "\n";
  for (const auto& p : report.params) os << "# " << p.first << "=" << p.second << "\n";
  os << "# sample,lhs,rhs,ratio\n";
  for (const auto& s : base)
    os << s.label << "," << format_double(s.lhs) << "," << format_double(s.rhs) << ","
       << format_double(s.ratio()) << "\n";
}

}  // namespace hak
