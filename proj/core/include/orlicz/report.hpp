#ifndef ORLICZ_REPORT_HPP
#define ORLICZ_REPORT_HPP

#include <map>
#include <string>
#include <vector>

namespace orlicz {

/// Structured outcome of one inequality check.
struct VerificationReport {
  std::string id;
  std::string name;  // conventional name of the inequality being checked
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  double tolerance = 0.0;
  double error_budget = 0.0;
  bool pass = false;
  std::string error_provenance;  // where the error estimate comes from
  std::string note;
  std::map<std::string, double> extras;
};

/// A suite's worth of checks plus optional per-trial CSV and plot tables.
struct ReportSet {
  std::string suite;
  std::vector<VerificationReport> checks;

  std::vector<std::string> trial_header;
  std::vector<std::vector<double>> trial_rows;

  std::vector<std::string> plot_header;
  std::vector<std::vector<double>> plot_rows;

  bool all_pass() const;
  void append(const ReportSet& other);

  std::string to_json() const;  // versioned with "schema": 1
  std::string trials_csv() const;
  std::string plots_csv() const;

  /// Writes report.json plus plots.csv / trials.csv when non-empty.
  void write(const std::string& out_dir) const;
};

std::string format_double(double v);

}  // namespace orlicz

#endif
