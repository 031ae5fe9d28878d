#include "orlicz/report.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace orlicz {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool ReportSet::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void ReportSet::append(const ReportSet& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  if (trial_header.empty()) trial_header = other.trial_header;
  trial_rows.insert(trial_rows.end(), other.trial_rows.begin(), other.trial_rows.end());
  if (plot_header.empty()) plot_header = other.plot_header;
  plot_rows.insert(plot_rows.end(), other.plot_rows.begin(), other.plot_rows.end());
}

std::string ReportSet::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["suite"] = suite;
  j["timestamp"] =
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json jc;
    jc["id"] = c.id;
    jc["paper_ref"] = c.name;
    jc["lhs"] = c.lhs;
    jc["rhs"] = c.rhs;
    jc["constant"] = c.constant;
    jc["pass"] = c.pass;
    jc["error_budget"] = c.error_budget;
    jc["tolerance"] = c.tolerance;
    if (!c.error_provenance.empty()) jc["error_provenance"] = c.error_provenance;
    if (!c.note.empty()) jc["note"] = c.note;
    for (const auto& [k, v] : c.extras) jc["extras"][k] = v;
    arr.push_back(jc);
  }
  j["checks"] = arr;
  j["pass_count"] = int(std::count_if(checks.begin(), checks.end(),
                                      [](const auto& c) { return c.pass; }));
  j["total"] = int(checks.size());
  return j.dump(2);
}

namespace {

std::string table_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string ReportSet::trials_csv() const { return table_csv(trial_header, trial_rows); }
std::string ReportSet::plots_csv() const { return table_csv(plot_header, plot_rows); }

void ReportSet::write(const std::string& out_dir) const {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("ReportSet::write: cannot create " + out_dir);

  auto dump = [&](const std::string& file, const std::string& text) {
    std::ofstream os(fs::path(out_dir) / file, std::ios::binary);
    if (!os) throw std::runtime_error("ReportSet::write: cannot open " + file);
    os << text;
  };
  dump("report.json", to_json());
  if (!trial_rows.empty()) dump("trials.csv", trials_csv());
  if (!plot_rows.empty()) dump("plots.csv", plots_csv());
}

}  // namespace orlicz
