#include "mazegp/explain/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "mazegp/common.hpp"

namespace mazegp::explain {

std::vector<ReportRow> accuracy_report(const std::vector<gp::RunReport>& runs) {
  if (runs.empty()) fail(ErrorCode::EmptyReport, "no runs to report");

  std::map<int, bool> lengths;
  for (const gp::RunReport& run : runs) {
    for (const gp::LengthRecord& rec : run.lengths) lengths[rec.sequence_length] = true;
  }
  if (lengths.empty()) fail(ErrorCode::EmptyReport, "runs contain no length records");

  std::vector<ReportRow> rows;
  for (const auto& [length, unused] : lengths) {
    (void)unused;
    std::vector<double> best, uni;
    for (const gp::RunReport& run : runs) {
      double b = 0.0, u = 0.0;  // a run that never reached this length imitated nothing
      for (const gp::LengthRecord& rec : run.lengths) {
        if (rec.sequence_length == length) {
          b = rec.best_accuracy;
          u = rec.union_accuracy;
        }
      }
      best.push_back(b);
      uni.push_back(u);
    }
    auto mean_std = [](const std::vector<double>& xs) {
      double mean = 0.0;
      for (double x : xs) mean += x;
      mean /= static_cast<double>(xs.size());
      double var = 0.0;
      for (double x : xs) var += (x - mean) * (x - mean);
      var /= static_cast<double>(xs.size());
      return std::pair<double, double>(mean, std::sqrt(var));
    };
    const auto [bm, bs] = mean_std(best);
    const auto [um, us] = mean_std(uni);
    rows.push_back({length, bm, bs, um, us});
  }
  return rows;
}

std::vector<DiffRow> report_diff(const std::vector<ReportRow>& a,
                                 const std::vector<ReportRow>& b) {
  std::map<int, ReportRow> b_by_length;
  for (const ReportRow& row : b) b_by_length[row.sequence_length] = row;

  std::vector<DiffRow> out;
  for (const ReportRow& row : a) {
    ReportRow other;  // zero accuracy when the arm never reached this length
    other.sequence_length = row.sequence_length;
    auto it = b_by_length.find(row.sequence_length);
    if (it != b_by_length.end()) other = it->second;
    out.push_back({row.sequence_length, row.best_mean - other.best_mean,
                   std::hypot(row.best_std, other.best_std),
                   row.union_mean - other.union_mean,
                   std::hypot(row.union_std, other.union_std)});
  }
  return out;
}

namespace {

void csv_row(std::ostringstream& os, int length, const char* metric, double mean, double std) {
  os << length << "," << metric << "," << mean << "," << std << "\n";
}

}  // namespace

std::string report_to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "length,metric,mean,std\n";
  for (const ReportRow& row : rows) {
    csv_row(os, row.sequence_length, "best_accuracy", row.best_mean, row.best_std);
    csv_row(os, row.sequence_length, "union_accuracy", row.union_mean, row.union_std);
  }
  return os.str();
}

std::string diff_to_csv(const std::vector<DiffRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "length,metric,mean,std\n";
  for (const DiffRow& row : rows) {
    csv_row(os, row.sequence_length, "best_accuracy_diff", row.best_diff, row.best_std);
    csv_row(os, row.sequence_length, "union_accuracy_diff", row.union_diff, row.union_std);
  }
  return os.str();
}

}  // namespace mazegp::explain
