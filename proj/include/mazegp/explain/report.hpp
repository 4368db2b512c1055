#pragma once

#include <string>
#include <vector>

#include "mazegp/gp/engine.hpp"

namespace mazegp::explain {

// Per-length accuracy over a set of runs. Runs that halted before a length
// contribute 0 there (nothing was imitated). std is the population standard
// deviation, so a single run reports 0.
struct ReportRow {
  int sequence_length = 0;
  double best_mean = 0.0;
  double best_std = 0.0;
  double union_mean = 0.0;
  double union_std = 0.0;
};

// Throws EmptyReport when no runs are given.
std::vector<ReportRow> accuracy_report(const std::vector<gp::RunReport>& runs);

// Per-length difference of two report tables (a - b), e.g. the with-library
// minus without-library ablation series. Stds combine in quadrature.
struct DiffRow {
  int sequence_length = 0;
  double best_diff = 0.0;
  double best_std = 0.0;
  double union_diff = 0.0;
  double union_std = 0.0;
};

std::vector<DiffRow> report_diff(const std::vector<ReportRow>& a, const std::vector<ReportRow>& b);

// CSV rows of (length, metric, mean, std); any plotting tool can take it.
std::string report_to_csv(const std::vector<ReportRow>& rows);
std::string diff_to_csv(const std::vector<DiffRow>& rows);

}  // namespace mazegp::explain
