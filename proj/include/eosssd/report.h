// Copyright 2026 The eosssd Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EOSSSD_REPORT_H_
#define EOSSSD_REPORT_H_

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>

#include "eosssd/instance.h"
#include "eosssd/lagrangian.h"

namespace eosssd {

// One results-table row. Column order:
//   Instance, #Facilities, #Customers, TotalCost, Opening%, Serving%,
//   Accessing%, Waiting%, #Iterations, CpuTimeMs, ErrorTolerance,
//   #OpenFacilities, AverageCapacity
struct ReportRow {
  std::string instance;
  int num_facilities = 0;
  int num_customers = 0;
  double total_cost = 0.0;
  std::array<double, 4> shares{};  // percent, full precision
  int iterations = 0;
  double cpu_ms = 0.0;
  double gap = 0.0;
  int open_facilities = 0;
  double average_capacity = 0.0;
};

ReportRow MakeReportRow(const Instance& instance, const SolveReport& report);

// Half-up rounding to an integer, as used for percent shares.
long RoundHalfUp(double value);

std::string CsvHeader();
// Money with one decimal, shares as whole percents, gap with three decimals,
// capacity and milliseconds as integers.
std::string FormatCsvRow(const ReportRow& row);
// Full-precision JSON object with the row, stop reason and cost breakdown.
std::string FormatJson(const ReportRow& row, const SolveReport& report);

// Trace CSV: iteration, lb, ub, best_ub, gap, alpha, norm_v.
void WriteTrace(const SolveReport& report, std::ostream& out);

std::string_view StopReasonName(StopReason reason);

// One line of the family comparison.
struct CompareRow {
  std::string instance;
  CostFamily family = CostFamily::kLinear;
  double total_cost = 0.0;
  double waiting_share = 0.0;  // percent
  int open_facilities = 0;
  double average_capacity = 0.0;
  int iterations = 0;
  double gap = 0.0;
};

CompareRow MakeCompareRow(const Instance& instance, const SolveReport& report);
std::string CompareCsvHeader();
std::string FormatCompareRow(const CompareRow& row);

}  // namespace eosssd

#endif  // EOSSSD_REPORT_H_
