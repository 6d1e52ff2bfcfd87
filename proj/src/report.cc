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

#include "eosssd/report.h"

#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "json.hpp"

namespace eosssd {
namespace {

std::string FormatGap(double gap) {
  if (std::isinf(gap)) return gap > 0 ? "inf" : "-inf";
  return fmt::format("{:.3f}", gap);
}

// JSON has no infinity; unbounded gaps are written as null.
nlohmann::json FiniteOrNull(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

}  // namespace

long RoundHalfUp(double value) { return static_cast<long>(std::floor(value + 0.5)); }

std::string_view StopReasonName(StopReason reason) {
  switch (reason) {
    case StopReason::kGapReached:
      return "gap_reached";
    case StopReason::kFeasibleRelaxation:
      return "feasible_relaxation";
    case StopReason::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

ReportRow MakeReportRow(const Instance& instance, const SolveReport& report) {
  ReportRow row;
  row.instance = instance.name();
  row.num_facilities = instance.num_facilities();
  row.num_customers = instance.num_customers();
  row.total_cost = report.solution.cost.total;
  row.shares = report.solution.cost.Shares();
  row.iterations = report.iterations;
  row.cpu_ms = report.wall_ms;
  row.gap = report.gap;
  row.open_facilities = report.solution.NumOpen();
  row.average_capacity = report.solution.AverageCapacity();
  return row;
}

std::string CsvHeader() {
  return "Instance,Facilities,Customers,TotalCost,Opening%,Serving%,Accessing%,"
         "Waiting%,Iterations,CpuTimeMs,ErrorTolerance,OpenFacilities,"
         "AverageCapacity";
}

std::string FormatCsvRow(const ReportRow& row) {
  return fmt::format("{},{},{},{:.1f},{}%,{}%,{}%,{}%,{},{},{},{},{}", row.instance,
                     row.num_facilities, row.num_customers, row.total_cost,
                     RoundHalfUp(row.shares[0]), RoundHalfUp(row.shares[1]),
                     RoundHalfUp(row.shares[2]), RoundHalfUp(row.shares[3]),
                     row.iterations, RoundHalfUp(row.cpu_ms), FormatGap(row.gap),
                     row.open_facilities, RoundHalfUp(row.average_capacity));
}

std::string FormatJson(const ReportRow& row, const SolveReport& report) {
  const CostBreakdown& cost = report.solution.cost;
  nlohmann::ordered_json j;
  j["instance"] = row.instance;
  j["facilities"] = row.num_facilities;
  j["customers"] = row.num_customers;
  j["total_cost"] = row.total_cost;
  j["cost"] = {{"opening", cost.opening},
               {"serving", cost.serving},
               {"access", cost.access},
               {"waiting", cost.waiting}};
  j["shares_percent"] = {{"opening", row.shares[0]},
                         {"serving", row.shares[1]},
                         {"access", row.shares[2]},
                         {"waiting", row.shares[3]}};
  j["iterations"] = row.iterations;
  j["cpu_time_ms"] = row.cpu_ms;
  j["gap"] = FiniteOrNull(row.gap);
  j["lower_bound"] = FiniteOrNull(report.lower_bound);
  j["best_lower_bound"] = FiniteOrNull(report.best_lower_bound);
  j["stop_reason"] = StopReasonName(report.stop);
  j["pieces"] = report.pieces;
  j["open_facilities"] = row.open_facilities;
  j["average_capacity"] = row.average_capacity;
  j["open"] = report.solution.open;
  j["assignment"] = report.solution.assignment;
  j["capacity"] = report.solution.capacity;
  return j.dump(2);
}

void WriteTrace(const SolveReport& report, std::ostream& out) {
  out << "iteration,lb,ub,best_ub,gap,alpha,norm_v\n";
  for (const TraceEntry& e : report.trace) {
    fmt::print(out, "{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
               e.iteration, e.lower_bound, e.upper_bound, e.best_upper_bound,
               e.gap, e.alpha, e.subgradient_norm);
  }
}

CompareRow MakeCompareRow(const Instance& instance, const SolveReport& report) {
  CompareRow row;
  row.instance = instance.name();
  row.family = instance.family();
  row.total_cost = report.solution.cost.total;
  row.waiting_share = report.solution.cost.Shares()[3];
  row.open_facilities = report.solution.NumOpen();
  row.average_capacity = report.solution.AverageCapacity();
  row.iterations = report.iterations;
  row.gap = report.gap;
  return row;
}

std::string CompareCsvHeader() {
  return "Instance,Family,TotalCost,Waiting%,OpenFacilities,AverageCapacity,"
         "Iterations,ErrorTolerance";
}

std::string FormatCompareRow(const CompareRow& row) {
  return fmt::format("{},{},{:.1f},{}%,{},{},{},{}", row.instance,
                     FamilyName(row.family), row.total_cost,
                     RoundHalfUp(row.waiting_share), row.open_facilities,
                     RoundHalfUp(row.average_capacity), row.iterations,
                     FormatGap(row.gap));
}

}  // namespace eosssd
