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

// Problem data for service system design with economies of scale: candidate
// facilities, customers with Poisson demand, and the access-cost matrix.
//
// Instance file format (plain text, one record per line, '#' starts a
// comment):
//
//   eosssd-instance 1
//   name <token>
//   cost_family linear|sqrt|fractional
//   n_facilities <|I|>
//   n_customers <|J|>
//   facility <id> <fixed_cost> <operating_cost> <serving_cost> <waiting_cost>
//   ...                                  (|I| records, ids 0..|I|-1 in order)
//   customer <id> <demand_rate>
//   ...                                  (|J| records, ids 0..|J|-1 in order)
//   access <facility id> <a_i0> ... <a_i(|J|-1)>
//   ...                                  (|I| rows, facility-major)
//
// Reals are written with 17 significant digits so that reading back a written
// file reproduces every field exactly.

#ifndef EOSSSD_INSTANCE_H_
#define EOSSSD_INSTANCE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eosssd/cost_function.h"

namespace eosssd {

// Invariant violation or malformed instance file.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Facility {
  double fixed_cost = 0.0;      // f_i
  double operating_cost = 0.0;  // c_i, scales g(mu)
  double serving_cost = 0.0;    // s_i, per unit of demand
  double waiting_cost = 0.0;    // w_i, per customer per unit time

  friend bool operator==(const Facility&, const Facility&) = default;
};

struct Customer {
  double demand_rate = 0.0;  // lambda_j

  friend bool operator==(const Customer&, const Customer&) = default;
};

// Immutable after construction. The constructor validates every invariant
// and throws InstanceError naming the offending field.
class Instance {
 public:
  Instance(std::string name, std::vector<Facility> facilities,
           std::vector<Customer> customers, std::vector<double> access_cost,
           CostFunction cost);

  const std::string& name() const { return name_; }
  int num_facilities() const { return static_cast<int>(facilities_.size()); }
  int num_customers() const { return static_cast<int>(customers_.size()); }
  const Facility& facility(int i) const { return facilities_[i]; }
  const Customer& customer(int j) const { return customers_[j]; }
  std::span<const Facility> facilities() const { return facilities_; }
  std::span<const Customer> customers() const { return customers_; }
  double access_cost(int i, int j) const {
    return access_cost_[static_cast<size_t>(i) * customers_.size() + j];
  }
  std::span<const double> access_row(int i) const {
    return std::span<const double>(access_cost_).subspan(
        static_cast<size_t>(i) * customers_.size(), customers_.size());
  }
  const CostFunction& cost_function() const { return cost_; }
  CostFamily family() const { return cost_.family(); }
  double total_demand() const;

  // Same data under another built-in family, with every c_i replaced.
  Instance WithFamily(CostFamily family, double operating_cost) const;
  Instance WithFamily(CostFamily family) const {
    return WithFamily(family, DefaultOperatingCost(family));
  }

  friend bool operator==(const Instance& a, const Instance& b);

 private:
  std::string name_;
  std::vector<Facility> facilities_;
  std::vector<Customer> customers_;
  std::vector<double> access_cost_;  // |I| x |J|, facility-major
  CostFunction cost_;
};

Instance ReadInstance(const std::filesystem::path& path);
Instance ParseInstance(std::istream& in);

// Custom cost families cannot be serialized and are rejected.
void WriteInstance(const Instance& instance, const std::filesystem::path& path);
void FormatInstance(const Instance& instance, std::ostream& out);

// Surrogate sampling ranges for the data that the reference experiments took
// from external benchmark files. Serving and waiting cost ranges are fixed by
// the experimental protocol but remain overridable.
struct UniformRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct GeneratorOptions {
  UniformRange fixed_cost{500.0, 3000.0};
  UniformRange demand_rate{1.0, 20.0};
  UniformRange access_cost{1.0, 30.0};
  UniformRange serving_cost{1.0, 5.0};
  UniformRange waiting_cost{50.0, 300.0};
};

// Deterministic for a fixed seed on every platform. The family only sets c_i,
// so two families with the same seed share all other fields.
Instance GenerateInstance(int num_facilities, int num_customers,
                          std::uint64_t seed, CostFamily family,
                          const GeneratorOptions& options = {},
                          std::string name = "");

struct SuiteEntry {
  std::string name;
  int num_facilities;
  int num_customers;
};

// The 27 problem sizes of the reference test set (P1..P55).
const std::vector<SuiteEntry>& ReferenceSuite();

std::vector<Instance> GenerateSuite(std::uint64_t seed, CostFamily family,
                                    const GeneratorOptions& options = {});

}  // namespace eosssd

#endif  // EOSSSD_INSTANCE_H_
