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

#include "eosssd/instance.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>
#include <string_view>
#include <utility>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "eosssd/solution.h"

namespace eosssd {
namespace {

constexpr std::string_view kMagic = "eosssd-instance";
constexpr int kFormatVersion = 1;

void CheckFinite(double value, const std::string& what) {
  if (!std::isfinite(value)) throw InstanceError(what + " must be finite");
}

// Uniform double in [lo, hi] built from raw mt19937_64 output, so the stream
// does not depend on the standard library's distribution implementation.
double Uniform(std::mt19937_64& rng, UniformRange range) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return range.lo + (range.hi - range.lo) * unit;
}

void CheckRange(UniformRange range, const char* what) {
  if (!(range.lo <= range.hi) || !std::isfinite(range.lo) ||
      !std::isfinite(range.hi)) {
    throw InstanceError(fmt::format("invalid {} range [{}, {}]", what,
                                    range.lo, range.hi));
  }
}

// Tokenized view of one instance file line.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Advances to the next non-blank, non-comment line. False at end of input.
  bool Next() {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_number_;
      if (const auto hash = raw.find('#'); hash != std::string::npos) {
        raw.resize(hash);
      }
      tokens_.clear();
      std::istringstream split(raw);
      std::string token;
      while (split >> token) tokens_.push_back(std::move(token));
      if (!tokens_.empty()) return true;
    }
    return false;
  }

  void Expect(std::string_view keyword, size_t min_fields) {
    if (!Next()) Fail(fmt::format("unexpected end of file, expected '{}'", keyword));
    if (tokens_[0] != keyword) {
      Fail(fmt::format("expected '{}', found '{}'", keyword, tokens_[0]));
    }
    if (tokens_.size() < min_fields + 1) {
      Fail(fmt::format("'{}' needs {} field(s), found {}", keyword, min_fields,
                       tokens_.size() - 1));
    }
  }

  void ExpectFieldCount(size_t fields) const {
    if (tokens_.size() != fields + 1) {
      Fail(fmt::format("'{}' needs {} field(s), found {}", tokens_[0], fields,
                       tokens_.size() - 1));
    }
  }

  const std::string& Field(size_t index) const { return tokens_.at(index); }

  double Real(size_t index, std::string_view what) const {
    const std::string& text = tokens_.at(index);
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      Fail(fmt::format("field {} ({}): '{}' is not a number", index, what, text));
    }
    return value;
  }

  long Integer(size_t index, std::string_view what) const {
    const std::string& text = tokens_.at(index);
    long value = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      Fail(fmt::format("field {} ({}): '{}' is not an integer", index, what,
                       text));
    }
    return value;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw InstanceError(fmt::format("line {}: {}", line_number_, message));
  }

 private:
  std::istream& in_;
  int line_number_ = 0;
  std::vector<std::string> tokens_;
};

}  // namespace

Instance::Instance(std::string name, std::vector<Facility> facilities,
                   std::vector<Customer> customers,
                   std::vector<double> access_cost, CostFunction cost)
    : name_(std::move(name)),
      facilities_(std::move(facilities)),
      customers_(std::move(customers)),
      access_cost_(std::move(access_cost)),
      cost_(std::move(cost)) {
  if (facilities_.empty()) throw InstanceError("instance needs at least one facility");
  if (customers_.empty()) throw InstanceError("instance needs at least one customer");
  if (access_cost_.size() != facilities_.size() * customers_.size()) {
    throw InstanceError(fmt::format(
        "access matrix has {} entries, expected {} x {}", access_cost_.size(),
        facilities_.size(), customers_.size()));
  }
  if (name_.find_first_of(" \t\r\n#") != std::string::npos) {
    throw InstanceError("name must be a single token without '#'");
  }
  for (size_t i = 0; i < facilities_.size(); ++i) {
    const Facility& f = facilities_[i];
    const std::string where = fmt::format("facility {}: ", i);
    CheckFinite(f.fixed_cost, where + "fixed_cost");
    CheckFinite(f.operating_cost, where + "operating_cost");
    CheckFinite(f.serving_cost, where + "serving_cost");
    CheckFinite(f.waiting_cost, where + "waiting_cost");
    if (f.fixed_cost < 0) throw InstanceError(where + "fixed_cost must be non-negative");
    if (f.operating_cost < 0) {
      throw InstanceError(where + "operating_cost must be non-negative");
    }
    if (f.serving_cost < 0) throw InstanceError(where + "serving_cost must be non-negative");
    if (!(f.waiting_cost > 0)) throw InstanceError(where + "waiting_cost must be positive");
  }
  for (size_t j = 0; j < customers_.size(); ++j) {
    const std::string where = fmt::format("customer {}: ", j);
    CheckFinite(customers_[j].demand_rate, where + "demand_rate");
    if (!(customers_[j].demand_rate > 0)) {
      throw InstanceError(where + "demand_rate must be positive");
    }
  }
  for (size_t k = 0; k < access_cost_.size(); ++k) {
    const std::string where = fmt::format("access[{}][{}]: ", k / customers_.size(),
                                          k % customers_.size());
    CheckFinite(access_cost_[k], where + "access_cost");
    if (access_cost_[k] < 0) throw InstanceError(where + "access_cost must be non-negative");
  }
}

double Instance::total_demand() const {
  double total = 0.0;
  for (const Customer& c : customers_) total += c.demand_rate;
  return total;
}

Instance Instance::WithFamily(CostFamily family, double operating_cost) const {
  std::vector<Facility> facilities = facilities_;
  for (Facility& f : facilities) f.operating_cost = operating_cost;
  return Instance(name_, std::move(facilities), customers_, access_cost_,
                  CostFunction::Of(family));
}

bool operator==(const Instance& a, const Instance& b) {
  return a.name_ == b.name_ && a.family() == b.family() &&
         a.facilities_ == b.facilities_ && a.customers_ == b.customers_ &&
         a.access_cost_ == b.access_cost_;
}

Instance ParseInstance(std::istream& in) {
  LineReader reader(in);
  reader.Expect(kMagic, 1);
  if (reader.Integer(1, "version") != kFormatVersion) {
    reader.Fail(fmt::format("unsupported format version {}", reader.Field(1)));
  }
  reader.Expect("name", 1);
  reader.ExpectFieldCount(1);
  std::string name = reader.Field(1);

  reader.Expect("cost_family", 1);
  const auto family = ParseFamily(reader.Field(1));
  if (!family || *family == CostFamily::kCustom) {
    reader.Fail(fmt::format("unknown cost_family '{}'", reader.Field(1)));
  }

  reader.Expect("n_facilities", 1);
  const long num_facilities = reader.Integer(1, "n_facilities");
  if (num_facilities < 1) reader.Fail("n_facilities must be at least 1");
  reader.Expect("n_customers", 1);
  const long num_customers = reader.Integer(1, "n_customers");
  if (num_customers < 1) reader.Fail("n_customers must be at least 1");

  std::vector<Facility> facilities(num_facilities);
  for (long i = 0; i < num_facilities; ++i) {
    reader.Expect("facility", 5);
    reader.ExpectFieldCount(5);
    if (reader.Integer(1, "id") != i) {
      reader.Fail(fmt::format("expected facility id {}", i));
    }
    facilities[i] = {reader.Real(2, "fixed_cost"), reader.Real(3, "operating_cost"),
                     reader.Real(4, "serving_cost"), reader.Real(5, "waiting_cost")};
  }
  std::vector<Customer> customers(num_customers);
  for (long j = 0; j < num_customers; ++j) {
    reader.Expect("customer", 2);
    reader.ExpectFieldCount(2);
    if (reader.Integer(1, "id") != j) {
      reader.Fail(fmt::format("expected customer id {}", j));
    }
    customers[j].demand_rate = reader.Real(2, "demand_rate");
  }
  std::vector<double> access;
  access.reserve(static_cast<size_t>(num_facilities) * num_customers);
  for (long i = 0; i < num_facilities; ++i) {
    reader.Expect("access", 1);
    reader.ExpectFieldCount(static_cast<size_t>(num_customers) + 1);
    if (reader.Integer(1, "facility id") != i) {
      reader.Fail(fmt::format("expected access row for facility {}", i));
    }
    for (long j = 0; j < num_customers; ++j) {
      access.push_back(reader.Real(static_cast<size_t>(j) + 2, "access_cost"));
    }
  }
  if (reader.Next()) reader.Fail("trailing content after access matrix");

  return Instance(std::move(name), std::move(facilities), std::move(customers),
                  std::move(access), CostFunction::Of(*family));
}

Instance ReadInstance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError(fmt::format("cannot open '{}'", path.string()));
  try {
    return ParseInstance(in);
  } catch (const InstanceError& e) {
    throw InstanceError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void FormatInstance(const Instance& instance, std::ostream& out) {
  if (instance.family() == CostFamily::kCustom) {
    throw InstanceError("custom cost families cannot be serialized");
  }
  fmt::print(out, "{} {}\n", kMagic, kFormatVersion);
  fmt::print(out, "name {}\n", instance.name().empty() ? "unnamed" : instance.name());
  fmt::print(out, "cost_family {}\n", FamilyName(instance.family()));
  fmt::print(out, "n_facilities {}\n", instance.num_facilities());
  fmt::print(out, "n_customers {}\n", instance.num_customers());
  for (int i = 0; i < instance.num_facilities(); ++i) {
    const Facility& f = instance.facility(i);
    fmt::print(out, "facility {} {:.17g} {:.17g} {:.17g} {:.17g}\n", i,
               f.fixed_cost, f.operating_cost, f.serving_cost, f.waiting_cost);
  }
  for (int j = 0; j < instance.num_customers(); ++j) {
    fmt::print(out, "customer {} {:.17g}\n", j, instance.customer(j).demand_rate);
  }
  for (int i = 0; i < instance.num_facilities(); ++i) {
    fmt::print(out, "access {}", i);
    for (double a : instance.access_row(i)) fmt::print(out, " {:.17g}", a);
    out << '\n';
  }
}

void WriteInstance(const Instance& instance, const std::filesystem::path& path) {
  std::ostringstream buffer;
  FormatInstance(instance, buffer);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InstanceError(fmt::format("cannot write '{}'", path.string()));
  out << buffer.str();
  if (!out) throw InstanceError(fmt::format("write failed for '{}'", path.string()));
}

Instance GenerateInstance(int num_facilities, int num_customers,
                          std::uint64_t seed, CostFamily family,
                          const GeneratorOptions& options, std::string name) {
  if (num_facilities < 1 || num_customers < 1) {
    throw InstanceError("generator needs at least one facility and one customer");
  }
  if (family == CostFamily::kCustom) {
    throw InstanceError("generator supports built-in cost families only");
  }
  CheckRange(options.fixed_cost, "fixed_cost");
  CheckRange(options.demand_rate, "demand_rate");
  CheckRange(options.access_cost, "access_cost");
  CheckRange(options.serving_cost, "serving_cost");
  CheckRange(options.waiting_cost, "waiting_cost");

  std::mt19937_64 rng(seed);
  const double operating_cost = DefaultOperatingCost(family);
  std::vector<Facility> facilities(num_facilities);
  for (Facility& f : facilities) {
    f.fixed_cost = Uniform(rng, options.fixed_cost);
    f.serving_cost = Uniform(rng, options.serving_cost);
    f.waiting_cost = Uniform(rng, options.waiting_cost);
    f.operating_cost = operating_cost;
  }
  std::vector<Customer> customers(num_customers);
  for (Customer& c : customers) c.demand_rate = Uniform(rng, options.demand_rate);
  std::vector<double> access(static_cast<size_t>(num_facilities) * num_customers);
  for (double& a : access) a = Uniform(rng, options.access_cost);

  if (name.empty()) {
    name = fmt::format("gen-{}x{}-s{}", num_facilities, num_customers, seed);
  }
  return Instance(std::move(name), std::move(facilities), std::move(customers),
                  std::move(access), CostFunction::Of(family));
}

const std::vector<SuiteEntry>& ReferenceSuite() {
  static const std::vector<SuiteEntry> kSuite = {
      {"P1", 10, 50},  {"P2", 10, 50},   {"P3", 10, 50},   {"P4", 10, 50},
      {"P13", 20, 50}, {"P14", 20, 50},  {"P15", 20, 50},  {"P16", 20, 50},
      {"P25", 30, 150}, {"P26", 30, 150}, {"P27", 30, 150}, {"P28", 30, 150},
      {"P41", 10, 90}, {"P42", 20, 80},  {"P43", 30, 70},  {"P44", 10, 90},
      {"P45", 20, 80}, {"P46", 30, 70},  {"P47", 10, 90},  {"P48", 20, 80},
      {"P49", 30, 70}, {"P50", 10, 100}, {"P51", 10, 100}, {"P52", 10, 100},
      {"P53", 20, 100}, {"P54", 10, 100}, {"P55", 20, 100},
  };
  return kSuite;
}

std::vector<Instance> GenerateSuite(std::uint64_t seed, CostFamily family,
                                    const GeneratorOptions& options) {
  std::mt19937_64 seeds(seed);
  std::vector<Instance> suite;
  for (const SuiteEntry& entry : ReferenceSuite()) {
    suite.push_back(GenerateInstance(entry.num_facilities, entry.num_customers,
                                     seeds(), family, options, entry.name));
  }
  return suite;
}

std::array<double, 4> CostBreakdown::Shares() const {
  if (!(total > 0)) return {0.0, 0.0, 0.0, 0.0};
  return {100.0 * opening / total, 100.0 * serving / total,
          100.0 * access / total, 100.0 * waiting / total};
}

Solution Solution::Empty(const Instance& instance) {
  Solution s;
  s.open.assign(instance.num_facilities(), false);
  s.assignment.assign(instance.num_customers(), kUnassigned);
  s.capacity.assign(instance.num_facilities(), 0.0);
  return s;
}

double Solution::ArrivalRate(const Instance& instance, int i) const {
  double rate = 0.0;
  for (int j = 0; j < static_cast<int>(assignment.size()); ++j) {
    if (assignment[j] == i) rate += instance.customer(j).demand_rate;
  }
  return rate;
}

int Solution::NumOpen() const {
  int n = 0;
  for (bool o : open) n += o ? 1 : 0;
  return n;
}

double Solution::AverageCapacity() const {
  double sum = 0.0;
  int n = 0;
  for (size_t i = 0; i < open.size(); ++i) {
    if (open[i]) {
      sum += capacity[i];
      ++n;
    }
  }
  return n == 0 ? 0.0 : sum / n;
}

}  // namespace eosssd
