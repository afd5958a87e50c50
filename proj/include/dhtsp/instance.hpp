#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace dhtsp {

/// Dense symmetric cost matrix over one vehicle's vertex set.
/// Index 0 is that vehicle's depot, indices 1..n are the shared targets.
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(std::size_t dim, double fill = 0.0) : dim_(dim), data_(dim * dim, fill) {}

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const double* row(std::size_t i) const { return data_.data() + i * dim_; }

  bool operator==(const CostMatrix&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

using Point = std::array<double, 2>;

/// Coordinates a generated instance was derived from. Metadata only.
struct Layout {
  Point depot1{};
  Point depot2{};
  std::vector<Point> targets;

  bool operator==(const Layout&) const = default;
};

/// A two-depot heterogeneous TSP instance. Immutable once built.
struct Instance {
  std::size_t n_targets = 0;
  CostMatrix cost1;  // over {d1} + T
  CostMatrix cost2;  // over {d2} + T
  std::vector<std::string> names;
  std::optional<Layout> layout;

  bool operator==(const Instance&) const = default;
};

/// Raised when the matrices do not even have the right shape. Distinct from
/// rule violations, which are reported through ValidationReport.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or incomplete instance document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Rule { Negative, Symmetry, Diagonal, Triangle1, Triangle2, Dominance };

const char* rule_name(Rule rule);

struct Violation {
  Rule rule;
  std::vector<std::size_t> indices;  // matrix indices of the offending entry or triple
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  // Set when the violation list was cut short.
  bool truncated = false;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

struct ValidateOptions {
  double triangle_rel_tol = 1e-9;
  std::size_t max_violations = 100;
};

/// Checks the instance rules. Throws StructureError on dimension mismatch.
ValidationReport validate(const Instance& instance, const ValidateOptions& options = {});

/// Places both depots and n targets uniformly in [0, box]^2. cost1 is the
/// Euclidean metric, cost2 is alpha times the Euclidean metric.
/// Throws std::invalid_argument when alpha < 1.
Instance generate(std::size_t n, double alpha, std::uint64_t seed, double box = 100.0);

nlohmann::json to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& doc);

Instance read_json(const std::filesystem::path& path);
void write_json(const Instance& instance, const std::filesystem::path& path);

}  // namespace dhtsp
