#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fraclap {

struct CriterionResult {
  int criterion_id;
  std::string description;
  double measured;
  double tolerance;
  bool pass;
  std::string detail;
};

struct AcceptanceOptions {
  /// Seed of every randomized suite; equal seeds give identical results.
  std::uint64_t seed = 1;
};

inline constexpr int kCriterionCount = 10;

/// Runs one acceptance criterion (1..10). Numerical failures are reported
/// in the result; only invalid ids throw.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});

/// Runs the given criteria concurrently (all when ids is empty) and returns
/// them ordered by id.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {}, std::span<const int> ids = {});

/// One line: "criterion N: PASS|FAIL  description  measured=... tolerance=...".
std::string format_line(const CriterionResult& r);

/// Scorecard entries {criterion_id, description, measured, tolerance, pass, detail}.
nlohmann::json scorecard_json(std::span<const CriterionResult> results);

}  // namespace fraclap
