#pragma once

#include "hilbcalc/surface_model.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hilbcalc {

class Store;

struct SuiteOptions {
  /// Models to run on; empty means the suite's own default set.
  std::vector<const SurfaceModel*> models;
  std::uint64_t seed = 20240531;
  Store* store = nullptr;
};

struct SuiteResult {
  std::string suite;
  std::size_t checks = 0;
  std::vector<std::string> failures;  // first few failures, human readable
  std::size_t failure_count = 0;
  std::vector<std::string> notes;
  double seconds = 0;
  bool passed() const { return failure_count == 0 && checks > 0; }

  /// Records one check; keeps the first 20 failure messages.
  void check(bool ok, const std::function<std::string()>& what);
  nlohmann::json to_json() const;
};

struct SuiteInfo {
  int criterion;
  std::string name;
  std::string title;
  std::function<SuiteResult(const SuiteOptions&)> run;
};

/// The acceptance suites, in criterion order.
const std::vector<SuiteInfo>& all_suites();
const SuiteInfo* find_suite(const std::string& name);

/// Validation plus the pushforward identities on a single model (used by surface-check).
SuiteResult surface_identities(const SurfaceModel& model);

}  // namespace hilbcalc
