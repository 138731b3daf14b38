#pragma once

#include "hilbcalc/builtin_models.hpp"
#include "hilbcalc/oracles.hpp"
#include "hilbcalc/serialize.hpp"
#include "hilbcalc/suites.hpp"

#include <chrono>
#include <random>
#include <string>
#include <vector>

namespace hilbcalc::suites {

inline std::vector<const SurfaceModel*> models_or(const SuiteOptions& opts, const std::vector<std::string>& names) {
  if (!opts.models.empty()) return opts.models;
  std::vector<const SurfaceModel*> out;
  for (const auto& n : names) out.push_back(&builtin_model(n));
  return out;
}

inline const std::vector<std::string>& all_builtins() {
  static const std::vector<std::string> names = {"P2", "P1xP1", "K3like", "Abelianlike"};
  return names;
}

inline std::string show(const SurfaceModel& m, const FockVector& v) {
  auto s = fock_to_text(m, v);
  if (s.size() > 240) s = s.substr(0, 240) + "...";
  return s;
}

inline std::string name(const SurfaceModel& m, int c) { return m.basis(c).name; }

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// suite bodies, one per acceptance criterion
SuiteResult heisenberg(const SuiteOptions&);
SuiteResult virasoro(const SuiteOptions&);
SuiteResult chern_commutator(const SuiteOptions&);
SuiteResult pushforward(const SuiteOptions&);
SuiteResult leading_terms(const SuiteOptions&);
SuiteResult round_trip(const SuiteOptions&);
SuiteResult ring_axioms(const SuiteOptions&);
SuiteResult stability(const SuiteOptions&);
SuiteResult shape(const SuiteOptions&);
SuiteResult generators(const SuiteOptions&);
SuiteResult transport(const SuiteOptions&);
SuiteResult gottsche(const SuiteOptions&);
SuiteResult worked_constants(const SuiteOptions&);

void pushforward_checks(const SurfaceModel& model, SuiteResult& r);

}  // namespace hilbcalc::suites
