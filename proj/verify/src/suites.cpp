#include "suite_common.hpp"

#include <nlohmann/json.hpp>

namespace hilbcalc {

void SuiteResult::check(bool ok, const std::function<std::string()>& what) {
  ++checks;
  if (ok) return;
  ++failure_count;
  if (failures.size() < 20) failures.push_back(what());
}

nlohmann::json SuiteResult::to_json() const {
  return {{"suite", suite},         {"passed", passed()}, {"checks", checks},
          {"failures", failure_count}, {"examples", failures}, {"notes", notes},
          {"seconds", seconds}};
}

const std::vector<SuiteInfo>& all_suites() {
  using namespace suites;
  static const std::vector<SuiteInfo> list = {
      {1, "heisenberg", "Heisenberg commutation relations", suites::heisenberg},
      {2, "virasoro", "Virasoro and derivative identities", virasoro},
      {3, "chern-commutator", "Chern character commutators", chern_commutator},
      {4, "pushforward", "diagonal pushforward identities and Euler correction", pushforward},
      {5, "leading-terms", "leading-term constants", leading_terms},
      {6, "round-trip", "basis conversion round trips", round_trip},
      {7, "ring-axioms", "ring axioms of the cup product", ring_axioms},
      {8, "stability", "stability of structure constants", stability},
      {9, "shape", "universal shape of Chern character products", shape},
      {10, "generators", "generator transition matrix", generators},
      {11, "transport", "transport along ring isomorphisms", transport},
      {12, "gottsche", "Betti numbers against the product formula", gottsche},
      {13, "worked-constants", "worked constants against hand expansions", worked_constants},
  };
  return list;
}

const SuiteInfo* find_suite(const std::string& name) {
  for (const auto& s : all_suites())
    if (s.name == name) return &s;
  return nullptr;
}

SuiteResult surface_identities(const SurfaceModel& model) {
  SuiteResult r;
  r.suite = "surface-check";
  suites::Timer timer;
  const auto report = model.validate();
  for (const auto& issue : report.issues) {
    std::string msg = issue.axiom + ": " + issue.message;
    r.check(false, [&] { return msg; });
  }
  r.check(report.ok(), [] { return std::string("model validation failed"); });
  if (report.ok()) suites::pushforward_checks(model, r);
  r.seconds = timer.seconds();
  return r;
}

}  // namespace hilbcalc
