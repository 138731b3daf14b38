#pragma once

#include "catch_amalgamated.hpp"

#include "hilbcalc/builtin_models.hpp"
#include "hilbcalc/hilbert_ring.hpp"
#include "hilbcalc/serialize.hpp"

#include <string>
#include <utility>
#include <vector>

namespace support {

using namespace hilbcalc;

inline const SurfaceModel& P2() { return builtin_model("P2"); }
inline const SurfaceModel& P1xP1() { return builtin_model("P1xP1"); }
inline const SurfaceModel& K3() { return builtin_model("K3like"); }
inline const SurfaceModel& Ab() { return builtin_model("Abelianlike"); }

inline CohClass cls(const SurfaceModel& m, const std::string& name, const Rational& c = 1) {
  return CohClass::basis(m.index_of(name), c);
}

// c * a_{-r_1}(x_1) a_{-r_2}(x_2) ... |0>, factors in the order given
inline FockVector word(const SurfaceModel& m, const std::vector<std::pair<int, std::string>>& fs, const Rational& c = 1) {
  std::vector<Factor> w;
  for (const auto& [r, n] : fs) w.push_back({r, m.index_of(n)});
  Monomial out;
  const int s = canonicalize(m, w, out);
  if (s == 0) return {};
  return FockVector::monomial(out, c * s);
}

inline TensorClass tensor(const SurfaceModel& m, const std::vector<std::pair<std::vector<std::string>, Rational>>& terms) {
  TensorClass t(terms.empty() ? 0 : static_cast<int>(terms.front().first.size()));
  for (const auto& [names, c] : terms) {
    Tuple tup;
    for (const auto& n : names) tup.push_back(m.index_of(n));
    t.add(tup, c);
  }
  return t;
}

inline Key key(const SurfaceModel& m, const std::vector<std::pair<std::string, std::vector<int>>>& parts) {
  Key k;
  for (const auto& [n, p] : parts) k.parts[m.index_of(n)] = p;
  return k;
}

}  // namespace support

namespace Catch {
template <>
struct StringMaker<hilbcalc::Rational> {
  static std::string convert(const hilbcalc::Rational& q) { return hilbcalc::to_string(q); }
};
}  // namespace Catch
