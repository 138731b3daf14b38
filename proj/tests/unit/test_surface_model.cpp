#include "../support.hpp"

#include "hilbcalc/oracles.hpp"

#include <nlohmann/json.hpp>

using namespace hilbcalc;
using namespace support;
using nlohmann::json;

namespace {

json source(const std::string& name) { return json::parse(builtin_model_source(name)); }

bool has_issue(const ValidationReport& r, const std::string& axiom, const std::string& text = "") {
  for (const auto& i : r.issues)
    if (i.axiom == axiom && (text.empty() || i.message.find(text) != std::string::npos)) return true;
  return false;
}

}  // namespace

TEST_CASE("builtin models load and validate", "[surface]") {
  for (const auto& name : builtin_model_names()) {
    const auto& m = builtin_model(name);
    INFO(name);
    CHECK(m.validate().ok());
    CHECK(m.nondegenerate());
  }
  CHECK(P2().size() == 3);
  CHECK(P2().betti() == std::vector<int>{1, 0, 1, 0, 1});
  CHECK(Ab().betti() == std::vector<int>{1, 2, 2, 2, 1});
  CHECK_THROWS_AS(builtin_model("nope"), std::out_of_range);
}

TEST_CASE("multiplication and integration on P2", "[surface]") {
  const auto& m = P2();
  CHECK(m.mul(cls(m, "h"), cls(m, "h")) == cls(m, "p"));
  CHECK(m.mul(cls(m, "h"), cls(m, "p")).is_zero());
  for (int i = 0; i < m.size(); ++i) CHECK(m.mul(cls(m, "1"), CohClass::basis(i)) == CohClass::basis(i));
  CHECK(m.integrate(cls(m, "p")) == 1);
  CHECK(m.integrate(cls(m, "1")) == 0);
  CHECK(m.integrate(cls(m, "p", 3) - cls(m, "p", 2)) == 1);
  // K^2 = 9, e = 3
  CHECK(m.integrate(m.mul(m.canonical_class(), m.canonical_class())) == 9);
  CHECK(m.integrate(m.euler_class()) == 3);
}

TEST_CASE("odd classes anticommute", "[surface]") {
  const auto& m = Ab();
  for (const char* g : {"a", "b", "al", "bl"}) CHECK(m.mul(cls(m, g), cls(m, g)).is_zero());
  CHECK(m.mul(cls(m, "a"), cls(m, "b")) == cls(m, "eta"));
  CHECK(m.mul(cls(m, "b"), cls(m, "a")) == cls(m, "eta", -1));
  CHECK(m.parity_of(cls(m, "al")) == 1);
  CHECK_THROWS(m.parity_of(cls(m, "a") + cls(m, "l")));
}

TEST_CASE("diagonal pushforward", "[surface][pushforward]") {
  const auto& m = P2();
  const auto t21 = tensor(m, {{{"1", "p"}, 1}, {{"h", "h"}, 1}, {{"p", "1"}, 1}});
  const auto t2h = tensor(m, {{{"h", "p"}, 1}, {{"p", "h"}, 1}});
  CHECK(m.tau_push(2, cls(m, "1")) == t21);
  CHECK(m.tau_push(2, cls(m, "h")) == t2h);
  CHECK(m.tau_push(0, cls(m, "p")) == TensorClass::scalar(1));
  CHECK(m.tau_push(0, cls(m, "h")).is_zero());
  CHECK(m.tau_push(1, cls(m, "h")) == tensor(m, {{{"h"}, 1}}));
  for (int k = 1; k <= 4; ++k) {
    TensorClass pts(k);
    pts.add(Tuple(k, m.point()), 1);
    CHECK(m.tau_push(k, cls(m, "p")) == pts);
  }
  // every builtin model: engine against the pairing equations
  for (const auto& name : builtin_model_names()) {
    const auto& mm = builtin_model(name);
    for (int a = 0; a < mm.size(); ++a)
      for (int k = 1; k <= 3; ++k) CHECK(mm.tau_push(k, CohClass::basis(a)) == oracle::tau_push(mm, k, CohClass::basis(a)));
  }
}

TEST_CASE("tensor operations", "[surface][pushforward]") {
  const auto& m = P2();
  const auto t = m.tau_push(2, cls(m, "1"));
  CHECK(m.tensor_absorb(t, 1, cls(m, "h")) == m.tau_push(2, cls(m, "h")));
  CHECK(m.tensor_absorb(t, 2, cls(m, "1")) == t);
  CHECK(m.tensor_contract(t, 1, 2) == tensor(m, {{{"p"}, 3}}));
  CHECK(m.tensor_contract(m.tau_push(2, cls(m, "p")), 1, 2).is_zero());
  CHECK(m.tensor_integrate_slot(m.tau_push(1, cls(m, "h")), 1, cls(m, "h")) == TensorClass::scalar(1));
  const auto refined = m.tensor_refine(m.tau_push(3, cls(m, "h")), 2, 2);
  CHECK(refined == m.tau_push(4, cls(m, "h")));
  CHECK(m.tensor_contract(refined, 2, 3) == m.tensor_absorb(m.tau_push(3, cls(m, "h")), 2, m.euler_class()));
}

TEST_CASE("odd signs in the pushforward", "[surface][pushforward]") {
  const auto& m = Ab();
  // <tau_2(x), b_i ⊗ b_j> = ∫ x b_i b_j, Koszul sign included
  for (int a = 0; a < m.size(); ++a) {
    const auto t = m.tau_push(2, CohClass::basis(a));
    for (int i = 0; i < m.size(); ++i)
      for (int j = 0; j < m.size(); ++j) {
        const Rational expect = m.integrate(m.mul(m.mul(CohClass::basis(a), CohClass::basis(i)), CohClass::basis(j)));
        CHECK(m.tensor_pairing(t, {i, j}) == expect);
      }
  }
}

TEST_CASE("validation failures name the axiom", "[surface]") {
  {
    auto doc = source("Abelianlike");
    for (auto& e : doc["mult"])
      if ((e["i"] == "eta" && e["j"] == "l") || (e["i"] == "l" && e["j"] == "eta")) e["c"] = "2";
    const auto m = SurfaceModel::from_json(doc);
    const auto r = m.validate();
    CHECK_FALSE(r.ok());
    CHECK(has_issue(r, "associativity", "(a*b)*l"));
    CHECK_THROWS_AS(SurfaceModel::load(doc), InvalidModel);
  }
  {
    auto doc = source("P2");
    doc["integral"]["p"] = "2";
    CHECK(has_issue(SurfaceModel::from_json(doc).validate(), "point class", "not normalized"));
  }
  {
    auto doc = source("P2");
    doc.erase("point_class");
    CHECK_THROWS_AS(SurfaceModel::from_json(doc), SchemaError);
  }
  {
    auto doc = source("P2");
    doc["integral"]["p"] = 1.0;
    CHECK_THROWS_AS(SurfaceModel::from_json(doc), SchemaError);
  }
  {
    auto doc = source("P2");
    doc["euler_class"]["p"] = "4";
    CHECK(has_issue(SurfaceModel::from_json(doc).validate(), "euler class"));
  }
}

TEST_CASE("serialization round trip and fingerprint", "[surface]") {
  const auto& m = P2();
  const auto again = SurfaceModel::load(m.to_json());
  CHECK(again.fingerprint() == m.fingerprint());
  CHECK(m.fingerprint().size() == 64);
  auto doc = m.to_json();
  doc["canonical_class"]["h"] = "3";
  CHECK(SurfaceModel::from_json(doc).fingerprint() != m.fingerprint());
}
