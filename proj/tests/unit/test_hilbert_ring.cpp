#include "../support.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

using namespace hilbcalc;
using namespace support;

TEST_CASE("partition-valued keys", "[ring]") {
  const auto& m = Ab();
  for (int w = 1; w <= 4; ++w) {
    const auto keys = keys_of_weight(m, w);
    CHECK(keys.size() == enumerate_monomials(m, w).size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const auto& k = keys[i];
      CHECK(is_valid(m, k));
      CHECK(weight(k) == w);
      if (i > 0) CHECK(key_less(keys[i - 1], k));
      const auto v = key_vector(m, k);
      REQUIRE(v.size() == 1);
      const auto& [mono, sign] = *v.terms().begin();
      const auto [back, s] = key_of(m, mono);
      CHECK(back == k);
      CHECK(Rational(s) == sign);
      CHECK(key_from_json(m, key_to_json(m, k)) == k);
    }
  }
  const auto k = key(P2(), {{"h", {1, 1}}, {"p", {2}}});
  CHECK(key_to_text(P2(), k) == "{h:(1,1), p:(2)}");
  CHECK(degree(P2(), k) == 2 + 2 + 6);
  CHECK_FALSE(is_valid(m, key(m, {{"a", {1, 1}}})));
  CHECK_THROWS(key_from_json(m, nlohmann::json::parse(R"([{"c":"a","parts":[1,1]}])")));
  CHECK(key_union(key(P2(), {{"h", {2}}}), key(P2(), {{"h", {3, 1}}})) == key(P2(), {{"h", {3, 2, 1}}}));
}

TEST_CASE("structure constants", "[ring]") {
  const auto& m = P2();
  CupEngine engine(m);
  const auto h1 = key(m, {{"h", {1}}});
  const StructureRow expect = {{key(m, {{"h", {1, 1}}}), 1}, {key(m, {{"p", {1}}}), 1}};
  CHECK(structure_constants(engine, h1, h1) == expect);
  // the empty key is the unit
  for (const auto& s : enumerate_keys(m, 3)) CHECK(structure_constants(engine, Key{}, s) == StructureRow{{s, 1}});
  // top coefficient
  for (const auto& r : enumerate_keys(m, 2))
    for (const auto& s : enumerate_keys(m, 2)) CHECK(structure_constants(engine, r, s).at(key_union(r, s)) == 1);

  const auto& ab = Ab();
  CupEngine eab(ab);
  const auto a1 = key(ab, {{"a", {1}}});
  CHECK(structure_constants(eab, a1, a1).empty());
  const auto b1 = key(ab, {{"b", {1}}});
  const auto ab_row = structure_constants(eab, a1, b1);
  auto ba_row = structure_constants(eab, b1, a1);
  for (auto& [k, c] : ba_row) c = -c;
  CHECK(ab_row == ba_row);
}

TEST_CASE("stability of the table", "[ring]") {
  const auto& m = P2();
  CupEngine engine(m);
  const auto h1 = key(m, {{"h", {1}}});
  auto r = verify_stability(engine, h1, h1, {2, 3, 4});
  CHECK(r.ok());
  CHECK(r.checked_n == std::vector<int>{2, 3, 4});
  const auto two = key(m, {{"1", {2}}});
  CHECK(verify_stability(engine, two, two, {4, 5}).ok());
  CHECK_THROWS(verify_stability(engine, two, two, {1}));
}

TEST_CASE("generator transition", "[ring]") {
  const auto& m = P2();
  CupEngine engine(m);
  const auto t1 = generator_transition(engine, 1);
  CHECK(t1.unitriangular);
  for (const auto& g : t1.keys) CHECK(t1.forward.at(g) == StructureRow{{g, 1}});
  const auto t2 = generator_transition(engine, 2);
  const StructureRow hh = {{key(m, {{"h", {1, 1}}}), 1}, {key(m, {{"p", {1}}}), 1}};
  CHECK(t2.forward.at(key(m, {{"h", {1, 1}}})) == hh);
  CHECK(t2.inverse.at(key(m, {{"h", {1, 1}}})) ==
        StructureRow{{key(m, {{"h", {1, 1}}}), 1}, {key(m, {{"p", {1}}}), -1}});
  CHECK_THROWS(generator_transition(engine, 0));
}

TEST_CASE("transport of structure tables", "[ring][transport]") {
  const auto& p2 = P2();
  BasisMap id;
  for (int i = 0; i < p2.size(); ++i) id.push_back(CohClass::basis(i));
  CupEngine e1(p2), e2(p2);
  CHECK(transport_isomorphism(e1, e2, id, 4).ok());

  const auto& q = P1xP1();
  const BasisMap naive = {cls(q, "1"), cls(q, "f1"), cls(q, "p")};
  CupEngine eq(q);
  try {
    transport_isomorphism(e1, eq, naive, 3);
    FAIL("expected a precondition error");
  } catch (const TransportPrecondition& e) {
    CHECK(std::string(e.what()).find("K^2 is 9 on P2 and 8 on P1xP1") != std::string::npos);
  }

  // swapping the rulings is an isomorphism, rescaling them is not (K moves)
  const BasisMap swap = {cls(q, "1"), cls(q, "f2"), cls(q, "f1"), cls(q, "p")};
  CupEngine eq2(q);
  CHECK(transport_isomorphism(eq, eq2, swap, 4).ok());
  const BasisMap scale = {cls(q, "1"), cls(q, "f1", 2), cls(q, "f2", Rational(1, 2)), cls(q, "p")};
  CHECK_THROWS_WITH(validate_transport_map(q, q, scale), Catch::Matchers::ContainsSubstring("K_X"));
  const BasisMap squash = {cls(q, "1"), cls(q, "f1"), cls(q, "f1"), cls(q, "p")};
  CHECK_THROWS_AS(validate_transport_map(q, q, squash), TransportPrecondition);
  // a map that does not respect products
  const auto& k3 = K3();
  const BasisMap twist = {cls(k3, "1"), cls(k3, "e1") + cls(k3, "e2"), cls(k3, "e2"), cls(k3, "p")};
  CHECK_THROWS_AS(validate_transport_map(k3, k3, twist), TransportPrecondition);
}

TEST_CASE("structure table export", "[ring]") {
  const auto& m = P2();
  CupEngine engine(m);
  std::ostringstream one, three;
  write_structure_table(engine, 3, one, 1);
  CupEngine fresh(m);
  write_structure_table(fresh, 3, three, 3);
  CHECK(one.str() == three.str());

  std::ifstream golden(HILBCALC_FIXTURES "/p2_table_w3.jsonl");
  REQUIRE(golden);
  std::stringstream expect;
  expect << golden.rdbuf();
  CHECK(one.str() == expect.str());

  const auto first = nlohmann::json::parse(one.str().substr(0, one.str().find('\n')));
  CHECK(first.at("rho") == nlohmann::json::parse(R"([{"c":"1","parts":[1]}])"));
  CHECK(first.at("terms").at(0).at("d") == "1");
}
