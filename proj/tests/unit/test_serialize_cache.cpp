#include "../support.hpp"

#include "hilbcalc/cache.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <random>

using namespace hilbcalc;
using namespace support;
using nlohmann::json;

namespace {

std::filesystem::path scratch_dir(const std::string& tag) {
  std::random_device rd;
  auto dir = std::filesystem::temp_directory_path() / ("hilbcalc-test-" + tag + "-" + std::to_string(rd()));
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("rationals", "[serialize]") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-3")) == "-3");
  CHECK(to_string(fraction(4, -2)) == "-2");
  CHECK_THROWS(parse_rational("1.5"));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational(""));
  CHECK(factorial(5) == 120);
  CHECK(binomial(5, 2) == 10);
}

TEST_CASE("Fock vectors as JSON", "[serialize]") {
  const auto& m = Ab();
  const auto v = word(m, {{1, "b"}, {2, "a"}}, Rational(-2, 3)) + word(m, {{1, "1"}});
  const auto j = fock_to_json(m, v);
  CHECK(fock_from_json(m, j) == v);
  // factors may come in any order; the sign follows
  const auto swapped = json::parse(R"([{"factors":[{"r":2,"c":"a"},{"r":1,"c":"b"}],"coeff":"2/3"}])");
  CHECK(fock_from_json(m, swapped) == word(m, {{1, "b"}, {2, "a"}}, Rational(-2, 3)));
  // integer coefficients are accepted
  CHECK(fock_from_json(m, json::parse(R"([{"factors":[],"coeff":3}])")) == 3 * FockVector::vacuum());
  CHECK_THROWS(fock_from_json(m, json::parse(R"([{"factors":[{"r":0,"c":"a"}],"coeff":"1"}])")));
  CHECK_THROWS(fock_from_json(m, json::parse(R"([{"factors":[{"r":1,"c":"zz"}],"coeff":"1"}])")));
  CHECK(fock_to_text(P2(), word(P2(), {{2, "h"}, {1, "1"}}, Rational(1, 2))) == "1/2 a_{-1}(1) a_{-2}(h)|0>");
  CHECK(fock_to_text(P2(), FockVector{}) == "0");
}

TEST_CASE("operators and polynomials as JSON", "[serialize]") {
  const auto& m = P2();
  const auto op = normal_order(m, {{2, -1, -1}, m.tau_push(3, cls(m, "1"))});
  CHECK(operator_from_json(m, operator_to_json(m, op)) == op);
  CupEngine engine(m);
  const auto p = engine.to_g_basis({{3, m.index_of("h")}});
  CHECK(gpolynomial_from_json(m, gpolynomial_to_json(m, p)) == p);
  CHECK(cohclass_from_json(m, json("h")) == cls(m, "h"));
  CHECK(cohclass_from_json(m, json::parse(R"({"h":"2","p":"-1/2"})")) == cls(m, "h", 2) + cls(m, "p", Rational(-1, 2)));
}

TEST_CASE("file store", "[cache]") {
  const auto dir = scratch_dir("store");
  {
    FileStore store(dir);
    CHECK_FALSE(store.get("k").has_value());
    store.put("k", "value one");
    CHECK(store.get("k") == std::optional<std::string>("value one"));
    store.put("k", "value one");
    CHECK(store.hits() == 1);
    CHECK(store.misses() == 1);
  }
  {
    FileStore again(dir);
    CHECK(again.get("k") == std::optional<std::string>("value one"));
  }
  // entries written under another version are ignored
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path());
    auto doc = json::parse(in);
    in.close();
    doc["version"] = FileStore::kVersion + 1;
    std::ofstream(e.path()) << doc.dump();
  }
  FileStore stale(dir);
  CHECK_FALSE(stale.get("k").has_value());
  std::filesystem::remove_all(dir);
}

TEST_CASE("cached results equal fresh ones", "[cache]") {
  const auto& m = Ab();
  const auto dir = scratch_dir("engine");
  FileStore store(dir);
  MemoryStore memory;
  CupEngine cold(m), warm(m, &store), mem(m, &memory);
  std::vector<Monomial> monos;
  for (int w = 1; w <= 3; ++w)
    for (const auto& mono : enumerate_monomials(m, w)) monos.push_back(mono);
  for (const auto& mono : monos) {
    const auto fresh = cold.to_g_basis(mono);
    CHECK(warm.to_g_basis(mono) == fresh);
    CHECK(mem.to_g_basis(mono) == fresh);
  }
  CHECK(memory.size() >= monos.size());
  CupEngine reread(m, &store);
  for (const auto& mono : monos) CHECK(reread.to_g_basis(mono) == cold.to_g_basis(mono));
  CHECK(store.hits() >= monos.size());
  std::filesystem::remove_all(dir);
}
