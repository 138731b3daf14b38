#include "../support.hpp"

#include "hilbcalc/oracles.hpp"

using namespace hilbcalc;
using namespace support;

TEST_CASE("creation and annihilation", "[fock]") {
  const auto& m = P2();
  const auto vac = FockVector::vacuum();
  const auto ah = create(m, 1, cls(m, "h"), vac);
  CHECK(ah == word(m, {{1, "h"}}));
  CHECK(ah.coeff({{1, m.index_of("h")}}) == 1);
  CHECK(annihilate(m, 2, cls(m, "h"), word(m, {{2, "h"}})) == -2 * vac);
  CHECK(annihilate(m, 1, cls(m, "h"), vac).is_zero());
  CHECK(annihilate(m, 1, cls(m, "h"), word(m, {{2, "h"}})).is_zero());
  CHECK(heisenberg(m, 0, 0, ah).is_zero());

  const auto& ab = Ab();
  const auto ga = create(ab, 1, cls(ab, "a"), vac);
  CHECK(create(ab, 1, cls(ab, "a"), ga).is_zero());
  // odd factors anticommute
  CHECK(word(ab, {{1, "a"}, {1, "b"}}) == -1 * word(ab, {{1, "b"}, {1, "a"}}));
  CHECK(word(ab, {{2, "a"}, {1, "a"}}) == -1 * word(ab, {{1, "a"}, {2, "a"}}));
}

TEST_CASE("bidegree of a creation monomial", "[fock]") {
  const auto& m = P2();
  for (int r = 1; r <= 4; ++r)
    for (const char* c : {"1", "h", "p"}) {
      const auto v = word(m, {{r, c}});
      const auto& mono = v.terms().begin()->first;
      CHECK(weight(mono) == r);
      CHECK(degree(m, mono) == m.degree(m.index_of(c)) + 2 * (r - 1));
    }
}

TEST_CASE("indexed monomials on Künneth tensors", "[fock]") {
  const auto& m = P2();
  const auto vac = FockVector::vacuum();
  const auto t = m.tau_push(2, cls(m, "1"));
  // sum over Künneth terms of -∫ a b
  CHECK(apply_indexed_monomial(m, {1, -1}, t, vac) == -3 * vac);
  const auto pts = m.tau_push(2, cls(m, "p"));
  CHECK(apply_indexed_monomial(m, {-1, -1}, pts, vac) == word(m, {{1, "p"}, {1, "p"}}));
  CHECK(apply_indexed_monomial(m, {}, TensorClass::scalar(5), word(m, {{2, "h"}})) == word(m, {{2, "h"}}, 5));
  CHECK_THROWS(apply_indexed_monomial(m, {1}, t, vac));
}

TEST_CASE("bilinear form", "[fock]") {
  const auto& m = P2();
  const auto vac = FockVector::vacuum();
  CHECK(pairing(m, vac, vac) == 1);
  CHECK(pairing(m, word(m, {{1, "h"}}), word(m, {{1, "h"}})) == 1);
  CHECK(pairing(m, word(m, {{2, "h"}}), word(m, {{1, "h"}, {1, "h"}})) == 0);
  // (a_{-2}(1), a_{-2}(p)) = -2
  CHECK(pairing(m, word(m, {{2, "1"}}), word(m, {{2, "p"}})) == -2);
  // a_{-1}(p)^n|0> is the class of a point of X^[n]
  for (int n = 1; n <= 4; ++n) {
    FockVector pt = vac;
    for (int i = 0; i < n; ++i) pt = create(m, 1, cls(m, "p"), pt);
    CHECK(pairing(m, pt, fundamental_class(m, n)) == 1);
  }
}

TEST_CASE("bilinear form is super-symmetric", "[fock]") {
  for (const auto& name : builtin_model_names()) {
    const auto& m = builtin_model(name);
    for (int n = 1; n <= 3; ++n) {
      const auto basis = enumerate_monomials(m, n);
      for (const auto& u : basis)
        for (const auto& v : basis) {
          const auto fu = FockVector::monomial(u), fv = FockVector::monomial(v);
          const int s = parity(m, u) & parity(m, v) ? -1 : 1;
          CHECK(pairing(m, fu, fv) == s * pairing(m, fv, fu));
        }
    }
  }
}

TEST_CASE("padding and fundamental classes", "[fock]") {
  const auto& m = P2();
  CHECK(pad(m, FockVector::vacuum(), 2) == word(m, {{1, "1"}, {1, "1"}}, Rational(1, 2)));
  CHECK(pad(m, word(m, {{3, "h"}}), 2).is_zero());
  CHECK(pad(m, word(m, {{2, "h"}}), 2) == word(m, {{2, "h"}}));
  CHECK(fundamental_class(m, 3) == word(m, {{1, "1"}, {1, "1"}, {1, "1"}}, Rational(1, 6)));
  CHECK(b_class(m, 0, cls(m, "h"), 3) == pad(m, word(m, {{1, "h"}}), 3));
  CHECK(b_class(m, 3, cls(m, "h"), 2).is_zero());
}

TEST_CASE("graded dimensions", "[fock]") {
  const auto& m = P2();
  const std::vector<std::int64_t> x1 = {1, 0, 1, 0, 1};
  for (int i = 0; i <= 4; ++i) CHECK(graded_dimension(m, 1, i) == x1[i]);
  CHECK(graded_dimension(m, 2, 0) == 1);
  // P2^[2]: 1, 2, 3, 2, 1 in even degrees; P2^[3]: 1, 2, 5, 6, 5, 2, 1
  const std::vector<std::int64_t> x2 = {1, 2, 3, 2, 1}, x3 = {1, 2, 5, 6, 5, 2, 1};
  for (int i = 0; i < 5; ++i) CHECK(graded_dimension(m, 2, 2 * i) == x2[i]);
  for (int i = 0; i < 7; ++i) CHECK(graded_dimension(m, 3, 2 * i) == x3[i]);
  // the generating function oracle agrees on the same numbers
  const auto g = oracle::gottsche(m.betti(), 3);
  for (int i = 0; i < 7; ++i) CHECK(g[3][2 * i] == x3[i]);
  // total count is the number of partition-valued functions of weight n
  for (int n = 0; n <= 5; ++n) {
    std::int64_t total = 0;
    for (int i = 0; i <= 4 * n; ++i) total += graded_dimension(m, n, i);
    CHECK(total == static_cast<std::int64_t>(enumerate_monomials(m, n).size()));
  }
  // Abelianlike has Euler characteristic 0 on every X^[n], n >= 1
  for (int n = 1; n <= 4; ++n) {
    std::int64_t chi = 0;
    for (int i = 0; i <= 4 * n; ++i) chi += (i % 2 ? -1 : 1) * graded_dimension(Ab(), n, i);
    CHECK(chi == 0);
  }
}

TEST_CASE("vector arithmetic", "[fock]") {
  const auto& m = P2();
  auto v = word(m, {{1, "h"}}) + word(m, {{2, "1"}}, 3);
  CHECK(v.size() == 2);
  CHECK(v.max_weight() == 2);
  CHECK_FALSE(v.has_weight(2));
  CHECK(v.weight_part(2) == word(m, {{2, "1"}}, 3));
  v -= word(m, {{1, "h"}});
  CHECK(v.has_weight(2));
  v *= 0;
  CHECK(v.is_zero());
  CHECK(FockVector{}.max_weight() == -1);
}
