#include "hilbcalc/oracles.hpp"

#include "hilbcalc/linalg.hpp"

#include <algorithm>
#include <map>

namespace hilbcalc::oracle {

namespace {

Rational pair_tuples(const SurfaceModel& model, const Tuple& a, const Tuple& b) {
  Rational v = 1;
  for (std::size_t i = 0; i < a.size() && v != 0; ++i) v *= model.pairing(a[i], b[i]);
  if (v == 0) return 0;
  int e = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) e ^= model.parity(b[i]) & model.parity(a[j]);
  return e ? Rational(-v) : v;
}

// all tuples of basis indices with the given slot degrees
void tuples_with_degrees(const SurfaceModel& model, const std::vector<int>& degs, std::vector<Tuple>& out) {
  out.clear();
  Tuple cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == degs.size()) {
      out.push_back(cur);
      return;
    }
    for (int c = 0; c < model.size(); ++c)
      if (model.degree(c) == degs[i]) {
        cur.push_back(c);
        rec(i + 1);
        cur.pop_back();
      }
  };
  rec(0);
}

TensorClass tau_push_basis(const SurfaceModel& model, int k, int a) {
  TensorClass out(k);
  const int total = model.degree(a) + 4 * (k - 1);
  std::vector<int> degs(k);
  std::vector<Tuple> unknowns, tests;
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == k) {
      if (left != 0) return;
      tuples_with_degrees(model, degs, unknowns);
      if (unknowns.empty()) return;
      std::vector<int> dual(k);
      for (int j = 0; j < k; ++j) dual[j] = 4 - degs[j];
      tuples_with_degrees(model, dual, tests);
      Matrix m(tests.size(), std::vector<Rational>(unknowns.size()));
      std::vector<Rational> rhs(tests.size());
      for (std::size_t r = 0; r < tests.size(); ++r) {
        for (std::size_t c = 0; c < unknowns.size(); ++c) m[r][c] = pair_tuples(model, unknowns[c], tests[r]);
        CohClass prod = CohClass::basis(a);
        for (int s : tests[r]) prod = model.mul(prod, CohClass::basis(s));
        rhs[r] = model.integrate(prod);
      }
      auto x = solve(m, rhs);
      if (!x) throw std::logic_error("oracle::tau_push: pairing system is inconsistent");
      for (std::size_t c = 0; c < unknowns.size(); ++c) out.add(unknowns[c], (*x)[c]);
      return;
    }
    for (int d = 0; d <= 4 && d <= left; ++d) {
      degs[i] = d;
      rec(i + 1, left - d);
    }
  };
  rec(0, total);
  return out;
}

}  // namespace

TensorClass tau_push(const SurfaceModel& model, int k, const CohClass& alpha) {
  if (k == 0) return TensorClass::scalar(model.integrate(alpha));
  TensorClass out(k);
  for (const auto& [a, c] : alpha.terms()) {
    auto part = tau_push_basis(model, k, a);
    part *= c;
    out += part;
  }
  return out;
}

Rational tensor_pairing(const SurfaceModel& model, const TensorClass& a, const TensorClass& b) {
  Rational total = 0;
  for (const auto& [ta, ca] : a.terms())
    for (const auto& [tb, cb] : b.terms()) total += ca * cb * pair_tuples(model, ta, tb);
  return total;
}

// ------------------------------------------------------------------ Virasoro

namespace {

FockVector act(const SurfaceModel& model, int m, int c, const FockVector& v) {
  if (m < 0) return create(model, -m, c, v);
  return annihilate(model, m, c, v);
}

}  // namespace

FockVector virasoro(const SurfaceModel& model, int n, const CohClass& alpha, const FockVector& v) {
  FockVector out;
  if (v.is_zero()) return out;
  // outside |m| <= weight + |n| one of the two factors is an annihilator heavier than v
  const int range = v.max_weight() + std::abs(n);
  const TensorClass t = tau_push(model, 2, alpha);
  for (int m = -range; m <= range; ++m) {
    const int l = n - m;
    if (m == 0 || l == 0) continue;
    for (const auto& [tup, x] : t.terms()) {
      // :a_m(y) a_l(z): puts the smaller index on the left
      FockVector w;
      if (m <= l) {
        w = act(model, m, tup[0], act(model, l, tup[1], v));
      } else {
        w = act(model, l, tup[1], act(model, m, tup[0], v));
        if (model.parity(tup[0]) & model.parity(tup[1])) w *= -1;
      }
      w *= fraction(-1, 2) * x;
      out += w;
    }
  }
  return out;
}

FockVector heisenberg_derivative(const SurfaceModel& model, int n, const CohClass& alpha, const FockVector& v) {
  FockVector out = virasoro(model, n, alpha, v);
  out *= Rational(n);
  const CohClass ka = model.mul(model.canonical_class(), alpha);
  const Rational kk = fraction(n * (std::abs(n) - 1), 2);
  if (kk != 0 && !ka.is_zero()) {
    FockVector w;
    for (const auto& [c, x] : ka.terms()) {
      auto part = act(model, n, c, v);
      part *= x;
      w += part;
    }
    w *= -kk;
    out += w;
  }
  return out;
}

FockVector boundary(const SurfaceModel& model, const FockVector& v) {
  FockVector out;
  for (const auto& [m, coef] : v.terms()) {
    // d f_1 ... f_k|0> = sum_j f_1 ... f_{j-1} f_j' f_{j+1} ... f_k|0>
    for (std::size_t j = 0; j < m.size(); ++j) {
      FockVector w = FockVector::vacuum();
      for (std::size_t i = m.size(); i-- > j + 1;) w = create(model, m[i].r, m[i].c, w);
      w = heisenberg_derivative(model, -m[j].r, CohClass::basis(m[j].c), w);
      for (std::size_t i = j; i-- > 0;) w = create(model, m[i].r, m[i].c, w);
      w *= coef;
      out += w;
    }
  }
  return out;
}

FockVector derivative_action(const SurfaceModel& model, const Action& f, int k, const FockVector& v) {
  FockVector out;
  for (int j = 0; j <= k; ++j) {
    FockVector w = v;
    for (int i = 0; i < j; ++i) w = boundary(model, w);
    w = f(w);
    for (int i = 0; i < k - j; ++i) w = boundary(model, w);
    w *= binomial(k, j) * (j % 2 ? -1 : 1);
    out += w;
  }
  return out;
}

FockVector bracket(const Action& a, int pa, const Action& b, int pb, const FockVector& v) {
  FockVector out = a(b(v));
  FockVector back = b(a(v));
  if (pa & pb) out += back;
  else out -= back;
  return out;
}

// ------------------------------------------------------------------ Göttsche

std::vector<std::vector<std::int64_t>> gottsche(const std::vector<int>& betti, int max_n) {
  // series in q (index n) with coefficients polynomials in t (index i)
  using Poly = std::vector<std::vector<std::int64_t>>;
  Poly acc(max_n + 1, std::vector<std::int64_t>(4 * max_n + 1, 0));
  acc[0][0] = 1;
  auto shift_mul = [&](int qn, int ti, std::int64_t c) {
    // acc *= (1 + c t^ti q^qn), truncated
    for (int n = max_n; n >= qn; --n)
      for (int i = 4 * max_n; i >= ti; --i) acc[n][i] += c * acc[n - qn][i - ti];
  };
  auto geometric = [&](int qn, int ti) {
    // acc *= 1/(1 - t^ti q^qn)
    for (int n = qn; n <= max_n; ++n)
      for (int i = ti; i <= 4 * max_n; ++i) acc[n][i] += acc[n - qn][i - ti];
  };
  for (int m = 1; m <= max_n; ++m)
    for (int d = 0; d <= 4; ++d) {
      const int ti = 2 * m - 2 + d;
      for (int b = 0; b < betti[d]; ++b) {
        if (d % 2 == 0)
          geometric(m, ti);  // (1 - t q)^{-1}
        else
          shift_mul(m, ti, 1);  // (1 + t q)^{+1}
      }
    }
  return acc;
}

// ------------------------------------------------------------------ sampling

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 5), den(1, 3), sgn(0, 1);
  Rational q(num(rng) * (sgn(rng) ? 1 : -1), den(rng));
  q.canonicalize();
  return q;
}

FockVector random_vector(const SurfaceModel& model, std::mt19937_64& rng, int max_weight, int terms) {
  static thread_local std::map<std::pair<std::string, int>, std::vector<Monomial>> pool;
  FockVector v;
  std::uniform_int_distribution<int> wdist(0, max_weight);
  for (int t = 0; t < terms; ++t) {
    const int w = wdist(rng);
    auto& ms = pool[{model.fingerprint(), w}];
    if (ms.empty()) ms = enumerate_monomials(model, w);
    std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
    v.add(ms[pick(rng)], random_rational(rng));
  }
  return v;
}

FockVector random_homogeneous(const SurfaceModel& model, std::mt19937_64& rng, int n, int terms, int* degree_out) {
  const auto ms = enumerate_monomials(model, n);
  std::map<int, std::vector<const Monomial*>> by_degree;
  for (const auto& m : ms) by_degree[degree(model, m)].push_back(&m);
  std::uniform_int_distribution<std::size_t> pick_deg(0, by_degree.size() - 1);
  auto it = by_degree.begin();
  std::advance(it, pick_deg(rng));
  FockVector v;
  std::uniform_int_distribution<std::size_t> pick(0, it->second.size() - 1);
  for (int t = 0; t < terms; ++t) v.add(*it->second[pick(rng)], random_rational(rng));
  if (degree_out) *degree_out = it->first;
  return v;
}

// ------------------------------------------------------------- intersections

namespace {

void set_partitions(int s, std::vector<std::vector<std::vector<int>>>& out) {
  std::vector<std::vector<int>> cur;
  std::function<void(int)> rec = [&](int i) {
    if (i == s) {
      out.push_back(cur);
      return;
    }
    for (auto& block : cur) {
      block.push_back(i);
      rec(i + 1);
      block.pop_back();
    }
    cur.push_back({i});
    rec(i + 1);
    cur.pop_back();
  };
  rec(0);
}

}  // namespace

std::vector<Rational> intersection_features(const SurfaceModel& model, const std::vector<CohClass>& alphas) {
  const int s = static_cast<int>(alphas.size());
  const CohClass& k = model.canonical_class();
  const std::vector<CohClass> eps = {CohClass::basis(model.unit()), k, model.mul(k, k), model.euler_class()};
  std::vector<std::vector<std::vector<int>>> partitions;
  set_partitions(s, partitions);
  std::vector<Rational> features;
  for (const auto& pi : partitions) {
    // one feature per assignment of eps to the blocks
    std::vector<std::vector<Rational>> block_values;
    for (const auto& block : pi) {
      CohClass prod = CohClass::basis(model.unit());
      for (int i : block) prod = model.mul(prod, alphas[i]);
      std::vector<Rational> vals;
      for (const auto& e : eps) vals.push_back(model.integrate(model.mul(e, prod)));
      block_values.push_back(vals);
    }
    std::vector<std::size_t> choice(pi.size(), 0);
    while (true) {
      Rational f = 1;
      for (std::size_t b = 0; b < pi.size(); ++b) f *= block_values[b][choice[b]];
      features.push_back(f);
      std::size_t b = 0;
      while (b < choice.size() && ++choice[b] == eps.size()) choice[b++] = 0;
      if (b == choice.size()) break;
    }
  }
  return features;
}

std::vector<IntersectionRow> intersection_rows(CupEngine& engine, const std::vector<int>& ks, int n) {
  const auto& model = engine.model();
  const int s = static_cast<int>(ks.size());
  std::vector<IntersectionRow> rows;
  std::vector<int> idx(s, 0);
  while (true) {
    int deg = 0;
    for (int i = 0; i < s; ++i) deg += 2 * ks[i] + model.degree(idx[i]);
    if (deg == 4 * n) {
      std::vector<ChernFactor> gens;
      std::vector<CohClass> alphas;
      for (int i = 0; i < s; ++i) {
        gens.push_back({ks[i], CohClass::basis(idx[i])});
        alphas.push_back(CohClass::basis(idx[i]));
      }
      rows.push_back({intersection_features(model, alphas), engine.intersection(gens, n)});
    }
    int i = 0;
    while (i < s && ++idx[i] == model.size()) idx[i++] = 0;
    if (i == s) break;
  }
  return rows;
}

IntersectionFit fit_intersections(const std::vector<IntersectionRow>& rows) {
  IntersectionFit fit;
  fit.equations = rows.size();
  if (rows.empty()) return fit;
  fit.unknowns = rows[0].features.size();
  Matrix a;
  std::vector<Rational> b;
  for (const auto& r : rows) {
    a.push_back(r.features);
    b.push_back(r.value);
  }
  auto x = solve(a, b);
  fit.consistent = x.has_value();
  if (x) fit.coefficients = *x;
  return fit;
}

bool consistent_with(const std::vector<IntersectionRow>& fit_rows, const std::vector<IntersectionRow>& extra) {
  std::vector<IntersectionRow> all = fit_rows;
  all.insert(all.end(), extra.begin(), extra.end());
  return fit_intersections(all).consistent;
}

}  // namespace hilbcalc::oracle
