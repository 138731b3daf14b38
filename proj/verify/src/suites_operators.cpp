#include "suite_common.hpp"

#include "hilbcalc/vertex_ops.hpp"

namespace hilbcalc::suites {

namespace {

using oracle::Action;

Action heis(const SurfaceModel& m, int n, const CohClass& a) {
  return [&m, n, a](const FockVector& v) {
    FockVector out;
    for (const auto& [c, x] : a.terms()) {
      auto part = heisenberg(m, n, c, v);
      part *= x;
      out += part;
    }
    return out;
  };
}

std::vector<int> nonzero_range(int bound) {
  std::vector<int> out;
  for (int i = -bound; i <= bound; ++i)
    if (i) out.push_back(i);
  return out;
}

}  // namespace

// ------------------------------------------------------------------ criterion 1

SuiteResult heisenberg(const SuiteOptions& opts) {
  SuiteResult r;
  r.suite = "heisenberg";
  Timer timer;
  for (const auto* mp : models_or(opts, all_builtins())) {
    const auto& m = *mp;
    std::mt19937_64 rng(opts.seed);
    std::vector<FockVector> vecs;
    for (int i = 0; i < 50; ++i) vecs.push_back(oracle::random_vector(m, rng, 6, 3));
    const auto idx = nonzero_range(4);
    for (int n : idx)
      for (int mm : idx)
        for (int a = 0; a < m.size(); ++a)
          for (int b = 0; b < m.size(); ++b) {
            const Rational scalar = (n + mm == 0) ? Rational(-n) * m.pairing(a, b) : Rational(0);
            const int sign = (m.parity(a) & m.parity(b)) ? -1 : 1;
            for (const auto& v : vecs) {
              FockVector lhs = heisenberg(m, n, a, heisenberg(m, mm, b, v));
              FockVector back = heisenberg(m, mm, b, heisenberg(m, n, a, v));
              back *= sign;
              lhs -= back;
              r.check(lhs == scalar * v, [&] {
                return m.name() + ": [a_" + std::to_string(n) + "(" + name(m, a) + "), a_" + std::to_string(mm) + "(" +
                       name(m, b) + ")] on " + show(m, v);
              });
            }
          }
  }
  r.seconds = timer.seconds();
  return r;
}

// ------------------------------------------------------------------ criterion 2

SuiteResult virasoro(const SuiteOptions& opts) {
  SuiteResult r;
  r.suite = "virasoro";
  Timer timer;
  for (const auto* mp : models_or(opts, all_builtins())) {
    const auto& m = *mp;
    std::mt19937_64 rng(opts.seed + 1);
    std::vector<FockVector> vecs;
    for (int i = 0; i < 6; ++i) vecs.push_back(oracle::random_vector(m, rng, 5, 2));

    // the two independent routes to L_n and d agree
    for (const auto& v : vecs) {
      r.check(boundary_apply(m, v) == oracle::boundary(m, v),
              [&] { return m.name() + ": boundary operator differs from its direct expansion on " + show(m, v); });
      for (int n = -3; n <= 3; ++n)
        for (int a = 0; a < m.size(); ++a)
          r.check(virasoro_apply(m, n, CohClass::basis(a), v) == oracle::virasoro(m, n, CohClass::basis(a), v), [&] {
            return m.name() + ": L_" + std::to_string(n) + "(" + name(m, a) + ") differs from the normally ordered sum";
          });
    }

    // [L_n(a), a_m(b)] = -m a_{n+m}(ab)
    for (int n = -3; n <= 3; ++n)
      for (int mm : nonzero_range(3))
        for (int a = 0; a < m.size(); ++a)
          for (int b = 0; b < m.size(); ++b) {
            const CohClass ab = m.mul(CohClass::basis(a), CohClass::basis(b));
            const Action L = [&](const FockVector& v) { return virasoro_apply(m, n, CohClass::basis(a), v); };
            for (const auto& v : vecs) {
              const auto lhs = oracle::bracket(L, m.parity(a), heis(m, mm, CohClass::basis(b)), m.parity(b), v);
              auto rhs = n + mm == 0 ? FockVector{} : heis(m, n + mm, ab)(v);
              rhs *= -mm;
              r.check(lhs == rhs, [&] {
                return m.name() + ": [L_" + std::to_string(n) + "(" + name(m, a) + "), a_" + std::to_string(mm) + "(" +
                       name(m, b) + ")] on " + show(m, v);
              });
            }
          }

    // a'_n(a) = [d, a_n(a)] = n L_n(a) - n(|n|-1)/2 a_n(Ka)
    for (int n : nonzero_range(3))
      for (int a = 0; a < m.size(); ++a)
        for (const auto& v : vecs) {
          auto lhs = boundary_apply(m, heisenberg(m, n, a, v)) - heisenberg(m, n, a, boundary_apply(m, v));
          r.check(lhs == heisenberg_derivative_apply(m, n, a, v), [&] {
            return m.name() + ": a'_" + std::to_string(n) + "(" + name(m, a) + ") on " + show(m, v);
          });
        }

    // op_derivative against the action of d
    for (int a = 0; a < m.size(); ++a)
      for (const auto& v : vecs) {
        const int budget = std::max(v.max_weight(), 0);
        std::vector<std::pair<std::string, OperatorSum>> ops;
        for (int mm : nonzero_range(2))
          ops.emplace_back("a_" + std::to_string(mm), single_operator(m, mm, CohClass::basis(a)));
        for (auto [m1, m2] : std::vector<std::pair<int, int>>{{-1, -1}, {-2, 1}, {1, 1}, {-1, 2}})
          ops.emplace_back("a_" + std::to_string(m1) + "a_" + std::to_string(m2) + "(tau_2)",
                           normal_order(m, {{m1, m2}, m.tau_push(2, CohClass::basis(a))}));
        for (const auto& [label, op] : ops) {
          const auto d_op = op_derivative(m, op, budget);
          const auto lhs = apply(m, d_op, v);
          const auto rhs = boundary_apply(m, apply(m, op, v)) - apply(m, op, boundary_apply(m, v));
          r.check(lhs == rhs, [&] { return m.name() + ": derivative of " + label + "(" + name(m, a) + ")"; });
        }
      }

    // Chern character operators commute with d
    ChernCalculus chern(m);
    std::vector<FockVector> small;
    for (int i = 0; i < 4; ++i) small.push_back(oracle::random_vector(m, rng, 4, 2));
    for (int k = 0; k <= 2; ++k)
      for (int a = 0; a < m.size(); ++a)
        for (const auto& v : small) {
          const auto alpha = CohClass::basis(a);
          auto lhs = boundary_apply(m, chern.chern_apply(k, alpha, v)) - chern.chern_apply(k, alpha, boundary_apply(m, v));
          r.check(lhs.is_zero(), [&] {
            return m.name() + ": [d, G_" + std::to_string(k) + "(" + name(m, a) + ")] != 0 on " + show(m, v);
          });
        }
  }
  r.seconds = timer.seconds();
  return r;
}

// ------------------------------------------------------------------ criterion 3

SuiteResult chern_commutator(const SuiteOptions& opts) {
  SuiteResult r;
  r.suite = "chern-commutator";
  Timer timer;
  for (const auto* mp : models_or(opts, all_builtins())) {
    const auto& m = *mp;
    ChernCalculus chern(m);
    std::mt19937_64 rng(opts.seed + 2);
    std::vector<FockVector> vecs;
    for (int i = 0; i < 3; ++i) vecs.push_back(oracle::random_vector(m, rng, 3, 2));
    auto G = [&](int k, const CohClass& a) -> Action {
      return [&chern, k, a](const FockVector& v) { return chern.chern_apply(k, a, v); };
    };

    // [G_k(a), a_{-1}(b)] = 1/k! a_{-1}^{(k)}(ab), the right side through d alone
    for (int k = 0; k <= 3; ++k)
      for (int a = 0; a < m.size(); ++a)
        for (int b = 0; b < m.size(); ++b) {
          const auto alpha = CohClass::basis(a), beta = CohClass::basis(b);
          const auto ab = m.mul(alpha, beta);
          for (const auto& v : vecs) {
            const auto lhs = oracle::bracket(G(k, alpha), m.parity(a), heis(m, -1, beta), m.parity(b), v);
            auto rhs = oracle::derivative_action(m, heis(m, -1, ab), k, v);
            rhs *= 1 / factorial(k);
            r.check(lhs == rhs, [&] {
              return m.name() + ": [G_" + std::to_string(k) + "(" + name(m, a) + "), a_{-1}(" + name(m, b) + ")] on " +
                     show(m, v);
            });
            // the symbolic commutator, also for deeper creation operators
            for (int rr = 1; rr <= 3; ++rr) {
              const auto op = chern.chern_commutator(k, a, rr, b, std::max(v.max_weight(), 0));
              const auto direct = oracle::bracket(G(k, alpha), m.parity(a), heis(m, -rr, beta), m.parity(b), v);
              r.check(apply(m, op, v) == direct, [&] {
                return m.name() + ": symbolic [G_" + std::to_string(k) + "(" + name(m, a) + "), a_{-" +
                       std::to_string(rr) + "}(" + name(m, b) + ")] differs from its action";
              });
            }
          }
        }

    // multi-commutators: (k+1)-fold gives -prod n_l a_{sum n}(a prod a_l); (k+2)-fold with creators vanishes
    std::uniform_int_distribution<int> pick_index(-3, 2), pick_class(0, m.size() - 1);
    for (int k = 0; k <= 2; ++k)
      for (int sample = 0; sample < 12; ++sample) {
        const int a = pick_class(rng);
        std::vector<int> ns, cs;
        int total = 0;
        while (true) {
          ns.clear();
          cs.clear();
          total = 0;
          for (int l = 0; l <= k; ++l) {
            int n = pick_index(rng);
            if (n >= 0) ++n;
            ns.push_back(n);
            cs.push_back(pick_class(rng));
            total += n;
          }
          if (total != 0) break;
        }
        Action nested = G(k, CohClass::basis(a));
        int parity = m.parity(a);
        CohClass prod = CohClass::basis(a);
        Rational coef = -1;
        for (int l = 0; l <= k; ++l) {
          const Action inner = nested;
          const int pi = parity;
          const Action h = heis(m, ns[l], CohClass::basis(cs[l]));
          const int ph = m.parity(cs[l]);
          nested = [inner, pi, h, ph](const FockVector& v) { return oracle::bracket(inner, pi, h, ph, v); };
          parity ^= ph;
          prod = m.mul(prod, CohClass::basis(cs[l]));
          coef *= ns[l];
        }
        std::string label = "G_" + std::to_string(k) + "(" + name(m, a) + ")";
        for (int l = 0; l <= k; ++l) label += ", a_" + std::to_string(ns[l]) + "(" + name(m, cs[l]) + ")";
        for (const auto& v : vecs) {
          auto rhs = heis(m, total, prod)(v);
          rhs *= coef;
          r.check(nested(v) == rhs, [&] { return m.name() + ": nested bracket " + label + " on " + show(m, v); });
        }
        // one more creation operator kills it
        const int extra_class = pick_class(rng);
        std::uniform_int_distribution<int> pick_creation(1, 3);
        std::vector<int> creators;
        for (int l = 0; l <= k + 1; ++l) creators.push_back(pick_creation(rng));
        Action deep = G(k, CohClass::basis(a));
        int dp = m.parity(a);
        for (int l = 0; l <= k + 1; ++l) {
          const int c = l == k + 1 ? extra_class : cs[std::min(l, k)];
          const Action inner = deep;
          const int pi = dp;
          const Action h = heis(m, -creators[l], CohClass::basis(c));
          const int ph = m.parity(c);
          deep = [inner, pi, h, ph](const FockVector& v) { return oracle::bracket(inner, pi, h, ph, v); };
          dp ^= ph;
        }
        for (const auto& v : vecs)
          r.check(deep(v).is_zero(), [&] {
            return m.name() + ": " + std::to_string(k + 2) + "-fold bracket of G_" + std::to_string(k) +
                   " with creation operators does not vanish";
          });
      }
  }
  r.seconds = timer.seconds();
  return r;
}

// ------------------------------------------------------------------ criterion 4

void pushforward_checks(const SurfaceModel& m, SuiteResult& r) {
  const auto basis = [&](int i) { return CohClass::basis(i); };
  for (int a = 0; a < m.size(); ++a) {
    // the k = 0 convention and agreement with the pairing characterization
    r.check(m.tau_push(0, basis(a)) == TensorClass::scalar(m.integral(a)),
            [&] { return m.name() + ": tau_0(" + name(m, a) + ") is not the integral"; });
    for (int k = 1; k <= 3; ++k)
      r.check(m.tau_push(k, basis(a)) == oracle::tau_push(m, k, basis(a)), [&] {
        return m.name() + ": tau_" + std::to_string(k) + "(" + name(m, a) + ") fails its pairing equations";
      });
  }
  // tau_k([x]) = [x] ⊗ ... ⊗ [x]
  for (int k = 1; k <= 4; ++k) {
    TensorClass pts(k);
    pts.add(Tuple(k, m.point()), 1);
    r.check(m.tau_push(k, basis(m.point())) == pts,
            [&] { return m.name() + ": tau_" + std::to_string(k) + "(pt) is not pt^k"; });
  }
  for (int a = 0; a < m.size(); ++a)
    for (int k = 1; k <= 3; ++k) {
      const auto t = m.tau_push(k, basis(a));
      for (int j = 1; j <= k; ++j) {
        for (int b = 0; b < m.size(); ++b) {
          const auto ab = m.mul(basis(a), basis(b));
          r.check(m.tensor_absorb(t, j, basis(b)) == m.tau_push(k, ab), [&] {
            return m.name() + ": absorbing " + name(m, b) + " into slot " + std::to_string(j) + " of tau_" +
                   std::to_string(k) + "(" + name(m, a) + ")";
          });
          r.check(m.tensor_integrate_slot(t, j, basis(b)) == m.tau_push(k - 1, ab), [&] {
            return m.name() + ": integrating slot " + std::to_string(j) + " of tau_" + std::to_string(k) + "(" +
                   name(m, a) + ") against " + name(m, b);
          });
        }
        for (int u = 1; u + k - 1 <= 4; ++u)
          r.check(m.tensor_refine(t, j, u) == m.tau_push(k + u - 1, basis(a)), [&] {
            return m.name() + ": refining slot " + std::to_string(j) + " of tau_" + std::to_string(k) + "(" +
                   name(m, a) + ") by tau_" + std::to_string(u);
          });
      }
    }
  // Euler correction: contracting the two halves of tau_2(b) gives e b
  for (int b = 0; b < m.size(); ++b) {
    const auto eb = m.mul(m.euler_class(), basis(b));
    TensorClass expect(1);
    for (const auto& [c, x] : eb.terms()) expect.add({c}, x);
    r.check(m.tensor_contract(m.tau_push(2, basis(b)), 1, 2) == expect,
            [&] { return m.name() + ": contraction of tau_2(" + name(m, b) + ") is not e*" + name(m, b); });
    for (int j = 1; j <= 3; ++j) {
      // refine slot j of tau_3, contract the two new slots: absorb e into slot j
      const auto refined = m.tensor_refine(m.tau_push(3, basis(b)), j, 2);
      r.check(m.tensor_contract(refined, j, j + 1) == m.tensor_absorb(m.tau_push(3, basis(b)), j, m.euler_class()),
              [&] { return m.name() + ": contraction of a refined slot of tau_3(" + name(m, b) + ")"; });
    }
  }
  const auto& K = m.canonical_class();
  r.check(m.mul(m.mul(K, K), K).is_zero(), [&] { return m.name() + ": K^3 != 0"; });

  // reordering with the Euler correction, as an action on vectors
  std::mt19937_64 rng(7);
  std::vector<FockVector> vecs;
  for (int i = 0; i < 4; ++i) vecs.push_back(oracle::random_vector(m, rng, 3, 2));
  const std::vector<std::vector<int>> patterns = {{1, -1}, {-1, 1}, {2, -2}, {-1, -2}, {1, -1, -2}, {-2, 2, 1}, {3, -1, -3}};
  for (const auto& idx : patterns)
    for (int a = 0; a < m.size(); ++a) {
      MonomialOperator op{idx, m.tau_push(static_cast<int>(idx.size()), basis(a))};
      for (int j = 1; j < static_cast<int>(idx.size()); ++j) {
        const auto swapped = reorder(m, op, j);
        for (const auto& v : vecs) {
          FockVector rhs;
          for (const auto& term : swapped) rhs += apply_indexed_monomial(m, term.indices, term.tensor, v);
          r.check(apply_indexed_monomial(m, op.indices, op.tensor, v) == rhs, [&] {
            return m.name() + ": reordering slot " + std::to_string(j) + " of an indexed operator on tau(" +
                   name(m, a) + ")";
          });
        }
      }
    }
}

SuiteResult pushforward(const SuiteOptions& opts) {
  SuiteResult r;
  r.suite = "pushforward";
  Timer timer;
  for (const auto* mp : models_or(opts, all_builtins())) pushforward_checks(*mp, r);
  r.seconds = timer.seconds();
  return r;
}

}  // namespace hilbcalc::suites
