#pragma once

// Independent reference computations. Nothing here calls the routine it is meant to check:
// the pushforward is solved from its pairing property, the Virasoro and boundary operators
// are expanded straight from their normally ordered sums, and dimensions come from a
// generating function instead of enumeration.

#include "hilbcalc/cup_product.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace hilbcalc::oracle {

/// tau_{k*}(alpha) from the linear system <T, b_s> = ∫ alpha b_s1 ... b_sk over all tuples s.
TensorClass tau_push(const SurfaceModel& model, int k, const CohClass& alpha);

/// Pairing on X^k of two tensors: sum over terms of (-1)^{sum_{i<j}|b_i||a_j|} prod ∫ a_i b_i.
Rational tensor_pairing(const SurfaceModel& model, const TensorClass& a, const TensorClass& b);

/// L_n(alpha) v = -1/2 sum_m :a_m a_{n-m}:(tau_2 alpha) v, summed over every m that can act.
FockVector virasoro(const SurfaceModel& model, int n, const CohClass& alpha, const FockVector& v);
/// a'_n(alpha) v from the Virasoro expression.
FockVector heisenberg_derivative(const SurfaceModel& model, int n, const CohClass& alpha, const FockVector& v);
/// d v by the Leibniz rule over every creation factor, d|0> = 0.
FockVector boundary(const SurfaceModel& model, const FockVector& v);

using Action = std::function<FockVector(const FockVector&)>;
/// f^{(k)} v = sum_j (-1)^j C(k,j) d^{k-j} f d^j v for an operator f (d is even).
FockVector derivative_action(const SurfaceModel& model, const Action& f, int k, const FockVector& v);
/// Super-bracket of two actions of the given parities.
FockVector bracket(const Action& a, int pa, const Action& b, int pb, const FockVector& v);

/// Coefficients of prod_{m>=1} prod_d (1 - (-1)^d t^{2m-2+d} q^m)^{-(-1)^d b_d}:
/// result[n][i] for n <= max_n, 0 <= i <= 4n.
std::vector<std::vector<std::int64_t>> gottsche(const std::vector<int>& betti, int max_n);

/// Random vector: `terms` monomials of weight <= max_weight, small nonzero rational coefficients.
FockVector random_vector(const SurfaceModel& model, std::mt19937_64& rng, int max_weight, int terms);
/// Random class on X^[n] of a single cohomological degree (zero if that degree is empty).
FockVector random_homogeneous(const SurfaceModel& model, std::mt19937_64& rng, int n, int terms, int* degree_out);
Rational random_rational(std::mt19937_64& rng);

/// Hand expansions kept as JSON fixtures (worked_constants.json).
const std::string& worked_constants_fixture();

/// Dual route for intersection numbers: fits universal coefficients of the products
/// prod_blocks ∫ eps_B alpha_B (eps in {1, K, K^2, e}) on the fitting models and predicts
/// <prod G_{k_i}(alpha_i, n)> elsewhere.
struct IntersectionFit {
  bool consistent = false;         // the fitting system has a solution
  std::size_t equations = 0;
  std::size_t unknowns = 0;
  std::vector<Rational> coefficients;
};
struct IntersectionRow {
  std::vector<Rational> features;
  Rational value;
};
/// One row per choice of basis classes on the model; classes listed in `allowed` only (empty: all).
std::vector<IntersectionRow> intersection_rows(CupEngine& engine, const std::vector<int>& ks, int n);
std::vector<Rational> intersection_features(const SurfaceModel& model, const std::vector<CohClass>& alphas);
IntersectionFit fit_intersections(const std::vector<IntersectionRow>& rows);
/// True when the rows are consistent with the fitted system (no new constraint contradicts it).
bool consistent_with(const std::vector<IntersectionRow>& fit_rows, const std::vector<IntersectionRow>& extra);

}  // namespace hilbcalc::oracle
