#pragma once

#include "hilbcalc/fock.hpp"

#include <climits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <vector>

namespace hilbcalc {

/// The Heisenberg operator a_m(b_c), m != 0.
struct OpFactor {
  int m = 0;
  int c = 0;
  friend auto operator<=>(const OpFactor&, const OpFactor&) = default;
};

/// A product of Heisenberg operators, leftmost factor acting last.
using OpWord = std::vector<OpFactor>;

int annihilation_weight(const OpWord& w);
int parity(const SurfaceModel& model, const OpWord& w);

inline constexpr int kUnbounded = INT_MAX / 4;

/// Sparse sum of normally ordered words: factors sorted by (m, c), so creations come first.
/// Equal odd factors never repeat.
class OperatorSum {
 public:
  using Terms = std::map<OpWord, Rational>;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coeff(const OpWord& w) const;

  /// w must already be normally ordered.
  void add(const OpWord& w, const Rational& c);
  OperatorSum& operator+=(const OperatorSum& o);
  OperatorSum& operator-=(const OperatorSum& o);
  OperatorSum& operator*=(const Rational& c);
  friend OperatorSum operator+(OperatorSum a, const OperatorSum& b) { return a += b; }
  friend OperatorSum operator-(OperatorSum a, const OperatorSum& b) { return a -= b; }
  friend OperatorSum operator*(const Rational& c, OperatorSum a) { return a *= c; }
  friend bool operator==(const OperatorSum&, const OperatorSum&) = default;

  /// Drops words whose annihilation weight exceeds the budget.
  OperatorSum truncated(int budget) const;

 private:
  Terms terms_;
};

/// Indices a_{m_1} ... a_{m_k} attached to a Künneth tensor, in any order.
struct MonomialOperator {
  std::vector<int> indices;
  TensorClass tensor;
};

/// Adds coef * word to out after normal ordering. Each transposition of a pair a_m, a_{-m}
/// with m > 0 emits the contraction term -m ∫(xy). Results above the budget are dropped.
void normal_order_into(const SurfaceModel& model, OpWord word, const Rational& coef, OperatorSum& out,
                       int budget = kUnbounded);
OperatorSum normal_order(const SurfaceModel& model, const MonomialOperator& op, int budget = kUnbounded);
OperatorSum single_operator(const SurfaceModel& model, int m, const CohClass& a);

/// Swaps slots j, j+1 (1-based): the swapped operator plus the Euler correction, if any.
std::vector<MonomialOperator> reorder(const SurfaceModel& model, const MonomialOperator& op, int j);

/// Groups an OperatorSum by index pattern.
std::map<std::vector<int>, TensorClass> tensor_view(const OperatorSum& s);
/// Same view for a MonomialOperator after normal ordering.
OperatorSum canonical_form(const SurfaceModel& model, const MonomialOperator& op);

FockVector apply(const SurfaceModel& model, const OperatorSum& op, const FockVector& v);
FockVector apply(const SurfaceModel& model, const OpWord& w, const FockVector& v);

/// Super-bracket [A, B], truncated to annihilation weight <= budget.
OperatorSum op_commutator(const SurfaceModel& model, const OperatorSum& a, const OperatorSum& b,
                          int budget = kUnbounded);
/// [d, A] truncated to annihilation weight <= budget. Terms above the budget are never
/// needed when the result acts on vectors of weight <= budget.
OperatorSum op_derivative(const SurfaceModel& model, const OperatorSum& a, int budget);

/// L_n(a) restricted to words of annihilation weight <= budget.
OperatorSum virasoro_operator(const SurfaceModel& model, int n, const CohClass& a, int budget);
FockVector virasoro_apply(const SurfaceModel& model, int n, const CohClass& a, const FockVector& v);
/// a'_n(b_c) v = n L_n(b_c) v - n(|n|-1)/2 a_n(K b_c) v
FockVector heisenberg_derivative_apply(const SurfaceModel& model, int n, int c, const FockVector& v);
FockVector boundary_apply(const SurfaceModel& model, const FockVector& v);

/// Chern character operators G_k(alpha) and their commutators with creation operators.
/// Results are memoized; the object may be shared between threads.
class ChernCalculus {
 public:
  explicit ChernCalculus(const SurfaceModel& model) : model_(model) {}
  ChernCalculus(const ChernCalculus&) = delete;
  ChernCalculus& operator=(const ChernCalculus&) = delete;

  const SurfaceModel& model() const { return model_; }

  /// ad_d^j a_{-1}(b_c), truncated.
  OperatorSum derivative_power(int j, int c, int budget);
  /// [G_k(b_a), a_{-r}(b_b)], truncated to annihilation weight <= budget.
  OperatorSum chern_commutator(int k, int a, int r, int b, int budget);
  OperatorSum chern_commutator(int k, const CohClass& alpha, int r, const CohClass& beta, int budget);

  /// [[...[G_k(b_a), a_{-r_1}(c_1)], ...], a_{-r_i}(c_i)] |0>
  FockVector nested_vacuum(int k, int a, const std::vector<Factor>& seq);

  /// Cup product with G_k(alpha, n) on each weight-n part of v.
  FockVector chern_apply(int k, const CohClass& alpha, const FockVector& v);
  /// Transported action on the padding-free space: a monomial M|0> stands for
  /// 1_{-(n-|M|)} M|0> at every n, and the result is expressed the same way.
  FockVector stable_chern_apply(int k, const CohClass& alpha, const FockVector& v);

  FockVector chern_class(int k, const CohClass& alpha, int n);

  std::size_t cache_size() const;
  void clear_cache();

 private:
  FockVector chern_apply_monomial(int k, int a, const Monomial& m, int virtual_pads);

  const SurfaceModel& model_;
  mutable std::shared_mutex mutex_;
  std::map<std::tuple<int, int, int>, OperatorSum> derivative_cache_;        // (j, c, budget)
  std::map<std::tuple<int, int, int, int, int>, OperatorSum> commutator_cache_;  // (k, a, r, b, budget)
  std::map<std::tuple<int, int, std::vector<Factor>>, FockVector> nested_cache_;
};

}  // namespace hilbcalc
