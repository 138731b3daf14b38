#pragma once

#include "hilbcalc/surface_model.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

namespace hilbcalc {

/// The creation operator a_{-r}(b_c).
struct Factor {
  int r = 1;
  int c = 0;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

/// Creation factors applied to the vacuum, sorted by (r, c).
using Monomial = std::vector<Factor>;

int weight(const Monomial& m);
int degree(const SurfaceModel& model, const Monomial& m);
int parity(const SurfaceModel& model, const Monomial& m);

/// Moves a_{-f.r}(b_{f.c}), placed in front of m, to its canonical position.
/// Returns the Koszul sign, or 0 if a repeated odd factor kills the term.
/// Every reordering sign in the library is computed here.
int insert_factor(const SurfaceModel& model, Monomial& m, Factor f);

/// Canonical form of the ordered product word[0] word[1] ... |0>; returns the sign (0 if zero).
int canonicalize(const SurfaceModel& model, const std::vector<Factor>& word, Monomial& out);

class FockVector {
 public:
  using Terms = std::map<Monomial, Rational>;

  FockVector() = default;
  static FockVector vacuum();
  static FockVector monomial(Monomial m, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coeff(const Monomial& m) const;

  void add(const Monomial& m, const Rational& c);
  FockVector& operator+=(const FockVector& o);
  FockVector& operator-=(const FockVector& o);
  FockVector& operator*=(const Rational& c);
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(const Rational& c, FockVector a) { return a *= c; }
  friend bool operator==(const FockVector&, const FockVector&) = default;

  /// Largest monomial weight, or -1 for the zero vector.
  int max_weight() const;
  /// True if every monomial has weight exactly n.
  bool has_weight(int n) const;
  /// Terms of the given weight only.
  FockVector weight_part(int n) const;

 private:
  Terms terms_;
};

/// a_{-r}(a) v
FockVector create(const SurfaceModel& model, int r, const CohClass& a, const FockVector& v);
FockVector create(const SurfaceModel& model, int r, int c, const FockVector& v);
/// a_r(a) v
FockVector annihilate(const SurfaceModel& model, int r, const CohClass& a, const FockVector& v);
FockVector annihilate(const SurfaceModel& model, int r, int c, const FockVector& v);
/// a_n(b_c) v for any nonzero n; a_0 acts as zero.
FockVector heisenberg(const SurfaceModel& model, int n, int c, const FockVector& v);

/// a_{m_1}...a_{m_k}(T) v, summed over the Künneth terms of T.
FockVector apply_indexed_monomial(const SurfaceModel& model, const std::vector<int>& ms,
                                  const TensorClass& t, const FockVector& v);

/// The super-symmetric bilinear form with (|0>,|0>) = 1.
Rational pairing(const SurfaceModel& model, const FockVector& u, const FockVector& v);

/// Multiplies each weight-w term by 1_{-(n-w)} = a_{-1}(1)^{n-w}/(n-w)!; terms with w > n vanish.
FockVector pad(const SurfaceModel& model, const FockVector& v, int n);
/// The fundamental class 1_{X^[n]}.
FockVector fundamental_class(const SurfaceModel& model, int n);
/// B_i(alpha, n) = 1_{-(n-i-1)} a_{-(i+1)}(alpha)|0>.
FockVector b_class(const SurfaceModel& model, int i, const CohClass& alpha, int n);

/// All canonical monomials of weight n, in canonical (map) order.
std::vector<Monomial> enumerate_monomials(const SurfaceModel& model, int n);
std::int64_t graded_dimension(const SurfaceModel& model, int n, int i);

}  // namespace hilbcalc
