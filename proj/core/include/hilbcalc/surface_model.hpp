#pragma once

#include "hilbcalc/rational.hpp"

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hilbcalc {

struct BasisClass {
  int index = 0;
  std::string name;
  int degree = 0;
  int parity() const { return degree & 1; }
};

/// Sparse rational combination of basis classes. Zero coefficients are never stored.
class CohClass {
 public:
  CohClass() = default;
  static CohClass basis(int i, const Rational& c = 1);

  const std::map<int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(int i) const;

  void add(int i, const Rational& c);
  CohClass& operator+=(const CohClass& o);
  CohClass& operator-=(const CohClass& o);
  CohClass& operator*=(const Rational& c);

  friend CohClass operator+(CohClass a, const CohClass& b) { return a += b; }
  friend CohClass operator-(CohClass a, const CohClass& b) { return a -= b; }
  friend CohClass operator*(const Rational& c, CohClass a) { return a *= c; }
  friend bool operator==(const CohClass&, const CohClass&) = default;

 private:
  std::map<int, Rational> terms_;
};

using Tuple = std::vector<int>;

/// Element of H*(X)^{⊗k} expanded over basis tuples. Arity 0 is a plain scalar.
class TensorClass {
 public:
  explicit TensorClass(int arity = 0) : arity_(arity) {}
  static TensorClass scalar(const Rational& c);

  int arity() const { return arity_; }
  const std::map<Tuple, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Tuple& t) const;
  Rational scalar_value() const { return coeff({}); }

  void add(const Tuple& t, const Rational& c);
  TensorClass& operator+=(const TensorClass& o);
  TensorClass& operator*=(const Rational& c);
  friend TensorClass operator+(TensorClass a, const TensorClass& b) { return a += b; }
  friend bool operator==(const TensorClass&, const TensorClass&) = default;

 private:
  int arity_ = 0;
  std::map<Tuple, Rational> terms_;
};

/// Malformed model document (missing field, unknown basis name, bad rational...).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ValidationIssue {
  std::string axiom;
  std::vector<int> indices;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

class InvalidModel : public std::runtime_error {
 public:
  explicit InvalidModel(ValidationReport r);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Finite model of the graded super-commutative ring H*(X). Immutable after construction.
class SurfaceModel {
 public:
  /// Parses a model document. Only the schema is checked here; see validate().
  static SurfaceModel from_json(const nlohmann::json& doc);
  static SurfaceModel from_file(const std::filesystem::path& path);
  /// Parse and validate; throws InvalidModel when an axiom fails.
  static SurfaceModel load(const nlohmann::json& doc);

  nlohmann::json to_json() const;
  /// SHA-256 of the canonical serialization.
  const std::string& fingerprint() const { return fingerprint_; }

  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisClass>& basis() const { return basis_; }
  const BasisClass& basis(int i) const { return basis_.at(i); }
  int degree(int i) const { return basis_[i].degree; }
  int parity(int i) const { return basis_[i].degree & 1; }
  int index_of(std::string_view name) const;
  int unit() const { return unit_; }
  int point() const { return point_; }
  const CohClass& canonical_class() const { return canonical_; }
  const CohClass& euler_class() const { return euler_; }
  /// Betti numbers b_0..b_4.
  std::vector<int> betti() const;

  const CohClass& product(int i, int j) const { return mult_[i][j]; }
  /// ∫ b_i b_j
  const Rational& pairing(int i, int j) const { return pairing_[i][j]; }
  const Rational& integral(int i) const { return integral_[i]; }
  bool nondegenerate() const { return !dual_.empty(); }

  CohClass mul(const CohClass& a, const CohClass& b) const;
  Rational integrate(const CohClass& a) const;
  /// Parity of a homogeneous class; throws on mixed parity.
  int parity_of(const CohClass& a) const;
  int degree_of(const CohClass& a) const;

  /// Künneth decomposition of the diagonal pushforward X -> X^k.
  TensorClass tau_push(int k, const CohClass& a) const;
  /// Cached tau_push(2, b_i).
  const TensorClass& tau2(int i) const { return tau2_[i]; }
  /// Cached K·b_i.
  const CohClass& k_times(int i) const { return k_times_[i]; }

  /// Multiplies slot j (1-based) by b on the right, with the Koszul sign of the later slots.
  TensorClass tensor_absorb(const TensorClass& t, int j, const CohClass& b) const;
  /// Absorbs b into slot j, then integrates that slot away.
  TensorClass tensor_integrate_slot(const TensorClass& t, int j, const CohClass& b) const;
  /// Replaces slot j by its pushforward along X -> X^u.
  TensorClass tensor_refine(const TensorClass& t, int j, int u) const;
  /// Multiplies slots j and j2 together into position min(j, j2).
  TensorClass tensor_contract(const TensorClass& t, int j, int j2) const;
  /// Pairing on X^k against a single basis tuple.
  Rational tensor_pairing(const TensorClass& t, const Tuple& b) const;

  ValidationReport validate() const;

 private:
  SurfaceModel() = default;
  void finish();

  std::string name_;
  std::vector<BasisClass> basis_;
  std::vector<std::vector<CohClass>> mult_;
  std::vector<Rational> integral_;
  CohClass canonical_;
  CohClass euler_;
  int unit_ = -1;
  int point_ = -1;

  std::vector<std::vector<Rational>> pairing_;
  std::vector<std::vector<Rational>> dual_;  // inverse pairing matrix, empty if singular
  std::vector<std::vector<std::pair<int, Rational>>> dual_rows_;
  std::vector<TensorClass> tau2_;
  std::vector<CohClass> k_times_;
  std::string fingerprint_;
};

}  // namespace hilbcalc
