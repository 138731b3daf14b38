#pragma once

#include "hilbcalc/cup_product.hpp"

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hilbcalc {

/// A partition-valued function rho: basis class index -> partition (parts in decreasing order).
/// Odd classes carry strict partitions. Empty partitions are not stored.
struct Key {
  std::map<int, std::vector<int>> parts;
  friend auto operator<=>(const Key&, const Key&) = default;
};

int weight(const Key& k);
int degree(const SurfaceModel& model, const Key& k);
bool is_valid(const SurfaceModel& model, const Key& k);

/// Graded lexicographic: by weight, then by (basis index, partition) lexicographically.
bool key_less(const Key& a, const Key& b);

/// The stable class a_rho = prod_c prod_i a_{-rho(c)_i}(c)|0>, classes in basis order,
/// written in the canonical monomial order (the Koszul sign is folded into the coefficient).
FockVector key_vector(const SurfaceModel& model, const Key& k);
/// Inverse of key_vector on single monomials: m = sign * key_vector(key).
std::pair<Key, int> key_of(const SurfaceModel& model, const Monomial& m);
/// Re-expresses a stable vector in the a_rho basis.
std::map<Key, Rational> to_keys(const SurfaceModel& model, const FockVector& v);
FockVector from_keys(const SurfaceModel& model, const std::map<Key, Rational>& coeffs);

/// Union of partitions, class by class.
Key key_union(const Key& a, const Key& b);

/// All keys of weight 1..max_weight in key_less order.
std::vector<Key> enumerate_keys(const SurfaceModel& model, int max_weight);
/// Keys of weight exactly w, in key_less order.
std::vector<Key> keys_of_weight(const SurfaceModel& model, int w);

nlohmann::json key_to_json(const SurfaceModel& model, const Key& k);
Key key_from_json(const SurfaceModel& model, const nlohmann::json& j);
std::string key_to_text(const SurfaceModel& model, const Key& k);

using StructureRow = std::map<Key, Rational>;

/// d_{rho sigma}^nu: a_rho a_sigma = sum_nu d^nu a_nu in the stable ring.
StructureRow structure_constants(CupEngine& engine, const Key& rho, const Key& sigma);

struct StabilityMismatch {
  int n = 0;
  std::string message;
};

struct StabilityReport {
  Key rho, sigma;
  StructureRow table;
  std::vector<int> checked_n;
  bool leading_ok = true;
  std::vector<StabilityMismatch> mismatches;
  bool ok() const { return leading_ok && mismatches.empty(); }
};

/// Recomputes a_rho(n) a_sigma(n) on X^[n] for each n and compares with the padded table.
/// Also checks that the top-weight part of the table is a_{rho ∪ sigma} with coefficient 1
/// (up to the Koszul sign of concatenating the two factor lists).
StabilityReport verify_stability(CupEngine& engine, const Key& rho, const Key& sigma, const std::vector<int>& ns);

struct TransitionData {
  int max_weight = 0;
  std::vector<Key> keys;
  /// generator monomial (same indexing as keys) -> expansion over a_nu
  std::map<Key, StructureRow> forward;
  /// a_nu -> expansion over generator monomials
  std::map<Key, StructureRow> inverse;
  bool unitriangular = true;
  std::vector<std::string> problems;
};

/// Expands prod a_{r,c} over the a_nu basis for every generator monomial of weight <= W.
TransitionData generator_transition(CupEngine& engine, int max_weight);

/// The linear map phi: H*(X) -> H*(Y); row i is the image of basis class i of X.
using BasisMap = std::vector<CohClass>;

class TransportPrecondition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TransportReport {
  std::size_t pairs_checked = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Throws TransportPrecondition unless phi is a degree- and integral-preserving ring isomorphism
/// with phi(K_X) = K_Y. The K^2 comparison runs first.
void validate_transport_map(const SurfaceModel& x, const SurfaceModel& y, const BasisMap& phi);
/// Images under the induced map on stable vectors, a_{-r}(b) -> a_{-r}(phi(b)).
FockVector transport_vector(const SurfaceModel& x, const SurfaceModel& y, const BasisMap& phi, const FockVector& v);
/// Compares the structure tables of X and Y under phi for all pairs of total weight <= W.
TransportReport transport_isomorphism(CupEngine& ex, CupEngine& ey, const BasisMap& phi, int max_weight);

/// One JSON line per (rho, sigma), rho and sigma in key order, total weight <= W.
/// Rows are computed on `jobs` threads; output order does not depend on scheduling.
void write_structure_table(CupEngine& engine, int max_weight, std::ostream& out, int jobs = 1);
nlohmann::json structure_record(const SurfaceModel& model, const Key& rho, const Key& sigma, const StructureRow& row);

}  // namespace hilbcalc
