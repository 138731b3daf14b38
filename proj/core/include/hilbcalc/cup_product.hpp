#pragma once

#include "hilbcalc/vertex_ops.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hilbcalc {

class Store;

/// A formal generator: G_k(b_c) or B_k(b_c), depending on the polynomial it lives in.
struct Generator {
  int k = 0;
  int c = 0;
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

/// Super-commutative polynomial in generators of parity |b_c|. Monomials are sorted
/// by (k, c); odd generators appear at most once.
template <class Tag>
class GeneratorPolynomial {
 public:
  using Word = std::vector<Generator>;
  using Terms = std::map<Word, Rational>;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Adds coef * (product of the generators in the given order).
  void add(const SurfaceModel& model, Word word, const Rational& coef) {
    if (coef == 0) return;
    Rational c = coef;
    // insertion sort with Koszul signs
    for (std::size_t i = 1; i < word.size(); ++i)
      for (std::size_t j = i; j > 0 && word[j] < word[j - 1]; --j) {
        if (model.parity(word[j].c) & model.parity(word[j - 1].c)) c = -c;
        std::swap(word[j], word[j - 1]);
      }
    for (std::size_t i = 1; i < word.size(); ++i)
      if (word[i] == word[i - 1] && model.parity(word[i].c)) return;
    add_canonical(word, c);
  }

  void add_canonical(const Word& w, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add(const SurfaceModel& model, const GeneratorPolynomial& o, const Rational& scale = 1) {
    (void)model;
    for (const auto& [w, c] : o.terms_) add_canonical(w, c * scale);
  }

  GeneratorPolynomial multiply(const SurfaceModel& model, const GeneratorPolynomial& o) const {
    GeneratorPolynomial out;
    for (const auto& [w1, c1] : terms_)
      for (const auto& [w2, c2] : o.terms_) {
        Word w = w1;
        w.insert(w.end(), w2.begin(), w2.end());
        out.add(model, std::move(w), c1 * c2);
      }
    return out;
  }

  friend bool operator==(const GeneratorPolynomial&, const GeneratorPolynomial&) = default;

 private:
  Terms terms_;
};

struct GTag;
struct BTag;
/// Polynomial in the Chern character classes G_k(b_c).
using GPolynomial = GeneratorPolynomial<GTag>;
/// Polynomial in the classes B_k(b_c) = 1_{-(n-k-1)} a_{-(k+1)}(b_c)|0>.
using BPolynomial = GeneratorPolynomial<BTag>;

class WeightMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ShapeViolation {
  Monomial monomial;
  std::string reason;
};

struct ShapeReport {
  std::size_t monomials_checked = 0;
  std::vector<ShapeViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// A factor G_k(alpha) of a product of Chern characters.
struct ChernFactor {
  int k = 0;
  CohClass alpha;
};

/// Cup products on X^[n] through the Chern character operators.
///
/// Vectors called "stable" hold monomials M|0> standing for the family
/// 1_{-(n-|M|)} M|0>, n >= |M|; pad() specializes them to a fixed n.
class CupEngine {
 public:
  explicit CupEngine(const SurfaceModel& model, Store* store = nullptr);
  CupEngine(const CupEngine&) = delete;
  CupEngine& operator=(const CupEngine&) = delete;

  const SurfaceModel& model() const { return model_; }
  ChernCalculus& chern() { return chern_; }

  /// P with P(n) = 1_{-(n-|key|)} key|0> for every n >= |key|.
  GPolynomial to_g_basis(const Monomial& key);
  /// G_k(b_c) as a polynomial in B-classes.
  BPolynomial chern_in_b_basis(int k, int c);

  /// Applies G_{g_1} ... G_{g_s}: the last generator acts first.
  FockVector apply_g_word(const GPolynomial::Word& w, const FockVector& v);
  FockVector apply_g_word_stable(const GPolynomial::Word& w, const FockVector& v);
  /// Stable value of a G-monomial (memoized).
  FockVector g_word_stable(const GPolynomial::Word& w);

  FockVector evaluate(const GPolynomial& p, int n);
  FockVector evaluate_stable(const GPolynomial& p);
  FockVector evaluate(const BPolynomial& p, int n);

  /// Cup product of two weight-n classes.
  FockVector cup(const FockVector& a, const FockVector& b, int n);
  /// Product in the stable ring.
  FockVector stable_product(const FockVector& x, const FockVector& y);

  /// prod G_{k_i}(alpha_i, n), the last factor applied first.
  FockVector chern_product(const std::vector<ChernFactor>& gens, int n);
  FockVector chern_product_stable(const std::vector<ChernFactor>& gens);
  Rational intersection(const std::vector<ChernFactor>& gens, int n);
  ShapeReport verify_universal_shape(const std::vector<ChernFactor>& gens);

 private:
  GPolynomial compute_to_g_basis(const Monomial& key);

  const SurfaceModel& model_;
  ChernCalculus chern_;
  Store* store_;
  mutable std::shared_mutex mutex_;
  std::map<Monomial, GPolynomial> g_cache_;
  std::map<GPolynomial::Word, FockVector> word_cache_;
  std::map<std::pair<int, int>, BPolynomial> b_cache_;
};

}  // namespace hilbcalc
