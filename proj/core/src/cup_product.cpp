#include "hilbcalc/cup_product.hpp"

#include "hilbcalc/cache.hpp"
#include "hilbcalc/serialize.hpp"

#include <nlohmann/json.hpp>

#include <set>

namespace hilbcalc {

CupEngine::CupEngine(const SurfaceModel& model, Store* store) : model_(model), chern_(model), store_(store) {}

// ------------------------------------------------------------ G-words

FockVector CupEngine::apply_g_word(const GPolynomial::Word& w, const FockVector& v) {
  FockVector cur = v;
  for (std::size_t i = w.size(); i-- > 0 && !cur.is_zero();)
    cur = chern_.chern_apply(w[i].k, CohClass::basis(w[i].c), cur);
  return cur;
}

FockVector CupEngine::apply_g_word_stable(const GPolynomial::Word& w, const FockVector& v) {
  FockVector cur = v;
  for (std::size_t i = w.size(); i-- > 0 && !cur.is_zero();)
    cur = chern_.stable_chern_apply(w[i].k, CohClass::basis(w[i].c), cur);
  return cur;
}

FockVector CupEngine::g_word_stable(const GPolynomial::Word& w) {
  if (w.empty()) return FockVector::vacuum();
  {
    std::shared_lock lock(mutex_);
    auto it = word_cache_.find(w);
    if (it != word_cache_.end()) return it->second;
  }
  const GPolynomial::Word tail(w.begin() + 1, w.end());
  FockVector result = chern_.stable_chern_apply(w[0].k, CohClass::basis(w[0].c), g_word_stable(tail));
  std::unique_lock lock(mutex_);
  return word_cache_.try_emplace(w, std::move(result)).first->second;
}

FockVector CupEngine::evaluate(const GPolynomial& p, int n) {
  const auto unit = fundamental_class(model_, n);
  FockVector out;
  for (const auto& [w, c] : p.terms()) {
    auto part = apply_g_word(w, unit);
    part *= c;
    out += part;
  }
  return out;
}

FockVector CupEngine::evaluate_stable(const GPolynomial& p) {
  FockVector out;
  for (const auto& [w, c] : p.terms()) {
    auto part = g_word_stable(w);
    part *= c;
    out += part;
  }
  return out;
}

// ------------------------------------------------------ basis conversion

GPolynomial CupEngine::to_g_basis(const Monomial& key) {
  {
    std::shared_lock lock(mutex_);
    auto it = g_cache_.find(key);
    if (it != g_cache_.end()) return it->second;
  }
  GPolynomial result;
  std::string store_key;
  std::optional<std::string> stored;
  if (store_) {
    store_key = "to_g_basis|" + model_.fingerprint() + "|" + monomial_to_json(model_, key).dump();
    stored = store_->get(store_key);
  }
  if (stored) {
    result = gpolynomial_from_json(model_, nlohmann::json::parse(*stored));
  } else {
    result = compute_to_g_basis(key);
    if (store_) store_->put(store_key, gpolynomial_to_json(model_, result).dump());
  }
  std::unique_lock lock(mutex_);
  return g_cache_.try_emplace(key, std::move(result)).first->second;
}

GPolynomial CupEngine::compute_to_g_basis(const Monomial& key) {
  FockVector residual = FockVector::monomial(key);
  GPolynomial out;
  std::set<Monomial> done;
  while (!residual.is_zero()) {
    // The heaviest remaining monomial is removed by its leading G-monomial.
    const Monomial* lead = nullptr;
    int lead_weight = -1;
    for (const auto& [m, c] : residual.terms()) {
      const int w = weight(m);
      if (w > lead_weight) {
        lead_weight = w;
        lead = &m;
      }
    }
    const Monomial kappa = *lead;
    if (!done.insert(kappa).second) throw std::logic_error("to_g_basis: residual failed to descend");
    const Rational c = residual.coeff(kappa);
    GPolynomial::Word word;
    Rational scale = c;
    for (const auto& f : kappa) {
      word.push_back({f.r - 1, f.c});
      scale *= factorial(f.r);
      if ((f.r - 1) & 1) scale = -scale;
    }
    out.add_canonical(word, scale);
    FockVector value = g_word_stable(word);
    value *= scale;
    residual -= value;
    if (residual.coeff(kappa) != 0) throw std::logic_error("to_g_basis: leading coefficient mismatch");
  }
  return out;
}

BPolynomial CupEngine::chern_in_b_basis(int k, int c) {
  {
    std::shared_lock lock(mutex_);
    auto it = b_cache_.find({k, c});
    if (it != b_cache_.end()) return it->second;
  }
  // a_{(k+1, c)} = ((-1)^k (k+1)!) G_k(c) + lower G-monomials, and a_{(k+1, c)} = B_k(c).
  const GPolynomial p = to_g_basis({Factor{k + 1, c}});
  const GPolynomial::Word top{{k, c}};
  BPolynomial acc;
  acc.add_canonical({Generator{k, c}}, 1);
  for (const auto& [w, coef] : p.terms()) {
    if (w == top) continue;
    BPolynomial prod;
    prod.add_canonical({}, 1);
    for (const auto& g : w) prod = prod.multiply(model_, chern_in_b_basis(g.k, g.c));
    acc.add(model_, prod, -coef);
  }
  const Rational lead = p.coeff(top);
  if (lead == 0) throw std::logic_error("chern_in_b_basis: missing leading term");
  BPolynomial result;
  result.add(model_, acc, 1 / lead);
  std::unique_lock lock(mutex_);
  return b_cache_.try_emplace({k, c}, std::move(result)).first->second;
}

FockVector CupEngine::evaluate(const BPolynomial& p, int n) {
  FockVector out;
  for (const auto& [w, c] : p.terms()) {
    FockVector prod = fundamental_class(model_, n);
    for (std::size_t i = w.size(); i-- > 0 && !prod.is_zero();)
      prod = cup(b_class(model_, w[i].k, CohClass::basis(w[i].c), n), prod, n);
    prod *= c;
    out += prod;
  }
  return out;
}

// ------------------------------------------------------------- products

FockVector CupEngine::cup(const FockVector& a, const FockVector& b, int n) {
  if (!a.has_weight(n) || !b.has_weight(n)) throw WeightMismatch("cup: arguments must be classes on X^[" + std::to_string(n) + "]");
  GPolynomial q;
  for (const auto& [m, c] : a.terms()) {
    // m = j! * 1_{-j} rest|0> where rest has no a_{-1}(1) factors
    Monomial rest;
    int j = 0;
    for (const auto& f : m) {
      if (f == Factor{1, model_.unit()})
        ++j;
      else
        rest.push_back(f);
    }
    q.add(model_, to_g_basis(rest), c * factorial(j));
  }
  FockVector out;
  for (const auto& [w, c] : q.terms()) {
    auto part = apply_g_word(w, b);
    part *= c;
    out += part;
  }
  return out;
}

FockVector CupEngine::stable_product(const FockVector& x, const FockVector& y) {
  GPolynomial q;
  for (const auto& [m, c] : x.terms()) q.add(model_, to_g_basis(m), c);
  const bool unit = y == FockVector::vacuum();
  FockVector out;
  for (const auto& [w, c] : q.terms()) {
    auto part = unit ? g_word_stable(w) : apply_g_word_stable(w, y);
    part *= c;
    out += part;
  }
  return out;
}

FockVector CupEngine::chern_product(const std::vector<ChernFactor>& gens, int n) {
  FockVector cur = fundamental_class(model_, n);
  for (std::size_t i = gens.size(); i-- > 0 && !cur.is_zero();)
    cur = chern_.chern_apply(gens[i].k, gens[i].alpha, cur);
  return cur;
}

FockVector CupEngine::chern_product_stable(const std::vector<ChernFactor>& gens) {
  FockVector cur = FockVector::vacuum();
  for (std::size_t i = gens.size(); i-- > 0 && !cur.is_zero();)
    cur = chern_.stable_chern_apply(gens[i].k, gens[i].alpha, cur);
  return cur;
}

Rational CupEngine::intersection(const std::vector<ChernFactor>& gens, int n) {
  int deg = 0;
  for (const auto& g : gens) {
    if (g.alpha.is_zero()) return 0;
    deg += 2 * g.k + model_.degree_of(g.alpha);
  }
  if (deg != 4 * n) return 0;
  return pairing(model_, chern_product(gens, n), fundamental_class(model_, n));
}

ShapeReport CupEngine::verify_universal_shape(const std::vector<ChernFactor>& gens) {
  ShapeReport report;
  int sum_k = 0, bound = 0, deg = 0;
  for (const auto& g : gens) {
    sum_k += g.k;
    bound += g.k + 1;
    deg += 2 * g.k + model_.degree_of(g.alpha);
  }
  const int s = static_cast<int>(gens.size());
  bool single_classes = true;
  for (const auto& g : gens) single_classes = single_classes && g.alpha.terms().size() == 1;
  const auto product = chern_product_stable(gens);
  for (const auto& [m, c] : product.terms()) {
    ++report.monomials_checked;
    const int w = weight(m);
    const int parts = static_cast<int>(m.size());
    if (w > bound)
      report.violations.push_back({m, "weight " + std::to_string(w) + " exceeds " + std::to_string(bound)});
    // sum_i (m_i - 2 + sum_j n_ij) = sum k with m_i = parts_i + r_i, 0 <= r_i <= 2, 1 <= l <= s
    const int excess = parts + w - sum_k;
    if (s > 0 && (excess < 0 || excess > 2 * s))
      report.violations.push_back({m, "degree identity cannot hold (parts + weight - sum k = " +
                                          std::to_string(excess) + ")"});
    if (degree(model_, m) != deg)
      report.violations.push_back({m, "cohomological degree " + std::to_string(degree(model_, m)) +
                                          " != " + std::to_string(deg)});
    if (w == bound && single_classes) {
      // only the leading monomial may reach the bound
      Monomial lead;
      std::vector<Factor> word;
      for (const auto& g : gens)
        for (const auto& [cc, x] : g.alpha.terms()) word.push_back({g.k + 1, cc});
      if (canonicalize(model_, word, lead) == 0 || m != lead)
        report.violations.push_back({m, "non-leading monomial of maximal weight"});
    }
  }
  return report;
}

}  // namespace hilbcalc
