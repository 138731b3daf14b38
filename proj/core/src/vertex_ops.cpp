#include "hilbcalc/vertex_ops.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <stdexcept>

namespace hilbcalc {

int annihilation_weight(const OpWord& w) {
  int s = 0;
  for (const auto& f : w)
    if (f.m > 0) s += f.m;
  return s;
}

int parity(const SurfaceModel& model, const OpWord& w) {
  int p = 0;
  for (const auto& f : w) p ^= model.parity(f.c);
  return p;
}

// ------------------------------------------------------------ OperatorSum

Rational OperatorSum::coeff(const OpWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void OperatorSum::add(const OpWord& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

OperatorSum& OperatorSum::operator-=(const OperatorSum& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

OperatorSum& OperatorSum::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, x] : terms_) x *= c;
  return *this;
}

OperatorSum OperatorSum::truncated(int budget) const {
  OperatorSum out;
  for (const auto& [w, c] : terms_)
    if (annihilation_weight(w) <= budget) out.terms_.emplace(w, c);
  return out;
}

// ---------------------------------------------------------- normal order

void normal_order_into(const SurfaceModel& model, OpWord word, const Rational& coef, OperatorSum& out,
                       int budget) {
  if (coef == 0) return;
  Rational c = coef;
  for (std::size_t i = 0; i + 1 < word.size();) {
    const OpFactor x = word[i];
    const OpFactor y = word[i + 1];
    if (x == y) {
      if (model.parity(x.c)) return;
      ++i;
      continue;
    }
    if (y < x) {
      if (x.m + y.m == 0) {
        // a_m(x) a_{-m}(y) = ± a_{-m}(y) a_m(x) - m ∫(xy)
        const Rational& q = model.pairing(x.c, y.c);
        if (q != 0) {
          OpWord rest;
          rest.reserve(word.size() - 2);
          rest.insert(rest.end(), word.begin(), word.begin() + i);
          rest.insert(rest.end(), word.begin() + i + 2, word.end());
          normal_order_into(model, std::move(rest), c * (-x.m) * q, out, budget);
        }
      }
      if (model.parity(x.c) & model.parity(y.c)) c = -c;
      std::swap(word[i], word[i + 1]);
      if (i > 0) --i;
      continue;
    }
    ++i;
  }
  if (annihilation_weight(word) <= budget) out.add(word, c);
}

OperatorSum normal_order(const SurfaceModel& model, const MonomialOperator& op, int budget) {
  if (static_cast<int>(op.indices.size()) != op.tensor.arity())
    throw std::invalid_argument("operator arity mismatch");
  OperatorSum out;
  for (const auto& [tup, c] : op.tensor.terms()) {
    OpWord w;
    bool zero_index = false;
    for (std::size_t i = 0; i < tup.size(); ++i) {
      if (op.indices[i] == 0) zero_index = true;
      w.push_back({op.indices[i], tup[i]});
    }
    if (!zero_index) normal_order_into(model, std::move(w), c, out, budget);
  }
  return out;
}

OperatorSum canonical_form(const SurfaceModel& model, const MonomialOperator& op) {
  return normal_order(model, op);
}

OperatorSum single_operator(const SurfaceModel& model, int m, const CohClass& a) {
  OperatorSum out;
  if (m == 0) return out;
  for (const auto& [c, x] : a.terms()) {
    if (c < 0 || c >= model.size()) throw std::out_of_range("class does not belong to this model");
    out.add({{m, c}}, x);
  }
  return out;
}

std::vector<MonomialOperator> reorder(const SurfaceModel& model, const MonomialOperator& op, int j) {
  const int k = static_cast<int>(op.indices.size());
  if (j < 1 || j >= k) throw std::out_of_range("reorder: slot out of range");
  const int s = j - 1;
  std::vector<MonomialOperator> out;
  MonomialOperator swapped{op.indices, TensorClass(k)};
  std::swap(swapped.indices[s], swapped.indices[s + 1]);
  for (const auto& [tup, c] : op.tensor.terms()) {
    Tuple t = tup;
    std::swap(t[s], t[s + 1]);
    swapped.tensor.add(t, (model.parity(tup[s]) & model.parity(tup[s + 1])) ? -c : c);
  }
  out.push_back(std::move(swapped));
  const int nj = op.indices[s];
  if (nj + op.indices[s + 1] == 0) {
    MonomialOperator corr;
    for (int l = 0; l < k; ++l)
      if (l != s && l != s + 1) corr.indices.push_back(op.indices[l]);
    auto contracted = model.tensor_contract(op.tensor, j, j + 1);
    corr.tensor = model.tensor_integrate_slot(contracted, j, CohClass::basis(model.unit()));
    corr.tensor *= Rational(-nj);
    out.push_back(std::move(corr));
  }
  return out;
}

std::map<std::vector<int>, TensorClass> tensor_view(const OperatorSum& s) {
  std::map<std::vector<int>, TensorClass> out;
  for (const auto& [w, c] : s.terms()) {
    std::vector<int> idx;
    Tuple t;
    for (const auto& f : w) {
      idx.push_back(f.m);
      t.push_back(f.c);
    }
    auto it = out.try_emplace(idx, TensorClass(static_cast<int>(w.size()))).first;
    it->second.add(t, c);
  }
  return out;
}

// ------------------------------------------------------------------ apply

FockVector apply(const SurfaceModel& model, const OpWord& w, const FockVector& v) {
  FockVector cur = v;
  for (std::size_t i = w.size(); i-- > 0 && !cur.is_zero();) cur = heisenberg(model, w[i].m, w[i].c, cur);
  return cur;
}

FockVector apply(const SurfaceModel& model, const OperatorSum& op, const FockVector& v) {
  FockVector out;
  const int top = v.max_weight();
  for (const auto& [w, c] : op.terms()) {
    if (annihilation_weight(w) > top) continue;
    auto part = apply(model, w, v);
    part *= c;
    out += part;
  }
  return out;
}

// ------------------------------------------------------------- commutator

OperatorSum op_commutator(const SurfaceModel& model, const OperatorSum& a, const OperatorSum& b,
                          int budget) {
  // For each index m, the B-words containing a factor with that index and where.
  std::map<int, std::vector<std::pair<const OpWord*, std::size_t>>> by_index;
  std::map<const OpWord*, const Rational*> b_coef;
  for (const auto& [w, c] : b.terms()) {
    b_coef[&w] = &c;
    for (std::size_t j = 0; j < w.size(); ++j) by_index[w[j].m].emplace_back(&w, j);
  }
  OperatorSum out;
  for (const auto& [wa, ca] : a.terms()) {
    for (std::size_t t = 0; t < wa.size(); ++t) {
      auto it = by_index.find(-wa[t].m);
      if (it == by_index.end()) continue;
      int after_t = 0;
      for (std::size_t u = t + 1; u < wa.size(); ++u) after_t ^= model.parity(wa[u].c);
      for (const auto& [pwb, j] : it->second) {
        const OpWord& wb = *pwb;
        const Rational& q = model.pairing(wa[t].c, wb[j].c);
        if (q == 0) continue;
        int before_j = 0;
        for (std::size_t i = 0; i < j; ++i) before_j ^= model.parity(wb[i].c);
        int sign_exp = (parity(model, wb) & after_t) ^ (model.parity(wa[t].c) & before_j);
        Rational coef = ca * *b_coef[pwb] * (-wa[t].m) * q;
        if (sign_exp) coef = -coef;
        OpWord w;
        w.reserve(wa.size() + wb.size() - 2);
        w.insert(w.end(), wa.begin(), wa.begin() + t);
        w.insert(w.end(), wb.begin(), wb.begin() + j);
        w.insert(w.end(), wb.begin() + j + 1, wb.end());
        w.insert(w.end(), wa.begin() + t + 1, wa.end());
        normal_order_into(model, std::move(w), coef, out, budget);
      }
    }
  }
  return out;
}

// ------------------------------------------------------------- derivative

namespace {

// Adds coef * W[0..j) :a_m a_{n-m}:(tau_2 b_x) W(j..] for |m| <= range.
void add_split(const SurfaceModel& model, const OpWord& w, std::size_t j, int range, const Rational& coef,
               OperatorSum& out, int budget) {
  const int n = w[j].m;
  for (const auto& [tup, t] : model.tau2(w[j].c).terms()) {
    const int y = tup[0], z = tup[1];
    const int yz = model.parity(y) & model.parity(z);
    for (int m = -range; m <= range; ++m) {
      if (m == 0 || m == n) continue;
      OpWord nw;
      nw.reserve(w.size() + 1);
      nw.insert(nw.end(), w.begin(), w.begin() + j);
      Rational c = coef * t;
      if (m <= n - m) {
        nw.push_back({m, y});
        nw.push_back({n - m, z});
      } else {
        nw.push_back({n - m, z});
        nw.push_back({m, y});
        if (yz) c = -c;
      }
      nw.insert(nw.end(), w.begin() + j + 1, w.end());
      normal_order_into(model, std::move(nw), c, out, budget);
    }
  }
}

}  // namespace

OperatorSum op_derivative(const SurfaceModel& model, const OperatorSum& a, int budget) {
  OperatorSum out;
  for (const auto& [w, c] : a.terms()) {
    int maxabs = 0;
    for (const auto& f : w) maxabs = std::max(maxabs, std::abs(f.m));
    const int range = budget + 2 * maxabs + 1;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const int n = w[j].m;
      // n L_n = -(n/2) sum_m :a_m a_{n-m}: tau_2
      add_split(model, w, j, range, c * fraction(-n, 2), out, budget);
      const int kk = n * (std::abs(n) - 1) / 2;
      if (kk != 0) {
        for (const auto& [y, kc] : model.k_times(w[j].c).terms()) {
          OpWord nw = w;
          nw[j].c = y;
          normal_order_into(model, std::move(nw), c * (-kk) * kc, out, budget);
        }
      }
    }
  }
  return out;
}

// --------------------------------------------------------------- Virasoro

OperatorSum virasoro_operator(const SurfaceModel& model, int n, const CohClass& a, int budget) {
  OperatorSum out;
  const int range = std::max(budget, 0) + std::abs(n);
  for (const auto& [x, ac] : a.terms()) {
    for (const auto& [tup, t] : model.tau2(x).terms()) {
      const int y = tup[0], z = tup[1];
      const int yz = model.parity(y) & model.parity(z);
      for (int m = -range; m <= range; ++m) {
        if (m == 0 || m == n) continue;
        Rational c = fraction(-1, 2) * ac * t;
        OpWord w;
        if (m <= n - m) {
          w = {{m, y}, {n - m, z}};
        } else {
          w = {{n - m, z}, {m, y}};
          if (yz) c = -c;
        }
        normal_order_into(model, std::move(w), c, out, budget);
      }
    }
  }
  return out;
}

FockVector virasoro_apply(const SurfaceModel& model, int n, const CohClass& a, const FockVector& v) {
  if (v.is_zero()) return {};
  return apply(model, virasoro_operator(model, n, a, v.max_weight()), v);
}

FockVector heisenberg_derivative_apply(const SurfaceModel& model, int n, int c, const FockVector& v) {
  FockVector out = virasoro_apply(model, n, CohClass::basis(c), v);
  out *= Rational(n);
  const int kk = n * (std::abs(n) - 1) / 2;
  if (kk != 0) {
    for (const auto& [y, kc] : model.k_times(c).terms()) {
      auto part = heisenberg(model, n, y, v);
      part *= -kk * kc;
      out += part;
    }
  }
  return out;
}

FockVector boundary_apply(const SurfaceModel& model, const FockVector& v) {
  std::map<Monomial, FockVector> memo;
  std::function<const FockVector&(const Monomial&)> rec = [&](const Monomial& m) -> const FockVector& {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    FockVector result;
    if (!m.empty()) {
      const Factor f = m.front();
      const Monomial rest(m.begin() + 1, m.end());
      const auto w = FockVector::monomial(rest);
      result = heisenberg_derivative_apply(model, -f.r, f.c, w);
      result += create(model, f.r, f.c, rec(rest));
    }
    return memo.emplace(m, std::move(result)).first->second;
  };
  FockVector out;
  for (const auto& [m, c] : v.terms()) {
    FockVector part = rec(m);
    part *= c;
    out += part;
  }
  return out;
}

// ---------------------------------------------------------- ChernCalculus

OperatorSum ChernCalculus::derivative_power(int j, int c, int budget) {
  const auto key = std::make_tuple(j, c, budget);
  {
    std::shared_lock lock(mutex_);
    auto it = derivative_cache_.find(key);
    if (it != derivative_cache_.end()) return it->second;
  }
  OperatorSum result;
  if (j == 0)
    result.add({{-1, c}}, 1);
  else
    result = op_derivative(model_, derivative_power(j - 1, c, budget), budget);
  std::unique_lock lock(mutex_);
  return derivative_cache_.try_emplace(key, std::move(result)).first->second;
}

OperatorSum ChernCalculus::chern_commutator(int k, int a, int r, int b, int budget) {
  if (r < 1) throw std::invalid_argument("chern_commutator: r must be positive");
  const auto key = std::make_tuple(k, a, r, b, budget);
  {
    std::shared_lock lock(mutex_);
    auto it = commutator_cache_.find(key);
    if (it != commutator_cache_.end()) return it->second;
  }
  OperatorSum result;
  const Rational inv_kfact = 1 / factorial(k);
  if (r == 1) {
    // [G_k(a), a_{-1}(b)] = (1/k!) a_{-1}^{(k)}(ab)
    for (const auto& [y, yc] : model_.product(a, b).terms()) {
      auto part = derivative_power(k, y, budget);
      part *= inv_kfact * yc;
      result += part;
    }
  } else {
    const int n = r - 1;
    // D' = [G_k(a), a_{-1}(1)]' = (1/k!) a_{-1}^{(k+1)}(a)
    OperatorSum dprime = derivative_power(k + 1, a, budget + n);
    dprime *= inv_kfact;
    OperatorSum term = op_commutator(model_, dprime, single_operator(model_, -n, CohClass::basis(b)), budget);
    const OperatorSum a1prime = derivative_power(1, model_.unit(), budget + n + 1);
    term += op_commutator(model_, a1prime, chern_commutator(k, a, n, b, budget + 1), budget);
    term *= fraction(-1, n);
    result = std::move(term);
  }
  std::unique_lock lock(mutex_);
  return commutator_cache_.try_emplace(key, std::move(result)).first->second;
}

OperatorSum ChernCalculus::chern_commutator(int k, const CohClass& alpha, int r, const CohClass& beta,
                                            int budget) {
  OperatorSum out;
  for (const auto& [a, ac] : alpha.terms())
    for (const auto& [b, bc] : beta.terms()) {
      auto part = chern_commutator(k, a, r, b, budget);
      part *= ac * bc;
      out += part;
    }
  return out;
}

FockVector ChernCalculus::nested_vacuum(int k, int a, const std::vector<Factor>& seq) {
  if (seq.empty()) return {};
  auto key = std::make_tuple(k, a, seq);
  {
    std::shared_lock lock(mutex_);
    auto it = nested_cache_.find(key);
    if (it != nested_cache_.end()) return it->second;
  }
  FockVector result;
  if (static_cast<int>(seq.size()) <= k + 1) {
    std::vector<int> tail(seq.size() + 1, 0);
    for (std::size_t i = seq.size(); i-- > 0;) tail[i] = tail[i + 1] + seq[i].r;
    OperatorSum x = chern_commutator(k, a, seq[0].r, seq[0].c, tail[1]);
    for (std::size_t j = 1; j < seq.size() && !x.is_zero(); ++j)
      x = op_commutator(model_, x, single_operator(model_, -seq[j].r, CohClass::basis(seq[j].c)), tail[j + 1]);
    result = apply(model_, x, FockVector::vacuum());
  }
  std::unique_lock lock(mutex_);
  return nested_cache_.try_emplace(std::move(key), std::move(result)).first->second;
}

FockVector ChernCalculus::chern_apply_monomial(int k, int a, const Monomial& m, int virtual_pads) {
  // Groups of identical factors; only even factors can repeat.
  struct Group {
    Factor f;
    int mult;
  };
  std::vector<Group> groups;
  for (const auto& f : m) {
    if (!groups.empty() && groups.back().f == f)
      ++groups.back().mult;
    else
      groups.push_back({f, 1});
  }
  const int s = model_.parity(a);
  FockVector out;
  std::vector<int> take(groups.size(), 0);

  auto emit = [&](int pads) {
    const Rational pad_weight = 1 / factorial(pads);
    std::vector<Factor> seq(pads, Factor{1, model_.unit()});
    Rational weight = pad_weight;
    int odd_selected_before = 0;
    int sign_exp = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const int p = model_.parity(groups[g].f.c);
      if (take[g] > 0) {
        weight *= binomial(groups[g].mult, take[g]);
        for (int i = 0; i < take[g]; ++i) seq.push_back(groups[g].f);
        odd_selected_before ^= p;
      } else if (p) {
        sign_exp ^= (s ^ odd_selected_before) & 1;
      }
    }
    if (seq.empty()) return;
    FockVector n = nested_vacuum(k, a, seq);
    if (n.is_zero()) return;
    // Left-multiply the unselected factors, rightmost first.
    for (std::size_t g = groups.size(); g-- > 0;)
      for (int i = take[g]; i < groups[g].mult; ++i) n = create(model_, groups[g].f.r, groups[g].f.c, n);
    n *= sign_exp ? -weight : weight;
    out += n;
  };

  std::function<void(std::size_t, int)> choose = [&](std::size_t g, int left) {
    if (g == groups.size()) {
      for (int pads = 0; pads <= std::min(virtual_pads, left); ++pads) emit(pads);
      return;
    }
    for (int t = 0; t <= std::min(groups[g].mult, left); ++t) {
      take[g] = t;
      choose(g + 1, left - t);
    }
    take[g] = 0;
  };
  choose(0, k + 1);
  return out;
}

FockVector ChernCalculus::chern_apply(int k, const CohClass& alpha, const FockVector& v) {
  FockVector out;
  for (const auto& [a, ac] : alpha.terms())
    for (const auto& [m, c] : v.terms()) {
      auto part = chern_apply_monomial(k, a, m, 0);
      part *= ac * c;
      out += part;
    }
  return out;
}

FockVector ChernCalculus::stable_chern_apply(int k, const CohClass& alpha, const FockVector& v) {
  FockVector out;
  for (const auto& [a, ac] : alpha.terms())
    for (const auto& [m, c] : v.terms()) {
      auto part = chern_apply_monomial(k, a, m, k + 1);
      part *= ac * c;
      out += part;
    }
  return out;
}

FockVector ChernCalculus::chern_class(int k, const CohClass& alpha, int n) {
  return chern_apply(k, alpha, fundamental_class(model_, n));
}

std::size_t ChernCalculus::cache_size() const {
  std::shared_lock lock(mutex_);
  return derivative_cache_.size() + commutator_cache_.size() + nested_cache_.size();
}

void ChernCalculus::clear_cache() {
  std::unique_lock lock(mutex_);
  derivative_cache_.clear();
  commutator_cache_.clear();
  nested_cache_.clear();
}

}  // namespace hilbcalc
