#include "hilbcalc/fock.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hilbcalc {

int weight(const Monomial& m) {
  int w = 0;
  for (const auto& f : m) w += f.r;
  return w;
}

int degree(const SurfaceModel& model, const Monomial& m) {
  int d = 0;
  for (const auto& f : m) d += 2 * (f.r - 1) + model.degree(f.c);
  return d;
}

int parity(const SurfaceModel& model, const Monomial& m) {
  int p = 0;
  for (const auto& f : m) p ^= model.parity(f.c);
  return p;
}

int insert_factor(const SurfaceModel& model, Monomial& m, Factor f) {
  auto pos = std::lower_bound(m.begin(), m.end(), f);
  const int p = model.parity(f.c);
  if (p && pos != m.end() && *pos == f) return 0;
  int sign = 1;
  if (p)
    for (auto it = m.begin(); it != pos; ++it)
      if (model.parity(it->c)) sign = -sign;
  m.insert(pos, f);
  return sign;
}

int canonicalize(const SurfaceModel& model, const std::vector<Factor>& word, Monomial& out) {
  out.clear();
  int sign = 1;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    sign *= insert_factor(model, out, *it);
    if (sign == 0) return 0;
  }
  return sign;
}

// --------------------------------------------------------------- FockVector

FockVector FockVector::vacuum() { return monomial({}, 1); }

FockVector FockVector::monomial(Monomial m, const Rational& c) {
  FockVector v;
  v.add(m, c);
  return v;
}

Rational FockVector::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void FockVector::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

FockVector& FockVector::operator+=(const FockVector& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

FockVector& FockVector::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

int FockVector::max_weight() const {
  int w = -1;
  for (const auto& [m, c] : terms_) w = std::max(w, weight(m));
  return w;
}

bool FockVector::has_weight(int n) const {
  for (const auto& [m, c] : terms_)
    if (weight(m) != n) return false;
  return true;
}

FockVector FockVector::weight_part(int n) const {
  FockVector out;
  for (const auto& [m, c] : terms_)
    if (weight(m) == n) out.add(m, c);
  return out;
}

// ----------------------------------------------------------- Heisenberg action

FockVector create(const SurfaceModel& model, int r, int c, const FockVector& v) {
  if (r < 1) throw std::invalid_argument("create: index must be positive");
  FockVector out;
  for (const auto& [m, x] : v.terms()) {
    Monomial nm = m;
    if (int s = insert_factor(model, nm, {r, c})) out.add(nm, s * x);
  }
  return out;
}

FockVector create(const SurfaceModel& model, int r, const CohClass& a, const FockVector& v) {
  FockVector out;
  for (const auto& [c, x] : a.terms()) {
    auto part = create(model, r, c, v);
    part *= x;
    out += part;
  }
  return out;
}

FockVector annihilate(const SurfaceModel& model, int r, int c, const FockVector& v) {
  if (r < 1) throw std::invalid_argument("annihilate: index must be positive");
  FockVector out;
  const int p = model.parity(c);
  for (const auto& [m, x] : v.terms()) {
    int jumped = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i].r == r) {
        const Rational& q = model.pairing(c, m[i].c);
        if (q != 0) {
          Monomial nm;
          nm.reserve(m.size() - 1);
          nm.insert(nm.end(), m.begin(), m.begin() + i);
          nm.insert(nm.end(), m.begin() + i + 1, m.end());
          const int sign = (p & jumped) ? 1 : -1;  // the contraction itself carries -r
          out.add(nm, sign * r * q * x);
        }
      }
      jumped ^= model.parity(m[i].c);
    }
  }
  return out;
}

FockVector annihilate(const SurfaceModel& model, int r, const CohClass& a, const FockVector& v) {
  FockVector out;
  for (const auto& [c, x] : a.terms()) {
    auto part = annihilate(model, r, c, v);
    part *= x;
    out += part;
  }
  return out;
}

FockVector heisenberg(const SurfaceModel& model, int n, int c, const FockVector& v) {
  if (n < 0) return create(model, -n, c, v);
  if (n > 0) return annihilate(model, n, c, v);
  return {};
}

FockVector apply_indexed_monomial(const SurfaceModel& model, const std::vector<int>& ms,
                                  const TensorClass& t, const FockVector& v) {
  if (static_cast<int>(ms.size()) != t.arity())
    throw std::invalid_argument("apply_indexed_monomial: arity mismatch");
  FockVector out;
  for (const auto& [tup, x] : t.terms()) {
    FockVector w = v;
    for (std::size_t i = ms.size(); i-- > 0 && !w.is_zero();) w = heisenberg(model, ms[i], tup[i], w);
    w *= x;
    out += w;
  }
  return out;
}

// ------------------------------------------------------------------- pairing

namespace {

Rational pair_monomial(const SurfaceModel& model, const Monomial& u, std::size_t from,
                       const FockVector& v) {
  if (v.is_zero()) return 0;
  if (from == u.size()) return v.coeff({});
  const Factor f = u[from];
  int rest = 0;
  for (std::size_t i = from + 1; i < u.size(); ++i) rest ^= model.parity(u[i].c);
  // (a_{-r}(c) W, v) = (-1)^{|c||W|} (W, (-1)^r a_r(c) v)
  int sign = (model.parity(f.c) & rest) ? -1 : 1;
  if (f.r & 1) sign = -sign;
  const auto reduced = annihilate(model, f.r, f.c, v);
  return sign * pair_monomial(model, u, from + 1, reduced);
}

}  // namespace

Rational pairing(const SurfaceModel& model, const FockVector& u, const FockVector& v) {
  // Only same-weight terms can pair; bucket v by weight first.
  std::map<int, FockVector> by_weight;
  for (const auto& [m, c] : v.terms()) by_weight[weight(m)].add(m, c);
  Rational total = 0;
  for (const auto& [m, c] : u.terms()) {
    auto it = by_weight.find(weight(m));
    if (it == by_weight.end()) continue;
    total += c * pair_monomial(model, m, 0, it->second);
  }
  return total;
}

// ------------------------------------------------------------------- padding

FockVector pad(const SurfaceModel& model, const FockVector& v, int n) {
  FockVector out;
  for (const auto& [m, c] : v.terms()) {
    const int w = weight(m);
    if (w > n) continue;
    Monomial nm = m;
    for (int i = 0; i < n - w; ++i) insert_factor(model, nm, {1, model.unit()});
    out.add(nm, c / factorial(n - w));
  }
  return out;
}

FockVector fundamental_class(const SurfaceModel& model, int n) {
  return pad(model, FockVector::vacuum(), n);
}

FockVector b_class(const SurfaceModel& model, int i, const CohClass& alpha, int n) {
  if (i < 0 || i >= n) return {};
  return pad(model, create(model, i + 1, alpha, FockVector::vacuum()), n);
}

// -------------------------------------------------------------- enumeration

std::vector<Monomial> enumerate_monomials(const SurfaceModel& model, int n) {
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(int, Factor)> rec = [&](int left, Factor min) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int r = min.r; r <= left; ++r)
      for (int c = (r == min.r ? min.c : 0); c < model.size(); ++c) {
        if (!cur.empty() && cur.back() == Factor{r, c} && model.parity(c)) continue;
        cur.push_back({r, c});
        rec(left - r, {r, c});
        cur.pop_back();
      }
  };
  rec(n, {1, 0});
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t graded_dimension(const SurfaceModel& model, int n, int i) {
  std::int64_t count = 0;
  for (const auto& m : enumerate_monomials(model, n))
    if (degree(model, m) == i) ++count;
  return count;
}

}  // namespace hilbcalc
