#include "hilbcalc/hilbert_ring.hpp"

#include "hilbcalc/linalg.hpp"
#include "hilbcalc/serialize.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <ostream>
#include <sstream>
#include <thread>

namespace hilbcalc {

using nlohmann::json;

// --------------------------------------------------------------------- keys

int weight(const Key& k) {
  int w = 0;
  for (const auto& [c, p] : k.parts)
    for (int r : p) w += r;
  return w;
}

int degree(const SurfaceModel& model, const Key& k) {
  int d = 0;
  for (const auto& [c, p] : k.parts)
    for (int r : p) d += 2 * (r - 1) + model.degree(c);
  return d;
}

bool is_valid(const SurfaceModel& model, const Key& k) {
  for (const auto& [c, p] : k.parts) {
    if (c < 0 || c >= model.size() || p.empty()) return false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] < 1) return false;
      if (i && p[i] > p[i - 1]) return false;
      if (i && p[i] == p[i - 1] && model.parity(c)) return false;
    }
  }
  return true;
}

bool key_less(const Key& a, const Key& b) {
  const int wa = weight(a), wb = weight(b);
  if (wa != wb) return wa < wb;
  return a.parts < b.parts;
}

namespace {

std::vector<Factor> key_word(const Key& k) {
  std::vector<Factor> word;
  for (const auto& [c, p] : k.parts)
    for (int r : p) word.push_back({r, c});
  return word;
}

}  // namespace

FockVector key_vector(const SurfaceModel& model, const Key& k) {
  Monomial m;
  const int sign = canonicalize(model, key_word(k), m);
  if (sign == 0) return {};
  return FockVector::monomial(m, sign);
}

std::pair<Key, int> key_of(const SurfaceModel& model, const Monomial& m) {
  Key k;
  for (const auto& f : m) k.parts[f.c].push_back(f.r);
  for (auto& [c, p] : k.parts) std::sort(p.rbegin(), p.rend());
  Monomial check;
  const int sign = canonicalize(model, key_word(k), check);
  return {k, sign};
}

std::map<Key, Rational> to_keys(const SurfaceModel& model, const FockVector& v) {
  std::map<Key, Rational> out;
  for (const auto& [m, c] : v.terms()) {
    auto [k, s] = key_of(model, m);
    out[k] += s * c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

FockVector from_keys(const SurfaceModel& model, const std::map<Key, Rational>& coeffs) {
  FockVector out;
  for (const auto& [k, c] : coeffs) {
    auto v = key_vector(model, k);
    v *= c;
    out += v;
  }
  return out;
}

Key key_union(const Key& a, const Key& b) {
  Key u = a;
  for (const auto& [c, p] : b.parts) {
    auto& q = u.parts[c];
    q.insert(q.end(), p.begin(), p.end());
    std::sort(q.rbegin(), q.rend());
  }
  return u;
}

std::vector<Key> keys_of_weight(const SurfaceModel& model, int w) {
  std::vector<Key> out;
  for (const auto& m : enumerate_monomials(model, w)) out.push_back(key_of(model, m).first);
  std::sort(out.begin(), out.end(), key_less);
  return out;
}

std::vector<Key> enumerate_keys(const SurfaceModel& model, int max_weight) {
  std::vector<Key> out;
  for (int w = 1; w <= max_weight; ++w) {
    auto part = keys_of_weight(model, w);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

json key_to_json(const SurfaceModel& model, const Key& k) {
  json out = json::array();
  for (const auto& [c, p] : k.parts) out.push_back({{"c", model.basis(c).name}, {"parts", p}});
  return out;
}

Key key_from_json(const SurfaceModel& model, const json& j) {
  if (!j.is_array()) throw std::invalid_argument("a key is an array of {\"c\", \"parts\"}");
  Key k;
  for (const auto& e : j) {
    const auto name = e.at("c").get<std::string>();
    const int c = model.index_of(name);
    if (c < 0) throw std::invalid_argument("unknown basis class '" + name + "'");
    auto& p = k.parts[c];
    for (const auto& r : e.at("parts")) p.push_back(r.get<int>());
    std::sort(p.rbegin(), p.rend());
    if (p.empty()) k.parts.erase(c);
  }
  if (!is_valid(model, k)) throw std::invalid_argument("invalid key (nonpositive part or repeated odd part)");
  return k;
}

std::string key_to_text(const SurfaceModel& model, const Key& k) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [c, p] : k.parts) {
    os << (first ? "" : ", ") << model.basis(c).name << ":(";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ")";
    first = false;
  }
  os << "}";
  return os.str();
}

// ---------------------------------------------------------- structure table

StructureRow structure_constants(CupEngine& engine, const Key& rho, const Key& sigma) {
  const auto& model = engine.model();
  return to_keys(model, engine.stable_product(key_vector(model, rho), key_vector(model, sigma)));
}

StabilityReport verify_stability(CupEngine& engine, const Key& rho, const Key& sigma, const std::vector<int>& ns) {
  const auto& model = engine.model();
  StabilityReport report;
  report.rho = rho;
  report.sigma = sigma;
  report.table = structure_constants(engine, rho, sigma);
  const FockVector stable = from_keys(model, report.table);
  const FockVector a = key_vector(model, rho), b = key_vector(model, sigma);

  // top weight: the concatenated product, nothing else
  const int top = weight(rho) + weight(sigma);
  FockVector expected;
  for (const auto& [m1, c1] : a.terms())
    for (const auto& [m2, c2] : b.terms()) {
      std::vector<Factor> word(m1);
      word.insert(word.end(), m2.begin(), m2.end());
      Monomial m;
      if (int s = canonicalize(model, word, m)) expected.add(m, s * c1 * c2);
    }
  if (stable.weight_part(top) != expected) {
    report.leading_ok = false;
    report.mismatches.push_back({0, "top-weight part is not a_{rho ∪ sigma}"});
  }

  const int lowest = std::max(weight(rho), weight(sigma));
  for (int n : ns) {
    if (n < lowest) throw std::invalid_argument("verify_stability: n below the weight of an argument");
    report.checked_n.push_back(n);
    const auto direct = engine.cup(pad(model, a, n), pad(model, b, n), n);
    const auto padded = pad(model, stable, n);
    if (direct != padded) {
      const auto diff = direct - padded;
      report.mismatches.push_back({n, std::to_string(diff.size()) + " monomials differ, e.g. " +
                                          fock_to_text(model, FockVector::monomial(diff.terms().begin()->first, diff.terms().begin()->second))});
    }
  }
  return report;
}

// --------------------------------------------------------------- generators

TransitionData generator_transition(CupEngine& engine, int max_weight) {
  if (max_weight < 1) throw std::invalid_argument("generator_transition: weight must be >= 1");
  const auto& model = engine.model();
  TransitionData data;
  data.max_weight = max_weight;
  data.keys = enumerate_keys(model, max_weight);

  // value(g) = a_{first generator} * value(rest), generators in key order
  std::map<Key, FockVector> value;
  value[Key{}] = FockVector::vacuum();
  for (const auto& g : data.keys) {
    Key head, rest = g;
    auto first = rest.parts.begin();
    head.parts[first->first] = {first->second.front()};
    first->second.erase(first->second.begin());
    if (first->second.empty()) rest.parts.erase(first);
    const auto& tail = value.at(rest);  // lighter, so already computed
    value[g] = engine.stable_product(key_vector(model, head), tail);
    auto row = to_keys(model, value[g]);
    if (row[g] != 1) {
      data.unitriangular = false;
      data.problems.push_back("diagonal entry of " + key_to_text(model, g) + " is " + to_string(row[g]));
    }
    for (const auto& [nu, c] : row)
      if (nu != g && weight(nu) >= weight(g)) {
        data.unitriangular = false;
        data.problems.push_back("entry " + key_to_text(model, nu) + " in the row of " + key_to_text(model, g) +
                                " does not lie below the diagonal");
      }
    std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
    data.forward[g] = std::move(row);
  }
  if (!data.unitriangular) return data;

  // a_nu = g_nu - sum_{mu lower} forward[nu][mu] a_mu
  for (const auto& nu : data.keys) {
    StructureRow inv;
    inv[nu] = 1;
    for (const auto& [mu, c] : data.forward.at(nu)) {
      if (mu == nu || mu.parts.empty()) continue;
      for (const auto& [g, x] : data.inverse.at(mu)) inv[g] -= c * x;
    }
    // the weight-0 part is a multiple of the unit; keep it as the empty generator monomial
    if (auto it = data.forward.at(nu).find(Key{}); it != data.forward.at(nu).end()) inv[Key{}] -= it->second;
    std::erase_if(inv, [](const auto& kv) { return kv.second == 0; });
    data.inverse[nu] = std::move(inv);
  }
  return data;
}

// ---------------------------------------------------------------- transport

void validate_transport_map(const SurfaceModel& x, const SurfaceModel& y, const BasisMap& phi) {
  auto k_squared = [](const SurfaceModel& m) {
    return m.integrate(m.mul(m.canonical_class(), m.canonical_class()));
  };
  const Rational kx = k_squared(x), ky = k_squared(y);
  if (kx != ky)
    throw TransportPrecondition("no ring isomorphism can match the canonical classes: K^2 is " + to_string(kx) +
                                " on " + x.name() + " and " + to_string(ky) + " on " + y.name());
  if (x.size() != y.size() || static_cast<int>(phi.size()) != x.size())
    throw TransportPrecondition("basis sizes do not match");
  for (int i = 0; i < x.size(); ++i)
    for (const auto& [j, c] : phi[i].terms()) {
      if (j < 0 || j >= y.size()) throw TransportPrecondition("phi refers to a class outside the target basis");
      if (y.degree(j) != x.degree(i))
        throw TransportPrecondition("phi does not preserve degree on " + x.basis(i).name);
    }
  Matrix m(x.size(), std::vector<Rational>(y.size()));
  for (int i = 0; i < x.size(); ++i)
    for (const auto& [j, c] : phi[i].terms()) m[i][j] = c;
  if (!invert(m)) throw TransportPrecondition("phi is not invertible");

  auto image = [&](const CohClass& a) {
    CohClass out;
    for (const auto& [i, c] : a.terms()) out += c * phi[i];
    return out;
  };
  if (phi[x.unit()] != CohClass::basis(y.unit())) throw TransportPrecondition("phi does not send 1 to 1");
  for (int i = 0; i < x.size(); ++i) {
    if (y.integrate(phi[i]) != x.integral(i))
      throw TransportPrecondition("phi does not preserve the integral on " + x.basis(i).name);
    for (int j = 0; j < x.size(); ++j)
      if (image(x.product(i, j)) != y.mul(phi[i], phi[j]))
        throw TransportPrecondition("phi is not multiplicative on (" + x.basis(i).name + ", " + x.basis(j).name + ")");
  }
  if (image(x.canonical_class()) != y.canonical_class())
    throw TransportPrecondition("phi does not send K_X to K_Y");
}

FockVector transport_vector(const SurfaceModel& x, const SurfaceModel& y, const BasisMap& phi, const FockVector& v) {
  (void)x;
  FockVector out;
  for (const auto& [m, c] : v.terms()) {
    FockVector cur = FockVector::vacuum();
    for (std::size_t i = m.size(); i-- > 0 && !cur.is_zero();) cur = create(y, m[i].r, phi[m[i].c], cur);
    cur *= c;
    out += cur;
  }
  return out;
}

TransportReport transport_isomorphism(CupEngine& ex, CupEngine& ey, const BasisMap& phi, int max_weight) {
  const auto& x = ex.model();
  const auto& y = ey.model();
  validate_transport_map(x, y, phi);
  TransportReport report;
  const auto keys = enumerate_keys(x, max_weight);
  for (const auto& rho : keys)
    for (const auto& sigma : keys) {
      if (weight(rho) + weight(sigma) > max_weight) continue;
      const auto a = key_vector(x, rho), b = key_vector(x, sigma);
      const auto lhs = transport_vector(x, y, phi, ex.stable_product(a, b));
      const auto rhs = ey.stable_product(transport_vector(x, y, phi, a), transport_vector(x, y, phi, b));
      ++report.pairs_checked;
      if (lhs != rhs)
        report.mismatches.push_back("products of " + key_to_text(x, rho) + " and " + key_to_text(x, sigma) +
                                    " do not correspond");
    }
  return report;
}

// ------------------------------------------------------------------- export

json structure_record(const SurfaceModel& model, const Key& rho, const Key& sigma, const StructureRow& row) {
  std::vector<std::pair<Key, Rational>> sorted(row.begin(), row.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return key_less(a.first, b.first); });
  json terms = json::array();
  for (const auto& [nu, d] : sorted) terms.push_back({{"nu", key_to_json(model, nu)}, {"d", to_string(d)}});
  return {{"rho", key_to_json(model, rho)}, {"sigma", key_to_json(model, sigma)}, {"terms", std::move(terms)}};
}

void write_structure_table(CupEngine& engine, int max_weight, std::ostream& out, int jobs) {
  const auto& model = engine.model();
  const auto keys = enumerate_keys(model, max_weight);
  std::vector<std::pair<const Key*, const Key*>> pairs;
  for (const auto& rho : keys)
    for (const auto& sigma : keys)
      if (weight(rho) + weight(sigma) <= max_weight) pairs.emplace_back(&rho, &sigma);

  std::vector<std::string> lines(pairs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i; (i = next++) < pairs.size();) {
        const auto& [rho, sigma] = pairs[i];
        lines[i] = structure_record(model, *rho, *sigma, structure_constants(engine, *rho, *sigma)).dump();
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = pairs.size();
    }
  };
  const int n = std::max(1, jobs);
  std::vector<std::thread> threads;
  for (int t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  for (const auto& line : lines) out << line << '\n';
}

}  // namespace hilbcalc
