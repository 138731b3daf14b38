#include "hilbcalc/surface_model.hpp"

#include "hilbcalc/hash.hpp"
#include "hilbcalc/linalg.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <functional>
#include <sstream>

namespace hilbcalc {

using nlohmann::json;

// ---------------------------------------------------------------- CohClass

CohClass CohClass::basis(int i, const Rational& c) {
  CohClass a;
  a.add(i, c);
  return a;
}

Rational CohClass::coeff(int i) const {
  auto it = terms_.find(i);
  return it == terms_.end() ? Rational(0) : it->second;
}

void CohClass::add(int i, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(i, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

CohClass& CohClass::operator+=(const CohClass& o) {
  for (const auto& [i, c] : o.terms_) add(i, c);
  return *this;
}

CohClass& CohClass::operator-=(const CohClass& o) {
  for (const auto& [i, c] : o.terms_) add(i, -c);
  return *this;
}

CohClass& CohClass::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [i, x] : terms_) x *= c;
  return *this;
}

// ------------------------------------------------------------- TensorClass

TensorClass TensorClass::scalar(const Rational& c) {
  TensorClass t(0);
  t.add({}, c);
  return t;
}

Rational TensorClass::coeff(const Tuple& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TensorClass::add(const Tuple& t, const Rational& c) {
  if (c == 0) return;
  if (static_cast<int>(t.size()) != arity_) throw std::invalid_argument("tensor arity mismatch");
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TensorClass& TensorClass::operator+=(const TensorClass& o) {
  if (o.arity_ != arity_ && !o.is_zero()) {
    if (!is_zero()) throw std::invalid_argument("tensor arity mismatch");
    arity_ = o.arity_;
  }
  for (const auto& [t, c] : o.terms_) add(t, c);
  return *this;
}

TensorClass& TensorClass::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, x] : terms_) x *= c;
  return *this;
}

// -------------------------------------------------------------- validation

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& issue : issues) {
    os << issue.axiom;
    if (!issue.indices.empty()) {
      os << " (";
      for (std::size_t i = 0; i < issue.indices.size(); ++i) os << (i ? "," : "") << issue.indices[i];
      os << ")";
    }
    os << ": " << issue.message << "\n";
  }
  return os.str();
}

InvalidModel::InvalidModel(ValidationReport r)
    : std::runtime_error("invalid surface model:\n" + r.summary()), report_(std::move(r)) {}

// ------------------------------------------------------------------ loading

namespace {

Rational rational_field(const json& v, const std::string& where) {
  if (!v.is_string()) throw SchemaError(where + ": rational must be a \"p/q\" string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

const json& required(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    throw SchemaError(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

}  // namespace

int SurfaceModel::index_of(std::string_view name) const {
  for (const auto& b : basis_)
    if (b.name == name) return b.index;
  throw SchemaError("unknown basis class \"" + std::string(name) + "\"");
}

SurfaceModel SurfaceModel::from_json(const json& doc) {
  SurfaceModel m;
  const auto& name = required(doc, "name");
  if (!name.is_string()) throw SchemaError("\"name\" must be a string");
  m.name_ = name.get<std::string>();

  const auto& basis = required(doc, "basis");
  if (!basis.is_array() || basis.empty()) throw SchemaError("\"basis\" must be a nonempty array");
  for (const auto& b : basis) {
    const auto& bn = required(b, "name");
    const auto& bd = required(b, "degree");
    if (!bn.is_string() || !bd.is_number_integer())
      throw SchemaError("basis entries need a string name and an integer degree");
    BasisClass cls{static_cast<int>(m.basis_.size()), bn.get<std::string>(), bd.get<int>()};
    if (cls.degree < 0 || cls.degree > 4)
      throw SchemaError("basis class \"" + cls.name + "\" has degree outside 0..4");
    for (const auto& prev : m.basis_)
      if (prev.name == cls.name) throw SchemaError("duplicate basis name \"" + cls.name + "\"");
    m.basis_.push_back(std::move(cls));
  }
  const int b = m.size();

  auto lookup = [&](const json& v, const std::string& where) -> int {
    if (v.is_number_integer()) {
      int i = v.get<int>();
      if (i < 0 || i >= b) throw SchemaError(where + ": basis index out of range");
      return i;
    }
    if (!v.is_string()) throw SchemaError(where + ": expected a basis name");
    return m.index_of(v.get<std::string>());
  };
  auto class_map = [&](const json& v, const std::string& where) {
    if (!v.is_object()) throw SchemaError(where + " must map basis names to rationals");
    CohClass a;
    for (const auto& [k, c] : v.items()) a.add(m.index_of(k), rational_field(c, where));
    return a;
  };

  m.mult_.assign(b, std::vector<CohClass>(b));
  const auto& mult = required(doc, "mult");
  if (!mult.is_array()) throw SchemaError("\"mult\" must be an array");
  for (const auto& e : mult) {
    int i = lookup(required(e, "i"), "mult.i");
    int j = lookup(required(e, "j"), "mult.j");
    int k = lookup(required(e, "k"), "mult.k");
    m.mult_[i][j].add(k, rational_field(required(e, "c"), "mult.c"));
  }

  m.integral_.assign(b, Rational(0));
  const auto& integral = required(doc, "integral");
  if (!integral.is_object()) throw SchemaError("\"integral\" must be an object");
  for (const auto& [k, c] : integral.items()) {
    int i = m.index_of(k);
    if (m.basis_[i].degree != 4)
      throw SchemaError("integral given on \"" + k + "\", which is not of degree 4");
    m.integral_[i] = rational_field(c, "integral");
  }

  m.canonical_ = class_map(required(doc, "canonical_class"), "canonical_class");
  m.euler_ = class_map(required(doc, "euler_class"), "euler_class");
  const auto& pc = required(doc, "point_class");
  if (!pc.is_string()) throw SchemaError("\"point_class\" must be a basis name");
  m.point_ = m.index_of(pc.get<std::string>());
  for (const auto& bc : m.basis_)
    if (bc.degree == 0 && m.unit_ < 0) m.unit_ = bc.index;
  if (m.unit_ < 0) throw SchemaError("no degree-0 basis class");

  m.finish();
  return m;
}

SurfaceModel SurfaceModel::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open model file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  return from_json(doc);
}

SurfaceModel SurfaceModel::load(const json& doc) {
  SurfaceModel m = from_json(doc);
  auto report = m.validate();
  if (!report.ok()) throw InvalidModel(std::move(report));
  return m;
}

json SurfaceModel::to_json() const {
  json doc;
  doc["name"] = name_;
  doc["basis"] = json::array();
  for (const auto& b : basis_) doc["basis"].push_back({{"name", b.name}, {"degree", b.degree}});
  doc["mult"] = json::array();
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      for (const auto& [k, c] : mult_[i][j].terms())
        doc["mult"].push_back(
            {{"i", basis_[i].name}, {"j", basis_[j].name}, {"k", basis_[k].name}, {"c", to_string(c)}});
  doc["integral"] = json::object();
  for (int i = 0; i < size(); ++i)
    if (integral_[i] != 0) doc["integral"][basis_[i].name] = to_string(integral_[i]);
  auto dump_class = [&](const CohClass& a) {
    json o = json::object();
    for (const auto& [i, c] : a.terms()) o[basis_[i].name] = to_string(c);
    return o;
  };
  doc["canonical_class"] = dump_class(canonical_);
  doc["euler_class"] = dump_class(euler_);
  doc["point_class"] = basis_[point_].name;
  return doc;
}

void SurfaceModel::finish() {
  const int b = size();
  pairing_.assign(b, std::vector<Rational>(b));
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) pairing_[i][j] = integrate(mult_[i][j]);
  k_times_.resize(b);
  for (int i = 0; i < b; ++i) k_times_[i] = mul(canonical_, CohClass::basis(i));
  if (auto inv = invert(pairing_)) {
    dual_ = std::move(*inv);
    dual_rows_.assign(b, {});
    for (int i = 0; i < b; ++i)
      for (int j = 0; j < b; ++j)
        if (dual_[i][j] != 0) dual_rows_[i].emplace_back(j, dual_[i][j]);
    tau2_.clear();
    for (int i = 0; i < b; ++i) tau2_.push_back(tau_push(2, CohClass::basis(i)));
  }
  fingerprint_ = sha256_hex(to_json().dump());
}

std::vector<int> SurfaceModel::betti() const {
  std::vector<int> out(5, 0);
  for (const auto& b : basis_) ++out[b.degree];
  return out;
}

// ------------------------------------------------------------------- ring

CohClass SurfaceModel::mul(const CohClass& a, const CohClass& b) const {
  CohClass out;
  for (const auto& [i, x] : a.terms()) {
    if (i < 0 || i >= size()) throw std::out_of_range("class does not belong to this model");
    for (const auto& [j, y] : b.terms()) {
      if (j < 0 || j >= size()) throw std::out_of_range("class does not belong to this model");
      for (const auto& [k, z] : mult_[i][j].terms()) out.add(k, x * y * z);
    }
  }
  return out;
}

Rational SurfaceModel::integrate(const CohClass& a) const {
  Rational s = 0;
  for (const auto& [i, c] : a.terms()) s += c * integral_.at(i);
  return s;
}

int SurfaceModel::parity_of(const CohClass& a) const {
  int p = -1;
  for (const auto& [i, c] : a.terms()) {
    if (p >= 0 && p != parity(i)) throw std::invalid_argument("class of mixed parity");
    p = parity(i);
  }
  return p < 0 ? 0 : p;
}

int SurfaceModel::degree_of(const CohClass& a) const {
  int d = -1;
  for (const auto& [i, c] : a.terms()) {
    if (d >= 0 && d != degree(i)) throw std::invalid_argument("inhomogeneous class");
    d = degree(i);
  }
  return d < 0 ? 0 : d;
}

// ----------------------------------------------------------------- tensors

TensorClass SurfaceModel::tau_push(int k, const CohClass& a) const {
  if (k < 0) throw std::invalid_argument("tau_push: negative arity");
  if (k == 0) return TensorClass::scalar(integrate(a));
  TensorClass out(k);
  if (k == 1) {
    for (const auto& [i, c] : a.terms()) out.add({i}, c);
    return out;
  }
  if (!nondegenerate()) throw std::logic_error("tau_push needs a nondegenerate pairing");

  // T_i = sum_j s(j) ∫(a b_j1 ... b_jk) prod_p Q[j_p][i_p]
  Tuple j(k), i(k);
  std::function<void(int, const Rational&)> spread = [&](int p, const Rational& c) {
    if (p == k) {
      out.add(i, c);
      return;
    }
    for (const auto& [col, q] : dual_rows_[j[p]]) {
      i[p] = col;
      spread(p + 1, c * q);
    }
  };
  std::function<void(int, const CohClass&, int, int)> pick = [&](int p, const CohClass& prod,
                                                                  int odd_seen, int sign) {
    if (prod.is_zero()) return;
    if (p == k) {
      Rational v = integrate(prod);
      if (v != 0) spread(0, sign * v);
      return;
    }
    for (int x = 0; x < size(); ++x) {
      j[p] = x;
      int s = (parity(x) && (odd_seen & 1)) ? -sign : sign;
      pick(p + 1, mul(prod, CohClass::basis(x)), odd_seen + parity(x), s);
    }
  };
  pick(0, a, 0, 1);
  return out;
}

namespace {

int later_parity(const SurfaceModel& m, const Tuple& t, int j) {
  int s = 0;
  for (std::size_t l = j + 1; l < t.size(); ++l) s += m.parity(t[l]);
  return s & 1;
}

void check_slot(const TensorClass& t, int j) {
  if (j < 1 || j > t.arity()) throw std::out_of_range("tensor slot out of range");
}

}  // namespace

TensorClass SurfaceModel::tensor_absorb(const TensorClass& t, int j, const CohClass& b) const {
  check_slot(t, j);
  TensorClass out(t.arity());
  const int s = j - 1;
  for (const auto& [tup, c] : t.terms()) {
    const int later = later_parity(*this, tup, s);
    for (const auto& [bi, bc] : b.terms()) {
      const int sign = (parity(bi) & later) ? -1 : 1;
      Tuple nt = tup;
      for (const auto& [y, yc] : mult_[tup[s]][bi].terms()) {
        nt[s] = y;
        out.add(nt, sign * c * bc * yc);
      }
    }
  }
  return out;
}

TensorClass SurfaceModel::tensor_integrate_slot(const TensorClass& t, int j, const CohClass& b) const {
  check_slot(t, j);
  TensorClass out(t.arity() - 1);
  const int s = j - 1;
  for (const auto& [tup, c] : t.terms()) {
    const int later = later_parity(*this, tup, s);
    Rational v = 0;
    for (const auto& [bi, bc] : b.terms()) {
      const int sign = (parity(bi) & later) ? -1 : 1;
      v += sign * bc * integrate(mult_[tup[s]][bi]);
    }
    if (v == 0) continue;
    Tuple nt;
    for (int l = 0; l < t.arity(); ++l)
      if (l != s) nt.push_back(tup[l]);
    out.add(nt, c * v);
  }
  return out;
}

TensorClass SurfaceModel::tensor_refine(const TensorClass& t, int j, int u) const {
  check_slot(t, j);
  if (u < 1) throw std::invalid_argument("tensor_refine: arity must be positive");
  TensorClass out(t.arity() + u - 1);
  const int s = j - 1;
  std::map<int, TensorClass> memo;
  for (const auto& [tup, c] : t.terms()) {
    auto it = memo.find(tup[s]);
    if (it == memo.end())
      it = memo.emplace(tup[s], u == 2 ? tau2_[tup[s]] : tau_push(u, CohClass::basis(tup[s]))).first;
    for (const auto& [piece, pc] : it->second.terms()) {
      Tuple nt(tup.begin(), tup.begin() + s);
      nt.insert(nt.end(), piece.begin(), piece.end());
      nt.insert(nt.end(), tup.begin() + s + 1, tup.end());
      out.add(nt, c * pc);
    }
  }
  return out;
}

TensorClass SurfaceModel::tensor_contract(const TensorClass& t, int j, int j2) const {
  check_slot(t, j);
  check_slot(t, j2);
  if (j == j2) throw std::invalid_argument("tensor_contract: slots must differ");
  const int a = std::min(j, j2) - 1;
  const int b = std::max(j, j2) - 1;
  TensorClass out(t.arity() - 1);
  for (const auto& [tup, c] : t.terms()) {
    int between = 0;
    for (int l = a + 1; l < b; ++l) between += parity(tup[l]);
    const int sign = (parity(tup[b]) & between & 1) ? -1 : 1;
    Tuple nt;
    for (int l = 0; l < t.arity(); ++l)
      if (l != b) nt.push_back(tup[l]);
    for (const auto& [y, yc] : mult_[tup[a]][tup[b]].terms()) {
      nt[a] = y;
      out.add(nt, sign * c * yc);
    }
  }
  return out;
}

Rational SurfaceModel::tensor_pairing(const TensorClass& t, const Tuple& b) const {
  if (static_cast<int>(b.size()) != t.arity()) throw std::invalid_argument("tensor_pairing: arity");
  Rational total = 0;
  for (const auto& [tup, c] : t.terms()) {
    Rational v = c;
    int exponent = 0;
    for (std::size_t i = 0; i < b.size() && v != 0; ++i) {
      v *= pairing_[tup[i]][b[i]];
      for (std::size_t j = i + 1; j < b.size(); ++j) exponent += parity(b[i]) * parity(tup[j]);
    }
    total += (exponent & 1) ? -v : v;
  }
  return total;
}

// ------------------------------------------------------------- validation

ValidationReport SurfaceModel::validate() const {
  ValidationReport r;
  auto fail = [&](std::string axiom, std::vector<int> idx, std::string msg) {
    r.issues.push_back({std::move(axiom), std::move(idx), std::move(msg)});
  };
  const int b = size();
  auto nm = [&](int i) { return basis_[i].name; };

  int units = 0, points = 0;
  for (const auto& bc : basis_) {
    units += bc.degree == 0;
    points += bc.degree == 4;
  }
  if (units != 1) fail("unit", {}, "expected exactly one basis class of degree 0");
  if (points != 1) fail("point class", {}, "expected exactly one basis class of degree 4");
  if (basis_[point_].degree != 4) fail("point class", {point_}, "point class must have degree 4");
  if (integral_[point_] != 1) fail("point class", {point_}, "point class not normalized");

  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j)
      for (const auto& [k, c] : mult_[i][j].terms())
        if (degree(k) != degree(i) + degree(j))
          fail("degree additivity", {i, j, k},
               nm(i) + "*" + nm(j) + " has a component in " + nm(k) + " of the wrong degree");

  for (int i = 0; i < b; ++i) {
    if (!(mult_[unit_][i] == CohClass::basis(i)) || !(mult_[i][unit_] == CohClass::basis(i)))
      fail("unit law", {i}, "1*" + nm(i) + " != " + nm(i));
  }

  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) {
      CohClass swapped = mult_[j][i];
      if (parity(i) && parity(j)) swapped *= -1;
      if (!(mult_[i][j] == swapped))
        fail("super-commutativity", {i, j}, nm(i) + "*" + nm(j) + " vs " + nm(j) + "*" + nm(i));
    }

  for (int i = 0; i < b; ++i)
    if (parity(i) && !mult_[i][i].is_zero()) fail("odd square", {i}, "square of odd class " + nm(i) + " is nonzero");

  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j)
      for (int k = 0; k < b; ++k) {
        auto lhs = mul(mult_[i][j], CohClass::basis(k));
        auto rhs = mul(CohClass::basis(i), mult_[j][k]);
        if (!(lhs == rhs))
          fail("associativity", {i, j, k}, "(" + nm(i) + "*" + nm(j) + ")*" + nm(k) + " != " + nm(i) +
                                                 "*(" + nm(j) + "*" + nm(k) + ")");
      }

  if (!nondegenerate()) fail("Poincare duality", {}, "pairing matrix is singular");

  for (const auto& [i, c] : canonical_.terms())
    if (degree(i) != 2) fail("canonical class", {i}, "canonical class must be of pure degree 2");
  for (const auto& [i, c] : euler_.terms())
    if (degree(i) != 4) fail("euler class", {i}, "euler class must be of pure degree 4");
  if (!mul(mul(canonical_, canonical_), canonical_).is_zero())
    fail("canonical class", {}, "K^3 must vanish");

  if (nondegenerate()) {
    // The Euler class is the self-intersection of the diagonal.
    const auto diag = tensor_contract(tau2_[unit_], 1, 2);
    CohClass e;
    for (const auto& [t, c] : diag.terms()) e.add(t[0], c);
    if (!(e == euler_)) fail("euler class", {}, "euler class differs from the diagonal self-intersection");
  }
  return r;
}

}  // namespace hilbcalc
