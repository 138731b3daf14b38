#include "hilbcalc/serialize.hpp"

#include <sstream>

namespace hilbcalc {

using nlohmann::json;

namespace {

int basis_index(const SurfaceModel& model, const json& name) {
  if (!name.is_string()) throw std::invalid_argument("expected a basis class name");
  const int i = model.index_of(name.get<std::string>());
  if (i < 0) throw std::invalid_argument("unknown basis class '" + name.get<std::string>() + "'");
  return i;
}

Rational read_coeff(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("coefficients must be integers or \"p/q\" strings");
}

template <class Poly>
json generator_poly_to_json(const SurfaceModel& model, const Poly& p) {
  json out = json::array();
  for (const auto& [w, c] : p.terms()) {
    json gens = json::array();
    for (const auto& g : w) gens.push_back({{"k", g.k}, {"c", model.basis(g.c).name}});
    out.push_back({{"gens", std::move(gens)}, {"coeff", to_string(c)}});
  }
  return out;
}

}  // namespace

json cohclass_to_json(const SurfaceModel& model, const CohClass& a) {
  json out = json::object();
  for (const auto& [i, c] : a.terms()) out[model.basis(i).name] = to_string(c);
  return out;
}

CohClass cohclass_from_json(const SurfaceModel& model, const json& j) {
  if (j.is_string()) return CohClass::basis(basis_index(model, j));
  if (!j.is_object()) throw std::invalid_argument("a class is a basis name or an object {name: coeff}");
  CohClass a;
  for (const auto& [name, c] : j.items()) a.add(basis_index(model, json(name)), read_coeff(c));
  return a;
}

json monomial_to_json(const SurfaceModel& model, const Monomial& m) {
  json out = json::array();
  for (const auto& f : m) out.push_back({{"r", f.r}, {"c", model.basis(f.c).name}});
  return out;
}

json fock_to_json(const SurfaceModel& model, const FockVector& v) {
  json out = json::array();
  for (const auto& [m, c] : v.terms())
    out.push_back({{"factors", monomial_to_json(model, m)}, {"coeff", to_string(c)}});
  return out;
}

FockVector fock_from_json(const SurfaceModel& model, const json& j) {
  if (!j.is_array()) throw std::invalid_argument("a Fock vector is an array of terms");
  FockVector v;
  for (const auto& term : j) {
    std::vector<Factor> word;
    for (const auto& f : term.at("factors")) {
      const int r = f.at("r").get<int>();
      if (r < 1) throw std::invalid_argument("creation index r must be >= 1");
      word.push_back({r, basis_index(model, f.at("c"))});
    }
    Monomial m;
    const int sign = canonicalize(model, word, m);
    if (sign) v.add(m, sign * read_coeff(term.at("coeff")));
  }
  return v;
}

json operator_to_json(const SurfaceModel& model, const OperatorSum& op) {
  json out = json::array();
  for (const auto& [w, c] : op.terms()) {
    json factors = json::array();
    json indices = json::array();
    for (const auto& f : w) {
      factors.push_back({{"m", f.m}, {"c", model.basis(f.c).name}});
      indices.push_back(f.m);
    }
    out.push_back({{"factors", std::move(factors)}, {"indices", std::move(indices)}, {"coeff", to_string(c)}});
  }
  return out;
}

OperatorSum operator_from_json(const SurfaceModel& model, const json& j) {
  OperatorSum out;
  for (const auto& term : j) {
    OpWord w;
    for (const auto& f : term.at("factors")) w.push_back({f.at("m").get<int>(), basis_index(model, f.at("c"))});
    normal_order_into(model, std::move(w), read_coeff(term.at("coeff")), out);
  }
  return out;
}

json gpolynomial_to_json(const SurfaceModel& model, const GPolynomial& p) {
  return generator_poly_to_json(model, p);
}

json bpolynomial_to_json(const SurfaceModel& model, const BPolynomial& p) {
  return generator_poly_to_json(model, p);
}

GPolynomial gpolynomial_from_json(const SurfaceModel& model, const json& j) {
  GPolynomial p;
  for (const auto& term : j) {
    GPolynomial::Word w;
    for (const auto& g : term.at("gens")) w.push_back({g.at("k").get<int>(), basis_index(model, g.at("c"))});
    p.add(model, std::move(w), read_coeff(term.at("coeff")));
  }
  return p;
}

std::string fock_to_text(const SurfaceModel& model, const FockVector& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : v.terms()) {
    Rational x = c;
    if (!first) {
      os << (x < 0 ? " - " : " + ");
      if (x < 0) x = -x;
    } else if (x < 0) {
      os << "-";
      x = -x;
    }
    first = false;
    if (x != 1 || m.empty()) os << to_string(x) << (m.empty() ? "" : " ");
    for (std::size_t i = 0; i < m.size(); ++i)
      os << (i ? " " : "") << "a_{-" << m[i].r << "}(" << model.basis(m[i].c).name << ")";
    os << "|0>";
  }
  return os.str();
}

}  // namespace hilbcalc
