#pragma once

#include "hilbcalc/cup_product.hpp"

#include <nlohmann/json.hpp>

namespace hilbcalc {

// JSON forms used by the CLI and the cache. Classes are referred to by basis name,
// rationals are "p" or "p/q" strings.

nlohmann::json cohclass_to_json(const SurfaceModel& model, const CohClass& a);
/// Accepts {"name": "p/q", ...} or a bare basis name.
CohClass cohclass_from_json(const SurfaceModel& model, const nlohmann::json& j);

nlohmann::json monomial_to_json(const SurfaceModel& model, const Monomial& m);

/// [{"factors":[{"r":2,"c":"h"}, ...], "coeff":"1/2"}, ...]
nlohmann::json fock_to_json(const SurfaceModel& model, const FockVector& v);
/// Factors may come in any order; they are read as an ordered product and canonicalized.
FockVector fock_from_json(const SurfaceModel& model, const nlohmann::json& j);

/// [{"factors":[{"m":-1,"c":"h"}, ...], "indices":[-1, ...], "coeff":"p/q"}, ...]
nlohmann::json operator_to_json(const SurfaceModel& model, const OperatorSum& op);
OperatorSum operator_from_json(const SurfaceModel& model, const nlohmann::json& j);

/// [{"gens":[{"k":1,"c":"h"}, ...], "coeff":"p/q"}, ...]
nlohmann::json gpolynomial_to_json(const SurfaceModel& model, const GPolynomial& p);
GPolynomial gpolynomial_from_json(const SurfaceModel& model, const nlohmann::json& j);
nlohmann::json bpolynomial_to_json(const SurfaceModel& model, const BPolynomial& p);

/// Pretty one-line rendering, e.g. "1/2 a_{-2}(h) a_{-1}(1)|0>".
std::string fock_to_text(const SurfaceModel& model, const FockVector& v);

}  // namespace hilbcalc
