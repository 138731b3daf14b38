#pragma once

#include "hilbcalc/rational.hpp"

#include <optional>
#include <vector>

namespace hilbcalc {

using Matrix = std::vector<std::vector<Rational>>;

/// Exact Gauss-Jordan inverse; nullopt when singular.
std::optional<Matrix> invert(Matrix m);

int rank(Matrix m);

/// Some solution x of A x = b, or nullopt if inconsistent. Free variables are set to zero.
std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b);

}  // namespace hilbcalc
