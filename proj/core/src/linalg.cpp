#include "hilbcalc/linalg.hpp"

#include <stdexcept>

namespace hilbcalc {

namespace {

// Reduces [a | b] in place to reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(Matrix& a, Matrix* rhs) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    if (rhs) std::swap((*rhs)[p], (*rhs)[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    if (rhs)
      for (auto& x : (*rhs)[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      if (rhs)
        for (std::size_t j = 0; j < (*rhs)[i].size(); ++j) (*rhs)[i][j] -= f * (*rhs)[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<Matrix> invert(Matrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("invert: matrix is not square");
  Matrix id(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  if (rref(m, &id).size() != n) return std::nullopt;
  return id;
}

int rank(Matrix m) { return static_cast<int>(rref(m, nullptr).size()); }

std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  Matrix rhs(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) rhs[i] = {b[i]};
  const auto pivots = rref(a, &rhs);
  for (std::size_t i = pivots.size(); i < a.size(); ++i)
    if (rhs[i][0] != 0) return std::nullopt;
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = rhs[i][0];
  return x;
}

}  // namespace hilbcalc
