#include "lvk/matrix.hpp"

namespace lvk {

std::optional<LinearSolution> solve_linear(const QMatrix& m,
                                           const std::vector<Rational>& rhs) {
  if (rhs.size() != m.rows()) {
    throw InvalidArgument("right-hand side length does not match matrix rows");
  }
  const std::size_t n = m.cols();
  QMatrix augmented(m.rows(), n + 1, Rational(0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) augmented(r, c) = m(r, c);
    augmented(r, n) = rhs[r];
  }
  auto ech = row_reduce(std::move(augmented));
  if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == n) return std::nullopt;

  LinearSolution sol;
  sol.particular.assign(n, Rational(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t k = 0; k < ech.pivot_cols.size(); ++k) {
    is_pivot[ech.pivot_cols[k]] = true;
    sol.particular[ech.pivot_cols[k]] = ech.reduced(k, n);
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < ech.pivot_cols.size(); ++k) {
      v[ech.pivot_cols[k]] = -ech.reduced(k, f);
    }
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

std::size_t rank_over_field(const RatFuncMatrix& m) { return matrix_rank(m); }

}  // namespace lvk
