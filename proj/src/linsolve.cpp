#include "wzcert/linsolve.hpp"

#include <algorithm>

#include "wzcert/budget.hpp"
#include "wzcert/errors.hpp"
#include "wzcert/ratfunc.hpp"

namespace wzcert {

Echelon fraction_free_echelon(PolyMatrix m, std::size_t columns) {
  for (auto& row : m) {
    if (row.size() != columns) throw Error("ragged matrix");
  }
  Echelon out;
  MultiPoly previous(1);
  std::size_t r = 0;
  for (std::size_t col = 0; col < columns && r < m.size(); ++col) {
    // Smallest nonzero candidate keeps entry growth down.
    std::size_t pivot = m.size();
    for (std::size_t i = r; i < m.size(); ++i) {
      if (m[i][col].is_zero()) continue;
      if (pivot == m.size() || m[i][col].size() < m[pivot][col].size()) pivot = i;
    }
    if (pivot == m.size()) continue;
    std::swap(m[r], m[pivot]);
    const MultiPoly p = m[r][col];
    charge_budget((m.size() - r) * (columns - col), "linear elimination");
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      const MultiPoly factor = m[i][col];
      for (std::size_t j = col + 1; j < columns; ++j) {
        MultiPoly v = p * m[i][j];
        if (!factor.is_zero() && !m[r][j].is_zero()) v -= factor * m[r][j];
        m[i][j] = previous.is_constant() ? v * Rational(1 / previous.constant_value())
                                          : exact_quotient(v, previous);
      }
      m[i][col] = MultiPoly();
    }
    previous = p;
    out.pivot_columns.push_back(col);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

std::vector<std::vector<MultiPoly>> nullspace(const PolyMatrix& m, std::size_t columns) {
  Echelon e = fraction_free_echelon(m, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;

  std::vector<std::vector<MultiPoly>> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<RatFunc> x(columns);
    x[free] = RatFunc(1);
    for (std::size_t i = e.rows.size(); i-- > 0;) {
      std::size_t pc = e.pivot_columns[i];
      RatFunc s;
      for (std::size_t j = pc + 1; j < columns; ++j) {
        if (e.rows[i][j].is_zero() || x[j].is_zero()) continue;
        s += RatFunc(e.rows[i][j]) * x[j];
      }
      x[pc] = -s / RatFunc(e.rows[i][pc]);
    }
    MultiPoly common(1);
    for (const auto& v : x) {
      if (!v.is_zero()) common = lcm(common, v.denominator());
    }
    std::vector<MultiPoly> vec(columns);
    MultiPoly g;
    for (std::size_t j = 0; j < columns; ++j) {
      if (x[j].is_zero()) continue;
      vec[j] = exact_quotient(x[j].numerator() * common, x[j].denominator());
      g = g.is_zero() ? vec[j].primitive() : gcd(g, vec[j]);
    }
    if (!g.is_zero() && !g.is_constant()) {
      for (auto& v : vec) {
        if (!v.is_zero()) v = exact_quotient(v, g);
      }
    }
    basis.push_back(std::move(vec));
  }
  return basis;
}

MultiPoly determinant(PolyMatrix m) {
  const std::size_t n = m.size();
  for (auto& row : m) {
    if (row.size() != n) throw Error("determinant of a non-square matrix");
  }
  if (n == 0) return MultiPoly(1);
  MultiPoly previous(1);
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t i = k; i < n; ++i) {
      if (!m[i][k].is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) return MultiPoly();
    if (pivot != k) {
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly v = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = exact_quotient(v, previous);
      }
    }
    previous = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, const std::string& var) {
  if (p.is_zero() || q.is_zero()) return MultiPoly();
  std::vector<MultiPoly> a = p.coefficients_in(var);
  std::vector<MultiPoly> b = q.coefficients_in(var);
  std::size_t m = a.size() - 1;
  std::size_t l = b.size() - 1;
  if (m == 0 && l == 0) return MultiPoly(1);
  if (m == 0) return a[0].pow(static_cast<unsigned>(l));
  if (l == 0) return b[0].pow(static_cast<unsigned>(m));
  std::size_t size = m + l;
  PolyMatrix s(size, std::vector<MultiPoly>(size));
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = a[m - j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= l; ++j) s[l + i][i + j] = b[l - j];
  }
  return determinant(std::move(s));
}

}  // namespace wzcert
