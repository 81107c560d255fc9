#pragma once

#include <random>
#include <string>
#include <vector>

#include "wzcert/multipoly.hpp"
#include "wzcert/ratfunc.hpp"

namespace wzcert::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611ULL);
  return engine;
}

inline long uniform(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng());
}

inline Rational small_rational() {
  long num = uniform(-5, 5);
  long den = uniform(1, 3);
  return make_rational(num, den);
}

/// Random polynomial in `vars` with at most `max_terms` terms of total
/// degree at most `max_degree`.
inline MultiPoly random_poly(const std::vector<std::string>& vars, int max_degree, int max_terms) {
  MultiPoly p;
  int terms = static_cast<int>(uniform(1, max_terms));
  for (int t = 0; t < terms; ++t) {
    MultiPoly mono(small_rational());
    int budget = static_cast<int>(uniform(0, max_degree));
    for (int d = 0; d < budget; ++d) {
      mono *= MultiPoly::variable(vars[static_cast<std::size_t>(uniform(0, static_cast<long>(vars.size()) - 1))]);
    }
    p += mono;
  }
  return p;
}

inline MultiPoly random_nonzero_poly(const std::vector<std::string>& vars, int max_degree, int max_terms) {
  MultiPoly p;
  while (p.is_zero()) p = random_poly(vars, max_degree, max_terms);
  return p;
}

inline Point random_point(const std::vector<std::string>& vars) {
  Point p;
  for (const auto& v : vars) p[v] = make_rational(uniform(-40, 40), uniform(1, 7));
  return p;
}

}  // namespace wzcert::testing
