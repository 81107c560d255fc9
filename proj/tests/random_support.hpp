#pragma once

#include <doctest.h>

#include "wzcert/multipoly.hpp"
#include "wzcert/ratfunc.hpp"
#include "random_poly.hpp"

namespace doctest {
template <>
struct StringMaker<wzcert::MultiPoly> {
  static String convert(const wzcert::MultiPoly& p) { return p.to_string().c_str(); }
};
template <>
struct StringMaker<wzcert::RatFunc> {
  static String convert(const wzcert::RatFunc& r) { return r.to_string().c_str(); }
};
template <>
struct StringMaker<wzcert::Rational> {
  static String convert(const wzcert::Rational& q) { return wzcert::to_string(q).c_str(); }
};
}  // namespace doctest

