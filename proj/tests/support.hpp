#pragma once

#include <string>

#include "doctest.h"
#include "splice/symalg.hpp"

namespace doctest {
template <>
struct StringMaker<splice::symalg::RatFn> {
  static String convert(const splice::symalg::RatFn& f) { return splice::symalg::render(f).c_str(); }
};
template <>
struct StringMaker<splice::symalg::LaurentPoly> {
  static String convert(const splice::symalg::LaurentPoly& p) { return splice::symalg::render(p).c_str(); }
};
}  // namespace doctest
