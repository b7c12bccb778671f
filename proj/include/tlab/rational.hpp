#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace tlab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int pow2(unsigned e) {
  Int one = 1;
  return one << e;
}

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

}  // namespace tlab
