#pragma once

// 50-digit floating point types used where double precision is below the
// quantity being measured.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace mdtn {

using HpReal = boost::multiprecision::cpp_bin_float_50;
using HpComplex = boost::multiprecision::cpp_complex_50;

}  // namespace mdtn
