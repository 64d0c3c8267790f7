#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace orthocomplex {

/// 113-bit binary float used for the cancelling terminating series.
using wide_real = boost::multiprecision::cpp_bin_float_quad;

}  // namespace orthocomplex
