#pragma once

// 50-digit real and complex types for precision-doubling checks.  Include
// this header only where the extended type is needed; it is slow to compile.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "wtk/core/precision.hpp"

namespace wtk {

using mp50 = boost::multiprecision::cpp_bin_float_50;
using mpc50 = boost::multiprecision::cpp_complex_50;

namespace detail {

template <class Backend, boost::multiprecision::expression_template_option ET>
struct real_of<boost::multiprecision::number<boost::multiprecision::backends::complex_adaptor<Backend>, ET>> {
  using type = boost::multiprecision::number<Backend, ET>;
};

}  // namespace detail

}  // namespace wtk
