#pragma once

// Quad-precision kernels (GCC __float128 through Boost.Multiprecision).

#include "arithmos/special.hpp"

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

namespace arithmos::special {

using quad_real = boost::multiprecision::float128;
using quad_complex = boost::multiprecision::complex128;

HurwitzValueT<quad_complex> hurwitz_zeta_quad(quad_complex s, quad_complex a, HurwitzOptions opt = {});

}  // namespace arithmos::special
