#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace calckit {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Dense polynomial with exact rational coefficients, index = power.
using RationalPoly = std::vector<Rational>;

RationalPoly poly_derivative(const RationalPoly& p, unsigned times = 1);
RationalPoly poly_mul(const RationalPoly& p, const RationalPoly& q);
BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);
std::vector<double> to_double(const RationalPoly& p);

} // namespace calckit
