#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace fop {

// Exact scalars. Every dimension and homology count in this library is an
// integer and must come out exact, so all linear algebra runs over Q.
// cpp_rational keeps values reduced with a positive denominator.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace fop
