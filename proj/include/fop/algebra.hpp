#pragma once

#include <span>
#include <string>
#include <vector>

#include "fop/forest.hpp"
#include "fop/lincomb.hpp"
#include "fop/linalg.hpp"
#include "fop/operad.hpp"

namespace fop {

// Element of the free P-algebra on the decoration set: a formal linear
// combination of forests.
using AlgebraElement = LinComb<Forest>;

AlgebraElement alg_basis(const Forest& f);
AlgebraElement alg_generator(const Decoration& d);

// Bilinear extensions of the three forest products.
AlgebraElement alg_mul(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement alg_searrow(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement alg_nearrow(const AlgebraElement& x, const AlgebraElement& y);

// Recursive evaluation of a free-operad term: m maps to alg_mul, the arrow
// generator to alg_searrow or alg_nearrow depending on flavor. Throws on
// arity mismatch.
AlgebraElement evaluate_term(const OperadTerm& t, std::span<const AlgebraElement> args,
                             Flavor flavor);

// Weight-homogeneous component of the free algebra.
struct GradedSlice {
    int weight = 0;
    std::vector<Forest> basis;
    Basis keys;
};

GradedSlice graded_slice(int weight, const std::vector<Decoration>& decorations);

// Renders "c1*forest1 + c2*forest2" with rational coefficients, terms in
// (weight, canonical text) order; "0" when empty.
std::string render(const AlgebraElement& x);

}  // namespace fop
