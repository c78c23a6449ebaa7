#include "fop/algebra.hpp"

#include <algorithm>

namespace fop {

AlgebraElement alg_basis(const Forest& f) { return AlgebraElement(f); }

AlgebraElement alg_generator(const Decoration& d) { return AlgebraElement(single_vertex(d)); }

namespace {

template <typename Product>
AlgebraElement bilinear(const AlgebraElement& x, const AlgebraElement& y, Product prod) {
    AlgebraElement out;
    for (const auto& [fx, cx] : x.terms()) {
        for (const auto& [fy, cy] : y.terms()) {
            out.add(prod(fx, fy), cx * cy);
        }
    }
    return out;
}

}  // namespace

AlgebraElement alg_mul(const AlgebraElement& x, const AlgebraElement& y) {
    return bilinear(x, y, [](const Forest& a, const Forest& b) { return concat(a, b); });
}

AlgebraElement alg_searrow(const AlgebraElement& x, const AlgebraElement& y) {
    return bilinear(x, y, [](const Forest& a, const Forest& b) { return graft_root(a, b); });
}

AlgebraElement alg_nearrow(const AlgebraElement& x, const AlgebraElement& y) {
    return bilinear(x, y, [](const Forest& a, const Forest& b) { return graft_left_leaf(a, b); });
}

AlgebraElement evaluate_term(const OperadTerm& t, std::span<const AlgebraElement> args,
                             Flavor flavor) {
    if (t.arity() != static_cast<int>(args.size()))
        throw std::invalid_argument("evaluate_term: arity mismatch");
    if (t.is_leaf()) return args[0];
    const int la = t.left().arity();
    AlgebraElement l = evaluate_term(t.left(), args.subspan(0, static_cast<std::size_t>(la)), flavor);
    AlgebraElement r = evaluate_term(t.right(), args.subspan(static_cast<std::size_t>(la)), flavor);
    if (t.label() == Gen::M) return alg_mul(l, r);
    return flavor == Flavor::Searrow ? alg_searrow(l, r) : alg_nearrow(l, r);
}

GradedSlice graded_slice(int weight, const std::vector<Decoration>& decorations) {
    GradedSlice slice;
    slice.weight = weight;
    slice.basis = enumerate_forests(weight, decorations);
    std::vector<std::string> keys;
    keys.reserve(slice.basis.size());
    for (const Forest& f : slice.basis) keys.push_back(format_forest(f));
    slice.keys = Basis(std::move(keys));
    return slice;
}

std::string render(const AlgebraElement& x) {
    if (x.is_zero()) return "0";
    std::vector<std::pair<const Forest*, const Rational*>> terms;
    terms.reserve(x.size());
    for (const auto& [f, c] : x.terms()) terms.emplace_back(&f, &c);
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        int wa = weight(*a.first), wb = weight(*b.first);
        if (wa != wb) return wa < wb;
        return cmp(*a.first, *b.first) < 0;
    });
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out += " + ";
        out += rational_to_string(*terms[i].second);
        out += '*';
        out += format_forest(*terms[i].first);
    }
    return out;
}

}  // namespace fop
