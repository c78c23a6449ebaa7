#include <doctest.h>

#include "fop/operad.hpp"

using namespace fop;

namespace {

const long long kCatalan[] = {0, 1, 2, 5, 14, 42, 132, 429, 1430};

OperadTerm N(Gen g, const OperadTerm& l, const OperadTerm& r) { return OperadTerm::node(g, l, r); }
OperadTerm L() { return OperadTerm::leaf(); }

}  // namespace

TEST_CASE("free basis sizes and order") {
    // Catalan(n-1) * 2^(n-1)
    long long expect = 1;
    for (int n = 1; n <= 8; ++n) {
        if (n >= 2) expect = kCatalan[n - 1] * (1LL << (n - 1));
        CHECK(static_cast<long long>(free_basis(n).size()) == (n == 1 ? 1 : expect));
    }
    CHECK(free_basis(2)[0].encode() == "m(.,.)");
    CHECK(free_basis(2)[1].encode() == "a(.,.)");
    CHECK(free_basis(3).size() == 8);
    CHECK(8 * 6 == 48);  // symmetrized arity-3 dimension
    CHECK(free_basis_keys(3).index_of("m(m(.,.),.)") >= 0);
}

TEST_CASE("graft") {
    OperadTerm t = N(Gen::M, L(), L());
    OperadTerm s = N(Gen::Arrow, L(), L());
    CHECK(t.graft(1, s).encode() == "m(a(.,.),.)");
    CHECK(t.graft(2, s).encode() == "m(.,a(.,.))");
    CHECK(t.graft(2, s).arity() == 3);
    CHECK_THROWS_AS(t.graft(3, s), std::out_of_range);
}

TEST_CASE("pairing convention") {
    OperadTerm mmL = N(Gen::M, N(Gen::M, L(), L()), L());
    OperadTerm mmR = N(Gen::M, L(), N(Gen::M, L(), L()));
    OperadTerm amL = N(Gen::Arrow, N(Gen::M, L(), L()), L());
    OperadTerm aaR = N(Gen::Arrow, L(), N(Gen::Arrow, L(), L()));

    CHECK(pairing(mmL, mmL) == 1);
    CHECK(pairing(mmR, mmR) == -1);
    CHECK(pairing(mmL, mmR) == 0);
    CHECK(pairing(amL, mmL) == 0);

    // <s(m,I) - s(I,s), same> = 1*1 + (-1)*(-1)*(-1) = 0
    Relation r{{{Rational(1), amL}, {Rational(-1), aaR}}};
    CHECK(pairing(r, r) == 0);

    CHECK_THROWS_AS(pairing(N(Gen::M, L(), L()), mmL), std::invalid_argument);
}

TEST_CASE("ideal slices") {
    CHECK(ideal_slice(presentation(Flavor::Searrow, false), 3).dim == 3);
    CHECK(ideal_slice(presentation(Flavor::Searrow, true), 3).dim == 5);
    CHECK(ideal_slice(presentation(Flavor::Nearrow, false), 3).dim == 3);
    CHECK(ideal_slice(presentation(Flavor::Nearrow, true), 3).dim == 5);
    // free(4) = 40, quotient must be Catalan(4) = 14
    CHECK(ideal_slice(presentation(Flavor::Searrow, false), 4).dim == 26);
    CHECK(ideal_slice(presentation(Flavor::Searrow, true), 4).dim == 36);
}

TEST_CASE("ideal saturation is a fixpoint") {
    for (bool dual : {false, true}) {
        const Presentation& p = presentation(Flavor::Searrow, dual);
        for (int n = 3; n <= 4; ++n) {
            ArityIdeal cur = ideal_slice(p, n);
            ArityIdeal next = ideal_slice(p, n + 1);
            const Basis& keys = free_basis_keys(n + 1);
            auto expand = [&](const SparseVector& v,
                              auto map_term) {
                SparseVector out;
                out.basis = &keys;
                for (const auto& [idx, c] : v.entries) {
                    OperadTerm t = free_basis(n)[static_cast<std::size_t>(idx)];
                    out.add(keys.index_of(map_term(t).encode()), c);
                }
                out.normalize();
                return out;
            };
            for (const SparseVector& v : cur.spanning) {
                for (Gen g : {Gen::M, Gen::Arrow}) {
                    // root composition on either side
                    CHECK(next.reduced.contains(
                        expand(v, [&](const OperadTerm& t) { return N(g, t, L()); })));
                    CHECK(next.reduced.contains(
                        expand(v, [&](const OperadTerm& t) { return N(g, L(), t); })));
                    // graft a generator into each input
                    for (int leaf = 1; leaf <= n; ++leaf) {
                        CHECK(next.reduced.contains(expand(v, [&](const OperadTerm& t) {
                            return t.graft(leaf, N(g, L(), L()));
                        })));
                    }
                }
            }
        }
    }
}

TEST_CASE("quotient dimension tables") {
    DimensionTable se = quotient_dims(presentation(Flavor::Searrow, false), 7);
    DimensionTable ne = quotient_dims(presentation(Flavor::Nearrow, false), 7);
    for (int n = 1; n <= 7; ++n) {
        CHECK(se.nonsigma[static_cast<std::size_t>(n - 1)] == kCatalan[n]);
        CHECK(ne.nonsigma[static_cast<std::size_t>(n - 1)] == kCatalan[n]);
    }
    CHECK(se.sigma[1] == 4);
    CHECK(se.sigma[2] == 30);

    DimensionTable sed = quotient_dims(presentation(Flavor::Searrow, true), 7);
    DimensionTable ned = quotient_dims(presentation(Flavor::Nearrow, true), 7);
    for (int n = 1; n <= 7; ++n) {
        CHECK(sed.nonsigma[static_cast<std::size_t>(n - 1)] == n);
        CHECK(ned.nonsigma[static_cast<std::size_t>(n - 1)] == n);
    }
    CHECK(sed.sigma[2] == 18);
    CHECK(ned.sigma[3] == 96);  // 4 * 4!
}

TEST_CASE("dual annihilator check") {
    for (Flavor f : {Flavor::Searrow, Flavor::Nearrow}) {
        DualityReport rep = dual_annihilator_check(presentation(f, false), presentation(f, true));
        CHECK(rep.passed);
        CHECK(rep.dim_primal == 3);
        CHECK(rep.dim_dual == 5);
        CHECK(rep.free_dim == 8);
        CHECK(rep.nonzero_pairings.empty());
        CHECK(rep.gram_rank == 8);
        CHECK(rep.sigma_free == 48);
        CHECK(rep.sigma_primal == 18);
        CHECK(rep.sigma_dual == 30);
    }

    // (P, P) fails: the primal relations span only 3 dimensions, not 5.
    DualityReport self =
        dual_annihilator_check(presentation(Flavor::Searrow, false), presentation(Flavor::Searrow, false));
    CHECK_FALSE(self.passed);
    CHECK(self.dim_dual == 3);
    CHECK_FALSE(self.complete);

    // (dual, dual) fails with visible nonzero pairings: the dual relations
    // do not annihilate themselves.
    DualityReport dd =
        dual_annihilator_check(presentation(Flavor::Searrow, true), presentation(Flavor::Searrow, true));
    CHECK_FALSE(dd.passed);
    CHECK_FALSE(dd.nonzero_pairings.empty());

    CHECK(to_json(self).find("\"passed\":false") != std::string::npos);
}

TEST_CASE("poincare series composition") {
    std::vector<long long> catalan{1, 2, 5, 14};
    std::vector<long long> linear{1, 2, 3, 4};
    PoincareReport ok = poincare_check(catalan, linear, 4);
    CHECK(ok.ok);
    for (const Rational& r : ok.residual) CHECK(r == 0);

    std::vector<long long> t_only{1, 0, 0};
    PoincareReport identity = poincare_check(t_only, t_only, 3);
    CHECK(identity.ok);

    std::vector<long long> squares{1, 4, 9};
    PoincareReport bad = poincare_check({1, 2, 5}, squares, 3);
    CHECK_FALSE(bad.ok);
    CHECK(bad.first_failure == 2);

    CHECK_THROWS_AS(poincare_check({1}, {1}, 3), std::invalid_argument);
}
