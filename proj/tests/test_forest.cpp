#include <doctest.h>

#include <random>

#include "fop/forest.hpp"

using namespace fop;

namespace {

Forest F(const std::string& text) { return parse_forest(text); }

std::vector<Decoration> decs(std::initializer_list<const char*> labels) {
    std::vector<Decoration> ds;
    for (const char* l : labels) ds.emplace_back(l);
    return ds;
}

const long long kCatalan[] = {0, 1, 2, 5, 14, 42, 132, 429, 1430};

}  // namespace

TEST_CASE("parse and format") {
    CHECK(format_forest(F("a")) == "a");
    CHECK(format_forest(F("b(a)")) == "b(a)");
    CHECK(format_forest(F("a(b c) d")) == "a(b c) d");
    CHECK(F("a(b c) d").tree_count() == 2);
    CHECK(F("a(b c) d").trees()[0].children.size() == 2);

    CHECK_THROWS_AS(parse_forest(""), ForestParseError);
    CHECK_THROWS_AS(parse_forest("a("), ForestParseError);
    CHECK_THROWS_AS(parse_forest("a)"), ForestParseError);
    CHECK_THROWS_AS(parse_forest("a  b"), ForestParseError);
    CHECK_THROWS_AS(parse_forest(" a"), ForestParseError);
    CHECK_THROWS_AS(parse_forest("1a"), ForestParseError);

    try {
        parse_forest("a(b");
        FAIL("expected parse error");
    } catch (const ForestParseError& e) {
        CHECK(e.offset == 3);
    }
}

TEST_CASE("weight") {
    CHECK(weight(F("a")) == 1);
    CHECK(weight(F("a(b c) d")) == 4);
    CHECK(weight(F("b(a)")) == 2);
}

TEST_CASE("products on the spec examples") {
    CHECK(concat(F("a"), F("b")) == F("a b"));
    CHECK(concat(F("a b"), F("c")) == F("a b c"));
    CHECK(concat(F("b(a)"), F("c")) == F("b(a) c"));

    CHECK(graft_root(F("a"), F("b")) == F("b(a)"));
    CHECK(graft_root(F("a"), F("b(c) e")) == F("b(a c) e"));
    CHECK(graft_root(F("a b"), F("c")) == F("c(a b)"));

    CHECK(graft_left_leaf(F("a"), F("b")) == F("b(a)"));
    CHECK(graft_left_leaf(F("a"), F("b(c d)")) == F("b(c(a) d)"));
    CHECK(graft_left_leaf(F("a"), F("b(c) e")) == F("b(c(a)) e"));
}

TEST_CASE("b_plus") {
    CHECK(b_plus(Decoration("b"), F("a")) == F("b(a)").trees()[0]);
    CHECK(b_plus(Decoration("d"), F("a b")) == F("d(a b)").trees()[0]);
    CHECK(b_plus(Decoration("d"), F("b(a)")) == F("d(b(a))").trees()[0]);
}

TEST_CASE("relation suites, exhaustive by total weight") {
    auto run = [](const std::vector<Decoration>& ds, int max_total) {
        std::vector<std::vector<Forest>> by_w(static_cast<std::size_t>(max_total) + 1);
        for (int w = 1; w <= max_total; ++w) by_w[static_cast<std::size_t>(w)] = enumerate_forests(w, ds);
        for (int a = 1; a <= max_total - 2; ++a) {
            for (int b = 1; a + b <= max_total - 1; ++b) {
                for (int c = 1; a + b + c <= max_total; ++c) {
                    for (const Forest& f : by_w[static_cast<std::size_t>(a)]) {
                        for (const Forest& g : by_w[static_cast<std::size_t>(b)]) {
                            for (const Forest& h : by_w[static_cast<std::size_t>(c)]) {
                                REQUIRE(concat(concat(f, g), h) == concat(f, concat(g, h)));
                                // searrow relations
                                REQUIRE(graft_root(concat(f, g), h) ==
                                        graft_root(f, graft_root(g, h)));
                                REQUIRE(graft_root(f, concat(g, h)) ==
                                        concat(graft_root(f, g), h));
                                // nearrow relations
                                REQUIRE(graft_left_leaf(graft_left_leaf(f, g), h) ==
                                        graft_left_leaf(f, graft_left_leaf(g, h)));
                                REQUIRE(graft_left_leaf(f, concat(g, h)) ==
                                        concat(graft_left_leaf(f, g), h));
                            }
                        }
                    }
                }
            }
        }
    };
    run(decs({"x"}), 6);
    run(decs({"a", "b"}), 5);
}

TEST_CASE("weight additivity and the B_d degeneration") {
    auto ds = decs({"x"});
    for (int w = 1; w <= 6; ++w) {
        for (const Forest& f : enumerate_forests(w, ds)) {
            const Forest dot = single_vertex(Decoration("x"));
            Forest via_root = graft_root(f, dot);
            Forest via_leaf = graft_left_leaf(f, dot);
            CHECK(via_root == via_leaf);
            CHECK(via_root == Forest(b_plus(Decoration("x"), f)));
            CHECK(weight(concat(f, dot)) == w + 1);
            CHECK(weight(via_root) == w + 1);
            CHECK(weight(via_leaf) == w + 1);
        }
    }
}

TEST_CASE("randomized relation checks") {
    std::mt19937_64 rng(7);
    auto ds = decs({"a", "b"});
    std::vector<Forest> pool;
    for (int w = 1; w <= 4; ++w) {
        for (const Forest& f : enumerate_forests(w, ds)) pool.push_back(f);
    }
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 500; ++i) {
        const Forest &f = pool[pick(rng)], &g = pool[pick(rng)], &h = pool[pick(rng)];
        CHECK(graft_root(concat(f, g), h) == graft_root(f, graft_root(g, h)));
        CHECK(graft_left_leaf(graft_left_leaf(f, g), h) ==
              graft_left_leaf(f, graft_left_leaf(g, h)));
        CHECK(weight(graft_root(f, g)) == weight(f) + weight(g));
    }
}

TEST_CASE("enumeration counts and order") {
    auto one = enumerate_forests(1, decs({"x"}));
    REQUIRE(one.size() == 1);
    CHECK(format_forest(one[0]) == "x");

    CHECK(enumerate_forests(3, decs({"x"})).size() == 5);
    CHECK(enumerate_forests(2, decs({"a", "b"})).size() == 8);

    for (int w = 1; w <= 8; ++w) {
        CHECK(enumerate_forests(w, decs({"x"})).size() ==
              static_cast<std::size_t>(kCatalan[w]));
    }
    long long d2 = 1;
    for (int w = 1; w <= 5; ++w) {
        d2 *= 2;
        CHECK(enumerate_forests(w, decs({"a", "b"})).size() ==
              static_cast<std::size_t>(kCatalan[w] * d2));
    }

    // deterministic and duplicate-free
    auto run1 = enumerate_forests(4, decs({"a", "b"}));
    auto run2 = enumerate_forests(4, decs({"a", "b"}));
    REQUIRE(run1 == run2);
    for (std::size_t i = 1; i < run1.size(); ++i) CHECK(cmp(run1[i - 1], run1[i]) != 0);
}

TEST_CASE("parse/format round-trip on enumerated forests") {
    for (int w = 1; w <= 6; ++w) {
        for (const Forest& f : enumerate_forests(w, decs({"x"}))) {
            CHECK(parse_forest(format_forest(f)) == f);
        }
    }
    for (int w = 1; w <= 4; ++w) {
        for (const Forest& f : enumerate_forests(w, decs({"u", "v_2"}))) {
            CHECK(parse_forest(format_forest(f)) == f);
        }
    }
}

TEST_CASE("left-comb factorization") {
    auto texts = [](const LeftCombFactorization& fact) {
        std::vector<std::string> out;
        for (const Forest& f : fact.factors) out.push_back(format_forest(f));
        return out;
    };

    CHECK(texts(factorize_left_comb(F("a"))) == std::vector<std::string>{"a"});
    CHECK(texts(factorize_left_comb(F("b(a)"))) == std::vector<std::string>{"a", "b"});
    CHECK(texts(factorize_left_comb(F("b(a) c"))) == std::vector<std::string>{"a", "b c"});

    for (int w = 1; w <= 5; ++w) {
        for (const auto& ds : {decs({"x"}), decs({"a", "b"})}) {
            for (const Forest& f : enumerate_forests(w, ds)) {
                LeftCombFactorization fact = factorize_left_comb(f);
                for (const Forest& factor : fact.factors) {
                    CHECK(factor.trees().front().children.empty());
                }
                CHECK(refold_left_comb(fact) == f);
            }
        }
    }
}

TEST_CASE("decoration validation") {
    CHECK_THROWS_AS(Decoration(""), std::invalid_argument);
    CHECK_THROWS_AS(Decoration("2x"), std::invalid_argument);
    CHECK_THROWS_AS(Decoration("a b"), std::invalid_argument);
    CHECK(Decoration("x_1").label == "x_1");
}
