#include <doctest.h>

#include <functional>
#include <optional>
#include <set>

#include "fop/words.hpp"

using namespace fop;

namespace {

PointedWord PW(const std::string& text) { return parse_pointed_word(text); }
BarredWord BW(const std::string& text) { return parse_barred_word(text); }

// bilinear extensions for relation checking
template <typename W, typename Prod>
LinComb<W> ext(Prod prod, const LinComb<W>& x, const LinComb<W>& y) {
    LinComb<W> out;
    for (const auto& [wx, cx] : x.terms()) {
        for (const auto& [wy, cy] : y.terms()) {
            out.add(prod(wx, wy), cx * cy);
        }
    }
    return out;
}

std::vector<PointedWord> all_pointed(int max_n, const std::vector<std::string>& alphabet) {
    std::vector<PointedWord> out;
    std::function<void(std::vector<std::string>&)> rec = [&](std::vector<std::string>& cur) {
        if (!cur.empty()) {
            for (int k = 1; k <= static_cast<int>(cur.size()); ++k) out.emplace_back(cur, k);
        }
        if (static_cast<int>(cur.size()) == max_n) return;
        for (const auto& l : alphabet) {
            cur.push_back(l);
            rec(cur);
            cur.pop_back();
        }
    };
    std::vector<std::string> cur;
    rec(cur);
    return out;
}

std::vector<BarredWord> all_barred(int max_n, const std::vector<std::string>& alphabet) {
    std::vector<BarredWord> out;
    std::function<void(std::vector<std::string>&)> rec = [&](std::vector<std::string>& cur) {
        if (!cur.empty()) {
            for (int b = 0; b < static_cast<int>(cur.size()); ++b) out.emplace_back(cur, b);
        }
        if (static_cast<int>(cur.size()) == max_n) return;
        for (const auto& l : alphabet) {
            cur.push_back(l);
            rec(cur);
            cur.pop_back();
        }
    };
    std::vector<std::string> cur;
    rec(cur);
    return out;
}

}  // namespace

TEST_CASE("pointed word products, paper examples") {
    CHECK(pw_mul(PW(".a*b"), PW(".c")) == PointedComb(PW(".a*b*c")));
    CHECK(pw_mul(PW(".a"), PW("b*.c")).is_zero());
    CHECK(pw_mul(PW("a*.b"), PW(".c*d")) == PointedComb(PW("a*.b*c*d")));

    CHECK(pw_searrow(PW(".a"), PW("b*.c")) == PointedComb(PW("a*b*.c")));
    CHECK(pw_searrow(PW("a*.b"), PW(".c")).is_zero());
    // generation identity at n=3, k=2
    CHECK(pw_searrow(PW(".a"), PW(".b*c")) == PointedComb(PW("a*.b*c")));
}

TEST_CASE("barred word products") {
    CHECK(bw_mul(BW("a^b"), BW("c")) == BarredComb(BW("a^b*c")));
    CHECK(bw_mul(BW("a"), BW("b^c")).is_zero());
    CHECK(bw_mul(BW("a*b"), BW("c*d")) == BarredComb(BW("a*b*c*d")));

    CHECK(bw_nearrow(BW("a"), BW("b*c")) == BarredComb(BW("a^b*c")));
    CHECK(bw_nearrow(BW("a*b"), BW("c")).is_zero());
    CHECK(bw_nearrow(BW("a^b"), BW("c^d")) == BarredComb(BW("a^b^c^d")));
}

// Products of basis words are a single word or zero, so the exhaustive
// relation sweeps can work with optionals instead of combinations.
template <typename W, typename Prod>
std::optional<W> lift(Prod prod, const std::optional<W>& a, const std::optional<W>& b) {
    if (!a || !b) return std::nullopt;
    auto r = prod(*a, *b);
    if (r.is_zero()) return std::nullopt;
    return r.terms().begin()->first;
}

TEST_CASE("five dual relations hold exhaustively, searrow side") {
    auto mul = [](const PointedWord& a, const PointedWord& b) { return pw_mul(a, b); };
    auto arr = [](const PointedWord& a, const PointedWord& b) { return pw_searrow(a, b); };
    auto words = all_pointed(4, {"a", "b"});
    CHECK(words.size() == 2 + 8 + 24 + 64);
    long long failures = 0;
    for (const PointedWord& u : words) {
        for (const PointedWord& v : words) {
            for (const PointedWord& w : words) {
                std::optional<PointedWord> U(u), V(v), W(w);
                if (lift(arr, lift(mul, U, V), W) != lift(arr, U, lift(arr, V, W))) ++failures;
                if (lift(mul, lift(mul, U, V), W) != lift(mul, U, lift(mul, V, W))) ++failures;
                if (lift(mul, lift(arr, U, V), W) != lift(arr, U, lift(mul, V, W))) ++failures;
                if (lift(arr, lift(arr, U, V), W)) ++failures;
                if (lift(mul, U, lift(arr, V, W))) ++failures;
            }
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("five dual relations hold exhaustively, nearrow side") {
    auto mul = [](const BarredWord& a, const BarredWord& b) { return bw_mul(a, b); };
    auto arr = [](const BarredWord& a, const BarredWord& b) { return bw_nearrow(a, b); };
    auto words = all_barred(4, {"a", "b"});
    CHECK(words.size() == 2 + 8 + 24 + 64);
    long long failures = 0;
    for (const BarredWord& u : words) {
        for (const BarredWord& v : words) {
            for (const BarredWord& w : words) {
                std::optional<BarredWord> U(u), V(v), W(w);
                if (lift(arr, lift(arr, U, V), W) != lift(arr, U, lift(arr, V, W))) ++failures;
                if (lift(mul, lift(mul, U, V), W) != lift(mul, U, lift(mul, V, W))) ++failures;
                if (lift(mul, lift(arr, U, V), W) != lift(arr, U, lift(mul, V, W))) ++failures;
                if (lift(arr, lift(mul, U, V), W)) ++failures;
                if (lift(mul, U, lift(arr, V, W))) ++failures;
            }
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("grading: n * (dim V)^n words of length n") {
    auto pointed = all_pointed(4, {"a", "b"});
    auto barred = all_barred(4, {"a", "b"});
    for (int n = 1; n <= 4; ++n) {
        long long expect = n;
        for (int i = 0; i < n; ++i) expect *= 2;
        std::set<PointedWord> ps;
        for (const auto& w : pointed) {
            if (w.length() == n) ps.insert(w);
        }
        std::set<BarredWord> bs;
        for (const auto& w : barred) {
            if (w.length() == n) bs.insert(w);
        }
        CHECK(static_cast<long long>(ps.size()) == expect);
        CHECK(static_cast<long long>(bs.size()) == expect);
    }
}

TEST_CASE("generation: every pointed word from point-first factors") {
    for (const PointedWord& w : all_pointed(5, {"a", "b"})) {
        PointedComb built;
        if (w.point == 1) {
            built = PointedComb(PointedWord({w.letters[0]}, 1));
            for (int i = 1; i < w.length(); ++i) {
                built = ext([](const PointedWord& a, const PointedWord& b) { return pw_mul(a, b); },
                            built, PointedComb(PointedWord({w.letters[static_cast<std::size_t>(i)]}, 1)));
            }
        } else {
            std::vector<std::string> prefix(w.letters.begin(), w.letters.begin() + (w.point - 1));
            std::vector<std::string> suffix(w.letters.begin() + (w.point - 1), w.letters.end());
            PointedComb left(PointedWord({prefix[0]}, 1));
            for (std::size_t i = 1; i < prefix.size(); ++i) {
                left = ext([](const PointedWord& a, const PointedWord& b) { return pw_mul(a, b); },
                           left, PointedComb(PointedWord({prefix[i]}, 1)));
            }
            PointedComb right(PointedWord({suffix[0]}, 1));
            for (std::size_t i = 1; i < suffix.size(); ++i) {
                right = ext([](const PointedWord& a, const PointedWord& b) { return pw_mul(a, b); },
                            right, PointedComb(PointedWord({suffix[i]}, 1)));
            }
            built = ext([](const PointedWord& a, const PointedWord& b) { return pw_searrow(a, b); },
                        left, right);
        }
        REQUIRE(built == PointedComb(w));
    }
}

TEST_CASE("coproducts, displayed examples") {
    using Pairs = std::vector<std::pair<PointedWord, PointedWord>>;
    Pairs dm = coproduct_m(PW(".a*b*c"));
    REQUIRE(dm.size() == 2);
    CHECK(dm[0] == std::pair(PW(".a"), PW(".b*c")));
    CHECK(dm[1] == std::pair(PW(".a*b"), PW(".c")));

    CHECK(coproduct_m(PW("a*.b")).empty());

    auto darr = coproduct_arrow(PW("a*.b"));
    REQUIRE(darr.size() == 1);
    CHECK(darr[0] == std::pair(PW(".a"), PW(".b")));
    CHECK(coproduct_arrow(PW(".a*b")).empty());

    auto bm = coproduct_m(BW("a^b*c"));
    REQUIRE(bm.size() == 1);
    CHECK(bm[0] == std::pair(BW("a^b"), BW("c")));

    auto ba = coproduct_arrow(BW("a^b^c"));
    REQUIRE(ba.size() == 2);
    CHECK(ba[0] == std::pair(BW("a"), BW("b^c")));
    CHECK(ba[1] == std::pair(BW("a^b"), BW("c")));
}

TEST_CASE("text round-trip") {
    CHECK(format_word(PointedWord({"a", "b", "c"}, 2)) == "a*.b*c");
    CHECK(format_word(BarredWord({"a", "b", "c"}, 1)) == "a^b*c");
    for (const PointedWord& w : all_pointed(4, {"a", "b"})) {
        CHECK(parse_pointed_word(format_word(w)) == w);
    }
    for (const BarredWord& w : all_barred(4, {"a", "b"})) {
        CHECK(parse_barred_word(format_word(w)) == w);
    }
    // forest letters with spaces and parens survive the round trip
    PointedWord pw({"b(a) c", "x"}, 1);
    CHECK(parse_pointed_word(format_word(pw)) == pw);

    CHECK_THROWS_AS(parse_pointed_word("a*b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pointed_word(".a*.b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_barred_word("a*b^c"), std::invalid_argument);
    CHECK_THROWS_AS(parse_barred_word("a^.b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pointed_word(""), std::invalid_argument);

    CHECK(render(PointedComb(PW(".a*b"))) == "1*.a*b");
    CHECK(render(BarredComb{}) == "0");
}

TEST_CASE("word invariants") {
    CHECK_THROWS_AS(PointedWord({}, 1), std::invalid_argument);
    CHECK_THROWS_AS(PointedWord({"a"}, 2), std::invalid_argument);
    CHECK_THROWS_AS(BarredWord({"a"}, 1), std::invalid_argument);
    CHECK(BW("a").fully_barred());
    CHECK(BW("a^b").fully_barred());
    CHECK_FALSE(BW("a*b").fully_barred());
}
