#pragma once

#include <string>
#include <vector>

#include "fop/lincomb.hpp"

namespace fop {

// Tensor word with one distinguished letter; basis of the free dual algebra
// on the searrow side. Letters are opaque keys. point is 1-based.
struct PointedWord {
    std::vector<std::string> letters;
    int point = 1;

    PointedWord() = default;
    PointedWord(std::vector<std::string> ls, int pt);

    int length() const { return static_cast<int>(letters.size()); }
    auto operator<=>(const PointedWord&) const = default;
};

// Tensor word whose first bar_count separators are barred; basis of the dual
// algebra on the nearrow side. The word v1 (x.bar) ... (x.bar) vk (x) ... vn
// has bar_count = k-1.
struct BarredWord {
    std::vector<std::string> letters;
    int bar_count = 0;

    BarredWord() = default;
    BarredWord(std::vector<std::string> ls, int bars);

    int length() const { return static_cast<int>(letters.size()); }
    bool fully_barred() const { return bar_count == length() - 1; }
    auto operator<=>(const BarredWord&) const = default;
};

using PointedComb = LinComb<PointedWord>;
using BarredComb = LinComb<BarredWord>;

// Products of T_searrow(V): vw = 0 unless w's point is first, keeping v's
// point; v searrow w = 0 unless v's point is first, keeping w's point.
PointedComb pw_mul(const PointedWord& v, const PointedWord& w);
PointedComb pw_searrow(const PointedWord& v, const PointedWord& w);

// Products of T_nearrow(V): vw = 0 unless w has no bars (plain junction);
// v nearrow w = 0 unless v is fully barred (barred junction).
BarredComb bw_mul(const BarredWord& v, const BarredWord& w);
BarredComb bw_nearrow(const BarredWord& v, const BarredWord& w);

// Deconcatenation coproducts of the cofree side. All summands have
// coefficient +1, so they are returned as plain pair lists.
std::vector<std::pair<PointedWord, PointedWord>> coproduct_m(const PointedWord& v);
std::vector<std::pair<PointedWord, PointedWord>> coproduct_arrow(const PointedWord& v);
std::vector<std::pair<BarredWord, BarredWord>> coproduct_m(const BarredWord& v);
std::vector<std::pair<BarredWord, BarredWord>> coproduct_arrow(const BarredWord& v);

// Text form: letters joined by '*' (plain junction) or '^' (barred
// junction); '.' prefixes the pointed letter. Examples: "a*.b*c", "a^b*c".
std::string format_word(const PointedWord& w);
std::string format_word(const BarredWord& w);
PointedWord parse_pointed_word(const std::string& text);
BarredWord parse_barred_word(const std::string& text);

std::string render(const PointedComb& x);
std::string render(const BarredComb& x);

}  // namespace fop
