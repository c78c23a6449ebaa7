#include "fop/words.hpp"

#include <stdexcept>

namespace fop {

PointedWord::PointedWord(std::vector<std::string> ls, int pt) : letters(std::move(ls)), point(pt) {
    if (letters.empty()) throw std::invalid_argument("PointedWord: empty word");
    if (point < 1 || point > length()) throw std::invalid_argument("PointedWord: point out of range");
}

BarredWord::BarredWord(std::vector<std::string> ls, int bars)
    : letters(std::move(ls)), bar_count(bars) {
    if (letters.empty()) throw std::invalid_argument("BarredWord: empty word");
    if (bar_count < 0 || bar_count >= length())
        throw std::invalid_argument("BarredWord: bar count out of range");
}

PointedComb pw_mul(const PointedWord& v, const PointedWord& w) {
    if (w.point != 1) return {};
    std::vector<std::string> letters = v.letters;
    letters.insert(letters.end(), w.letters.begin(), w.letters.end());
    return PointedComb(PointedWord(std::move(letters), v.point));
}

PointedComb pw_searrow(const PointedWord& v, const PointedWord& w) {
    if (v.point != 1) return {};
    std::vector<std::string> letters = v.letters;
    letters.insert(letters.end(), w.letters.begin(), w.letters.end());
    return PointedComb(PointedWord(std::move(letters), v.length() + w.point));
}

BarredComb bw_mul(const BarredWord& v, const BarredWord& w) {
    if (w.bar_count != 0) return {};
    std::vector<std::string> letters = v.letters;
    letters.insert(letters.end(), w.letters.begin(), w.letters.end());
    return BarredComb(BarredWord(std::move(letters), v.bar_count));
}

BarredComb bw_nearrow(const BarredWord& v, const BarredWord& w) {
    if (!v.fully_barred()) return {};
    std::vector<std::string> letters = v.letters;
    letters.insert(letters.end(), w.letters.begin(), w.letters.end());
    // all of v's junctions barred, a barred junction, then w's pattern
    return BarredComb(BarredWord(std::move(letters), v.length() + w.bar_count));
}

std::vector<std::pair<PointedWord, PointedWord>> coproduct_m(const PointedWord& v) {
    std::vector<std::pair<PointedWord, PointedWord>> out;
    for (int i = v.point; i <= v.length() - 1; ++i) {
        std::vector<std::string> l(v.letters.begin(), v.letters.begin() + i);
        std::vector<std::string> r(v.letters.begin() + i, v.letters.end());
        out.emplace_back(PointedWord(std::move(l), v.point), PointedWord(std::move(r), 1));
    }
    return out;
}

std::vector<std::pair<PointedWord, PointedWord>> coproduct_arrow(const PointedWord& v) {
    std::vector<std::pair<PointedWord, PointedWord>> out;
    for (int i = 1; i <= v.point - 1; ++i) {
        std::vector<std::string> l(v.letters.begin(), v.letters.begin() + i);
        std::vector<std::string> r(v.letters.begin() + i, v.letters.end());
        out.emplace_back(PointedWord(std::move(l), 1), PointedWord(std::move(r), v.point - i));
    }
    return out;
}

std::vector<std::pair<BarredWord, BarredWord>> coproduct_m(const BarredWord& v) {
    std::vector<std::pair<BarredWord, BarredWord>> out;
    const int k = v.bar_count + 1;
    for (int i = k; i <= v.length() - 1; ++i) {
        std::vector<std::string> l(v.letters.begin(), v.letters.begin() + i);
        std::vector<std::string> r(v.letters.begin() + i, v.letters.end());
        out.emplace_back(BarredWord(std::move(l), v.bar_count), BarredWord(std::move(r), 0));
    }
    return out;
}

std::vector<std::pair<BarredWord, BarredWord>> coproduct_arrow(const BarredWord& v) {
    std::vector<std::pair<BarredWord, BarredWord>> out;
    const int k = v.bar_count + 1;
    for (int i = 1; i <= k - 1; ++i) {
        std::vector<std::string> l(v.letters.begin(), v.letters.begin() + i);
        std::vector<std::string> r(v.letters.begin() + i, v.letters.end());
        // left factor sits inside the barred prefix, so it is fully barred;
        // the right factor keeps k - i - 1 leading bars.
        out.emplace_back(BarredWord(std::move(l), i - 1), BarredWord(std::move(r), k - i - 1));
    }
    return out;
}

std::string format_word(const PointedWord& w) {
    std::string out;
    for (int i = 0; i < w.length(); ++i) {
        if (i) out += '*';
        if (i + 1 == w.point) out += '.';
        out += w.letters[static_cast<std::size_t>(i)];
    }
    return out;
}

std::string format_word(const BarredWord& w) {
    std::string out;
    for (int i = 0; i < w.length(); ++i) {
        if (i) out += (i <= w.bar_count) ? '^' : '*';
        out += w.letters[static_cast<std::size_t>(i)];
    }
    return out;
}

namespace {

struct SplitWord {
    std::vector<std::string> letters;
    std::vector<char> junctions;  // '*' or '^', one per junction
};

SplitWord split_word(const std::string& text) {
    SplitWord out;
    std::string current;
    for (char c : text) {
        if (c == '*' || c == '^') {
            out.letters.push_back(current);
            out.junctions.push_back(c);
            current.clear();
        } else {
            current += c;
        }
    }
    out.letters.push_back(current);
    for (const std::string& l : out.letters) {
        if (l.empty()) throw std::invalid_argument("word parse: empty letter in '" + text + "'");
    }
    return out;
}

}  // namespace

PointedWord parse_pointed_word(const std::string& text) {
    SplitWord sw = split_word(text);
    for (char j : sw.junctions) {
        if (j == '^') throw std::invalid_argument("pointed word parse: unexpected '^'");
    }
    int point = -1;
    for (std::size_t i = 0; i < sw.letters.size(); ++i) {
        if (sw.letters[i].front() == '.') {
            if (point >= 0) throw std::invalid_argument("pointed word parse: two points");
            point = static_cast<int>(i) + 1;
            sw.letters[i].erase(sw.letters[i].begin());
        }
    }
    if (point < 0) throw std::invalid_argument("pointed word parse: missing point");
    return PointedWord(std::move(sw.letters), point);
}

BarredWord parse_barred_word(const std::string& text) {
    SplitWord sw = split_word(text);
    int bars = 0;
    bool plain_seen = false;
    for (char j : sw.junctions) {
        if (j == '^') {
            if (plain_seen)
                throw std::invalid_argument("barred word parse: bars must form a prefix");
            ++bars;
        } else {
            plain_seen = true;
        }
    }
    for (const std::string& l : sw.letters) {
        if (l.front() == '.')
            throw std::invalid_argument("barred word parse: unexpected point marker");
    }
    return BarredWord(std::move(sw.letters), bars);
}

namespace {

template <typename Comb>
std::string render_comb(const Comb& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : x.terms()) {
        if (!first) out += " + ";
        first = false;
        out += rational_to_string(c);
        out += '*';
        out += format_word(w);
    }
    return out;
}

}  // namespace

std::string render(const PointedComb& x) { return render_comb(x); }
std::string render(const BarredComb& x) { return render_comb(x); }

}  // namespace fop
