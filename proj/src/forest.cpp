#include "fop/forest.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace fop {

namespace {

bool is_label_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_label_char(char c) { return is_label_start(c) || (c >= '0' && c <= '9'); }

}  // namespace

Decoration::Decoration(std::string l) : label(std::move(l)) {
    if (label.empty() || !is_label_start(label.front()))
        throw std::invalid_argument("Decoration: invalid label '" + label + "'");
    for (char c : label) {
        if (!is_label_char(c))
            throw std::invalid_argument("Decoration: invalid label '" + label + "'");
    }
}

int weight(const Tree& t) {
    int w = 1;
    for (const Tree& c : t.children) w += weight(c);
    return w;
}

int cmp(const Tree& a, const Tree& b) {
    if (int c = a.label.compare(b.label); c != 0) return c < 0 ? -1 : 1;
    for (std::size_t i = 0; i < a.children.size() && i < b.children.size(); ++i) {
        if (int c = cmp(a.children[i], b.children[i]); c != 0) return c;
    }
    if (a.children.size() != b.children.size())
        return a.children.size() < b.children.size() ? -1 : 1;
    return 0;
}

Forest::Forest(std::vector<Tree> trees) : trees_(std::move(trees)) {
    if (trees_.empty()) throw std::invalid_argument("Forest: the empty forest is excluded");
}

Forest::Forest(Tree t) : trees_{std::move(t)} {}

int weight(const Forest& f) {
    int w = 0;
    for (const Tree& t : f.trees()) w += weight(t);
    return w;
}

int cmp(const Forest& a, const Forest& b) {
    const auto& ta = a.trees();
    const auto& tb = b.trees();
    for (std::size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
        if (int c = cmp(ta[i], tb[i]); c != 0) return c;
    }
    if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
    return 0;
}

ForestParseError::ForestParseError(std::size_t off, const std::string& message)
    : std::runtime_error(message + " at byte " + std::to_string(off)), offset(off) {}

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    bool done() const { return pos >= text.size(); }

    std::string parse_label() {
        if (done() || !is_label_start(peek()))
            throw ForestParseError(pos, "expected label");
        std::size_t start = pos;
        while (!done() && is_label_char(peek())) ++pos;
        return std::string(text.substr(start, pos - start));
    }

    Tree parse_tree() {
        Tree t;
        t.label = parse_label();
        if (peek() == '(') {
            ++pos;
            t.children = parse_forest_body();
            if (peek() != ')') throw ForestParseError(pos, "expected ')'");
            ++pos;
        }
        return t;
    }

    std::vector<Tree> parse_forest_body() {
        std::vector<Tree> trees;
        trees.push_back(parse_tree());
        while (peek() == ' ') {
            ++pos;
            trees.push_back(parse_tree());
        }
        return trees;
    }
};

}  // namespace

Forest parse_forest(std::string_view text) {
    if (text.empty()) throw ForestParseError(0, "empty input (the empty forest is excluded)");
    Parser p{text};
    std::vector<Tree> trees = p.parse_forest_body();
    if (!p.done()) throw ForestParseError(p.pos, "unexpected trailing input");
    return Forest(std::move(trees));
}

namespace {

void format_tree_into(const Tree& t, std::string& out) {
    out += t.label;
    if (!t.children.empty()) {
        out += '(';
        for (std::size_t i = 0; i < t.children.size(); ++i) {
            if (i) out += ' ';
            format_tree_into(t.children[i], out);
        }
        out += ')';
    }
}

}  // namespace

std::string format_tree(const Tree& t) {
    std::string out;
    format_tree_into(t, out);
    return out;
}

std::string format_forest(const Forest& f) {
    std::string out;
    for (std::size_t i = 0; i < f.trees().size(); ++i) {
        if (i) out += ' ';
        format_tree_into(f.trees()[i], out);
    }
    return out;
}

Forest concat(const Forest& f, const Forest& g) {
    std::vector<Tree> trees = f.trees();
    trees.insert(trees.end(), g.trees().begin(), g.trees().end());
    return Forest(std::move(trees));
}

Forest graft_root(const Forest& f, const Forest& g) {
    // f's trees become the new leftmost children of the root of g's leftmost
    // tree; the only reading under which both relations involving m hold.
    std::vector<Tree> trees = g.trees();
    trees.front().children.insert(trees.front().children.begin(), f.trees().begin(),
                                  f.trees().end());
    return Forest(std::move(trees));
}

Forest graft_left_leaf(const Forest& f, const Forest& g) {
    std::vector<Tree> trees = g.trees();
    Tree* leaf = &trees.front();
    while (!leaf->children.empty()) leaf = &leaf->children.front();
    leaf->children = f.trees();
    return Forest(std::move(trees));
}

Tree b_plus(const Decoration& d, const Forest& f) {
    return Tree{d.label, f.trees()};
}

Forest single_vertex(const Decoration& d) { return Forest(Tree{d.label, {}}); }

namespace {

// Canonical-text order with labels ranked by their position in the
// decoration list: each forest maps to a token stream
// (space=0, '('=1, ')'=2, label=3+rank) compared lexicographically.
void tree_tokens(const Tree& t, const std::map<std::string, int>& rank, std::vector<int>& out) {
    out.push_back(3 + rank.at(t.label));
    if (!t.children.empty()) {
        out.push_back(1);
        for (std::size_t i = 0; i < t.children.size(); ++i) {
            if (i) out.push_back(0);
            tree_tokens(t.children[i], rank, out);
        }
        out.push_back(2);
    }
}

std::vector<int> forest_tokens(const Forest& f, const std::map<std::string, int>& rank) {
    std::vector<int> out;
    for (std::size_t i = 0; i < f.trees().size(); ++i) {
        if (i) out.push_back(0);
        tree_tokens(f.trees()[i], rank, out);
    }
    return out;
}

}  // namespace

std::vector<Forest> enumerate_forests(int w, const std::vector<Decoration>& decorations) {
    if (w < 1) throw std::invalid_argument("enumerate_forests: weight must be >= 1");
    if (decorations.empty())
        throw std::invalid_argument("enumerate_forests: decoration set must be nonempty");

    std::vector<std::vector<Tree>> trees_by_weight(static_cast<std::size_t>(w) + 1);
    std::vector<std::vector<std::vector<Tree>>> forests_by_weight(
        static_cast<std::size_t>(w) + 1);
    forests_by_weight[0] = {{}};  // internal seed only; never exposed

    for (int v = 1; v <= w; ++v) {
        const auto uv = static_cast<std::size_t>(v);
        for (const Decoration& d : decorations) {
            for (const auto& children : forests_by_weight[uv - 1]) {
                trees_by_weight[uv].push_back(Tree{d.label, children});
            }
        }
        for (int first = 1; first <= v; ++first) {
            for (const Tree& t : trees_by_weight[static_cast<std::size_t>(first)]) {
                for (const auto& rest :
                     forests_by_weight[static_cast<std::size_t>(v - first)]) {
                    std::vector<Tree> seq;
                    seq.reserve(rest.size() + 1);
                    seq.push_back(t);
                    seq.insert(seq.end(), rest.begin(), rest.end());
                    forests_by_weight[uv].push_back(std::move(seq));
                }
            }
        }
    }

    std::map<std::string, int> rank;
    for (std::size_t i = 0; i < decorations.size(); ++i) {
        if (!rank.emplace(decorations[i].label, static_cast<int>(i)).second)
            throw std::invalid_argument("enumerate_forests: duplicate decoration");
    }

    std::vector<std::pair<std::vector<int>, Forest>> keyed;
    keyed.reserve(forests_by_weight[static_cast<std::size_t>(w)].size());
    for (auto& seq : forests_by_weight[static_cast<std::size_t>(w)]) {
        Forest f(seq);
        keyed.emplace_back(forest_tokens(f, rank), std::move(f));
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Forest> result;
    result.reserve(keyed.size());
    for (auto& [k, f] : keyed) result.push_back(std::move(f));
    return result;
}

LeftCombFactorization factorize_left_comb(const Forest& f) {
    // Lemma-style peeling: F = B_d(H1) H2 has last factor (single vertex d)
    // followed by H2, and the leading factors are the factorization of H1.
    LeftCombFactorization out;
    std::function<void(const Forest&)> peel = [&](const Forest& cur) {
        const Tree& first = cur.trees().front();
        std::vector<Tree> h2(cur.trees().begin() + 1, cur.trees().end());
        if (!first.children.empty()) peel(Forest(first.children));
        std::vector<Tree> factor;
        factor.push_back(Tree{first.label, {}});
        factor.insert(factor.end(), h2.begin(), h2.end());
        out.factors.push_back(Forest(std::move(factor)));
    };
    peel(f);
    return out;
}

Forest refold_left_comb(const LeftCombFactorization& fact) {
    if (fact.factors.empty())
        throw std::invalid_argument("refold_left_comb: no factors");
    Forest acc = fact.factors.back();
    for (auto it = fact.factors.rbegin() + 1; it != fact.factors.rend(); ++it) {
        acc = graft_left_leaf(*it, acc);
    }
    return acc;
}

}  // namespace fop
