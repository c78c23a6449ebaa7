#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fop {

// Vertex label drawn from the decoration set D. Labels compare by exact
// string equality.
struct Decoration {
    std::string label;

    explicit Decoration(std::string l);
    bool operator==(const Decoration&) const = default;
};

// Planar rooted tree with decorated vertices; children are ordered left to
// right and the order is structural (planarity).
struct Tree {
    std::string label;
    std::vector<Tree> children;

    bool operator==(const Tree&) const = default;
};

int weight(const Tree& t);
int cmp(const Tree& a, const Tree& b);
inline bool operator<(const Tree& a, const Tree& b) { return cmp(a, b) < 0; }

// Nonempty ordered sequence of planar rooted trees. The empty forest is not
// a value of this type.
class Forest {
public:
    explicit Forest(std::vector<Tree> trees);
    explicit Forest(Tree t);

    const std::vector<Tree>& trees() const { return trees_; }
    std::size_t tree_count() const { return trees_.size(); }

    bool operator==(const Forest&) const = default;

private:
    std::vector<Tree> trees_;
};

int weight(const Forest& f);
int cmp(const Forest& a, const Forest& b);
inline bool operator<(const Forest& a, const Forest& b) { return cmp(a, b) < 0; }

struct ForestParseError : std::runtime_error {
    std::size_t offset;
    ForestParseError(std::size_t off, const std::string& message);
};

// Grammar (bit-exact):
//   forest := tree (SP tree)*
//   tree   := label | label "(" forest ")"
//   label  := [A-Za-z_][A-Za-z0-9_]*
// SP is one ASCII space; no leading/trailing whitespace.
Forest parse_forest(std::string_view text);
std::string format_forest(const Forest& f);
std::string format_tree(const Tree& t);

// The three products of the free algebras: concatenation, grafting on the
// root of the leftmost tree (searrow), grafting on the leftmost leaf
// (nearrow).
Forest concat(const Forest& f, const Forest& g);
Forest graft_root(const Forest& f, const Forest& g);
Forest graft_left_leaf(const Forest& f, const Forest& g);

// B_d: grafts the trees of f under a new common root decorated d. Equals
// graft_root(f, single d) and graft_left_leaf(f, single d).
Tree b_plus(const Decoration& d, const Forest& f);

Forest single_vertex(const Decoration& d);

// All forests of weight exactly w, each once, ordered by canonical text with
// labels ranked by their position in `decorations`.
std::vector<Forest> enumerate_forests(int w, const std::vector<Decoration>& decorations);

// Unique factorization F = F_1 nearrow ... nearrow F_n where every factor is
// a single vertex followed by an optional remainder forest.
struct LeftCombFactorization {
    std::vector<Forest> factors;
};

LeftCombFactorization factorize_left_comb(const Forest& f);
Forest refold_left_comb(const LeftCombFactorization& fact);

}  // namespace fop
