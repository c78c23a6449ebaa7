#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "fop/algebra.hpp"
#include "fop/forest.hpp"
#include "fop/linalg.hpp"
#include "fop/operad.hpp"

namespace fop {

// Deliberate sign errors for mutation testing of the d^2 = 0 check. The
// searrow differential has four displayed sign groups; the nearrow one has
// two sums plus a plausible "restart the parity at the bar boundary" slip.
enum class SignMutation {
    None,
    SeFlipPreM,       // m-merges strictly left of the point
    SeFlipArrow,      // the searrow merge feeding the point
    SeFlipMAtPoint,   // the m merge absorbing the letter right of the point
    SeFlipPostM,      // m-merges strictly right of the point
    NeFlipArrowSum,   // the barred-junction (nearrow) sum
    NeFlipPlainSum,   // the plain-junction (m) sum
    NeRestartParity,  // plain sum signed (-1)^(i-k) instead of (-1)^(i-1)
};

// Word over interned forest letters. mark is the 1-based point position for
// searrow slices and the leading-bar count for nearrow slices.
struct ChainWord {
    std::vector<int> letters;
    int mark = 0;

    bool operator==(const ChainWord&) const = default;
};

struct ChainWordHash {
    std::size_t operator()(const ChainWord& w) const;
};

// Basis of one (word length, weight) component of the chain complex.
struct ChainBasisSlice {
    Flavor flavor = Flavor::Searrow;
    int n = 0, w = 0;
    std::vector<ChainWord> words;
    std::unordered_map<ChainWord, int, ChainWordHash> index;

    int size() const { return static_cast<int>(words.size()); }
    int index_of(const ChainWord& word) const;
};

struct DifferentialMatrix {
    const ChainBasisSlice* source = nullptr;
    const ChainBasisSlice* target = nullptr;
    SparseMatrix matrix;
};

// Interns the graded forest bases for one flavor and decoration set and
// builds chain bases and differentials over them.
class ChainEngine {
public:
    ChainEngine(Flavor flavor, std::vector<Decoration> decorations);

    Flavor flavor() const { return flavor_; }
    int alphabet_size() const { return static_cast<int>(decorations_.size()); }

    const std::vector<Forest>& forests_of_weight(int w);
    int letter_id(const Forest& f);
    const Forest& letter(int id) const { return letters_[static_cast<std::size_t>(id)]; }
    int letter_weight(int id) const { return letter_weights_[static_cast<std::size_t>(id)]; }

    int product_m(int a, int b);
    int product_arrow(int a, int b);  // graft_root or graft_left_leaf by flavor

    const ChainBasisSlice& slice(int n, int w);
    const DifferentialMatrix& differential(int n, int w);  // d: C_n(w) -> C_{n-1}(w)
    DifferentialMatrix differential(int n, int w, SignMutation mutation);

    std::string word_text(const ChainWord& word) const;

private:
    void ensure_weight(int w);

    Flavor flavor_;
    std::vector<Decoration> decorations_;
    std::vector<std::vector<Forest>> by_weight_;  // index = weight
    std::vector<Forest> letters_;
    std::vector<int> letter_weights_;
    std::unordered_map<std::string, int> letter_index_;
    std::unordered_map<std::uint64_t, int> product_cache_;
    std::map<std::pair<int, int>, ChainBasisSlice> slices_;
    std::map<std::pair<int, int>, DifferentialMatrix> differentials_;
};

struct DSquaredReport {
    bool ok = false;
    int checked_products = 0;
    // first offending (w, n, basis word) when d^2 != 0
    std::optional<std::tuple<int, int, std::string>> offender;
};

DSquaredReport check_d_squared(Flavor flavor, int D, int max_w,
                               SignMutation mutation = SignMutation::None);
DSquaredReport check_d_squared(ChainEngine& engine, int max_w,
                               SignMutation mutation = SignMutation::None);

struct HomologyRow {
    int n = 0;
    long long ker = 0, im = 0, H = 0;
};

struct WeightHomology {
    int w = 0;
    std::vector<HomologyRow> rows;
};

struct HomologyReport {
    Flavor flavor = Flavor::Searrow;
    int D = 0;
    std::vector<WeightHomology> per_weight;
    long long H0_total = 0;
    long long max_higher_H = 0;
    bool modp_checked = false;
    bool modp_agrees = true;
};

// H_n = Ker(d on C_{n+1}) / Im(d on C_{n+2}), computed per weight.
// When crosscheck_mod_p is set every rational rank is recomputed over F_p
// and compared.
HomologyReport homology(Flavor flavor, int D, int max_w, bool crosscheck_mod_p = false);
HomologyReport homology(Flavor flavor, const std::vector<Decoration>& decorations, int max_w,
                        bool crosscheck_mod_p = false);
HomologyReport homology(ChainEngine& engine, int max_w, bool crosscheck_mod_p = false);
std::string to_json(const HomologyReport& r);

// Independent route to H_0: dim A_w minus the dimension of the span of all
// products x.y and x (arrow) y, per weight.
std::vector<long long> h0_quotient_dims(Flavor flavor, int D, int max_w);

enum class SubcomplexKind { M, Arrow };

struct HochschildRow {
    int degree = 0;  // word length
    long long ker = 0, im = 0, H = 0;
};

struct HochschildWeight {
    int w = 0;
    std::vector<HochschildRow> rows;
    long long generators = 0;  // homology in degree 1
    long long census = 0;      // independent free-generator count
};

struct HochschildReport {
    Flavor flavor = Flavor::Searrow;
    SubcomplexKind which = SubcomplexKind::M;
    int D = 0;
    std::vector<HochschildWeight> per_weight;
    bool concentrated_in_degree_1 = false;
    bool census_matches = false;
};

// Restriction of the complex to point-first words (M, both flavors) or to
// fully barred words (Arrow, nearrow only). Homology is indexed by word
// length; free algebras concentrate it in degree 1.
HochschildReport hochschild_subcomplex(Flavor flavor, SubcomplexKind which, int D, int max_w);
std::string to_json(const HochschildReport& r);

struct CoderivationReport {
    bool ok = false;
    int checked_words = 0;
    std::string offender;  // word text when a side mismatch is found
};

// Symbolic check of the sign-twisted co-Leibniz rule
//   Delta(d x) = (d (x) Id + theta (x) d)(Delta x)
// for both coproducts, over formal letters with formal products; theta
// negates components of odd word length.
CoderivationReport check_coderivation(Flavor flavor, int max_n, int alphabet_size);

}  // namespace fop
