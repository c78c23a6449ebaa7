#include "fop/homology.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include <json.hpp>

#include "fop/words.hpp"

namespace fop {

std::size_t ChainWordHash::operator()(const ChainWord& w) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(static_cast<std::size_t>(w.mark));
    for (int l : w.letters) mix(static_cast<std::size_t>(l));
    return h;
}

int ChainBasisSlice::index_of(const ChainWord& word) const {
    auto it = index.find(word);
    return it == index.end() ? -1 : it->second;
}

ChainEngine::ChainEngine(Flavor flavor, std::vector<Decoration> decorations)
    : flavor_(flavor), decorations_(std::move(decorations)) {
    if (decorations_.empty()) throw std::invalid_argument("ChainEngine: no decorations");
    by_weight_.resize(1);
}

void ChainEngine::ensure_weight(int w) {
    for (int v = static_cast<int>(by_weight_.size()); v <= w; ++v) {
        std::vector<Forest> forests = enumerate_forests(v, decorations_);
        for (const Forest& f : forests) {
            int id = static_cast<int>(letters_.size());
            letters_.push_back(f);
            letter_weights_.push_back(v);
            letter_index_.emplace(format_forest(f), id);
        }
        by_weight_.push_back(std::move(forests));
    }
}

const std::vector<Forest>& ChainEngine::forests_of_weight(int w) {
    if (w < 1) throw std::invalid_argument("forests_of_weight: weight must be >= 1");
    ensure_weight(w);
    return by_weight_[static_cast<std::size_t>(w)];
}

int ChainEngine::letter_id(const Forest& f) {
    ensure_weight(weight(f));
    auto it = letter_index_.find(format_forest(f));
    if (it == letter_index_.end()) throw std::logic_error("ChainEngine: forest not interned");
    return it->second;
}

int ChainEngine::product_m(int a, int b) {
    std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 33) |
                        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(b)) << 1);
    auto it = product_cache_.find(key);
    if (it != product_cache_.end()) return it->second;
    int id = letter_id(concat(letter(a), letter(b)));
    product_cache_.emplace(key, id);
    return id;
}

int ChainEngine::product_arrow(int a, int b) {
    std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 33) |
                        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(b)) << 1) | 1u;
    auto it = product_cache_.find(key);
    if (it != product_cache_.end()) return it->second;
    const Forest prod = flavor_ == Flavor::Searrow ? graft_root(letter(a), letter(b))
                                                   : graft_left_leaf(letter(a), letter(b));
    int id = letter_id(prod);
    product_cache_.emplace(key, id);
    return id;
}

const ChainBasisSlice& ChainEngine::slice(int n, int w) {
    auto key = std::make_pair(n, w);
    auto it = slices_.find(key);
    if (it != slices_.end()) return it->second;

    ChainBasisSlice s;
    s.flavor = flavor_;
    s.n = n;
    s.w = w;
    if (n >= 1 && w >= n) {
        ensure_weight(w);
        // mark-major enumeration: the k-filtration appears as contiguous
        // index blocks.
        std::vector<int> comp(static_cast<std::size_t>(n), 1);
        for (int mark = 0; mark < n; ++mark) {
            std::function<void(int, int, ChainWord&)> rec = [&](int pos, int remaining,
                                                                ChainWord& word) {
                if (pos == n) {
                    if (remaining == 0) {
                        int idx = static_cast<int>(s.words.size());
                        s.words.push_back(word);
                        s.index.emplace(word, idx);
                    }
                    return;
                }
                const int slots_left = n - pos - 1;
                for (int wt = 1; wt + slots_left <= remaining; ++wt) {
                    for (const Forest& f : by_weight_[static_cast<std::size_t>(wt)]) {
                        word.letters.push_back(letter_index_.at(format_forest(f)));
                        rec(pos + 1, remaining - wt, word);
                        word.letters.pop_back();
                    }
                }
            };
            ChainWord word;
            word.mark = flavor_ == Flavor::Searrow ? mark + 1 : mark;
            rec(0, w, word);
        }
        (void)comp;
    }
    return slices_.emplace(key, std::move(s)).first->second;
}

namespace {

// Shared description of the differential: one term per junction. kind
// selects the product (m or arrow); new_mark is the resulting point/bar
// mark. Signs follow the displayed sums: (-1)^(i-1) through the whole word
// with the arrow merge at the point carrying (-1)^(k-2).
struct DTerm {
    int junction = 0;  // 1-based: merges letters junction, junction+1
    bool use_arrow = false;
    int new_mark = 0;
    int sign = 1;
};

std::vector<DTerm> differential_terms(Flavor flavor, int n, int mark, SignMutation mu) {
    std::vector<DTerm> out;
    if (n < 2) return out;
    auto flip = [](int s) { return -s; };
    if (flavor == Flavor::Searrow) {
        const int k = mark;  // 1-based point
        for (int i = 1; i <= n - 1; ++i) {
            DTerm t;
            t.junction = i;
            t.sign = (i % 2 == 1) ? 1 : -1;  // (-1)^(i-1)
            if (i < k - 1) {
                t.use_arrow = false;
                t.new_mark = k - 1;
                if (mu == SignMutation::SeFlipPreM) t.sign = flip(t.sign);
            } else if (i == k - 1) {
                t.use_arrow = true;
                t.new_mark = k - 1;
                if (mu == SignMutation::SeFlipArrow) t.sign = flip(t.sign);
            } else if (i == k) {
                t.use_arrow = false;
                t.new_mark = k;
                if (mu == SignMutation::SeFlipMAtPoint) t.sign = flip(t.sign);
            } else {
                t.use_arrow = false;
                t.new_mark = k;
                if (mu == SignMutation::SeFlipPostM) t.sign = flip(t.sign);
            }
            out.push_back(t);
        }
    } else {
        const int bars = mark;
        const int k = bars + 1;
        for (int i = 1; i <= n - 1; ++i) {
            DTerm t;
            t.junction = i;
            t.sign = (i % 2 == 1) ? 1 : -1;
            if (i <= bars) {
                t.use_arrow = true;
                t.new_mark = bars - 1;
                if (mu == SignMutation::NeFlipArrowSum) t.sign = flip(t.sign);
            } else {
                t.use_arrow = false;
                t.new_mark = bars;
                if (mu == SignMutation::NeFlipPlainSum) t.sign = flip(t.sign);
                if (mu == SignMutation::NeRestartParity) t.sign = ((i - k) % 2 == 0) ? 1 : -1;
            }
            out.push_back(t);
        }
    }
    return out;
}

}  // namespace

DifferentialMatrix ChainEngine::differential(int n, int w, SignMutation mutation) {
    const ChainBasisSlice& src = slice(n, w);
    const ChainBasisSlice& tgt = slice(n - 1, w);
    DifferentialMatrix d;
    d.source = &src;
    d.target = &tgt;
    d.matrix = SparseMatrix(tgt.size(), src.size());
    for (int col = 0; col < src.size(); ++col) {
        const ChainWord& word = src.words[static_cast<std::size_t>(col)];
        for (const DTerm& t : differential_terms(flavor_, n, word.mark, mutation)) {
            ChainWord image;
            image.mark = t.new_mark;
            image.letters.reserve(word.letters.size() - 1);
            for (int j = 0; j < t.junction - 1; ++j)
                image.letters.push_back(word.letters[static_cast<std::size_t>(j)]);
            int a = word.letters[static_cast<std::size_t>(t.junction - 1)];
            int b = word.letters[static_cast<std::size_t>(t.junction)];
            image.letters.push_back(t.use_arrow ? product_arrow(a, b) : product_m(a, b));
            for (int j = t.junction + 1; j < n; ++j)
                image.letters.push_back(word.letters[static_cast<std::size_t>(j)]);
            int row = tgt.index_of(image);
            if (row < 0) throw std::logic_error("differential: image word not in target slice");
            d.matrix.add(row, col, Rational(t.sign));
        }
    }
    d.matrix.finalize();
    return d;
}

const DifferentialMatrix& ChainEngine::differential(int n, int w) {
    auto key = std::make_pair(n, w);
    auto it = differentials_.find(key);
    if (it != differentials_.end()) return it->second;
    DifferentialMatrix d = differential(n, w, SignMutation::None);
    return differentials_.emplace(key, std::move(d)).first->second;
}

std::string ChainEngine::word_text(const ChainWord& word) const {
    std::vector<std::string> ls;
    ls.reserve(word.letters.size());
    for (int id : word.letters) ls.push_back(format_forest(letter(id)));
    if (flavor_ == Flavor::Searrow) return format_word(PointedWord(std::move(ls), word.mark));
    return format_word(BarredWord(std::move(ls), word.mark));
}

namespace {

std::vector<Decoration> auto_decorations(int D) {
    if (D < 1) throw std::invalid_argument("decoration count must be >= 1");
    std::vector<Decoration> ds;
    ds.reserve(static_cast<std::size_t>(D));
    if (D == 1) {
        ds.emplace_back("x");
    } else {
        for (int i = 1; i <= D; ++i) ds.emplace_back("x" + std::to_string(i));
    }
    return ds;
}

}  // namespace

DSquaredReport check_d_squared(Flavor flavor, int D, int max_w, SignMutation mutation) {
    ChainEngine engine(flavor, auto_decorations(D));
    return check_d_squared(engine, max_w, mutation);
}

DSquaredReport check_d_squared(ChainEngine& engine, int max_w, SignMutation mutation) {
    DSquaredReport rep;
    rep.ok = true;
    for (int w = 1; w <= max_w; ++w) {
        for (int n = 3; n <= w; ++n) {
            DifferentialMatrix dn = engine.differential(n, w, mutation);
            DifferentialMatrix dn1 = engine.differential(n - 1, w, mutation);
            SparseMatrix square = dn1.matrix.multiply(dn.matrix);
            ++rep.checked_products;
            if (!square.is_zero()) {
                rep.ok = false;
                // name the first source word with a nonzero d^2 image
                for (int c = 0; c < square.cols(); ++c) {
                    if (!square.column(c).empty()) {
                        rep.offender = {w, n,
                                        engine.word_text(dn.source->words[static_cast<std::size_t>(c)])};
                        break;
                    }
                }
                return rep;
            }
        }
    }
    return rep;
}

HomologyReport homology(Flavor flavor, int D, int max_w, bool crosscheck_mod_p) {
    HomologyReport rep = homology(flavor, auto_decorations(D), max_w, crosscheck_mod_p);
    rep.D = D;
    return rep;
}

HomologyReport homology(Flavor flavor, const std::vector<Decoration>& decorations, int max_w,
                        bool crosscheck_mod_p) {
    ChainEngine engine(flavor, decorations);
    return homology(engine, max_w, crosscheck_mod_p);
}

HomologyReport homology(ChainEngine& engine, int max_w, bool crosscheck_mod_p) {
    if (max_w < 1) throw std::invalid_argument("homology: max_w must be >= 1");
    HomologyReport rep;
    rep.flavor = engine.flavor();
    rep.D = engine.alphabet_size();
    rep.modp_checked = crosscheck_mod_p;
    for (int w = 1; w <= max_w; ++w) {
        WeightHomology wh;
        wh.w = w;
        std::vector<long long> dims(static_cast<std::size_t>(w) + 2, 0);
        std::vector<long long> ranks(static_cast<std::size_t>(w) + 2, 0);
        for (int n = 1; n <= w; ++n) dims[static_cast<std::size_t>(n)] = engine.slice(n, w).size();
        for (int n = 2; n <= w; ++n) {
            const DifferentialMatrix& d = engine.differential(n, w);
            int r = d.matrix.rank();
            if (crosscheck_mod_p && rank_mod_p(d.matrix) != r) rep.modp_agrees = false;
            ranks[static_cast<std::size_t>(n)] = r;
        }
        for (int n = 0; n + 1 <= w; ++n) {
            HomologyRow row;
            row.n = n;
            row.ker = dims[static_cast<std::size_t>(n) + 1] - ranks[static_cast<std::size_t>(n) + 1];
            row.im = (n + 2 <= w) ? ranks[static_cast<std::size_t>(n) + 2] : 0;
            row.H = row.ker - row.im;
            if (n == 0) rep.H0_total += row.H;
            if (n >= 1) rep.max_higher_H = std::max(rep.max_higher_H, row.H);
            wh.rows.push_back(row);
        }
        rep.per_weight.push_back(std::move(wh));
    }
    return rep;
}

std::string to_json(const HomologyReport& r) {
    nlohmann::json j;
    j["flavor"] = flavor_name(r.flavor);
    j["D"] = r.D;
    nlohmann::json pw = nlohmann::json::array();
    for (const auto& wh : r.per_weight) {
        nlohmann::json dims = nlohmann::json::array();
        for (const auto& row : wh.rows) {
            dims.push_back({{"n", row.n}, {"ker", row.ker}, {"im", row.im}, {"H", row.H}});
        }
        pw.push_back({{"w", wh.w}, {"dims", dims}});
    }
    j["per_weight"] = pw;
    j["H0_total"] = r.H0_total;
    j["max_higher_H"] = r.max_higher_H;
    if (r.modp_checked) j["modp_agrees"] = r.modp_agrees;
    return j.dump();
}

std::vector<long long> h0_quotient_dims(Flavor flavor, int D, int max_w) {
    ChainEngine engine(flavor, auto_decorations(D));
    std::vector<long long> out;
    for (int w = 1; w <= max_w; ++w) {
        const auto& basis_w = engine.forests_of_weight(w);
        std::vector<std::string> keys;
        keys.reserve(basis_w.size());
        for (const Forest& f : basis_w) keys.push_back(format_forest(f));
        Basis basis(std::move(keys));
        std::vector<SparseVector> products;
        for (int i = 1; i <= w - 1; ++i) {
            for (const Forest& f : engine.forests_of_weight(i)) {
                for (const Forest& g : engine.forests_of_weight(w - i)) {
                    for (const Forest& p :
                         {concat(f, g), flavor == Flavor::Searrow ? graft_root(f, g)
                                                                  : graft_left_leaf(f, g)}) {
                        SparseVector v;
                        v.basis = &basis;
                        v.add(basis.index_of(format_forest(p)), 1);
                        products.push_back(std::move(v));
                    }
                }
            }
        }
        long long span = products.empty() ? 0 : span_dim(products);
        out.push_back(static_cast<long long>(basis_w.size()) - span);
    }
    return out;
}

HochschildReport hochschild_subcomplex(Flavor flavor, SubcomplexKind which, int D, int max_w) {
    if (which == SubcomplexKind::Arrow && flavor != Flavor::Nearrow)
        throw std::invalid_argument(
            "hochschild_subcomplex: the arrow subcomplex exists for the nearrow flavor only");
    ChainEngine engine(flavor, auto_decorations(D));
    HochschildReport rep;
    rep.flavor = flavor;
    rep.which = which;
    rep.D = D;
    rep.concentrated_in_degree_1 = true;
    rep.census_matches = true;

    auto in_subcomplex = [&](const ChainWord& word, int n) {
        if (which == SubcomplexKind::M)
            return flavor == Flavor::Searrow ? word.mark == 1 : word.mark == 0;
        return word.mark == n - 1;  // fully barred
    };

    for (int w = 1; w <= max_w; ++w) {
        // sub-bases per length, as index lists into the full slices
        std::vector<std::vector<ChainWord>> sub(static_cast<std::size_t>(w) + 2);
        std::vector<std::unordered_map<ChainWord, int, ChainWordHash>> sub_index(
            static_cast<std::size_t>(w) + 2);
        for (int n = 1; n <= w; ++n) {
            for (const ChainWord& word : engine.slice(n, w).words) {
                if (in_subcomplex(word, n)) {
                    sub_index[static_cast<std::size_t>(n)].emplace(
                        word, static_cast<int>(sub[static_cast<std::size_t>(n)].size()));
                    sub[static_cast<std::size_t>(n)].push_back(word);
                }
            }
        }
        std::vector<long long> ranks(static_cast<std::size_t>(w) + 2, 0);
        for (int n = 2; n <= w; ++n) {
            const auto& src = sub[static_cast<std::size_t>(n)];
            const auto& tgt_index = sub_index[static_cast<std::size_t>(n) - 1];
            SparseMatrix m(static_cast<int>(sub[static_cast<std::size_t>(n) - 1].size()),
                           static_cast<int>(src.size()));
            for (int col = 0; col < static_cast<int>(src.size()); ++col) {
                const ChainWord& word = src[static_cast<std::size_t>(col)];
                for (const DTerm& t :
                     differential_terms(flavor, n, word.mark, SignMutation::None)) {
                    ChainWord image;
                    image.mark = t.new_mark;
                    for (int j = 0; j < t.junction - 1; ++j)
                        image.letters.push_back(word.letters[static_cast<std::size_t>(j)]);
                    int a = word.letters[static_cast<std::size_t>(t.junction - 1)];
                    int b = word.letters[static_cast<std::size_t>(t.junction)];
                    image.letters.push_back(t.use_arrow ? engine.product_arrow(a, b)
                                                        : engine.product_m(a, b));
                    for (int j = t.junction + 1; j < n; ++j)
                        image.letters.push_back(word.letters[static_cast<std::size_t>(j)]);
                    auto it = tgt_index.find(image);
                    if (it == tgt_index.end())
                        throw std::logic_error("hochschild: differential leaves the subcomplex");
                    m.add(it->second, col, Rational(t.sign));
                }
            }
            m.finalize();
            ranks[static_cast<std::size_t>(n)] = m.rank();
        }

        HochschildWeight hw;
        hw.w = w;
        for (int n = 1; n <= w; ++n) {
            HochschildRow row;
            row.degree = n;
            row.ker = static_cast<long long>(sub[static_cast<std::size_t>(n)].size()) -
                      ranks[static_cast<std::size_t>(n)];
            row.im = (n + 1 <= w) ? ranks[static_cast<std::size_t>(n) + 1] : 0;
            row.H = row.ker - row.im;
            if (n == 1) hw.generators = row.H;
            if (n >= 2 && row.H != 0) rep.concentrated_in_degree_1 = false;
            hw.rows.push_back(row);
        }
        // Independent census of the free generators: forests that are not
        // proper products. For m that means a single tree; for the arrow
        // product, a one-factor left-comb factorization.
        for (const Forest& f : engine.forests_of_weight(w)) {
            bool generator = which == SubcomplexKind::M
                                 ? f.tree_count() == 1
                                 : factorize_left_comb(f).factors.size() == 1;
            if (generator) ++hw.census;
        }
        if (hw.generators != hw.census) rep.census_matches = false;
        rep.per_weight.push_back(std::move(hw));
    }
    return rep;
}

std::string to_json(const HochschildReport& r) {
    nlohmann::json j;
    j["flavor"] = flavor_name(r.flavor);
    j["which"] = r.which == SubcomplexKind::M ? "m" : "arrow";
    j["D"] = r.D;
    nlohmann::json pw = nlohmann::json::array();
    for (const auto& hw : r.per_weight) {
        nlohmann::json dims = nlohmann::json::array();
        for (const auto& row : hw.rows) {
            dims.push_back(
                {{"degree", row.degree}, {"ker", row.ker}, {"im", row.im}, {"H", row.H}});
        }
        pw.push_back({{"w", hw.w},
                      {"dims", dims},
                      {"generators", hw.generators},
                      {"census", hw.census}});
    }
    j["per_weight"] = pw;
    j["concentrated_in_degree_1"] = r.concentrated_in_degree_1;
    j["census_matches"] = r.census_matches;
    return j.dump();
}

namespace {

// Symbolic side of the coderivation check: letters are formal strings and a
// merged pair becomes the formal product "m(x,y)" or "g(x,y)". Both sides of
// the co-Leibniz rule only ever apply d once, so no algebra relations are
// needed.
std::string formal_product(bool use_arrow, const std::string& a, const std::string& b) {
    return (use_arrow ? std::string("g(") : std::string("m(")) + a + "," + b + ")";
}

template <typename Word>
Word make_word(Flavor flavor, const std::vector<std::string>& letters, int mark);

template <>
PointedWord make_word<PointedWord>(Flavor, const std::vector<std::string>& letters, int mark) {
    return PointedWord(letters, mark);
}

template <>
BarredWord make_word<BarredWord>(Flavor, const std::vector<std::string>& letters, int mark) {
    return BarredWord(letters, mark);
}

template <typename Word>
int word_mark(const Word& w);

template <>
int word_mark<PointedWord>(const PointedWord& w) {
    return w.point;
}

template <>
int word_mark<BarredWord>(const BarredWord& w) {
    return w.bar_count;
}

template <typename Word>
LinComb<Word> symbolic_d(Flavor flavor, const Word& v) {
    LinComb<Word> out;
    const int n = v.length();
    for (const DTerm& t : differential_terms(flavor, n, word_mark(v), SignMutation::None)) {
        std::vector<std::string> letters;
        letters.reserve(static_cast<std::size_t>(n) - 1);
        for (int j = 0; j < t.junction - 1; ++j)
            letters.push_back(v.letters[static_cast<std::size_t>(j)]);
        letters.push_back(formal_product(t.use_arrow, v.letters[static_cast<std::size_t>(t.junction - 1)],
                                         v.letters[static_cast<std::size_t>(t.junction)]));
        for (int j = t.junction + 1; j < n; ++j)
            letters.push_back(v.letters[static_cast<std::size_t>(j)]);
        out.add(make_word<Word>(flavor, letters, t.new_mark), Rational(t.sign));
    }
    return out;
}

template <typename Word, typename Coproduct>
bool coderivation_holds(Flavor flavor, const Word& x, Coproduct cop) {
    using Pair = std::pair<Word, Word>;
    LinComb<Pair> lhs;
    const LinComb<Word> dx = symbolic_d(flavor, x);
    for (const auto& [w, c] : dx.terms()) {
        for (const auto& [l, r] : cop(w)) lhs.add(Pair(l, r), c);
    }
    LinComb<Pair> rhs;
    for (const auto& [l, r] : cop(x)) {
        const LinComb<Word> dl_comb = symbolic_d(flavor, l);
        for (const auto& [dl, c] : dl_comb.terms()) rhs.add(Pair(dl, r), c);
        const Rational theta = (l.length() % 2 == 1) ? Rational(-1) : Rational(1);
        const LinComb<Word> dr_comb = symbolic_d(flavor, r);
        for (const auto& [dr, c] : dr_comb.terms()) rhs.add(Pair(l, dr), theta * c);
    }
    return lhs == rhs;
}

template <typename Word>
bool check_words(Flavor flavor, int max_n, int alphabet_size, CoderivationReport& rep) {
    std::vector<std::string> alphabet;
    for (int i = 0; i < alphabet_size; ++i) alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
    for (int n = 1; n <= max_n; ++n) {
        std::vector<int> choice(static_cast<std::size_t>(n), 0);
        while (true) {
            std::vector<std::string> letters;
            for (int c : choice) letters.push_back(alphabet[static_cast<std::size_t>(c)]);
            const int marks = n;
            for (int m = 0; m < marks; ++m) {
                int mark = std::is_same_v<Word, PointedWord> ? m + 1 : m;
                Word x = make_word<Word>(flavor, letters, mark);
                ++rep.checked_words;
                bool ok_m = coderivation_holds(flavor, x,
                                               [](const Word& w) { return coproduct_m(w); });
                bool ok_a = coderivation_holds(flavor, x,
                                               [](const Word& w) { return coproduct_arrow(w); });
                if (!ok_m || !ok_a) {
                    rep.offender = format_word(x);
                    return false;
                }
            }
            int pos = n - 1;
            while (pos >= 0 && choice[static_cast<std::size_t>(pos)] == alphabet_size - 1) {
                choice[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++choice[static_cast<std::size_t>(pos)];
        }
    }
    return true;
}

}  // namespace

CoderivationReport check_coderivation(Flavor flavor, int max_n, int alphabet_size) {
    CoderivationReport rep;
    if (flavor == Flavor::Searrow) {
        rep.ok = check_words<PointedWord>(flavor, max_n, alphabet_size, rep);
    } else {
        rep.ok = check_words<BarredWord>(flavor, max_n, alphabet_size, rep);
    }
    return rep;
}

}  // namespace fop
