#include "fop/operad.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include <json.hpp>

namespace fop {

std::string flavor_name(Flavor f) { return f == Flavor::Searrow ? "searrow" : "nearrow"; }

struct OperadTerm::Node {
    Gen label;
    OperadTerm left, right;
    int arity;
};

OperadTerm OperadTerm::leaf() { return OperadTerm{}; }

OperadTerm OperadTerm::node(Gen g, const OperadTerm& left, const OperadTerm& right) {
    OperadTerm t;
    t.node_ = std::make_shared<const Node>(Node{g, left, right, left.arity() + right.arity()});
    return t;
}

int OperadTerm::arity() const { return node_ ? node_->arity : 1; }

Gen OperadTerm::label() const {
    if (!node_) throw std::logic_error("OperadTerm: leaf has no label");
    return node_->label;
}

const OperadTerm& OperadTerm::left() const {
    if (!node_) throw std::logic_error("OperadTerm: leaf has no children");
    return node_->left;
}

const OperadTerm& OperadTerm::right() const {
    if (!node_) throw std::logic_error("OperadTerm: leaf has no children");
    return node_->right;
}

std::string OperadTerm::encode() const {
    if (is_leaf()) return ".";
    std::string s(1, label() == Gen::M ? 'm' : 'a');
    s += '(';
    s += left().encode();
    s += ',';
    s += right().encode();
    s += ')';
    return s;
}

OperadTerm OperadTerm::graft(int leaf_index, const OperadTerm& sub) const {
    if (leaf_index < 1 || leaf_index > arity())
        throw std::out_of_range("OperadTerm::graft: leaf index out of range");
    if (is_leaf()) return sub;
    int la = left().arity();
    if (leaf_index <= la) return node(label(), left().graft(leaf_index, sub), right());
    return node(label(), left(), right().graft(leaf_index - la, sub));
}

bool OperadTerm::operator==(const OperadTerm& o) const {
    if (node_ == o.node_) return true;
    if (!node_ || !o.node_) return false;
    return node_->label == o.node_->label && node_->left == o.node_->left &&
           node_->right == o.node_->right;
}

namespace {

std::vector<std::vector<OperadTerm>> g_free_bases;  // index = arity
std::vector<std::unique_ptr<Basis>> g_free_keys;
std::mutex g_basis_mutex;

void ensure_free_basis(int n) {
    if (n < 1) throw std::invalid_argument("free_basis: arity must be >= 1");
    std::lock_guard<std::mutex> lock(g_basis_mutex);
    if (static_cast<int>(g_free_bases.size()) > n && !g_free_bases[static_cast<std::size_t>(n)].empty())
        return;
    if (g_free_bases.empty()) {
        g_free_bases.resize(2);
        g_free_bases[1] = {OperadTerm::leaf()};
        g_free_keys.resize(2);
        g_free_keys[1] = std::make_unique<Basis>(std::vector<std::string>{"."});
    }
    for (int k = static_cast<int>(g_free_bases.size()); k <= n; ++k) {
        std::vector<OperadTerm> terms;
        for (Gen g : {Gen::M, Gen::Arrow}) {
            for (int i = 1; i <= k - 1; ++i) {
                for (const OperadTerm& l : g_free_bases[static_cast<std::size_t>(i)]) {
                    for (const OperadTerm& r : g_free_bases[static_cast<std::size_t>(k - i)]) {
                        terms.push_back(OperadTerm::node(g, l, r));
                    }
                }
            }
        }
        std::vector<std::string> keys;
        keys.reserve(terms.size());
        for (const OperadTerm& t : terms) keys.push_back(t.encode());
        g_free_bases.push_back(std::move(terms));
        g_free_keys.push_back(std::make_unique<Basis>(std::move(keys)));
    }
}

}  // namespace

const std::vector<OperadTerm>& free_basis(int n) {
    ensure_free_basis(n);
    return g_free_bases[static_cast<std::size_t>(n)];
}

const Basis& free_basis_keys(int n) {
    ensure_free_basis(n);
    return *g_free_keys[static_cast<std::size_t>(n)];
}

namespace {

OperadTerm comb_left(Gen outer, Gen inner) {
    // outer(inner(1,2),3)
    return OperadTerm::node(outer, OperadTerm::node(inner, OperadTerm::leaf(), OperadTerm::leaf()),
                            OperadTerm::leaf());
}

OperadTerm comb_right(Gen outer, Gen inner) {
    // outer(1,inner(2,3))
    return OperadTerm::node(outer, OperadTerm::leaf(),
                            OperadTerm::node(inner, OperadTerm::leaf(), OperadTerm::leaf()));
}

Relation difference(const OperadTerm& a, const OperadTerm& b) {
    return Relation{{{Rational(1), a}, {Rational(-1), b}}};
}

Relation vanishing(const OperadTerm& a) { return Relation{{{Rational(1), a}}}; }

Presentation make_presentation(Flavor f, bool dual) {
    const Gen A = Gen::Arrow;
    const Gen M = Gen::M;
    Presentation p;
    p.flavor = f;
    p.dual = dual;
    p.name = flavor_name(f) + (dual ? "-dual" : "");
    if (f == Flavor::Searrow && !dual) {
        p.relations = {
            difference(comb_left(A, M), comb_right(A, A)),   // s(m,I) = s(I,s)
            difference(comb_right(A, M), comb_left(M, A)),   // s(I,m) = m(s,I)
            difference(comb_left(M, M), comb_right(M, M)),   // m(m,I) = m(I,m)
        };
    } else if (f == Flavor::Nearrow && !dual) {
        p.relations = {
            difference(comb_left(A, A), comb_right(A, A)),   // n(n,I) = n(I,n)
            difference(comb_right(A, M), comb_left(M, A)),   // n(I,m) = m(n,I)
            difference(comb_left(M, M), comb_right(M, M)),   // m(m,I) = m(I,m)
        };
    } else if (f == Flavor::Searrow && dual) {
        p.relations = {
            difference(comb_left(A, M), comb_right(A, A)),   // s(m,I) = s(I,s)
            difference(comb_left(M, M), comb_right(M, M)),   // m(m,I) = m(I,m)
            difference(comb_left(M, A), comb_right(A, M)),   // m(s,I) = s(I,m)
            vanishing(comb_left(A, A)),                      // s(s,I) = 0
            vanishing(comb_right(M, A)),                     // m(I,s) = 0
        };
    } else {
        p.relations = {
            difference(comb_left(A, A), comb_right(A, A)),   // n(n,I) = n(I,n)
            difference(comb_left(M, M), comb_right(M, M)),   // m(m,I) = m(I,m)
            difference(comb_left(M, A), comb_right(A, M)),   // m(n,I) = n(I,m)
            vanishing(comb_left(A, M)),                      // n(m,I) = 0
            vanishing(comb_right(M, A)),                     // m(I,n) = 0
        };
    }
    return p;
}

}  // namespace

const Presentation& presentation(Flavor f, bool dual) {
    static const Presentation se = make_presentation(Flavor::Searrow, false);
    static const Presentation ne = make_presentation(Flavor::Nearrow, false);
    static const Presentation sed = make_presentation(Flavor::Searrow, true);
    static const Presentation ned = make_presentation(Flavor::Nearrow, true);
    if (f == Flavor::Searrow) return dual ? sed : se;
    return dual ? ned : ne;
}

namespace {

SparseVector relation_vector(const Relation& r, const Basis& keys,
                             const OperadTerm& outer, int leaf_index,
                             const std::vector<OperadTerm>& subs) {
    SparseVector v;
    v.basis = &keys;
    for (const auto& [coeff, term] : r.terms) {
        OperadTerm inner = term;
        // compose the arity-3 relation term with subs at its three inputs,
        // right to left so leaf positions stay valid
        for (int j = 2; j >= 0; --j) {
            inner = inner.graft(j + 1, subs[static_cast<std::size_t>(j)]);
        }
        OperadTerm full = outer.graft(leaf_index, inner);
        v.add(keys.index_of(full.encode()), coeff);
    }
    v.normalize();
    return v;
}

}  // namespace

ArityIdeal ideal_slice(const Presentation& p, int n) {
    if (n < 3) throw std::invalid_argument("ideal_slice: arity must be >= 3");
    ArityIdeal ideal;
    ideal.arity = n;
    ideal.basis = &free_basis_keys(n);

    // Every element of the ideal slice is an outer context grafted over a
    // relation whose three inputs carry inner contexts: enumerate them all.
    for (int outer_arity = 1; outer_arity <= n - 2; ++outer_arity) {
        const int inner_total = n + 1 - outer_arity;  // b1+b2+b3
        for (const OperadTerm& outer : free_basis(outer_arity)) {
            for (int leaf = 1; leaf <= outer_arity; ++leaf) {
                for (int b1 = 1; b1 <= inner_total - 2; ++b1) {
                    for (int b2 = 1; b2 <= inner_total - b1 - 1; ++b2) {
                        const int b3 = inner_total - b1 - b2;
                        for (const OperadTerm& v1 : free_basis(b1)) {
                            for (const OperadTerm& v2 : free_basis(b2)) {
                                for (const OperadTerm& v3 : free_basis(b3)) {
                                    std::vector<OperadTerm> subs{v1, v2, v3};
                                    for (const Relation& r : p.relations) {
                                        SparseVector v = relation_vector(
                                            r, *ideal.basis, outer, leaf, subs);
                                        if (!v.is_zero()) {
                                            if (ideal.reduced.insert(v)) ideal.spanning.push_back(std::move(v));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    ideal.dim = ideal.reduced.dim();
    return ideal;
}

DimensionTable quotient_dims(const Presentation& p, int max_arity) {
    if (max_arity < 2) throw std::invalid_argument("quotient_dims: max_arity must be >= 2");
    DimensionTable table;
    table.flavor = p.name;
    BigInt factorial = 1;
    for (int n = 1; n <= max_arity; ++n) {
        long long free_dim = static_cast<long long>(free_basis(n).size());
        long long ideal_dim = n >= 3 ? ideal_slice(p, n).dim : 0;
        long long dim = free_dim - ideal_dim;
        factorial *= n;
        table.nonsigma.push_back(dim);
        table.sigma.push_back(factorial * dim);
    }
    return table;
}

namespace {

enum class CombKind { Left, Right, Other };

CombKind comb_kind(const OperadTerm& t) {
    if (t.is_leaf() || t.arity() != 3) return CombKind::Other;
    if (!t.left().is_leaf() && t.right().is_leaf()) return CombKind::Left;
    if (t.left().is_leaf() && !t.right().is_leaf()) return CombKind::Right;
    return CombKind::Other;
}

}  // namespace

Rational pairing(const OperadTerm& a, const OperadTerm& b) {
    if (a.arity() != 3 || b.arity() != 3)
        throw std::invalid_argument("pairing: both terms must have arity 3");
    CombKind ka = comb_kind(a), kb = comb_kind(b);
    if (ka != kb) return 0;
    if (ka == CombKind::Left) {
        bool match = a.label() == b.label() && a.left().label() == b.left().label();
        return match ? 1 : 0;
    }
    bool match = a.label() == b.label() && a.right().label() == b.right().label();
    return match ? -1 : 0;
}

Rational pairing(const Relation& a, const Relation& b) {
    Rational sum = 0;
    for (const auto& [ca, ta] : a.terms) {
        for (const auto& [cb, tb] : b.terms) {
            sum += ca * cb * pairing(ta, tb);
        }
    }
    return sum;
}

DualityReport dual_annihilator_check(const Presentation& p, const Presentation& dual) {
    DualityReport rep;
    rep.primal_name = p.name;
    rep.dual_name = dual.name;
    const Basis& keys = free_basis_keys(3);
    rep.free_dim = keys.size();

    auto span_of = [&keys](const Presentation& pres) {
        std::vector<SparseVector> vecs;
        for (const Relation& r : pres.relations) {
            SparseVector v;
            v.basis = &keys;
            for (const auto& [c, t] : r.terms) v.add(keys.index_of(t.encode()), c);
            v.normalize();
            vecs.push_back(std::move(v));
        }
        return vecs;
    };
    rep.dim_primal = span_dim(span_of(p));
    rep.dim_dual = span_dim(span_of(dual));

    for (std::size_t i = 0; i < dual.relations.size(); ++i) {
        for (std::size_t j = 0; j < p.relations.size(); ++j) {
            Rational v = pairing(dual.relations[i], p.relations[j]);
            if (v != 0)
                rep.nonzero_pairings.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
        }
    }

    // Non-degeneracy of the pairing on the arity-3 space.
    const auto& basis3 = free_basis(3);
    SparseMatrix gram(rep.free_dim, rep.free_dim);
    for (int i = 0; i < rep.free_dim; ++i) {
        for (int j = 0; j < rep.free_dim; ++j) {
            gram.add(i, j, pairing(basis3[static_cast<std::size_t>(i)],
                                   basis3[static_cast<std::size_t>(j)]));
        }
    }
    gram.finalize();
    rep.gram_rank = gram.rank();

    rep.dims_ok = rep.dim_primal == 3 && rep.dim_dual == 5;
    rep.complete = rep.dim_primal + rep.dim_dual == rep.free_dim;
    rep.sigma_free = 6LL * rep.free_dim;      // 48
    rep.sigma_primal = 6LL * rep.dim_primal;  // 18
    rep.sigma_dual = 6LL * rep.dim_dual;      // 30
    rep.passed = rep.dims_ok && rep.complete && rep.nonzero_pairings.empty() &&
                 rep.gram_rank == rep.free_dim;
    return rep;
}

std::string to_json(const DualityReport& r) {
    nlohmann::json j;
    j["primal"] = r.primal_name;
    j["dual"] = r.dual_name;
    j["dim_R"] = r.dim_primal;
    j["dim_R_perp"] = r.dim_dual;
    j["free_dim"] = r.free_dim;
    j["complete"] = r.complete;
    j["gram_rank"] = r.gram_rank;
    j["sigma"] = {{"free", r.sigma_free}, {"R", r.sigma_primal}, {"R_perp", r.sigma_dual}};
    nlohmann::json bad = nlohmann::json::array();
    for (const auto& [i, k, v] : r.nonzero_pairings) {
        bad.push_back({{"dual_index", i}, {"primal_index", k}, {"value", rational_to_string(v)}});
    }
    j["nonzero_pairings"] = bad;
    j["passed"] = r.passed;
    return j.dump();
}

PoincareReport poincare_check(const std::vector<long long>& dims_p,
                              const std::vector<long long>& dims_dual, int order) {
    if (order < 1) throw std::invalid_argument("poincare_check: order must be >= 1");
    if (static_cast<int>(dims_p.size()) < order || static_cast<int>(dims_dual.size()) < order)
        throw std::invalid_argument("poincare_check: insufficient series length");

    // u(t) = -f(-t); coefficients of t^1..t^order.
    std::vector<Rational> u(static_cast<std::size_t>(order) + 1, Rational(0));
    for (int i = 1; i <= order; ++i) {
        Rational c(dims_p[static_cast<std::size_t>(i - 1)]);
        u[static_cast<std::size_t>(i)] = (i % 2 == 1) ? c : -c;
    }

    auto mul_trunc = [order](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        std::vector<Rational> out(static_cast<std::size_t>(order) + 1, Rational(0));
        for (int i = 0; i <= order; ++i) {
            if (a[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = 0; i + j <= order; ++j) {
                out[static_cast<std::size_t>(i + j)] +=
                    a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
            }
        }
        return out;
    };

    // g(u) by Horner on the reversed coefficient list.
    std::vector<Rational> acc(static_cast<std::size_t>(order) + 1, Rational(0));
    for (int i = order; i >= 1; --i) {
        acc = mul_trunc(acc, u);
        acc[0] += Rational(dims_dual[static_cast<std::size_t>(i - 1)]);
    }
    acc = mul_trunc(acc, u);  // g has no constant term

    PoincareReport rep;
    rep.order = order;
    for (int i = 1; i <= order; ++i) {
        Rational residual = acc[static_cast<std::size_t>(i)] - (i == 1 ? Rational(1) : Rational(0));
        rep.residual.push_back(residual);
        if (residual != 0 && rep.first_failure < 0) rep.first_failure = i;
    }
    rep.ok = rep.first_failure < 0;
    return rep;
}

}  // namespace fop
