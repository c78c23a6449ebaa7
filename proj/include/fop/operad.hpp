#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fop/linalg.hpp"
#include "fop/rational.hpp"

namespace fop {

enum class Gen : unsigned char { M, Arrow };
enum class Flavor { Searrow, Nearrow };

std::string flavor_name(Flavor f);

// Element of the free non-sigma operad on two binary generators: a planar
// binary tree whose internal nodes carry m or the arrow. Leaves are the
// inputs 1..n in planar order. Immutable, shared structure.
class OperadTerm {
public:
    static OperadTerm leaf();
    static OperadTerm node(Gen g, const OperadTerm& left, const OperadTerm& right);

    bool is_leaf() const { return node_ == nullptr; }
    int arity() const;
    Gen label() const;
    const OperadTerm& left() const;
    const OperadTerm& right() const;

    // Canonical text, e.g. "m(.,a(.,.))"; a = arrow, '.' = input slot.
    std::string encode() const;

    // Substitutes `sub` for the leaf at 1-based position `leaf_index`.
    OperadTerm graft(int leaf_index, const OperadTerm& sub) const;

    bool operator==(const OperadTerm& o) const;

private:
    struct Node;
    std::shared_ptr<const Node> node_;
};

// All Catalan(n-1) * 2^(n-1) labeled shapes of arity n, in a deterministic
// order (outer label m before arrow, then by split position, then
// recursively). Cached.
const std::vector<OperadTerm>& free_basis(int n);
const Basis& free_basis_keys(int n);

struct Relation {
    std::vector<std::pair<Rational, OperadTerm>> terms;  // homogeneous, arity 3
};

struct Presentation {
    std::string name;  // searrow | nearrow | searrow-dual | nearrow-dual
    Flavor flavor;
    bool dual;
    std::vector<Relation> relations;
};

const Presentation& presentation(Flavor f, bool dual);

// Arity-n slice of the operadic ideal generated by the presentation's
// relations, as a spanning set over the arity-n free basis plus its reduced
// echelon form.
struct ArityIdeal {
    int arity = 0;
    const Basis* basis = nullptr;
    std::vector<SparseVector> spanning;
    SpanChecker reduced;
    int dim = 0;
};

ArityIdeal ideal_slice(const Presentation& p, int n);

struct DimensionTable {
    std::string flavor;
    std::vector<long long> nonsigma;  // dim quotient(n), n = 1..max_arity
    std::vector<BigInt> sigma;        // n! * nonsigma[n]
};

DimensionTable quotient_dims(const Presentation& p, int max_arity);

// Quadratic-dual pairing on the arity-3 component:
//   <l(m',I), l'(m'',I)> = +1 when labels match, right compositions pair to
//   -1, mixed compositions to 0.
Rational pairing(const OperadTerm& a, const OperadTerm& b);
Rational pairing(const Relation& a, const Relation& b);

struct DualityReport {
    std::string primal_name, dual_name;
    int dim_primal = 0;       // expected 3
    int dim_dual = 0;         // expected 5
    int free_dim = 0;         // 8
    bool dims_ok = false;
    bool complete = false;    // dim_primal + dim_dual == free_dim
    std::vector<std::tuple<int, int, Rational>> nonzero_pairings;  // (dual idx, primal idx, value)
    int gram_rank = 0;        // rank of the full 8x8 pairing matrix
    long long sigma_free = 0, sigma_primal = 0, sigma_dual = 0;  // 48, 18, 30
    bool passed = false;
};

DualityReport dual_annihilator_check(const Presentation& p, const Presentation& dual);
std::string to_json(const DualityReport& r);

struct PoincareReport {
    int order = 0;
    std::vector<Rational> residual;  // coefficients 1..order of g(-f(-t)) - t
    int first_failure = -1;          // degree of first nonzero residual, or -1
    bool ok = false;
};

// Koszul generating-series criterion: with f, g the non-sigma Hilbert series
// of the operad and its dual, g(-f(-t)) = t must hold through `order`.
PoincareReport poincare_check(const std::vector<long long>& dims_p,
                              const std::vector<long long>& dims_dual, int order);

}  // namespace fop
