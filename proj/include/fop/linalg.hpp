#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fop/rational.hpp"

namespace fop {

// Ordered list of opaque keys with O(1) key -> position lookup. Used to pin
// down the coordinate order of every vector space that appears in a check.
class Basis {
public:
    Basis() = default;
    explicit Basis(std::vector<std::string> keys);

    int size() const { return static_cast<int>(keys_.size()); }
    const std::string& key(int i) const { return keys_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& keys() const { return keys_; }

    // -1 when absent.
    int find(const std::string& key) const;
    // throws std::out_of_range when absent.
    int index_of(const std::string& key) const;

private:
    std::vector<std::string> keys_;
    std::unordered_map<std::string, int> index_;
};

// Sparse vector tagged with the basis it lives over. Entries are sorted by
// index and never zero.
struct SparseVector {
    const Basis* basis = nullptr;
    std::vector<std::pair<int, Rational>> entries;

    void add(int index, const Rational& coeff);
    void normalize();  // sort + combine + drop zeros
    bool is_zero() const { return entries.empty(); }
};

// Sparse matrix in column-major form. Entries within a column are sorted by
// row and are nonzero after finalize().
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void add(int row, int col, const Rational& value);
    void finalize();  // sort/combine pending entries; idempotent

    const std::vector<std::pair<int, Rational>>& column(int c) const {
        return cols_data_[static_cast<std::size_t>(c)];
    }

    std::size_t nonzero_count() const;
    bool is_zero() const;
    SparseMatrix transpose() const;
    SparseMatrix multiply(const SparseMatrix& rhs) const;  // this * rhs

    // Exact rank over Q. Dense elimination below 64 columns, sparse
    // elimination with Markowitz-style pivoting above.
    int rank() const;
    int nullspace_dim() const;  // cols - rank

private:
    int rows_ = 0;
    int cols_ = 0;
    bool finalized_ = true;
    std::vector<std::vector<std::pair<int, Rational>>> cols_data_;
};

// Dimension of the linear span. All vectors must be tagged with the same
// Basis object; a mismatch is a programming error and throws.
int span_dim(const std::vector<SparseVector>& vectors);

// Incremental echelon form over Q; supports membership tests against the
// span accumulated so far.
class SpanChecker {
public:
    // Returns true when the vector enlarged the span.
    bool insert(const SparseVector& v);
    bool insert(const std::vector<std::pair<int, Rational>>& entries);
    // True when v already lies in the span.
    bool contains(const SparseVector& v) const;
    bool contains(const std::vector<std::pair<int, Rational>>& entries) const;
    int dim() const { return static_cast<int>(pivots_.size()); }

private:
    using Row = std::vector<std::pair<int, BigInt>>;
    Row reduce(Row row) const;
    std::unordered_map<int, Row> pivots_;  // leading index -> reduced row
};

// Word-size prime field backend used to cross-check the rational ranks.
// p = 2^61 - 1.
struct Fp61 {
    static constexpr std::uint64_t p = (std::uint64_t(1) << 61) - 1;
    static std::uint64_t add(std::uint64_t a, std::uint64_t b);
    static std::uint64_t sub(std::uint64_t a, std::uint64_t b);
    static std::uint64_t mul(std::uint64_t a, std::uint64_t b);
    static std::uint64_t inv(std::uint64_t a);
    static std::uint64_t from_rational(const Rational& r);
};

int rank_mod_p(const SparseMatrix& m);

}  // namespace fop
