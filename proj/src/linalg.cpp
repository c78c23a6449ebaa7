#include "fop/linalg.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include <boost/multiprecision/integer.hpp>

namespace fop {

namespace {

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

// Sparse row with exact integer entries, sorted by column index. Rank-only
// elimination works fraction-free on these: scaling a row by a positive
// integer never changes the span.
using IntRow = std::vector<std::pair<int, BigInt>>;

void strip_content(IntRow& row) {
    if (row.empty()) return;
    BigInt g = 0;
    for (const auto& [c, v] : row) {
        g = gcd(g, v);
        if (g == 1) break;
    }
    if (row.front().second < 0) g = -g;
    if (g != 1) {
        for (auto& [c, v] : row) v /= g;
    }
}

// rows[s] <- pc * rows[s] - rc * pivot, which zeroes column c of rows[s].
IntRow combine_rows(const IntRow& row, const BigInt& rc, const IntRow& pivot, const BigInt& pc) {
    IntRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.emplace_back(row[i].first, row[i].second * pc);
            ++i;
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.emplace_back(pivot[j].first, -pivot[j].second * rc);
            ++j;
        } else {
            BigInt v = row[i].second * pc - pivot[j].second * rc;
            if (v != 0) out.emplace_back(row[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    strip_content(out);
    return out;
}

IntRow row_from_rationals(const std::vector<std::pair<int, Rational>>& entries) {
    BigInt den_lcm = 1;
    for (const auto& [c, v] : entries) den_lcm = lcm(den_lcm, denominator(v));
    IntRow row;
    row.reserve(entries.size());
    for (const auto& [c, v] : entries) {
        BigInt value = numerator(v) * (den_lcm / denominator(v));
        if (value != 0) row.emplace_back(c, std::move(value));
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    strip_content(row);
    return row;
}

// Sparse Gaussian elimination with Markowitz-style pivoting: pick a pivot in
// a minimum-fill position (shortest row, then least-populated column,
// preferring unit entries). Only the rank is produced.
int rank_sparse(std::vector<IntRow> rows, int cols) {
    const int nrows = static_cast<int>(rows.size());
    std::vector<int> col_count(static_cast<std::size_t>(cols), 0);
    std::vector<std::vector<int>> col_rows(static_cast<std::size_t>(cols));
    std::vector<char> active(static_cast<std::size_t>(nrows), 1);
    std::vector<int> version(static_cast<std::size_t>(nrows), 0);

    auto register_row = [&](int r) {
        for (const auto& [c, v] : rows[static_cast<std::size_t>(r)]) {
            col_count[static_cast<std::size_t>(c)]++;
            col_rows[static_cast<std::size_t>(c)].push_back(r);
        }
    };
    auto unregister_counts = [&](const IntRow& row) {
        for (const auto& [c, v] : row) col_count[static_cast<std::size_t>(c)]--;
    };

    using HeapItem = std::tuple<std::size_t, int, int>;  // (nnz, version, row)
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap;
    for (int r = 0; r < nrows; ++r) {
        if (rows[static_cast<std::size_t>(r)].empty()) {
            active[static_cast<std::size_t>(r)] = 0;
            continue;
        }
        register_row(r);
        heap.emplace(rows[static_cast<std::size_t>(r)].size(), 0, r);
    }

    int rank = 0;
    std::vector<int> touched;
    while (!heap.empty()) {
        auto [nnz, ver, r] = heap.top();
        heap.pop();
        const auto ur = static_cast<std::size_t>(r);
        if (!active[ur] || ver != version[ur] || rows[ur].empty()) continue;

        // Pivot column: least populated, prefer |value| == 1 on ties.
        int pivot_col = -1;
        BigInt pivot_val;
        long best = -1;
        for (const auto& [c, v] : rows[ur]) {
            long score = 4L * col_count[static_cast<std::size_t>(c)] + ((v == 1 || v == -1) ? 0 : 1);
            if (best < 0 || score < best) {
                best = score;
                pivot_col = c;
                pivot_val = v;
            }
        }

        ++rank;
        active[ur] = 0;
        unregister_counts(rows[ur]);

        auto& candidates = col_rows[static_cast<std::size_t>(pivot_col)];
        touched.assign(candidates.begin(), candidates.end());
        candidates.clear();
        for (int s : touched) {
            const auto us = static_cast<std::size_t>(s);
            if (!active[us] || s == r) continue;
            auto it = std::lower_bound(
                rows[us].begin(), rows[us].end(), pivot_col,
                [](const auto& e, int c) { return e.first < c; });
            if (it == rows[us].end() || it->first != pivot_col) continue;  // stale registration
            unregister_counts(rows[us]);
            rows[us] = combine_rows(rows[us], it->second, rows[ur], pivot_val);
            version[us]++;
            if (rows[us].empty()) {
                active[us] = 0;
            } else {
                register_row(s);
                heap.emplace(rows[us].size(), version[us], s);
            }
        }
        rows[ur].clear();
    }
    return rank;
}

int rank_dense(const std::vector<IntRow>& sparse_rows, int cols) {
    std::vector<std::vector<Rational>> rows;
    rows.reserve(sparse_rows.size());
    for (const auto& sr : sparse_rows) {
        if (sr.empty()) continue;
        std::vector<Rational> dense(static_cast<std::size_t>(cols), Rational(0));
        for (const auto& [c, v] : sr) dense[static_cast<std::size_t>(c)] = Rational(v);
        rows.push_back(std::move(dense));
    }
    int rank = 0;
    for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        const auto uc = static_cast<std::size_t>(c);
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
            if (rows[static_cast<std::size_t>(r)][uc] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
        const auto& prow = rows[static_cast<std::size_t>(rank)];
        for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
            auto& row = rows[static_cast<std::size_t>(r)];
            if (row[uc] == 0) continue;
            Rational factor = row[uc] / prow[uc];
            for (int k = c; k < cols; ++k) {
                const auto uk = static_cast<std::size_t>(k);
                row[uk] -= factor * prow[uk];
            }
        }
        ++rank;
    }
    return rank;
}

int rank_of_rows(std::vector<IntRow> rows, int cols) {
    if (cols < 64) return rank_dense(rows, cols);
    return rank_sparse(std::move(rows), cols);
}

}  // namespace

Basis::Basis(std::vector<std::string> keys) : keys_(std::move(keys)) {
    index_.reserve(keys_.size());
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        auto [it, inserted] = index_.emplace(keys_[i], static_cast<int>(i));
        if (!inserted) throw std::invalid_argument("Basis: duplicate key '" + keys_[i] + "'");
    }
}

int Basis::find(const std::string& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? -1 : it->second;
}

int Basis::index_of(const std::string& key) const {
    int i = find(key);
    if (i < 0) throw std::out_of_range("Basis: unknown key '" + key + "'");
    return i;
}

void SparseVector::add(int index, const Rational& coeff) {
    if (coeff == 0) return;
    entries.emplace_back(index, coeff);
}

void SparseVector::normalize() {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, Rational>> out;
    out.reserve(entries.size());
    for (auto& [i, v] : entries) {
        if (!out.empty() && out.back().first == i) {
            out.back().second += v;
            if (out.back().second == 0) out.pop_back();
        } else if (v != 0) {
            out.emplace_back(i, std::move(v));
        }
    }
    entries = std::move(out);
}

SparseMatrix::SparseMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), cols_data_(static_cast<std::size_t>(cols)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("SparseMatrix: negative shape");
}

void SparseMatrix::add(int row, int col, const Rational& value) {
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
        throw std::out_of_range("SparseMatrix: index out of bounds");
    if (value == 0) return;
    cols_data_[static_cast<std::size_t>(col)].emplace_back(row, value);
    finalized_ = false;
}

void SparseMatrix::finalize() {
    if (finalized_) return;
    for (auto& col : cols_data_) {
        std::sort(col.begin(), col.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, Rational>> out;
        out.reserve(col.size());
        for (auto& [r, v] : col) {
            if (!out.empty() && out.back().first == r) {
                out.back().second += v;
                if (out.back().second == 0) out.pop_back();
            } else if (v != 0) {
                out.emplace_back(r, std::move(v));
            }
        }
        col = std::move(out);
    }
    finalized_ = true;
}

std::size_t SparseMatrix::nonzero_count() const {
    std::size_t n = 0;
    for (const auto& col : cols_data_) n += col.size();
    return n;
}

bool SparseMatrix::is_zero() const {
    for (const auto& col : cols_data_) {
        if (!col.empty()) return false;
    }
    return true;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols_, rows_);
    for (int c = 0; c < cols_; ++c) {
        for (const auto& [r, v] : cols_data_[static_cast<std::size_t>(c)]) t.add(c, r, v);
    }
    t.finalize();
    return t;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("SparseMatrix::multiply: shape mismatch");
    SparseMatrix out(rows_, rhs.cols_);
    std::vector<Rational> scratch(static_cast<std::size_t>(rows_), Rational(0));
    std::vector<int> touched;
    for (int j = 0; j < rhs.cols_; ++j) {
        touched.clear();
        for (const auto& [k, bkj] : rhs.cols_data_[static_cast<std::size_t>(j)]) {
            for (const auto& [i, aik] : cols_data_[static_cast<std::size_t>(k)]) {
                const auto ui = static_cast<std::size_t>(i);
                if (scratch[ui] == 0) touched.push_back(i);
                scratch[ui] += aik * bkj;
            }
        }
        std::sort(touched.begin(), touched.end());
        for (int i : touched) {
            const auto ui = static_cast<std::size_t>(i);
            if (scratch[ui] != 0) out.add(i, j, scratch[ui]);
            scratch[ui] = 0;
        }
    }
    out.finalize();
    return out;
}

int SparseMatrix::rank() const {
    SparseMatrix copy = *this;
    copy.finalize();
    // rank(M) = rank(M^T): feed the stored columns as elimination rows.
    std::vector<IntRow> rows;
    rows.reserve(static_cast<std::size_t>(cols_));
    for (int c = 0; c < cols_; ++c) rows.push_back(row_from_rationals(copy.cols_data_[static_cast<std::size_t>(c)]));
    return rank_of_rows(std::move(rows), rows_);
}

int SparseMatrix::nullspace_dim() const { return cols_ - rank(); }

int span_dim(const std::vector<SparseVector>& vectors) {
    if (vectors.empty()) return 0;
    const Basis* basis = vectors.front().basis;
    for (const auto& v : vectors) {
        if (v.basis != basis)
            throw std::invalid_argument("span_dim: vectors over mismatched bases");
    }
    const int dim = basis ? basis->size() : 0;
    std::vector<IntRow> rows;
    rows.reserve(vectors.size());
    int max_index = dim;
    for (const auto& v : vectors) {
        SparseVector copy = v;
        copy.normalize();
        for (const auto& [i, c] : copy.entries) max_index = std::max(max_index, i + 1);
        rows.push_back(row_from_rationals(copy.entries));
    }
    return rank_of_rows(std::move(rows), max_index);
}

SpanChecker::Row SpanChecker::reduce(Row row) const {
    while (!row.empty()) {
        auto it = pivots_.find(row.front().first);
        if (it == pivots_.end()) break;
        row = combine_rows(row, row.front().second, it->second, it->second.front().second);
    }
    return row;
}

bool SpanChecker::insert(const std::vector<std::pair<int, Rational>>& entries) {
    std::vector<std::pair<int, Rational>> copy = entries;
    SparseVector sv;
    sv.entries = std::move(copy);
    sv.normalize();
    Row row = reduce(row_from_rationals(sv.entries));
    if (row.empty()) return false;
    int lead = row.front().first;
    pivots_.emplace(lead, std::move(row));
    return true;
}

bool SpanChecker::insert(const SparseVector& v) { return insert(v.entries); }

bool SpanChecker::contains(const std::vector<std::pair<int, Rational>>& entries) const {
    std::vector<std::pair<int, Rational>> copy = entries;
    SparseVector sv;
    sv.entries = std::move(copy);
    sv.normalize();
    return reduce(row_from_rationals(sv.entries)).empty();
}

bool SpanChecker::contains(const SparseVector& v) const { return contains(v.entries); }

std::uint64_t Fp61::add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    if (s >= p) s -= p;
    return s;
}

std::uint64_t Fp61::sub(std::uint64_t a, std::uint64_t b) { return add(a, p - b); }

std::uint64_t Fp61::mul(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(prod & p);
    std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
    std::uint64_t s = lo + hi;
    if (s >= p) s -= p;
    return s;
}

std::uint64_t Fp61::inv(std::uint64_t a) {
    // Fermat: a^(p-2) mod p.
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

std::uint64_t Fp61::from_rational(const Rational& r) {
    const BigInt modulus = BigInt(p);
    BigInt num = numerator(r) % modulus;
    if (num < 0) num += modulus;
    BigInt den = denominator(r) % modulus;
    if (den == 0) throw std::domain_error("Fp61: denominator divisible by p");
    std::uint64_t n = num.convert_to<std::uint64_t>();
    std::uint64_t d = den.convert_to<std::uint64_t>();
    return mul(n, inv(d));
}

namespace {

using FpRow = std::vector<std::pair<int, std::uint64_t>>;

FpRow fp_combine(const FpRow& row, std::uint64_t rc, const FpRow& pivot) {
    // pivot has leading value 1.
    FpRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.push_back(row[i]);
            ++i;
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.emplace_back(pivot[j].first, Fp61::sub(0, Fp61::mul(pivot[j].second, rc)));
            ++j;
        } else {
            std::uint64_t v = Fp61::sub(row[i].second, Fp61::mul(pivot[j].second, rc));
            if (v != 0) out.emplace_back(row[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

int rank_mod_p(const SparseMatrix& m) {
    SparseMatrix copy = m;
    copy.finalize();
    std::unordered_map<int, FpRow> pivots;
    int rank = 0;
    for (int c = 0; c < copy.cols(); ++c) {
        FpRow row;
        for (const auto& [r, v] : copy.column(c)) {
            std::uint64_t fv = Fp61::from_rational(v);
            if (fv != 0) row.emplace_back(r, fv);
        }
        while (!row.empty()) {
            auto it = pivots.find(row.front().first);
            if (it == pivots.end()) break;
            row = fp_combine(row, row.front().second, it->second);
        }
        if (row.empty()) continue;
        std::uint64_t lead_inv = Fp61::inv(row.front().second);
        for (auto& [i, v] : row) v = Fp61::mul(v, lead_inv);
        pivots.emplace(row.front().first, std::move(row));
        ++rank;
    }
    return rank;
}

}  // namespace fop
