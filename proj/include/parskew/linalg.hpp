#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "parskew/rational.hpp"

namespace parskew {

using Vec = std::vector<Rational>;

/// Sorted-by-index list of nonzero entries.
using SparseVec = std::vector<std::pair<int, Rational>>;

inline bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.is_zero(); });
}

inline Vec zero_vec(int n) { return Vec(static_cast<size_t>(n)); }

inline Vec& add_scaled(Vec& dst, const Rational& c, const Vec& src) {
    for (size_t i = 0; i < dst.size(); ++i)
        if (!src[i].is_zero()) dst[i] += c * src[i];
    return dst;
}

inline SparseVec to_sparse(const Vec& v) {
    SparseVec s;
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.emplace_back(static_cast<int>(i), v[i]);
    return s;
}

inline Vec to_dense(const SparseVec& s, int n) {
    Vec v = zero_vec(n);
    for (const auto& [i, q] : s) v[static_cast<size_t>(i)] = q;
    return v;
}

/// dst += c * src, both sparse, result sparse and sorted.
inline SparseVec sparse_add_scaled(const SparseVec& a, const Rational& c, const SparseVec& b) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Rational q = c * b[j].second;
            if (!q.is_zero()) out.emplace_back(b[j].first, std::move(q));
            ++j;
        } else {
            Rational q = a[i].second + c * b[j].second;
            if (!q.is_zero()) out.emplace_back(a[i].first, std::move(q));
            ++i, ++j;
        }
    }
    return out;
}

class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Rational& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    Vec apply(const Vec& v) const {
        if (static_cast<int>(v.size()) != cols_) throw InvalidElement("matrix/vector size mismatch");
        Vec out = zero_vec(rows_);
        for (int c = 0; c < cols_; ++c) {
            if (v[static_cast<size_t>(c)].is_zero()) continue;
            for (int r = 0; r < rows_; ++r) {
                const Rational& m = at(r, c);
                if (!m.is_zero()) out[static_cast<size_t>(r)] += m * v[static_cast<size_t>(c)];
            }
        }
        return out;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw InvalidElement("matrix product shape mismatch");
        Matrix out(rows_, o.cols_);
        for (int r = 0; r < rows_; ++r)
            for (int k = 0; k < cols_; ++k) {
                const Rational& m = at(r, k);
                if (m.is_zero()) continue;
                for (int c = 0; c < o.cols_; ++c)
                    if (!o.at(k, c).is_zero()) out.at(r, c) += m * o.at(k, c);
            }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    void set_column(int c, const Vec& v) {
        for (int r = 0; r < rows_; ++r) at(r, c) = v[static_cast<size_t>(r)];
    }

    Vec column(int c) const {
        Vec v = zero_vec(rows_);
        for (int r = 0; r < rows_; ++r) v[static_cast<size_t>(r)] = at(r, c);
        return v;
    }

    static Matrix from_columns(int rows, const std::vector<Vec>& cols) {
        Matrix m(rows, static_cast<int>(cols.size()));
        for (size_t c = 0; c < cols.size(); ++c) m.set_column(static_cast<int>(c), cols[c]);
        return m;
    }

private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

struct LinSolve {
    std::optional<Vec> solution;  // one solution, free variables set to zero
    std::vector<Vec> kernel;      // basis of the nullspace of M
};

namespace detail {

// Fraction-free forward elimination (Bareiss). Rows are first cleared to
// integers, then the condensation update keeps every intermediate entry an
// exact integer minor. Returns pivot (row, col) pairs; the matrix is modified
// in place and `perm` records row swaps.
inline std::vector<std::pair<int, int>> bareiss_forward(std::vector<Vec>& m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    for (auto& row : m) {
        BigInt lcm = 1;
        for (const auto& q : row) lcm = boost::multiprecision::lcm(lcm, q.den());
        if (lcm != 1) {
            Rational f(lcm);
            for (auto& q : row) q *= f;
        }
    }
    std::vector<std::pair<int, int>> pivots;
    Rational prev = 1;
    int prow = 0;
    for (int col = 0; col < cols && prow < rows; ++col) {
        int sel = -1;
        for (int r = prow; r < rows; ++r)
            if (!m[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(m[static_cast<size_t>(sel)], m[static_cast<size_t>(prow)]);
        const Rational p = m[static_cast<size_t>(prow)][static_cast<size_t>(col)];
        for (int r = prow + 1; r < rows; ++r) {
            auto& row = m[static_cast<size_t>(r)];
            const Rational f = row[static_cast<size_t>(col)];
            if (f.is_zero() && prev == 1) continue;
            for (int c = 0; c < cols; ++c) {
                row[static_cast<size_t>(c)] =
                    (row[static_cast<size_t>(c)] * p - f * m[static_cast<size_t>(prow)][static_cast<size_t>(c)]) / prev;
            }
        }
        pivots.emplace_back(prow, col);
        prev = p;
        ++prow;
    }
    return pivots;
}

}  // namespace detail

/// Exact rank via fraction-free elimination.
inline int rank(const Matrix& M) {
    std::vector<Vec> rows;
    rows.reserve(static_cast<size_t>(M.rows()));
    for (int r = 0; r < M.rows(); ++r) {
        Vec row(static_cast<size_t>(M.cols()));
        for (int c = 0; c < M.cols(); ++c) row[static_cast<size_t>(c)] = M.at(r, c);
        rows.push_back(std::move(row));
    }
    return static_cast<int>(detail::bareiss_forward(rows).size());
}

/// Solve M x = v exactly. Returns a particular solution (free variables zero)
/// when consistent, plus a basis of the kernel of M in all cases.
inline LinSolve solve_linear(const Matrix& M, const Vec& v) {
    if (static_cast<int>(v.size()) != M.rows()) throw InvalidElement("solve_linear shape mismatch");
    const int n = M.cols();
    std::vector<Vec> aug;
    aug.reserve(static_cast<size_t>(M.rows()));
    for (int r = 0; r < M.rows(); ++r) {
        Vec row(static_cast<size_t>(n) + 1);
        for (int c = 0; c < n; ++c) row[static_cast<size_t>(c)] = M.at(r, c);
        row[static_cast<size_t>(n)] = v[static_cast<size_t>(r)];
        aug.push_back(std::move(row));
    }
    // Eliminate only the coefficient columns; the augmented column rides along.
    auto pivots_all = detail::bareiss_forward(aug);
    std::vector<std::pair<int, int>> pivots;
    bool consistent = true;
    for (auto [r, c] : pivots_all) {
        if (c == n) consistent = false;  // pivot in the augmented column: 0 = nonzero
        else pivots.emplace_back(r, c);
    }

    std::vector<bool> is_pivot_col(static_cast<size_t>(n), false);
    for (auto [r, c] : pivots) is_pivot_col[static_cast<size_t>(c)] = true;

    auto back_substitute = [&](const Vec& rhs_extra, int free_col) -> Vec {
        // Solves the triangular system for pivot variables; `free_col` (if >= 0)
        // is the free variable set to 1, everything else free is 0.
        Vec x = zero_vec(n);
        if (free_col >= 0) x[static_cast<size_t>(free_col)] = 1;
        for (int k = static_cast<int>(pivots.size()) - 1; k >= 0; --k) {
            auto [r, c] = pivots[static_cast<size_t>(k)];
            const auto& row = aug[static_cast<size_t>(r)];
            Rational acc = rhs_extra[static_cast<size_t>(r)];
            // Entries at earlier pivot columns are zero after elimination, so
            // summing every j != c only picks up later pivots and free columns.
            for (int j = 0; j < n; ++j)
                if (j != c && !row[static_cast<size_t>(j)].is_zero() && !x[static_cast<size_t>(j)].is_zero())
                    acc -= row[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
            x[static_cast<size_t>(c)] = acc / row[static_cast<size_t>(c)];
        }
        return x;
    };

    LinSolve out;
    if (consistent) {
        Vec rhs(static_cast<size_t>(aug.size()));
        for (size_t r = 0; r < aug.size(); ++r) rhs[r] = aug[r][static_cast<size_t>(n)];
        out.solution = back_substitute(rhs, -1);
    }
    Vec zero_rhs(static_cast<size_t>(aug.size()));
    for (int c = 0; c < n; ++c)
        if (!is_pivot_col[static_cast<size_t>(c)]) out.kernel.push_back(back_substitute(zero_rhs, c));
    return out;
}

inline std::vector<Vec> kernel_basis(const Matrix& M) {
    return solve_linear(M, zero_vec(M.rows())).kernel;
}

inline std::optional<Matrix> inverse(const Matrix& M) {
    if (M.rows() != M.cols()) return std::nullopt;
    const int n = M.rows();
    Matrix inv(n, n);
    for (int c = 0; c < n; ++c) {
        Vec e = zero_vec(n);
        e[static_cast<size_t>(c)] = 1;
        auto sol = solve_linear(M, e);
        if (!sol.solution || !sol.kernel.empty()) return std::nullopt;
        inv.set_column(c, *sol.solution);
    }
    return inv;
}

/// Incremental reduced row echelon accumulator over sparse rational rows.
/// Rows are kept fully reduced: each stored row has coefficient 1 at its pivot
/// column and zeros at all other pivot columns, so residuals of reduce() are
/// supported on free columns only.
class RowReducer {
public:
    explicit RowReducer(int ncols) : ncols_(ncols) {}

    int ncols() const { return ncols_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    /// Reduce and insert; returns true when the row enlarged the span.
    bool insert(SparseVec row) {
        row = reduce(std::move(row));
        if (row.empty()) return false;
        const int pivot = row[0].first;
        Rational inv_lead = Rational(1) / row[0].second;
        for (auto& [c, q] : row) q *= inv_lead;
        for (auto& [pc, r] : rows_) {
            auto it = std::lower_bound(r.begin(), r.end(), pivot,
                                       [](const auto& e, int c) { return e.first < c; });
            if (it != r.end() && it->first == pivot) {
                Rational f = -it->second;
                r = sparse_add_scaled(r, f, row);
            }
        }
        rows_.emplace(pivot, std::move(row));
        return true;
    }

    /// Canonical residual of v modulo the row space (zero at all pivot columns).
    SparseVec reduce(SparseVec v) const {
        for (;;) {
            const SparseVec* hit = nullptr;
            Rational coeff;
            for (const auto& [c, q] : v) {
                auto it = rows_.find(c);
                if (it != rows_.end()) {
                    hit = &it->second;
                    coeff = q;
                    break;
                }
            }
            if (!hit) return v;
            v = sparse_add_scaled(v, -coeff, *hit);
        }
    }

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    std::vector<int> pivot_cols() const {
        std::vector<int> out;
        out.reserve(rows_.size());
        for (const auto& [c, r] : rows_) out.push_back(c);
        return out;
    }

    std::vector<int> free_cols() const {
        std::vector<int> out;
        for (int c = 0; c < ncols_; ++c)
            if (!rows_.count(c)) out.push_back(c);
        return out;
    }

private:
    int ncols_;
    std::map<int, SparseVec> rows_;  // pivot column -> reduced row
};

/// Span helper over dense vectors; keeps inserted order of an independent subset.
class SpanBuilder {
public:
    explicit SpanBuilder(int ncols) : red_(ncols) {}

    bool insert(const Vec& v) {
        if (red_.insert(to_sparse(v))) {
            basis_.push_back(v);
            return true;
        }
        return false;
    }

    bool contains(const Vec& v) const { return red_.contains(to_sparse(v)); }
    int rank() const { return red_.rank(); }
    const std::vector<Vec>& basis() const { return basis_; }

private:
    RowReducer red_;
    std::vector<Vec> basis_;
};

}  // namespace parskew
