#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "parskew/algebra.hpp"

namespace parskew {

/// The quotient S (x)_R S of S (x)_Q S by the span of s*r (x) s' - s (x) r*s'
/// for basis s, s' of S and r running over a basis of the unital subring R.
/// Coordinates of S (x)_Q S are packed as i*dim(S) + j. The quotient basis is
/// the set of free columns of the reduced relation span; project() sends a
/// tensor to its canonical representative's free-column coordinates and
/// lift() picks that representative back.
class BimoduleTensorSpace {
public:
    BimoduleTensorSpace(const StructAlgebra& S, std::vector<Vec> R_basis)
        : S_(&S), n_(S.dim()), R_basis_(std::move(R_basis)), rel_(n_ * n_) {
        // R must span a unital subring of S.
        SpanBuilder r_span(n_);
        for (const Vec& r : R_basis_) r_span.insert(r);
        if (r_span.rank() != static_cast<int>(R_basis_.size()))
            throw NotASubring("subring basis is linearly dependent");
        if (!r_span.contains(S.unit())) throw NotASubring("subring does not contain the unit");
        for (const Vec& r : R_basis_)
            for (const Vec& s : R_basis_)
                if (!r_span.contains(S.mul(r, s))) throw NotASubring("subring basis is not multiplicatively closed");

        for (const Vec& r : R_basis_) {
            SparseVec rs = to_sparse(r);
            std::vector<SparseVec> ar(static_cast<size_t>(n_)), rb(static_cast<size_t>(n_));
            for (int k = 0; k < n_; ++k) {
                ar[static_cast<size_t>(k)] = S.mul_sparse(SparseVec{{k, 1}}, rs);
                rb[static_cast<size_t>(k)] = S.mul_sparse(rs, SparseVec{{k, 1}});
            }
            for (int a = 0; a < n_; ++a)
                for (int b = 0; b < n_; ++b) {
                    SparseVec rel;
                    for (const auto& [k, q] : ar[static_cast<size_t>(a)]) rel.emplace_back(pack(k, b), q);
                    SparseVec rhs;
                    for (const auto& [k, q] : rb[static_cast<size_t>(b)]) rhs.emplace_back(pack(a, k), q);
                    rel = sparse_add_scaled(rel, Rational(-1), rhs);
                    rel_.insert(std::move(rel));
                }
        }
        for (int c : rel_.free_cols()) {
            col_to_q_[c] = static_cast<int>(free_cols_.size());
            free_cols_.push_back(c);
        }
    }

    int quotient_dim() const { return static_cast<int>(free_cols_.size()); }
    int relation_rank() const { return rel_.rank(); }
    int ambient_dim() const { return n_ * n_; }

    /// Quotient coordinates of a tensor given in packed S (x)_Q S coordinates.
    Vec project(const SparseVec& t) const {
        SparseVec r = rel_.reduce(t);
        Vec out = zero_vec(quotient_dim());
        for (const auto& [c, q] : r) out[static_cast<size_t>(col_to_q_.at(c))] = q;
        return out;
    }

    /// Canonical representative of quotient coordinates.
    SparseVec lift(const Vec& q) const {
        SparseVec out;
        for (size_t i = 0; i < q.size(); ++i)
            if (!q[i].is_zero()) out.emplace_back(free_cols_[i], q[i]);
        return out;
    }

    Vec tensor_of(const Vec& p, const Vec& q) const {
        SparseVec t;
        for (int a = 0; a < n_; ++a) {
            if (p[static_cast<size_t>(a)].is_zero()) continue;
            for (int b = 0; b < n_; ++b)
                if (!q[static_cast<size_t>(b)].is_zero())
                    t.emplace_back(pack(a, b), p[static_cast<size_t>(a)] * q[static_cast<size_t>(b)]);
        }
        std::sort(t.begin(), t.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return project(t);
    }

    /// s . (p (x) q) = (s p) (x) q, on quotient coordinates.
    Vec act_left(const Vec& s, const Vec& t) const {
        SparseVec out;
        for (const auto& [c, q] : lift(t)) {
            auto [a, b] = unpack(c);
            SparseVec sa = S_->mul_sparse(to_sparse(s), SparseVec{{a, 1}});
            for (const auto& [k, w] : sa) out.push_back({pack(k, b), w * q});
        }
        return project(normalize(std::move(out)));
    }

    /// (p (x) q) . s = p (x) (q s).
    Vec act_right(const Vec& t, const Vec& s) const {
        SparseVec out;
        for (const auto& [c, q] : lift(t)) {
            auto [a, b] = unpack(c);
            SparseVec bs = S_->mul_sparse(SparseVec{{b, 1}}, to_sparse(s));
            for (const auto& [k, w] : bs) out.push_back({pack(a, k), w * q});
        }
        return project(normalize(std::move(out)));
    }

    /// Multiplication map m : S (x)_R S -> S.
    Vec mult(const Vec& t) const {
        Vec out = zero_vec(n_);
        for (const auto& [c, q] : lift(t)) {
            auto [a, b] = unpack(c);
            for (const auto& [k, w] : S_->basis_product(a, b)) out[static_cast<size_t>(k)] += q * w;
        }
        return out;
    }

    const std::vector<Vec>& subring_basis() const { return R_basis_; }

private:
    int pack(int a, int b) const { return a * n_ + b; }
    std::pair<int, int> unpack(int c) const { return {c / n_, c % n_}; }

    static SparseVec normalize(SparseVec v) {
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        SparseVec out;
        for (auto& [c, q] : v) {
            if (!out.empty() && out.back().first == c)
                out.back().second += q;
            else
                out.emplace_back(c, q);
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return e.second.is_zero(); }),
                  out.end());
        return out;
    }

    const StructAlgebra* S_;
    int n_;
    std::vector<Vec> R_basis_;
    RowReducer rel_;
    std::vector<int> free_cols_;
    std::unordered_map<int, int> col_to_q_;
};

}  // namespace parskew
