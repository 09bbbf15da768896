#pragma once

#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "parskew/linalg.hpp"

namespace parskew {

/// Outcome of a non-fault check: violations are report content, not exceptions.
struct VerificationReport {
    bool ok = true;
    std::string failure;             // first violation, with witnesses
    std::vector<std::string> notes;  // facts established along the way

    void note(std::string s) { notes.push_back(std::move(s)); }
    void fail(std::string s) {
        if (ok) {
            ok = false;
            failure = std::move(s);
        }
    }
    void merge(const VerificationReport& o) {
        if (!o.ok) fail(o.failure);
        for (const auto& n : o.notes) notes.push_back(n);
    }
};

/// Finite-dimensional associative unital algebra over Q, given by the
/// coordinates of all products of basis elements. Immutable once validated.
class StructAlgebra {
public:
    StructAlgebra() : dim_(0) {}

    StructAlgebra(int dim, std::vector<std::string> labels,
                  const std::vector<std::tuple<int, int, SparseVec>>& products, Vec unit)
        : dim_(dim), labels_(std::move(labels)), unit_(std::move(unit)) {
        if (static_cast<int>(labels_.size()) != dim_) throw InvalidElement("basis label count != dim");
        if (static_cast<int>(unit_.size()) != dim_) throw InvalidElement("unit coordinate count != dim");
        if (dim_ < kDenseLimit) dense_.resize(static_cast<size_t>(dim_) * dim_);
        for (const auto& [i, j, c] : products) {
            if (i < 0 || i >= dim_ || j < 0 || j >= dim_) throw InvalidElement("product index out of range");
            for (const auto& [k, q] : c)
                if (k < 0 || k >= dim_) throw InvalidElement("product coordinate out of range");
            row(i, j) = c;
        }
    }

    int dim() const { return dim_; }
    const std::string& label(int i) const { return labels_[static_cast<size_t>(i)]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const Vec& unit() const { return unit_; }

    const SparseVec& basis_product(int i, int j) const {
        static const SparseVec kEmpty;
        if (dim_ < kDenseLimit) return dense_[static_cast<size_t>(i) * dim_ + j];
        auto it = sparse_.find(key(i, j));
        return it == sparse_.end() ? kEmpty : it->second;
    }

    std::vector<std::tuple<int, int, SparseVec>> products() const {
        std::vector<std::tuple<int, int, SparseVec>> out;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                if (!basis_product(i, j).empty()) out.emplace_back(i, j, basis_product(i, j));
        return out;
    }

    Vec mul(const Vec& a, const Vec& b) const {
        if (static_cast<int>(a.size()) != dim_ || static_cast<int>(b.size()) != dim_)
            throw InvalidElement("element dimension mismatch");
        Vec out = zero_vec(dim_);
        for (int i = 0; i < dim_; ++i) {
            if (a[static_cast<size_t>(i)].is_zero()) continue;
            for (int j = 0; j < dim_; ++j) {
                if (b[static_cast<size_t>(j)].is_zero()) continue;
                const Rational f = a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
                for (const auto& [k, q] : basis_product(i, j)) out[static_cast<size_t>(k)] += f * q;
            }
        }
        return out;
    }

    SparseVec mul_sparse(const SparseVec& a, const SparseVec& b) const {
        SparseVec acc;
        for (const auto& [i, p] : a)
            for (const auto& [j, q] : b) {
                const SparseVec& c = basis_product(i, j);
                if (!c.empty()) acc = sparse_add_scaled(acc, p * q, c);
            }
        return acc;
    }

    /// Associativity on every basis triple plus two-sided unit law.
    /// Triples where both association orders are trivially zero cost O(1).
    void validate() const {
        for (int i = 0; i < dim_; ++i) {
            Vec e = basis_vec(i);
            if (mul(unit_, e) != e || mul(e, unit_) != e)
                throw AssociativityFailure("unit law fails at basis element " + label(i));
        }
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                const SparseVec& cij = basis_product(i, j);
                for (int k = 0; k < dim_; ++k) {
                    const SparseVec& cjk = basis_product(j, k);
                    if (cij.empty() && cjk.empty()) continue;
                    SparseVec left;  // (ui uj) uk
                    for (const auto& [r, q] : cij) {
                        const SparseVec& crk = basis_product(r, k);
                        if (!crk.empty()) left = sparse_add_scaled(left, q, crk);
                    }
                    SparseVec right;  // ui (uj uk)
                    for (const auto& [s, q] : cjk) {
                        const SparseVec& cis = basis_product(i, s);
                        if (!cis.empty()) right = sparse_add_scaled(right, q, cis);
                    }
                    if (left != right)
                        throw AssociativityFailure("associativity fails on triple (" + label(i) + ", " + label(j) +
                                                   ", " + label(k) + ")");
                }
            }
    }

    Vec basis_vec(int i) const {
        Vec v = zero_vec(dim_);
        v[static_cast<size_t>(i)] = 1;
        return v;
    }

    bool is_idempotent(const Vec& e) const { return mul(e, e) == e; }

    bool is_central(const Vec& e) const {
        for (int i = 0; i < dim_; ++i) {
            Vec b = basis_vec(i);
            if (mul(e, b) != mul(b, e)) return false;
        }
        return true;
    }

    /// Matrix of x -> x * e (right multiplication by e).
    Matrix right_mul_matrix(const Vec& e) const {
        Matrix m(dim_, dim_);
        for (int i = 0; i < dim_; ++i) m.set_column(i, mul(basis_vec(i), e));
        return m;
    }

    /// Matrix of x -> e * x.
    Matrix left_mul_matrix(const Vec& e) const {
        Matrix m(dim_, dim_);
        for (int i = 0; i < dim_; ++i) m.set_column(i, mul(e, basis_vec(i)));
        return m;
    }

    /// Basis of { a : a u_i = u_i a for all i }, the kernel of the stacked
    /// commutator map a -> (a u_i - u_i a)_i.
    std::vector<Vec> center() const {
        Matrix stacked(dim_ * dim_, dim_);
        for (int i = 0; i < dim_; ++i) {
            Vec b = basis_vec(i);
            for (int j = 0; j < dim_; ++j) {
                Vec bj = basis_vec(j);
                Vec d = mul(bj, b);
                Vec e = mul(b, bj);
                for (int r = 0; r < dim_; ++r)
                    stacked.at(i * dim_ + r, j) = d[static_cast<size_t>(r)] - e[static_cast<size_t>(r)];
            }
        }
        return kernel_basis(stacked);
    }

    /// Center of the unital subalgebra spanned by `sub` (e.g. an ideal A*e with
    /// its own unit): elements of span(sub) commuting with every spanning vector.
    /// Returned in ambient coordinates.
    std::vector<Vec> subspace_center(const std::vector<Vec>& sub) const {
        const int k = static_cast<int>(sub.size());
        Matrix stacked(dim_ * k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                Vec d = mul(sub[static_cast<size_t>(j)], sub[static_cast<size_t>(i)]);
                Vec e = mul(sub[static_cast<size_t>(i)], sub[static_cast<size_t>(j)]);
                for (int r = 0; r < dim_; ++r)
                    stacked.at(i * dim_ + r, j) = d[static_cast<size_t>(r)] - e[static_cast<size_t>(r)];
            }
        std::vector<Vec> out;
        for (const Vec& coeffs : kernel_basis(stacked)) {
            Vec v = zero_vec(dim_);
            for (int j = 0; j < k; ++j) add_scaled(v, coeffs[static_cast<size_t>(j)], sub[static_cast<size_t>(j)]);
            out.push_back(std::move(v));
        }
        return out;
    }

    /// Q-basis of the ideal A*e for a central idempotent e: multiply every
    /// basis vector by e and keep a maximal independent subset, in basis order.
    std::vector<Vec> idempotent_ideal_basis(const Vec& e) const {
        if (!is_idempotent(e)) throw NotCentralIdempotent("element is not idempotent");
        if (!is_central(e)) throw NotCentralIdempotent("element is not central");
        SpanBuilder span(dim_);
        for (int i = 0; i < dim_; ++i) span.insert(mul(basis_vec(i), e));
        return span.basis();
    }

private:
    static constexpr int kDenseLimit = 64;
    static uint64_t key(int i, int j) { return (static_cast<uint64_t>(i) << 32) | static_cast<uint32_t>(j); }

    SparseVec& row(int i, int j) {
        if (dim_ < kDenseLimit) return dense_[static_cast<size_t>(i) * dim_ + j];
        return sparse_[key(i, j)];
    }

    int dim_;
    std::vector<std::string> labels_;
    Vec unit_;
    std::vector<SparseVec> dense_;                        // below kDenseLimit: full (i,j) table
    std::unordered_map<uint64_t, SparseVec> sparse_;      // otherwise: nonzero rows only
};

/// Linear map between coordinate spaces of two algebras (or one), as a
/// target_dim x source_dim matrix. Multiplicativity is never assumed; it is
/// checked by verify_ring_map where the contract requires a ring map.
struct LinMap {
    Matrix mat;
    Vec apply(const Vec& v) const { return mat.apply(v); }
};

/// Check that f restricted to span(domain_basis) is a ring isomorphism onto
/// span(target_basis): multiplicative on all domain basis pairs, injective,
/// image equal to the target span. Optionally checks f(unit_src) = unit_tgt
/// for the supplied subring units.
inline VerificationReport verify_ring_map(const StructAlgebra& src, const StructAlgebra& tgt, const Matrix& f,
                                          const std::vector<Vec>& domain_basis, const std::vector<Vec>& target_basis,
                                          const Vec* unit_src = nullptr, const Vec* unit_tgt = nullptr) {
    VerificationReport rep;
    for (size_t i = 0; i < domain_basis.size() && rep.ok; ++i)
        for (size_t j = 0; j < domain_basis.size() && rep.ok; ++j) {
            Vec lhs = f.apply(src.mul(domain_basis[i], domain_basis[j]));
            Vec rhs = tgt.mul(f.apply(domain_basis[i]), f.apply(domain_basis[j]));
            if (lhs != rhs)
                rep.fail("not multiplicative on domain pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        }
    SpanBuilder image(tgt.dim());
    SpanBuilder target(tgt.dim());
    for (const Vec& t : target_basis) target.insert(t);
    for (const Vec& d : domain_basis) {
        Vec img = f.apply(d);
        if (!target.contains(img)) rep.fail("image leaves the stated target span");
        image.insert(img);
    }
    if (image.rank() != static_cast<int>(domain_basis.size())) rep.fail("not injective on the domain span");
    if (image.rank() != target.rank()) rep.fail("not surjective onto the stated target span");
    if (rep.ok && unit_src && unit_tgt && f.apply(*unit_src) != *unit_tgt) rep.fail("unit not preserved");
    if (rep.ok) rep.note("ring map verified on " + std::to_string(domain_basis.size()) + " basis elements");
    return rep;
}

}  // namespace parskew
