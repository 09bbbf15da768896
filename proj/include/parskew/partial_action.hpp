#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parskew/groupoid.hpp"

namespace parskew {

/// A unital partial action of a finite groupoid on a structure-constant
/// algebra: a central idempotent 1_g and a matrix for alpha_g per morphism.
/// Matrices are normalized to implement a -> alpha_g(a * 1_{g^-1}) on the
/// whole coordinate space; only the restriction to A_{g^-1} carries meaning.
/// Instances are immutable once produced by validate_partial_action.
struct PartialActionData {
    FinGroupoid G;
    StructAlgebra A;
    std::vector<Vec> idem;   // per morphism: 1_g
    std::vector<Matrix> map; // per morphism: normalized alpha_g
    bool global = false;     // 1_g = 1_{t(g)} for every morphism

    // Derived, filled by validation: a basis of each ideal A_g, the embedding
    // matrix with those columns, a left inverse for coordinate extraction, and
    // the honest inverse of each alpha_g (solved from the map for g itself,
    // never read off the data stored for g^-1).
    std::vector<std::vector<Vec>> ideal_basis;
    std::vector<Matrix> ideal_embed;
    std::vector<Matrix> ideal_coords;
    std::vector<Matrix> inv_map;

    int ideal_dim(int g) const { return static_cast<int>(ideal_basis[static_cast<size_t>(g)].size()); }
    const Vec& one(int g) const { return idem[static_cast<size_t>(g)]; }
    const Vec& one_of_object(int y) const { return idem[static_cast<size_t>(G.identity_of(y))]; }

    /// Coordinates of v in the ideal basis of A_g; checks membership.
    Vec ideal_coordinates(int g, const Vec& v) const {
        Vec c = ideal_coords[static_cast<size_t>(g)].apply(v);
        if (ideal_embed[static_cast<size_t>(g)].apply(c) != v)
            throw InvalidElement("element is not in the ideal of morphism " + G.mor(g).id);
        return c;
    }

    bool in_ideal(int g, const Vec& v) const { return A.mul(v, one(g)) == v; }

    /// alpha_g^-1(v) for v in A_g, via the precomputed honest inverse.
    Vec apply_inverse(int g, const Vec& v) const { return inv_map[static_cast<size_t>(g)].apply(v); }
};

namespace detail {

/// Exact left inverse of a full-column-rank matrix: (E^T E)^-1 E^T.
inline Matrix left_inverse(const Matrix& E) {
    Matrix Et(E.cols(), E.rows());
    for (int r = 0; r < E.rows(); ++r)
        for (int c = 0; c < E.cols(); ++c) Et.at(c, r) = E.at(r, c);
    auto gram_inv = inverse(Et * E);
    if (!gram_inv) throw InternalError("ideal basis is not independent");
    return *gram_inv * Et;
}

}  // namespace detail

/// Check every axiom of a unital partial groupoid action exhaustively and
/// return the data with derived ideal bases. Throws
/// PartialActionAxiomViolation with the first offending witness.
inline PartialActionData validate_partial_action(FinGroupoid G, StructAlgebra A, std::vector<Vec> idem,
                                                 std::vector<Matrix> maps) {
    PartialActionData pa;
    pa.G = std::move(G);
    pa.A = std::move(A);
    pa.idem = std::move(idem);
    pa.map = std::move(maps);
    const auto& g = pa.G;
    const auto& alg = pa.A;
    const int m = g.size();
    const int n = alg.dim();

    if (static_cast<int>(pa.idem.size()) != m || static_cast<int>(pa.map.size()) != m)
        throw InvalidElement("idempotent/map table size differs from morphism count");
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(pa.idem[static_cast<size_t>(i)].size()) != n)
            throw InvalidElement("idempotent dimension mismatch at " + g.mor(i).id);
        if (pa.map[static_cast<size_t>(i)].rows() != n || pa.map[static_cast<size_t>(i)].cols() != n)
            throw InvalidElement("map shape mismatch at " + g.mor(i).id);
    }

    auto witness = [&](int x) { return g.mor(x).id; };

    // Central idempotents.
    for (int i = 0; i < m; ++i) {
        if (!alg.is_idempotent(pa.idem[static_cast<size_t>(i)]))
            throw PartialActionAxiomViolation("unital", "1_g is not idempotent", witness(i));
        if (!alg.is_central(pa.idem[static_cast<size_t>(i)]))
            throw PartialActionAxiomViolation("unital", "1_g is not central", witness(i));
    }

    // A = (+)_y A_y: orthogonal object idempotents summing to 1.
    {
        Vec total = zero_vec(n);
        for (int y = 0; y < g.object_count(); ++y) {
            const Vec& ey = pa.one_of_object(y);
            for (int z = 0; z < y; ++z)
                if (!is_zero(alg.mul(ey, pa.one_of_object(z))))
                    throw PartialActionAxiomViolation("direct-sum", "object ideals are not orthogonal",
                                                      g.object(y) + ", " + g.object(z));
            add_scaled(total, 1, ey);
        }
        if (total != alg.unit())
            throw PartialActionAxiomViolation("direct-sum", "object idempotents do not sum to the unit", "-");
    }

    // (i) A_g is contained in A_{t(g)}.
    for (int i = 0; i < m; ++i) {
        if (alg.mul(pa.one(i), pa.one_of_object(g.tgt(i))) != pa.one(i))
            throw PartialActionAxiomViolation("(i)", "A_g not inside A_{t(g)}", witness(i));
    }

    // Ideal bases (needs only centrality, established above).
    for (int i = 0; i < m; ++i) {
        pa.ideal_basis.push_back(alg.idempotent_ideal_basis(pa.one(i)));
        pa.ideal_embed.push_back(Matrix::from_columns(n, pa.ideal_basis.back()));
        pa.ideal_coords.push_back(pa.ideal_basis.back().empty() ? Matrix(0, n)
                                                                : detail::left_inverse(pa.ideal_embed.back()));
    }

    // Normalization: alpha_g vanishes on (1 - 1_{g^-1}) A.
    for (int i = 0; i < m; ++i) {
        const Matrix& M = pa.map[static_cast<size_t>(i)];
        Matrix R = alg.right_mul_matrix(pa.one(g.inv(i)));
        if (!(M * R == M))
            throw PartialActionAxiomViolation("(ii)", "map does not vanish outside its domain ideal", witness(i));
    }

    // (ii) alpha_g : A_{g^-1} -> A_g is a ring isomorphism with alpha_g(1_{g^-1}) = 1_g.
    for (int i = 0; i < m; ++i) {
        const int gi = g.inv(i);
        auto rep = verify_ring_map(alg, alg, pa.map[static_cast<size_t>(i)], pa.ideal_basis[static_cast<size_t>(gi)],
                                   pa.ideal_basis[static_cast<size_t>(i)], &pa.one(gi), &pa.one(i));
        if (!rep.ok) throw PartialActionAxiomViolation("(ii)", rep.failure, witness(i));
    }

    // Honest inverses: invert the restriction of each map to its ideal pair.
    for (int i = 0; i < m; ++i) {
        const int gi = g.inv(i);
        if (pa.ideal_dim(i) == 0) {
            pa.inv_map.push_back(Matrix(n, n));
            continue;
        }
        Matrix restricted = pa.ideal_coords[static_cast<size_t>(i)] *
                            (pa.map[static_cast<size_t>(i)] * pa.ideal_embed[static_cast<size_t>(gi)]);
        auto restricted_inv = inverse(restricted);
        if (!restricted_inv)
            throw PartialActionAxiomViolation("(ii)", "map is not invertible between its ideals", witness(i));
        pa.inv_map.push_back(pa.ideal_embed[static_cast<size_t>(gi)] * (*restricted_inv) *
                             (pa.ideal_coords[static_cast<size_t>(i)] * alg.right_mul_matrix(pa.one(i))));
    }

    // (iii) alpha at an identity is the identity of A_y.
    for (int y = 0; y < g.object_count(); ++y) {
        const int e = g.identity_of(y);
        if (!(pa.map[static_cast<size_t>(e)] == alg.right_mul_matrix(pa.one(e))))
            throw PartialActionAxiomViolation("(iii)", "identity morphism does not act as the identity",
                                              g.object(y));
    }

    // (v) alpha_h^-1(A_{g^-1} /\ A_h) lies in A_{(gh)^-1} and alpha_{gh} extends
    // alpha_g alpha_h there. The inverse of alpha_h is solved, not assumed.
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (!g.composable(a, b)) continue;
            const int ab = g.compose(a, b);
            Vec e = alg.mul(pa.one(g.inv(a)), pa.one(b));
            for (const Vec& v : alg.idempotent_ideal_basis(e)) {
                Vec w = pa.apply_inverse(b, v);
                if (alg.mul(w, pa.one(g.inv(ab))) != w)
                    throw PartialActionAxiomViolation("(v)", "preimage leaves A_{(gh)^-1}",
                                                      witness(a) + " o " + witness(b));
                Vec lhs = pa.map[static_cast<size_t>(ab)].apply(w);
                Vec rhs = pa.map[static_cast<size_t>(a)].apply(pa.map[static_cast<size_t>(b)].apply(w));
                if (lhs != rhs)
                    throw PartialActionAxiomViolation("(v)", "alpha_{gh} does not extend alpha_g alpha_h",
                                                      witness(a) + " o " + witness(b));
            }
        }

    pa.global = true;
    for (int i = 0; i < m; ++i)
        if (pa.one(i) != pa.one_of_object(g.tgt(i))) {
            pa.global = false;
            break;
        }
    return pa;
}

/// Consequences of the axioms, verified per instance: alpha_{g^-1} equals the
/// inverse of alpha_g as maps of ideals, alpha_g(A_{g^-1} /\ A_h) = A_g /\ A_{gh}
/// on composable pairs, and globality is equivalent to 1_g = 1_{t(g)}.
inline VerificationReport check_action_identities(const PartialActionData& pa) {
    VerificationReport rep;
    const auto& g = pa.G;
    const auto& alg = pa.A;
    for (int i = 0; i < g.size() && rep.ok; ++i) {
        const int gi = g.inv(i);
        for (const Vec& v : pa.ideal_basis[static_cast<size_t>(gi)]) {
            if (pa.map[static_cast<size_t>(gi)].apply(pa.map[static_cast<size_t>(i)].apply(v)) != v)
                rep.fail("alpha_{g^-1} alpha_g != id on A_{g^-1} at " + g.mor(i).id);
        }
        for (const Vec& v : pa.ideal_basis[static_cast<size_t>(i)]) {
            if (pa.map[static_cast<size_t>(i)].apply(pa.map[static_cast<size_t>(gi)].apply(v)) != v)
                rep.fail("alpha_g alpha_{g^-1} != id on A_g at " + g.mor(i).id);
        }
        // Matrix-level: the stored data for g^-1 coincides with the solved inverse of alpha_g.
        if (!(pa.map[static_cast<size_t>(gi)] == pa.inv_map[static_cast<size_t>(i)]))
            rep.fail("stored alpha_{g^-1} differs from the solved inverse of alpha_g at " + g.mor(i).id);
    }
    for (int a = 0; a < g.size() && rep.ok; ++a)
        for (int b = 0; b < g.size() && rep.ok; ++b) {
            if (!g.composable(a, b)) continue;
            Vec e = alg.mul(pa.one(g.inv(a)), pa.one(b));
            Vec f = alg.mul(pa.one(a), pa.one(g.compose(a, b)));
            SpanBuilder lhs(alg.dim()), rhs(alg.dim());
            for (const Vec& v : alg.idempotent_ideal_basis(e)) lhs.insert(pa.map[static_cast<size_t>(a)].apply(v));
            for (const Vec& v : alg.idempotent_ideal_basis(f)) rhs.insert(v);
            bool eq = lhs.rank() == rhs.rank();
            for (const Vec& v : lhs.basis())
                if (!rhs.contains(v)) eq = false;
            if (!eq)
                rep.fail("alpha_g(A_{g^-1} /\\ A_h) != A_g /\\ A_{gh} on " + g.mor(a).id + " o " + g.mor(b).id);
        }
    bool unit_flag = true;
    for (int i = 0; i < g.size(); ++i)
        if (pa.one(i) != pa.one_of_object(g.tgt(i))) unit_flag = false;
    if (unit_flag != pa.global) rep.fail("globality flag disagrees with idempotent comparison");
    rep.note(pa.global ? "action is global" : "action is genuinely partial");
    return rep;
}

/// Restriction to the isotropy group at x: a partial action of the one-object
/// groupoid G(x) on the algebra A_x (unit 1_x), revalidated from scratch.
inline PartialActionData restrict_to_isotropy(const PartialActionData& pa, int x) {
    if (x < 0 || x >= pa.G.object_count()) throw UnknownObject("isotropy base object out of range");
    IsotropyGroup iso = isotropy_group(pa.G, x);
    const int e = pa.G.identity_of(x);
    const auto& basis = pa.ideal_basis[static_cast<size_t>(e)];
    const Matrix& E = pa.ideal_embed[static_cast<size_t>(e)];
    const Matrix& L = pa.ideal_coords[static_cast<size_t>(e)];
    const int k = static_cast<int>(basis.size());

    std::vector<std::string> labels;
    for (int i = 0; i < k; ++i) {
        int only = -1;
        const Vec& v = basis[static_cast<size_t>(i)];
        for (int r = 0; r < pa.A.dim(); ++r)
            if (!v[static_cast<size_t>(r)].is_zero()) only = (only == -1 && v[static_cast<size_t>(r)] == Rational(1)) ? r : -2;
        labels.push_back(only >= 0 ? pa.A.label(only) : "b" + std::to_string(i));
    }
    std::vector<std::tuple<int, int, SparseVec>> products;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Vec p = pa.A.mul(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
            SparseVec c = to_sparse(L.apply(p));
            if (E.apply(L.apply(p)) != p) throw InternalError("object ideal is not multiplicatively closed");
            if (!c.empty()) products.emplace_back(i, j, c);
        }
    StructAlgebra Ax(k, labels, products, L.apply(pa.one(e)));
    Ax.validate();

    std::vector<Vec> idem;
    std::vector<Matrix> maps;
    for (int h : iso.loop_ids) {
        idem.push_back(L.apply(pa.one(h)));
        maps.push_back(L * pa.map[static_cast<size_t>(h)] * E);
    }
    return validate_partial_action(iso.group, std::move(Ax), std::move(idem), std::move(maps));
}

/// Restriction of the data to one connected component: the subgroupoid acts
/// on (+)_{y in X} A_y.
inline PartialActionData restrict_to_component(const PartialActionData& pa, const GroupoidComponent& comp) {
    Vec e = zero_vec(pa.A.dim());
    for (int y : comp.object_ids) add_scaled(e, 1, pa.one_of_object(y));
    auto basis = pa.A.idempotent_ideal_basis(e);
    Matrix E = Matrix::from_columns(pa.A.dim(), basis);
    Matrix L = detail::left_inverse(E);
    const int k = static_cast<int>(basis.size());

    std::vector<std::string> labels;
    for (int i = 0; i < k; ++i) {
        int only = -1;
        const Vec& v = basis[static_cast<size_t>(i)];
        for (int r = 0; r < pa.A.dim(); ++r)
            if (!v[static_cast<size_t>(r)].is_zero()) only = (only == -1 && v[static_cast<size_t>(r)] == Rational(1)) ? r : -2;
        labels.push_back(only >= 0 ? pa.A.label(only) : "b" + std::to_string(i));
    }
    std::vector<std::tuple<int, int, SparseVec>> products;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Vec p = pa.A.mul(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
            Vec c = L.apply(p);
            if (E.apply(c) != p) throw InternalError("component ideal is not multiplicatively closed");
            if (!is_zero(c)) products.emplace_back(i, j, to_sparse(c));
        }
    StructAlgebra Ar(k, labels, products, L.apply(e));
    Ar.validate();

    std::vector<Vec> idem;
    std::vector<Matrix> maps;
    for (int gp : comp.morphism_ids) {
        idem.push_back(L.apply(pa.one(gp)));
        maps.push_back(L * pa.map[static_cast<size_t>(gp)] * E);
    }
    return validate_partial_action(comp.sub, std::move(Ar), std::move(idem), std::move(maps));
}

/// Witness that a transversal satisfies 1_{tau_y^-1} = 1_x and 1_{tau_y} = 1_y
/// for every object: the condition under which the skew groupoid ring
/// factorizes through the coarse groupoid.
struct GroupTypeCertificate {
    int base = -1;
    Transversal tau;
};

inline bool transversal_is_group_type(const PartialActionData& pa, int x, const Transversal& t) {
    for (int y = 0; y < pa.G.object_count(); ++y) {
        int ty = t.tau[static_cast<size_t>(y)];
        if (pa.one(pa.G.inv(ty)) != pa.one_of_object(x)) return false;
        if (pa.one(ty) != pa.one_of_object(y)) return false;
    }
    return true;
}

/// First group-type transversal at x in deterministic enumeration order, or
/// nothing. Requires a connected groupoid.
inline std::optional<GroupTypeCertificate> find_group_type(const PartialActionData& pa, int x) {
    for (const Transversal& t : enumerate_transversals(pa.G, x))
        if (transversal_is_group_type(pa, x, t)) return GroupTypeCertificate{x, t};
    return std::nullopt;
}

/// Exhaustive listing mode: all group-type transversals at x.
inline std::vector<Transversal> group_type_transversals(const PartialActionData& pa, int x) {
    std::vector<Transversal> out;
    for (const Transversal& t : enumerate_transversals(pa.G, x))
        if (transversal_is_group_type(pa, x, t)) out.push_back(t);
    return out;
}

/// Transport of a certificate at x to another base object z via
/// tau'_y = tau_y o tau_z^-1; verifies the transported idempotent equalities.
inline GroupTypeCertificate transport_certificate(const PartialActionData& pa, const GroupTypeCertificate& cert,
                                                  int z) {
    Transversal t;
    t.base = z;
    for (int y = 0; y < pa.G.object_count(); ++y)
        t.tau.push_back(pa.G.compose(cert.tau.tau[static_cast<size_t>(y)], pa.G.inv(cert.tau.tau[static_cast<size_t>(z)])));
    if (!transversal_is_group_type(pa, z, t))
        throw InternalError("transported transversal lost the group-type property");
    return GroupTypeCertificate{z, t};
}

}  // namespace parskew
