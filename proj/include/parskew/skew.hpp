#pragma once

#include <string>
#include <utility>
#include <vector>

#include "parskew/partial_action.hpp"

namespace parskew {

/// The skew ring of a unital partial action: carrier basis {b delta_g} with
/// one block per morphism spanned by the ideal basis of A_g, product
/// (a delta_g)(b delta_h) = a alpha_g(b 1_{g^-1}) delta_{gh} on composable
/// pairs and zero otherwise, unit Sum_y 1_y delta_{id_y}.
struct SkewRing {
    PartialActionData action;
    StructAlgebra carrier;
    std::vector<std::pair<int, int>> slots;  // carrier index -> (morphism, position in its ideal basis)
    std::vector<int> offset;                 // morphism -> first carrier index of its block

    int dim() const { return carrier.dim(); }

    /// Coefficient a (ambient A coordinates, must lie in A_g) placed in block g.
    Vec embed_coeff(int g, const Vec& a) const {
        Vec c = action.ideal_coordinates(g, a);
        Vec out = zero_vec(dim());
        for (size_t i = 0; i < c.size(); ++i) out[static_cast<size_t>(offset[static_cast<size_t>(g)]) + i] = c[i];
        return out;
    }

    /// The block-g coefficient of a carrier element, in ambient A coordinates.
    Vec block_coeff(const Vec& s, int g) const {
        const auto& basis = action.ideal_basis[static_cast<size_t>(g)];
        Vec out = zero_vec(action.A.dim());
        for (size_t i = 0; i < basis.size(); ++i)
            add_scaled(out, s[static_cast<size_t>(offset[static_cast<size_t>(g)]) + i], basis[i]);
        return out;
    }

    /// The ring monomorphism A -> skew ring, a -> Sum_y (a 1_y) delta_{id_y}.
    Vec embed_algebra(const Vec& a) const {
        Vec out = zero_vec(dim());
        for (int y = 0; y < action.G.object_count(); ++y) {
            const int e = action.G.identity_of(y);
            Vec block = embed_coeff(e, action.A.mul(a, action.one(e)));
            add_scaled(out, 1, block);
        }
        return out;
    }

    Matrix embed_algebra_matrix() const {
        Matrix m(dim(), action.A.dim());
        for (int i = 0; i < action.A.dim(); ++i) m.set_column(i, embed_algebra(action.A.basis_vec(i)));
        return m;
    }
};

inline SkewRing build_skew_ring(const PartialActionData& pa) {
    SkewRing s;
    s.action = pa;
    const auto& g = pa.G;
    const auto& alg = pa.A;
    int dim = 0;
    for (int i = 0; i < g.size(); ++i) {
        s.offset.push_back(dim);
        for (int p = 0; p < pa.ideal_dim(i); ++p) s.slots.emplace_back(i, p);
        dim += pa.ideal_dim(i);
    }

    std::vector<std::string> labels;
    for (auto [mor, p] : s.slots) {
        const Vec& v = pa.ideal_basis[static_cast<size_t>(mor)][static_cast<size_t>(p)];
        int only = -1;
        for (int r = 0; r < alg.dim(); ++r)
            if (!v[static_cast<size_t>(r)].is_zero()) only = (only == -1 && v[static_cast<size_t>(r)] == Rational(1)) ? r : -2;
        std::string coeff = only >= 0 ? alg.label(only) : "b" + std::to_string(p);
        labels.push_back(coeff + " d[" + g.mor(mor).id + "]");
    }

    std::vector<std::tuple<int, int, SparseVec>> products;
    for (int i = 0; i < dim; ++i) {
        auto [gm, p] = s.slots[static_cast<size_t>(i)];
        const Vec& a = pa.ideal_basis[static_cast<size_t>(gm)][static_cast<size_t>(p)];
        for (int j = 0; j < dim; ++j) {
            auto [hm, q] = s.slots[static_cast<size_t>(j)];
            if (!g.composable(gm, hm)) continue;
            const Vec& b = pa.ideal_basis[static_cast<size_t>(hm)][static_cast<size_t>(q)];
            Vec c = alg.mul(a, pa.map[static_cast<size_t>(gm)].apply(b));
            if (is_zero(c)) continue;
            const int ghm = g.compose(gm, hm);
            Vec coords = pa.ideal_coords[static_cast<size_t>(ghm)].apply(c);
            if (pa.ideal_embed[static_cast<size_t>(ghm)].apply(coords) != c)
                throw InternalError("skew product left the ideal of the composite morphism");
            SparseVec entry;
            for (size_t k = 0; k < coords.size(); ++k)
                if (!coords[k].is_zero())
                    entry.emplace_back(s.offset[static_cast<size_t>(ghm)] + static_cast<int>(k), coords[k]);
            products.emplace_back(i, j, std::move(entry));
        }
    }

    Vec unit = zero_vec(dim);
    for (int y = 0; y < g.object_count(); ++y) {
        const int e = g.identity_of(y);
        Vec coords = pa.ideal_coords[static_cast<size_t>(e)].apply(pa.one(e));
        for (size_t k = 0; k < coords.size(); ++k)
            unit[static_cast<size_t>(s.offset[static_cast<size_t>(e)]) + k] = coords[k];
    }

    s.carrier = StructAlgebra(dim, std::move(labels), products, std::move(unit));
    s.carrier.validate();  // throws AssociativityFailure if an invalid action slipped through
    return s;
}

/// The global action of the coarse groupoid induced by a group-type
/// transversal: the pair (y, z) acts as alpha_{tau_z} alpha_{tau_y^-1} on
/// B_(y,z) = A_z.
inline PartialActionData induced_coarse_action(const PartialActionData& pa, const GroupTypeCertificate& cert) {
    FinGroupoid coarse = coarse_groupoid(pa.G.objects());
    std::vector<Vec> idem;
    std::vector<Matrix> maps;
    for (int u = 0; u < coarse.size(); ++u) {
        const int y = coarse.src(u), z = coarse.tgt(u);
        idem.push_back(pa.one_of_object(z));
        maps.push_back(pa.map[static_cast<size_t>(cert.tau.tau[static_cast<size_t>(z)])] *
                       pa.map[static_cast<size_t>(pa.G.inv(cert.tau.tau[static_cast<size_t>(y)]))]);
    }
    PartialActionData beta = validate_partial_action(std::move(coarse), pa.A, std::move(idem), std::move(maps));
    if (!beta.global) throw InternalError("induced coarse action is not global");
    return beta;
}

/// The partial action of the isotropy group G(x) on C = A * G0^2: the ideal
/// C_h is generated by 1'_h = Sum_z alpha_{tau_z}(1_h) delta_{id_z} and
/// gamma_h acts blockwise as alpha_{tau_{t(u)}} alpha_h alpha_{tau_{t(u)}}^-1.
struct GammaAction {
    IsotropyGroup iso;                 // loops at the base object, in the parent groupoid
    PartialActionData pa;              // one-object action on the carrier of C
    std::vector<Vec> one_primed;       // per loop: 1'_h in carrier coordinates
    VerificationReport block_formula;  // direct check of the defining block rule
};

inline GammaAction build_gamma(const PartialActionData& pa, const GroupTypeCertificate& cert, const SkewRing& C) {
    GammaAction out;
    out.iso = isotropy_group(pa.G, cert.base);
    const auto& beta = C.action;
    const FinGroupoid& coarse = beta.G;
    const int cdim = C.dim();

    std::vector<Vec> idem;
    std::vector<Matrix> maps;
    for (int h : out.iso.loop_ids) {
        Vec e = zero_vec(cdim);
        for (int z = 0; z < pa.G.object_count(); ++z) {
            Vec az = pa.map[static_cast<size_t>(cert.tau.tau[static_cast<size_t>(z)])].apply(pa.one(h));
            add_scaled(e, 1, C.embed_coeff(coarse.identity_of(z), az));
        }
        if (!C.carrier.is_idempotent(e) || !C.carrier.is_central(e))
            throw CentralityFailure("1'_" + pa.G.mor(h).id + " is not a central idempotent of the coarse skew ring");
        out.one_primed.push_back(e);
        idem.push_back(e);

        Matrix gamma_h(cdim, cdim);
        for (int slot = 0; slot < cdim; ++slot) {
            auto [u, p] = C.slots[static_cast<size_t>(slot)];
            const int tz = cert.tau.tau[static_cast<size_t>(coarse.tgt(u))];
            const Vec& a = beta.ideal_basis[static_cast<size_t>(u)][static_cast<size_t>(p)];
            // alpha_{tau_z} alpha_h alpha_{tau_z}^-1 of the block coefficient.
            Vec img = pa.map[static_cast<size_t>(tz)].apply(
                pa.map[static_cast<size_t>(h)].apply(pa.apply_inverse(tz, a)));
            gamma_h.set_column(slot, C.embed_coeff(u, img));
        }
        maps.push_back(std::move(gamma_h));
    }

    out.pa = validate_partial_action(out.iso.group, C.carrier, std::move(idem), std::move(maps));

    // The defining rule: gamma_h(alpha_{tau_{t(u)}}(a) delta_u) =
    // alpha_{tau_{t(u)}}(alpha_h(a)) delta_u for a in A_{h^-1}.
    for (size_t hi = 0; hi < out.iso.loop_ids.size() && out.block_formula.ok; ++hi) {
        const int h = out.iso.loop_ids[hi];
        const int hinv = pa.G.inv(h);
        for (int u = 0; u < coarse.size() && out.block_formula.ok; ++u) {
            const int tz = cert.tau.tau[static_cast<size_t>(coarse.tgt(u))];
            for (const Vec& a : pa.ideal_basis[static_cast<size_t>(hinv)]) {
                Vec lhs = out.pa.map[hi].apply(C.embed_coeff(u, pa.map[static_cast<size_t>(tz)].apply(a)));
                Vec rhs = C.embed_coeff(
                    u, pa.map[static_cast<size_t>(tz)].apply(pa.map[static_cast<size_t>(h)].apply(a)));
                if (lhs != rhs)
                    out.block_formula.fail("block rule fails at loop " + pa.G.mor(h).id + ", pair " +
                                           coarse.mor(u).id);
            }
        }
    }
    if (!out.block_formula.ok) throw InternalError(out.block_formula.failure);
    out.block_formula.note("block rule verified for " + std::to_string(out.iso.loop_ids.size()) + " loops");
    return out;
}

inline SkewRing build_iterated_ring(const GammaAction& gamma) { return build_skew_ring(gamma.pa); }

/// Verified ring isomorphism between two skew rings, with the inverse built
/// from the explicit preimage construction rather than matrix inversion.
struct IsoWitness {
    Matrix forward;
    Matrix inverse;
    bool matrix_inverse_checked = false;
    VerificationReport report;
};

struct FactorizationResult {
    GroupTypeCertificate cert;
    SkewRing S;             // A * G
    PartialActionData beta;
    SkewRing C;             // A * G0^2
    GammaAction gamma;
    SkewRing T;             // C * G(x)
    IsoWitness iso;
};

/// Build the full factorization S = A*G -> (A*G0^2)*G(x) for a group-type
/// action and verify the isomorphism a delta_g -> a delta_{(s(g),t(g))}
/// delta_{g_x} in four steps: well-definedness, multiplicativity on all
/// carrier basis pairs, injectivity, surjectivity with the explicit inverse
/// w = alpha_{tau_z}(a) delta_{tau_z h tau_y^-1}.
inline FactorizationResult build_factorization(const PartialActionData& pa, const GroupTypeCertificate& cert,
                                               bool crosscheck_matrix_inverse = true) {
    if (!pa.G.connected()) throw NotConnected("factorization requires a connected groupoid");
    FactorizationResult out;
    out.cert = cert;
    out.S = build_skew_ring(pa);
    out.beta = induced_coarse_action(pa, cert);
    out.C = build_skew_ring(out.beta);
    out.gamma = build_gamma(pa, cert, out.C);
    out.T = build_iterated_ring(out.gamma);
    const FinGroupoid& G = pa.G;
    const FinGroupoid& coarse = out.beta.G;
    auto& rep = out.iso.report;

    if (out.S.dim() != out.T.dim())
        throw IsoFailure(0, "dimension mismatch: " + std::to_string(out.S.dim()) + " vs " +
                                std::to_string(out.T.dim()));
    rep.note("both rings have dimension " + std::to_string(out.S.dim()));

    auto loop_of = [&](int g) {
        return G.compose(G.inv(cert.tau.tau[static_cast<size_t>(G.tgt(g))]),
                         G.compose(g, cert.tau.tau[static_cast<size_t>(G.src(g))]));
    };
    auto coarse_of = [&](int g) {
        if (G.src(g) == G.tgt(g)) return coarse.identity_of(G.src(g));
        return coarse.mor_index(G.object(G.src(g)) + ">" + G.object(G.tgt(g)));
    };

    // (gh)_x = g_x h_x on the whole table.
    for (int a = 0; a < G.size(); ++a)
        for (int b = 0; b < G.size(); ++b) {
            if (!G.composable(a, b)) continue;
            if (loop_of(G.compose(a, b)) != G.compose(loop_of(a), loop_of(b)))
                throw IsoFailure(2, "loop parts are not multiplicative on " + G.mor(a).id + " o " + G.mor(b).id);
        }

    // Step 1: the image of each basis slot lands in the claimed ideal block.
    Matrix forward(out.T.dim(), out.S.dim());
    for (int g = 0; g < G.size(); ++g) {
        const int gx = loop_of(g);
        const int gtau = G.compose(g, cert.tau.tau[static_cast<size_t>(G.src(g))]);
        // Ideal identity behind well-definedness: alpha_{tau_{t(g)}}(1_{g_x}) = 1_{g tau_{s(g)}} >= 1_g.
        Vec img_idem = pa.map[static_cast<size_t>(cert.tau.tau[static_cast<size_t>(G.tgt(g))])].apply(pa.one(gx));
        if (img_idem != pa.one(gtau)) throw IsoFailure(1, "ideal identity fails at " + G.mor(g).id);
        if (pa.A.mul(pa.one(g), pa.one(gtau)) != pa.one(g))
            throw IsoFailure(1, "A_g is not inside the transported ideal at " + G.mor(g).id);

        const int hpos = out.gamma.iso.position_of(gx);
        for (int p = 0; p < pa.ideal_dim(g); ++p) {
            const Vec& a = pa.ideal_basis[static_cast<size_t>(g)][static_cast<size_t>(p)];
            Vec c = out.C.embed_coeff(coarse_of(g), a);
            if (out.C.carrier.mul(c, out.gamma.one_primed[static_cast<size_t>(hpos)]) != c)
                throw IsoFailure(1, "image of " + G.mor(g).id + " slot leaves C_{g_x}");
            Vec t = out.T.embed_coeff(hpos, c);
            forward.set_column(out.S.offset[static_cast<size_t>(g)] + p, t);
        }
    }

    // Step 2: multiplicativity on all carrier basis pairs.
    for (int i = 0; i < out.S.dim(); ++i) {
        Vec fi = forward.column(i);
        for (int j = 0; j < out.S.dim(); ++j) {
            Vec lhs = forward.apply(out.S.carrier.mul(out.S.carrier.basis_vec(i), out.S.carrier.basis_vec(j)));
            Vec rhs = out.T.carrier.mul(fi, forward.column(j));
            if (lhs != rhs)
                throw IsoFailure(2, "not multiplicative on slots " + out.S.carrier.label(i) + ", " +
                                        out.S.carrier.label(j));
        }
    }
    rep.note("multiplicative on all " + std::to_string(out.S.dim()) + "^2 basis pairs");

    // Step 3: injectivity by kernel computation.
    if (!kernel_basis(forward).empty()) throw IsoFailure(3, "forward map has a nonzero kernel");

    // Step 4: surjectivity: rank equals dimension, and the explicit preimage
    // construction yields a two-sided inverse.
    if (rank(forward) != out.T.dim()) throw IsoFailure(4, "forward map is not surjective");
    Matrix inverse_map(out.S.dim(), out.T.dim());
    for (int t = 0; t < out.T.dim(); ++t) {
        auto [hpos, q] = out.T.slots[static_cast<size_t>(t)];
        const int h = out.gamma.iso.loop_ids[static_cast<size_t>(hpos)];
        const Vec& w = out.gamma.pa.ideal_basis[static_cast<size_t>(hpos)][static_cast<size_t>(q)];
        Vec preimage = zero_vec(out.S.dim());
        for (int u = 0; u < coarse.size(); ++u) {
            Vec au = out.C.block_coeff(w, u);
            if (is_zero(au)) continue;
            const int y = coarse.src(u), z = coarse.tgt(u);
            const int gu = G.compose(cert.tau.tau[static_cast<size_t>(z)],
                                     G.compose(h, G.inv(cert.tau.tau[static_cast<size_t>(y)])));
            add_scaled(preimage, 1, out.S.embed_coeff(gu, au));
        }
        inverse_map.set_column(t, preimage);
    }
    if (!(inverse_map * forward == Matrix::identity(out.S.dim())))
        throw IsoFailure(4, "explicit preimage is not a left inverse");
    if (!(forward * inverse_map == Matrix::identity(out.T.dim())))
        throw IsoFailure(4, "explicit preimage is not a right inverse");
    rep.note("explicit inverse verified on every basis slot");

    if (crosscheck_matrix_inverse) {
        auto minv = inverse(forward);
        if (!minv || !(*minv == inverse_map)) throw IsoFailure(4, "explicit inverse differs from the matrix inverse");
        out.iso.matrix_inverse_checked = true;
        rep.note("explicit inverse matches the matrix inverse exactly");
    }
    out.iso.forward = std::move(forward);
    out.iso.inverse = std::move(inverse_map);
    return out;
}

/// For a global action the isotropy part of the factorization is itself
/// global: every 1'_h is the unit of C. Reports not-applicable otherwise.
struct GlobalityReport {
    bool applicable = false;
    bool all_units = false;
    std::string detail;
};

inline GlobalityReport check_gamma_globality(const PartialActionData& pa) {
    GlobalityReport out;
    if (!pa.global) {
        out.applicable = false;
        out.detail = "action is not global; skew group ring reduction does not apply";
        return out;
    }
    out.applicable = true;
    int x = 0;  // for a global action every transversal is group-type
    auto cert = find_group_type(pa, x);
    if (!cert) throw InternalError("global action without a group-type transversal");
    PartialActionData beta = induced_coarse_action(pa, *cert);
    SkewRing C = build_skew_ring(beta);
    GammaAction gamma = build_gamma(pa, *cert, C);
    out.all_units = true;
    for (size_t i = 0; i < gamma.one_primed.size(); ++i) {
        if (gamma.one_primed[i] != C.carrier.unit()) {
            out.all_units = false;
            out.detail = "1'_" + pa.G.mor(gamma.iso.loop_ids[i]).id + " is not the unit";
            return out;
        }
    }
    out.detail = "every C_h equals C: the iterated ring is a skew group ring over C";
    return out;
}

}  // namespace parskew
