#pragma once

#include <random>
#include <string>
#include <vector>

#include "parskew/instance.hpp"

namespace parskew {

/// Size ceilings and determinism knobs for random instance generation.
struct GeneratorOptions {
    int max_objects = 3;
    int max_dim = 12;       // dim of the base algebra A
    int max_isotropy = 4;   // order of the isotropy group
    bool allow_restriction = true;
};

namespace gendetail {

struct BlockType {
    std::string name;
    int dim;
    std::vector<std::tuple<int, int, SparseVec>> products;
    Vec unit;
    std::vector<Vec> central_idempotents;        // nonzero, unit included
    std::vector<std::pair<int, Matrix>> autos;   // (multiplicative order, matrix)
};

inline Matrix perm_matrix(int n, const std::vector<int>& image) {
    Matrix m(n, n);
    for (int c = 0; c < n; ++c) m.at(image[static_cast<size_t>(c)], c) = 1;
    return m;
}

inline std::vector<BlockType> block_catalog() {
    std::vector<BlockType> out;
    {
        BlockType b{"Q", 1, {{0, 0, {{0, 1}}}}, {1}, {{1}}, {}};
        b.autos = {{1, Matrix::identity(1)}};
        out.push_back(std::move(b));
    }
    {
        // Q(i): basis 1, i.
        BlockType b{"Qi", 2, {}, {1, 0}, {}, {}};
        b.products = {{0, 0, {{0, 1}}}, {0, 1, {{1, 1}}}, {1, 0, {{1, 1}}}, {1, 1, {{0, -1}}}};
        b.central_idempotents = {{1, 0}};
        Matrix conj = Matrix::identity(2);
        conj.at(1, 1) = -1;
        b.autos = {{1, Matrix::identity(2)}, {2, conj}};
        out.push_back(std::move(b));
    }
    {
        // Q x Q with the swap.
        BlockType b{"QQ", 2, {{0, 0, {{0, 1}}}, {1, 1, {{1, 1}}}}, {1, 1}, {}, {}};
        b.central_idempotents = {{1, 0}, {0, 1}, {1, 1}};
        b.autos = {{1, Matrix::identity(2)}, {2, perm_matrix(2, {1, 0})}};
        out.push_back(std::move(b));
    }
    {
        // Q^3 with the 3-cycle.
        BlockType b{"QQQ", 3, {{0, 0, {{0, 1}}}, {1, 1, {{1, 1}}}, {2, 2, {{2, 1}}}}, {1, 1, 1}, {}, {}};
        for (int mask = 1; mask < 8; ++mask) {
            Vec e = zero_vec(3);
            for (int k = 0; k < 3; ++k)
                if (mask & (1 << k)) e[static_cast<size_t>(k)] = 1;
            b.central_idempotents.push_back(std::move(e));
        }
        b.autos = {{1, Matrix::identity(3)}, {3, perm_matrix(3, {1, 2, 0})}};
        out.push_back(std::move(b));
    }
    {
        // Q^4 with a 4-cycle and a double swap.
        BlockType b{"Q4", 4, {}, {1, 1, 1, 1}, {}, {}};
        for (int k = 0; k < 4; ++k) b.products.emplace_back(k, k, SparseVec{{k, 1}});
        for (int mask = 1; mask < 16; ++mask) {
            Vec e = zero_vec(4);
            for (int k = 0; k < 4; ++k)
                if (mask & (1 << k)) e[static_cast<size_t>(k)] = 1;
            b.central_idempotents.push_back(std::move(e));
        }
        b.autos = {{1, Matrix::identity(4)}, {4, perm_matrix(4, {1, 2, 3, 0})}, {2, perm_matrix(4, {1, 0, 3, 2})}};
        out.push_back(std::move(b));
    }
    {
        // 2x2 matrices; conjugation by the swap matrix permutes E11<->E22, E12<->E21.
        BlockType b{"M2", 4, {}, {1, 0, 0, 1}, {}, {}};
        // basis E11, E12, E21, E22; Eij Ekl = delta_{jk} Eil
        auto idx = [](int i, int j) { return i * 2 + j; };
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l)
                        if (j == k) b.products.emplace_back(idx(i, j), idx(k, l), SparseVec{{idx(i, l), 1}});
        b.central_idempotents = {{1, 0, 0, 1}};
        b.autos = {{1, Matrix::identity(4)}, {2, perm_matrix(4, {3, 2, 1, 0})}};
        out.push_back(std::move(b));
    }
    return out;
}

struct GroupSpec {
    std::string name;
    int order;
    std::vector<std::vector<int>> table;
    std::vector<int> generator_orders;       // orders required of the chosen images
    std::vector<std::vector<int>> as_words;  // element -> exponents of each generator
};

inline std::vector<GroupSpec> group_catalog() {
    auto cyclic = [](int k) {
        GroupSpec s;
        s.name = "C" + std::to_string(k);
        s.order = k;
        s.table.assign(static_cast<size_t>(k), std::vector<int>(static_cast<size_t>(k)));
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) s.table[static_cast<size_t>(a)][static_cast<size_t>(b)] = (a + b) % k;
        s.generator_orders = {k};
        for (int e = 0; e < k; ++e) s.as_words.push_back({e});
        return s;
    };
    std::vector<GroupSpec> out = {cyclic(1), cyclic(2), cyclic(3), cyclic(4)};
    {
        GroupSpec s;
        s.name = "C2xC2";
        s.order = 4;
        s.table.assign(4, std::vector<int>(4));
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) s.table[static_cast<size_t>(a)][static_cast<size_t>(b)] = a ^ b;
        s.generator_orders = {2, 2};
        for (int e = 0; e < 4; ++e) s.as_words.push_back({e & 1, (e >> 1) & 1});
        out.push_back(std::move(s));
    }
    return out;
}

inline Matrix matrix_pow(const Matrix& m, int e) {
    Matrix acc = Matrix::identity(m.rows());
    for (int i = 0; i < e; ++i) acc = acc * m;
    return acc;
}

}  // namespace gendetail

/// Build a random instance: a global action of (coarse groupoid on n objects)
/// x H on a direct sum of copies of a block algebra, where H acts by chosen
/// automorphisms; then (optionally) every datum is restricted to the ideal of
/// a random central idempotent, which generally destroys both globality and
/// the group-type property while preserving the axioms.
inline InstanceFile generate_instance(std::mt19937_64& rng, const GeneratorOptions& opt, const std::string& name) {
    using namespace gendetail;
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<uint64_t>(n)); };

    static const std::vector<BlockType> blocks = block_catalog();
    static const std::vector<GroupSpec> groups = group_catalog();

    const int n_obj = 1 + pick(opt.max_objects);

    // Admissible (group, block, generator images) triples under the ceilings.
    std::vector<const GroupSpec*> gs;
    for (const auto& g : groups)
        if (g.order <= opt.max_isotropy) gs.push_back(&g);
    const GroupSpec& H = *gs[static_cast<size_t>(pick(static_cast<int>(gs.size())))];

    std::vector<const BlockType*> bs;
    for (const auto& b : blocks)
        if (b.dim * n_obj <= opt.max_dim) bs.push_back(&b);
    const BlockType& D = *bs[static_cast<size_t>(pick(static_cast<int>(bs.size())))];

    // One automorphism per generator, of compatible order; they commute
    // automatically here because at most one nontrivial generator image is used
    // unless both come from the same commuting family (permutation powers).
    std::vector<Matrix> gen_imgs;
    for (int go : H.generator_orders) {
        std::vector<const Matrix*> cands;
        for (const auto& [ord, m] : D.autos)
            if (go % ord == 0) cands.push_back(&m);
        gen_imgs.push_back(*cands[static_cast<size_t>(pick(static_cast<int>(cands.size())))]);
    }
    // sigma_h for every element of H from its word in the generators.
    std::vector<Matrix> sigma;
    for (int e = 0; e < H.order; ++e) {
        Matrix m = Matrix::identity(D.dim);
        for (size_t gi = 0; gi < gen_imgs.size(); ++gi)
            m = m * matrix_pow(gen_imgs[gi], H.as_words[static_cast<size_t>(e)][gi]);
        sigma.push_back(std::move(m));
    }

    // Objects and the product groupoid (identities first).
    std::vector<std::string> objects;
    for (int i = 0; i < n_obj; ++i) objects.push_back("x" + std::to_string(i));
    GroupoidDescription desc;
    desc.objects = objects;
    auto mor_name = [&](int y, int z, int h) {
        return "(" + objects[static_cast<size_t>(y)] + ">" + objects[static_cast<size_t>(z)] + "|h" +
               std::to_string(h) + ")";
    };
    auto mor_id = [&](int y, int z, int h) {
        if (y == z && h == 0) return "id:" + objects[static_cast<size_t>(y)];
        return mor_name(y, z, h);
    };
    for (int y = 0; y < n_obj; ++y)
        for (int z = 0; z < n_obj; ++z)
            for (int h = 0; h < H.order; ++h) {
                if (y == z && h == 0) continue;
                desc.morphisms.push_back({mor_name(y, z, h), objects[static_cast<size_t>(y)], objects[static_cast<size_t>(z)]});
            }
    for (int y = 0; y < n_obj; ++y)
        for (int z = 0; z < n_obj; ++z)
            for (int w = 0; w < n_obj; ++w)
                for (int ha = 0; ha < H.order; ++ha)
                    for (int hb = 0; hb < H.order; ++hb)
                        desc.compositions.push_back({mor_id(y, z, ha), mor_id(w, y, hb),
                                                     mor_id(w, z, H.table[static_cast<size_t>(ha)][static_cast<size_t>(hb)])});

    // A = one copy of D per object.
    const int dim = n_obj * D.dim;
    RawAlgebra alg;
    alg.dim = dim;
    alg.unit = zero_vec(dim);
    for (int y = 0; y < n_obj; ++y)
        for (int k = 0; k < D.dim; ++k) {
            alg.basis.push_back("u" + std::to_string(k) + "@" + objects[static_cast<size_t>(y)]);
            alg.unit[static_cast<size_t>(y * D.dim + k)] = D.unit[static_cast<size_t>(k)];
        }
    for (int y = 0; y < n_obj; ++y)
        for (const auto& [i, j, c] : D.products) {
            SparseVec shifted;
            for (const auto& [k, q] : c) shifted.emplace_back(y * D.dim + k, q);
            alg.products.emplace_back(y * D.dim + i, y * D.dim + j, std::move(shifted));
        }

    // Global action: ((y,z),h) moves block y to block z through sigma_h.
    RawAction act;
    for (int y = 0; y < n_obj; ++y)
        for (int z = 0; z < n_obj; ++z)
            for (int h = 0; h < H.order; ++h) {
                Vec idem = zero_vec(dim);
                for (int k = 0; k < D.dim; ++k)
                    idem[static_cast<size_t>(z * D.dim + k)] = D.unit[static_cast<size_t>(k)];
                Matrix m(dim, dim);
                for (int c = 0; c < D.dim; ++c)
                    for (int r = 0; r < D.dim; ++r)
                        m.at(z * D.dim + r, y * D.dim + c) = sigma[static_cast<size_t>(h)].at(r, c);
                act.idempotents[mor_id(y, z, h)] = std::move(idem);
                act.maps[mor_id(y, z, h)] = std::move(m);
            }

    InstanceFile f;
    f.meta.name = name;
    f.groupoid = std::move(desc);
    f.algebra = std::move(alg);
    f.action = std::move(act);

    if (!opt.allow_restriction || pick(2) == 0) return f;

    // Restrict to the ideal of e = (+)_y e_y with random nonzero central e_y.
    ValidatedInstance v = validate_instance(f);
    Vec e = zero_vec(dim);
    bool proper = false;
    for (int y = 0; y < n_obj; ++y) {
        const Vec& ey = D.central_idempotents[static_cast<size_t>(pick(static_cast<int>(D.central_idempotents.size())))];
        if (ey != D.unit) proper = true;
        for (int k = 0; k < D.dim; ++k) e[static_cast<size_t>(y * D.dim + k)] = ey[static_cast<size_t>(k)];
    }
    if (!proper) return f;  // restriction by the unit is the instance itself

    const PartialActionData& pa = v.action;
    auto basis = pa.A.idempotent_ideal_basis(e);
    Matrix E = Matrix::from_columns(dim, basis);
    Matrix L = detail::left_inverse(E);
    const int k = static_cast<int>(basis.size());

    RawAlgebra ralg;
    ralg.dim = k;
    for (int i = 0; i < k; ++i) {
        int only = -1;
        const Vec& vv = basis[static_cast<size_t>(i)];
        for (int r = 0; r < dim; ++r)
            if (!vv[static_cast<size_t>(r)].is_zero()) only = (only == -1 && vv[static_cast<size_t>(r)] == Rational(1)) ? r : -2;
        ralg.basis.push_back(only >= 0 ? pa.A.label(only) : "b" + std::to_string(i));
    }
    ralg.unit = L.apply(e);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Vec p = pa.A.mul(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
            Vec c = L.apply(p);
            if (!is_zero(c)) ralg.products.emplace_back(i, j, to_sparse(c));
        }

    RawAction ract;
    Matrix Re = pa.A.right_mul_matrix(e);
    for (int g = 0; g < pa.G.size(); ++g) {
        // 1'_g = e * alpha_g(e * 1_{g^-1}) stays a central idempotent of A.
        Vec idem_full = pa.A.mul(e, pa.map[static_cast<size_t>(g)].apply(pa.A.mul(e, pa.one(pa.G.inv(g)))));
        Matrix restricted = L * (Re * pa.map[static_cast<size_t>(g)] *
                                 pa.A.right_mul_matrix(pa.A.mul(e, pa.map[static_cast<size_t>(pa.G.inv(g))].apply(
                                                                       pa.A.mul(e, pa.one(g)))))) * E;
        ract.idempotents[pa.G.mor(g).id] = L.apply(idem_full);
        ract.maps[pa.G.mor(g).id] = std::move(restricted);
    }

    InstanceFile rf;
    rf.meta.name = name;
    rf.groupoid = f.groupoid;
    rf.algebra = std::move(ralg);
    rf.action = std::move(ract);
    return rf;
}

}  // namespace parskew
