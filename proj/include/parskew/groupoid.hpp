#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parskew/algebra.hpp"

namespace parskew {

struct MorphismDecl {
    std::string id, src, tgt;
};

/// Raw groupoid input: objects, non-identity morphisms, and a generating set
/// of compositions (outer o inner = result). Identities are inferred and named
/// "id:<object>"; in composition entries an object id may stand for its
/// identity morphism.
struct GroupoidDescription {
    std::vector<std::string> objects;
    std::vector<MorphismDecl> morphisms;
    std::vector<std::array<std::string, 3>> compositions;
};

/// Finite groupoid as a validated composition table. Morphism order: the
/// inferred identities in object order, then declared morphisms in input
/// order. Immutable after validation.
class FinGroupoid {
public:
    struct Mor {
        std::string id;
        int src, tgt;
    };

    static FinGroupoid validate(const GroupoidDescription& raw);

    int object_count() const { return static_cast<int>(objects_.size()); }
    int size() const { return static_cast<int>(mors_.size()); }
    const std::string& object(int i) const { return objects_[static_cast<size_t>(i)]; }
    const std::vector<std::string>& objects() const { return objects_; }
    const Mor& mor(int i) const { return mors_[static_cast<size_t>(i)]; }
    int src(int g) const { return mors_[static_cast<size_t>(g)].src; }
    int tgt(int g) const { return mors_[static_cast<size_t>(g)].tgt; }

    int object_index(const std::string& id) const {
        auto it = obj_index_.find(id);
        if (it == obj_index_.end()) throw UnknownObject("unknown object '" + id + "'");
        return it->second;
    }
    int mor_index(const std::string& id) const {
        auto it = mor_index_.find(id);
        if (it == mor_index_.end()) throw UnknownObject("unknown morphism '" + id + "'");
        return it->second;
    }
    bool has_object(const std::string& id) const { return obj_index_.count(id) > 0; }
    bool has_morphism(const std::string& id) const { return mor_index_.count(id) > 0; }

    bool composable(int g, int h) const { return src(g) == tgt(h); }
    /// g o h, or -1 when not composable.
    int compose(int g, int h) const { return comp_[static_cast<size_t>(g) * mors_.size() + static_cast<size_t>(h)]; }
    int inv(int g) const { return inverse_[static_cast<size_t>(g)]; }
    int identity_of(int obj) const { return identity_[static_cast<size_t>(obj)]; }
    bool is_identity(int g) const { return identity_[static_cast<size_t>(src(g))] == g && src(g) == tgt(g); }

    /// Morphisms x -> y in table order.
    std::vector<int> hom(int x, int y) const {
        std::vector<int> out;
        for (int g = 0; g < size(); ++g)
            if (src(g) == x && tgt(g) == y) out.push_back(g);
        return out;
    }

    std::vector<int> loops_at(int x) const { return hom(x, x); }

    bool connected() const {
        if (objects_.empty()) return true;
        auto part = object_partition();
        return part.size() == 1;
    }

    /// Partition of objects under x ~ y iff hom(x, y) nonempty.
    std::vector<std::vector<int>> object_partition() const {
        const int n = object_count();
        std::vector<int> comp_id(static_cast<size_t>(n));
        for (int x = 0; x < n; ++x) comp_id[static_cast<size_t>(x)] = x;
        bool changed = true;
        while (changed) {
            changed = false;
            for (int g = 0; g < size(); ++g) {
                int a = comp_id[static_cast<size_t>(src(g))], b = comp_id[static_cast<size_t>(tgt(g))];
                if (a != b) {
                    int lo = std::min(a, b), hi = std::max(a, b);
                    for (auto& c : comp_id)
                        if (c == hi) c = lo;
                    changed = true;
                }
            }
        }
        std::map<int, std::vector<int>> groups;
        for (int x = 0; x < n; ++x) groups[comp_id[static_cast<size_t>(x)]].push_back(x);
        std::vector<std::vector<int>> out;
        for (auto& [k, v] : groups) out.push_back(std::move(v));
        return out;
    }

private:
    friend struct GroupoidBuilder;
    std::vector<std::string> objects_;
    std::vector<Mor> mors_;
    std::vector<int> comp_;      // size*size, -1 = undefined
    std::vector<int> identity_;  // per object
    std::vector<int> inverse_;   // per morphism
    std::map<std::string, int> obj_index_;
    std::map<std::string, int> mor_index_;
};

struct GroupoidBuilder {
    static FinGroupoid assemble(std::vector<std::string> objects, std::vector<FinGroupoid::Mor> mors,
                                std::vector<int> comp) {
        FinGroupoid g;
        g.objects_ = std::move(objects);
        g.mors_ = std::move(mors);
        g.comp_ = std::move(comp);
        for (size_t i = 0; i < g.objects_.size(); ++i) g.obj_index_[g.objects_[i]] = static_cast<int>(i);
        for (size_t i = 0; i < g.mors_.size(); ++i) {
            if (g.mor_index_.count(g.mors_[i].id))
                throw GroupoidAxiomViolation("duplicate morphism id", g.mors_[i].id);
            g.mor_index_[g.mors_[i].id] = static_cast<int>(i);
        }
        const int m = g.size();
        auto comp_at = [&](int a, int b) { return g.comp_[static_cast<size_t>(a) * m + b]; };

        // Table shape: defined exactly on composable pairs, with the expected
        // source/target of each composite.
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                int c = comp_at(a, b);
                if (g.composable(a, b)) {
                    if (c < 0)
                        throw GroupoidAxiomViolation("missing composite",
                                                     g.mors_[static_cast<size_t>(a)].id + " o " + g.mors_[static_cast<size_t>(b)].id);
                    if (g.src(c) != g.src(b) || g.tgt(c) != g.tgt(a))
                        throw GroupoidAxiomViolation("source/target mismatch in composite",
                                                     g.mors_[static_cast<size_t>(a)].id + " o " + g.mors_[static_cast<size_t>(b)].id);
                } else if (c >= 0) {
                    throw GroupoidAxiomViolation("composite defined on non-composable pair",
                                                 g.mors_[static_cast<size_t>(a)].id + " o " + g.mors_[static_cast<size_t>(b)].id);
                }
            }

        // Identities: for each object, a loop acting as two-sided identity.
        g.identity_.assign(g.objects_.size(), -1);
        for (int e = 0; e < m; ++e) {
            if (g.src(e) != g.tgt(e)) continue;
            bool ident = true;
            for (int f = 0; f < m && ident; ++f) {
                if (g.composable(e, f) && comp_at(e, f) != f) ident = false;
                if (g.composable(f, e) && comp_at(f, e) != f) ident = false;
            }
            if (ident) {
                if (g.identity_[static_cast<size_t>(g.src(e))] >= 0)
                    throw GroupoidAxiomViolation("two identities at one object", g.mors_[static_cast<size_t>(e)].id);
                g.identity_[static_cast<size_t>(g.src(e))] = e;
            }
        }
        for (size_t o = 0; o < g.objects_.size(); ++o)
            if (g.identity_[o] < 0) throw GroupoidAxiomViolation("object without identity", g.objects_[o]);

        // Associativity on all composable triples.
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                if (!g.composable(a, b)) continue;
                int ab = comp_at(a, b);
                for (int c = 0; c < m; ++c) {
                    if (!g.composable(b, c)) continue;
                    if (comp_at(ab, c) != comp_at(a, comp_at(b, c)))
                        throw GroupoidAxiomViolation("non-associative table",
                                                     "(" + g.mors_[static_cast<size_t>(a)].id + ", " +
                                                         g.mors_[static_cast<size_t>(b)].id + ", " +
                                                         g.mors_[static_cast<size_t>(c)].id + ")");
                }
            }

        // Inverses: g^-1 g = id_src(g), g g^-1 = id_tgt(g).
        g.inverse_.assign(static_cast<size_t>(m), -1);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                if (g.src(b) == g.tgt(a) && g.tgt(b) == g.src(a) && comp_at(a, b) == g.identity_[static_cast<size_t>(g.tgt(a))] &&
                    comp_at(b, a) == g.identity_[static_cast<size_t>(g.src(a))]) {
                    g.inverse_[static_cast<size_t>(a)] = b;
                    break;
                }
            }
            if (g.inverse_[static_cast<size_t>(a)] < 0)
                throw GroupoidAxiomViolation("morphism without inverse", g.mors_[static_cast<size_t>(a)].id);
        }
        return g;
    }
};

inline FinGroupoid FinGroupoid::validate(const GroupoidDescription& raw) {
    std::vector<std::string> objects = raw.objects;
    {
        std::map<std::string, int> seen;
        for (const auto& o : objects)
            if (++seen[o] > 1) throw GroupoidAxiomViolation("duplicate object id", o);
    }
    std::vector<Mor> mors;
    std::map<std::string, int> obj_of;
    for (size_t i = 0; i < objects.size(); ++i) obj_of[objects[i]] = static_cast<int>(i);
    // Identities first, in object order.
    for (size_t i = 0; i < objects.size(); ++i)
        mors.push_back({"id:" + objects[i], static_cast<int>(i), static_cast<int>(i)});
    for (const auto& d : raw.morphisms) {
        if (!obj_of.count(d.src)) throw GroupoidAxiomViolation("morphism source is not an object", d.id);
        if (!obj_of.count(d.tgt)) throw GroupoidAxiomViolation("morphism target is not an object", d.id);
        if (obj_of.count(d.id)) throw GroupoidAxiomViolation("morphism id collides with an object id", d.id);
        if (d.id.rfind("id:", 0) == 0) throw GroupoidAxiomViolation("morphism id uses reserved identity prefix", d.id);
        mors.push_back({d.id, obj_of[d.src], obj_of[d.tgt]});
    }
    std::map<std::string, int> index;
    for (size_t i = 0; i < mors.size(); ++i) {
        if (index.count(mors[i].id)) throw GroupoidAxiomViolation("duplicate morphism id", mors[i].id);
        index[mors[i].id] = static_cast<int>(i);
    }
    // An object id in a composition entry names its identity morphism.
    auto resolve = [&](const std::string& id) -> int {
        auto it = index.find(id);
        if (it != index.end()) return it->second;
        auto ot = obj_of.find(id);
        if (ot != obj_of.end()) return ot->second;  // identities sit at object positions
        throw GroupoidAxiomViolation("unknown morphism in composition", id);
    };

    const int m = static_cast<int>(mors.size());
    std::vector<int> comp(static_cast<size_t>(m) * m, -1);
    auto at = [&](int a, int b) -> int& { return comp[static_cast<size_t>(a) * m + b]; };
    auto name = [&](int a) { return mors[static_cast<size_t>(a)].id; };
    auto set_fact = [&](int a, int b, int c) {
        if (mors[static_cast<size_t>(a)].src != mors[static_cast<size_t>(b)].tgt)
            throw GroupoidAxiomViolation("composition declared on non-composable pair", name(a) + " o " + name(b));
        if (mors[static_cast<size_t>(c)].src != mors[static_cast<size_t>(b)].src ||
            mors[static_cast<size_t>(c)].tgt != mors[static_cast<size_t>(a)].tgt)
            throw GroupoidAxiomViolation("source/target mismatch",
                                         name(a) + " o " + name(b) + " = " + name(c));
        int& slot = at(a, b);
        if (slot >= 0 && slot != c)
            throw GroupoidAxiomViolation("inconsistent table closure",
                                         name(a) + " o " + name(b) + " = " + name(slot) + " and " + name(c));
        slot = c;
    };

    // Identity laws.
    for (int f = 0; f < m; ++f) {
        set_fact(mors[static_cast<size_t>(f)].tgt, f, f);
        set_fact(f, mors[static_cast<size_t>(f)].src, f);
    }
    for (const auto& t : raw.compositions) set_fact(resolve(t[0]), resolve(t[1]), resolve(t[2]));

    // Close under associativity: known ab = c and bd = e force cd = ae; when
    // one side is known the other is inferred, when both are known they must agree.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                int c = at(a, b);
                if (c < 0) continue;
                for (int d = 0; d < m; ++d) {
                    int e = at(b, d);
                    if (e < 0) continue;
                    int cd = at(c, d), ae = at(a, e);
                    if (cd >= 0 && ae >= 0) {
                        if (cd != ae)
                            throw GroupoidAxiomViolation("inconsistent table closure",
                                                         "(" + name(a) + " " + name(b) + ") " + name(d) + " != " +
                                                             name(a) + " (" + name(b) + " " + name(d) + ")");
                    } else if (cd >= 0) {
                        set_fact(a, e, cd);
                        changed = true;
                    } else if (ae >= 0) {
                        set_fact(c, d, ae);
                        changed = true;
                    }
                }
            }
    }
    return GroupoidBuilder::assemble(std::move(objects), std::move(mors), std::move(comp));
}

/// The groupoid with exactly one morphism between each ordered pair of
/// objects, composing as (y,z) o (x,y) = (x,z). Morphism (x,y) is named
/// "x>y"; the diagonal ones are the identities.
inline FinGroupoid coarse_groupoid(const std::vector<std::string>& objects) {
    if (objects.empty()) throw EmptyObjectSet("coarse groupoid needs a nonempty object set");
    const int n = static_cast<int>(objects.size());
    std::vector<FinGroupoid::Mor> mors;
    std::vector<std::vector<int>> idx(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
    for (int x = 0; x < n; ++x) {
        idx[static_cast<size_t>(x)][static_cast<size_t>(x)] = static_cast<int>(mors.size());
        mors.push_back({"id:" + objects[static_cast<size_t>(x)], x, x});
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            idx[static_cast<size_t>(x)][static_cast<size_t>(y)] = static_cast<int>(mors.size());
            mors.push_back({objects[static_cast<size_t>(x)] + ">" + objects[static_cast<size_t>(y)], x, y});
        }
    const int m = n * n;
    std::vector<int> comp(static_cast<size_t>(m) * m, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                int a = idx[static_cast<size_t>(y)][static_cast<size_t>(z)];
                int b = idx[static_cast<size_t>(x)][static_cast<size_t>(y)];
                comp[static_cast<size_t>(a) * m + b] = idx[static_cast<size_t>(x)][static_cast<size_t>(z)];
            }
    return GroupoidBuilder::assemble(objects, std::move(mors), std::move(comp));
}

/// A full subgroupoid on one equivalence class of objects, with the index
/// maps back into the parent.
struct GroupoidComponent {
    FinGroupoid sub;
    std::vector<int> object_ids;    // parent object index per sub object
    std::vector<int> morphism_ids;  // parent morphism index per sub morphism
};

inline std::vector<GroupoidComponent> connected_components(const FinGroupoid& G) {
    std::vector<GroupoidComponent> out;
    for (const auto& objs : G.object_partition()) {
        GroupoidComponent comp;
        comp.object_ids = objs;
        std::vector<int> obj_pos(static_cast<size_t>(G.object_count()), -1);
        std::vector<std::string> names;
        for (size_t i = 0; i < objs.size(); ++i) {
            obj_pos[static_cast<size_t>(objs[i])] = static_cast<int>(i);
            names.push_back(G.object(objs[i]));
        }
        std::vector<int> mor_pos(static_cast<size_t>(G.size()), -1);
        std::vector<FinGroupoid::Mor> mors;
        for (int g = 0; g < G.size(); ++g)
            if (obj_pos[static_cast<size_t>(G.src(g))] >= 0) {
                mor_pos[static_cast<size_t>(g)] = static_cast<int>(mors.size());
                comp.morphism_ids.push_back(g);
                mors.push_back({G.mor(g).id, obj_pos[static_cast<size_t>(G.src(g))], obj_pos[static_cast<size_t>(G.tgt(g))]});
            }
        const int m = static_cast<int>(mors.size());
        std::vector<int> comp_table(static_cast<size_t>(m) * m, -1);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                int pa = comp.morphism_ids[static_cast<size_t>(a)], pb = comp.morphism_ids[static_cast<size_t>(b)];
                int c = G.composable(pa, pb) ? G.compose(pa, pb) : -1;
                if (c >= 0) comp_table[static_cast<size_t>(a) * m + b] = mor_pos[static_cast<size_t>(c)];
            }
        comp.sub = GroupoidBuilder::assemble(std::move(names), std::move(mors), std::move(comp_table));
        out.push_back(std::move(comp));
    }
    return out;
}

/// The group of loops at x, as a one-object groupoid, with loop indices in
/// the parent groupoid.
struct IsotropyGroup {
    FinGroupoid group;
    std::vector<int> loop_ids;  // parent morphism index per group element
    int position_of(int parent_mor) const {
        for (size_t i = 0; i < loop_ids.size(); ++i)
            if (loop_ids[i] == parent_mor) return static_cast<int>(i);
        throw InternalError("morphism is not a loop at the base object");
    }
};

inline IsotropyGroup isotropy_group(const FinGroupoid& G, int x) {
    if (x < 0 || x >= G.object_count()) throw UnknownObject("isotropy base object out of range");
    IsotropyGroup out;
    out.loop_ids = G.loops_at(x);
    std::vector<int> pos(static_cast<size_t>(G.size()), -1);
    std::vector<FinGroupoid::Mor> mors;
    for (size_t i = 0; i < out.loop_ids.size(); ++i) {
        pos[static_cast<size_t>(out.loop_ids[i])] = static_cast<int>(i);
        mors.push_back({G.mor(out.loop_ids[i]).id, 0, 0});
    }
    // Keep the parent's identity name so the one-object groupoid revalidates.
    const int m = static_cast<int>(mors.size());
    std::vector<int> table(static_cast<size_t>(m) * m, -1);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            table[static_cast<size_t>(a) * m + b] =
                pos[static_cast<size_t>(G.compose(out.loop_ids[static_cast<size_t>(a)], out.loop_ids[static_cast<size_t>(b)]))];
    out.group = GroupoidBuilder::assemble({G.object(x)}, std::move(mors), std::move(table));
    return out;
}

/// A choice of morphism tau_y : x -> y per object y, with tau_x = id_x.
struct Transversal {
    int base = -1;
    std::vector<int> tau;  // per object index -> morphism index
};

/// All transversals for x, enumerated deterministically: objects in table
/// order, candidates for each object in lexicographic morphism-id order.
inline std::vector<Transversal> enumerate_transversals(const FinGroupoid& G, int x) {
    if (x < 0 || x >= G.object_count()) throw UnknownObject("transversal base object out of range");
    if (!G.connected()) throw NotConnected("transversals require a connected groupoid");
    std::vector<std::vector<int>> candidates;
    for (int y = 0; y < G.object_count(); ++y) {
        if (y == x) {
            candidates.push_back({G.identity_of(x)});
            continue;
        }
        std::vector<int> c = G.hom(x, y);
        std::sort(c.begin(), c.end(), [&](int a, int b) { return G.mor(a).id < G.mor(b).id; });
        candidates.push_back(std::move(c));
    }
    std::vector<Transversal> out;
    std::vector<size_t> pick(static_cast<size_t>(G.object_count()), 0);
    for (;;) {
        Transversal t;
        t.base = x;
        for (int y = 0; y < G.object_count(); ++y)
            t.tau.push_back(candidates[static_cast<size_t>(y)][pick[static_cast<size_t>(y)]]);
        out.push_back(std::move(t));
        int y = G.object_count() - 1;
        while (y >= 0) {
            if (++pick[static_cast<size_t>(y)] < candidates[static_cast<size_t>(y)].size()) break;
            pick[static_cast<size_t>(y)] = 0;
            --y;
        }
        if (y < 0) break;
    }
    return out;
}

/// Componentwise product of a coarse groupoid and a one-object group;
/// morphisms are pairs "(u, h)".
struct ProductGroupoid {
    FinGroupoid coarse;
    FinGroupoid isotropy;
    FinGroupoid product;
    std::vector<std::pair<int, int>> parts;  // product morphism -> (coarse mor, isotropy mor)
    int index_of(int coarse_mor, int iso_mor) const {
        return coarse_mor * isotropy.size() + iso_mor;
    }
};

inline ProductGroupoid product_groupoid(const FinGroupoid& coarse, const FinGroupoid& isotropy) {
    ProductGroupoid out;
    out.coarse = coarse;
    out.isotropy = isotropy;
    std::vector<FinGroupoid::Mor> mors;
    const int mc = coarse.size(), mi = isotropy.size();
    for (int u = 0; u < mc; ++u)
        for (int h = 0; h < mi; ++h) {
            std::string id;
            if (coarse.is_identity(u) && isotropy.is_identity(h))
                id = "id:" + coarse.object(coarse.src(u));
            else
                id = "(" + coarse.mor(u).id + ", " + isotropy.mor(h).id + ")";
            mors.push_back({id, coarse.src(u), coarse.tgt(u)});
            out.parts.emplace_back(u, h);
        }
    const int m = mc * mi;
    std::vector<int> table(static_cast<size_t>(m) * m, -1);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            auto [ua, ha] = out.parts[static_cast<size_t>(a)];
            auto [ub, hb] = out.parts[static_cast<size_t>(b)];
            if (coarse.composable(ua, ub))
                table[static_cast<size_t>(a) * m + b] =
                    coarse.compose(ua, ub) * mi + isotropy.compose(ha, hb);
        }
    out.product = GroupoidBuilder::assemble(coarse.objects(), std::move(mors), std::move(table));
    return out;
}

/// The isomorphism of a connected groupoid with (coarse groupoid) x (isotropy
/// group at x) induced by a transversal: g maps to ((s(g), t(g)), g_x) with
/// g_x = tau_{t(g)}^-1 g tau_{s(g)}.
struct StructuralIso {
    int base;
    Transversal tau;
    ProductGroupoid target;
    IsotropyGroup iso;
    std::vector<int> image;      // per morphism of G -> product morphism index
    std::vector<int> loop_part;  // per morphism of G -> parent index of g_x
    VerificationReport report;
};

inline StructuralIso structural_iso(const FinGroupoid& G, int x, const Transversal& tau) {
    if (!G.connected()) throw NotConnected("structural factorization requires a connected groupoid");
    StructuralIso out;
    out.base = x;
    out.tau = tau;
    out.iso = isotropy_group(G, x);
    FinGroupoid coarse = coarse_groupoid(G.objects());
    out.target = product_groupoid(coarse, out.iso.group);

    auto coarse_idx = [&](int sobj, int tobj) {
        if (sobj == tobj) return coarse.identity_of(sobj);
        return coarse.mor_index(G.object(sobj) + ">" + G.object(tobj));
    };
    auto loop_of = [&](int g) {
        int t = G.compose(g, tau.tau[static_cast<size_t>(G.src(g))]);
        return G.compose(G.inv(tau.tau[static_cast<size_t>(G.tgt(g))]), t);
    };

    for (int g = 0; g < G.size(); ++g) {
        int gx = loop_of(g);
        if (G.src(gx) != x || G.tgt(gx) != x) {
            out.report.fail("loop part of " + G.mor(g).id + " is not a loop at the base object");
            out.image.push_back(-1);
            out.loop_part.push_back(gx);
            continue;
        }
        out.loop_part.push_back(gx);
        out.image.push_back(out.target.index_of(coarse_idx(G.src(g), G.tgt(g)), out.iso.position_of(gx)));
    }
    if (!out.report.ok) return out;

    // Bijectivity: images are distinct and counts agree.
    {
        std::vector<int> seen(static_cast<size_t>(out.target.product.size()), 0);
        for (int g = 0; g < G.size(); ++g) {
            if (++seen[static_cast<size_t>(out.image[static_cast<size_t>(g)])] > 1)
                out.report.fail("not injective: two morphisms share the image of " + G.mor(g).id);
        }
        if (G.size() != out.target.product.size())
            out.report.fail("morphism counts differ, cannot be bijective");
    }
    // Functoriality on all composable pairs.
    for (int a = 0; a < G.size() && out.report.ok; ++a)
        for (int b = 0; b < G.size() && out.report.ok; ++b) {
            if (!G.composable(a, b)) continue;
            int lhs = out.image[static_cast<size_t>(G.compose(a, b))];
            int rhs = out.target.product.compose(out.image[static_cast<size_t>(a)], out.image[static_cast<size_t>(b)]);
            if (lhs != rhs)
                out.report.fail("not functorial on (" + G.mor(a).id + ", " + G.mor(b).id + ")");
        }
    // Stated inverse ((y,z), h) -> tau_z h tau_y^-1 really inverts the map.
    for (int p = 0; p < out.target.product.size() && out.report.ok; ++p) {
        auto [u, h] = out.target.parts[static_cast<size_t>(p)];
        int y = out.target.coarse.src(u), z = out.target.coarse.tgt(u);
        int parent_h = out.iso.loop_ids[static_cast<size_t>(h)];
        int g = G.compose(tau.tau[static_cast<size_t>(z)], G.compose(parent_h, G.inv(tau.tau[static_cast<size_t>(y)])));
        if (out.image[static_cast<size_t>(g)] != p) out.report.fail("stated inverse fails at product morphism " + out.target.product.mor(p).id);
    }
    if (out.report.ok)
        out.report.note("factorization verified on " + std::to_string(G.size()) + " morphisms");
    return out;
}

}  // namespace parskew
