#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "parskew/partial_action.hpp"

using namespace parskew;
using testutil::load_fixture;
using testutil::load_validated;
using testutil::q;
using testutil::qv;

namespace {

// Disjoint union of two relabeled copies of an instance, block-diagonal algebra.
InstanceFile doubled(const InstanceFile& f) {
    InstanceFile d;
    d.meta.name = f.meta.name + "-doubled";
    auto relabel = [](const std::string& s, const char* suf) { return s + suf; };
    for (const char* suf : {"", "'"}) {
        for (const auto& o : f.groupoid.objects) d.groupoid.objects.push_back(relabel(o, suf));
        for (const auto& m : f.groupoid.morphisms)
            d.groupoid.morphisms.push_back({relabel(m.id, suf), relabel(m.src, suf), relabel(m.tgt, suf)});
        for (const auto& c : f.groupoid.compositions) {
            auto fix = [&](const std::string& s) {
                if (s.rfind("id:", 0) == 0) return "id:" + relabel(s.substr(3), suf);
                return relabel(s, suf);
            };
            d.groupoid.compositions.push_back({fix(c[0]), fix(c[1]), fix(c[2])});
        }
    }
    const int n = f.algebra.dim;
    d.algebra.dim = 2 * n;
    for (const char* suf : {"", "'"})
        for (const auto& b : f.algebra.basis) d.algebra.basis.push_back(relabel(b, suf));
    d.algebra.unit = zero_vec(2 * n);
    for (int i = 0; i < n; ++i) d.algebra.unit[static_cast<size_t>(i)] = d.algebra.unit[static_cast<size_t>(n + i)] =
                                    f.algebra.unit[static_cast<size_t>(i)];
    for (int off : {0, n})
        for (const auto& [i, j, c] : f.algebra.products) {
            SparseVec shifted;
            for (const auto& [k, v] : c) shifted.emplace_back(off + k, v);
            d.algebra.products.emplace_back(off + i, off + j, std::move(shifted));
        }
    int copy = 0;
    for (const char* suf : {"", "'"}) {
        const int off = copy * n;
        for (const auto& [id, v] : f.action.idempotents) {
            std::string nid = id.rfind("id:", 0) == 0 ? "id:" + relabel(id.substr(3), suf) : relabel(id, suf);
            Vec iv = zero_vec(2 * n);
            for (int i = 0; i < n; ++i) iv[static_cast<size_t>(off + i)] = v[static_cast<size_t>(i)];
            d.action.idempotents[nid] = std::move(iv);
            Matrix mm(2 * n, 2 * n);
            const Matrix& src = f.action.maps.at(id);
            for (int r = 0; r < n; ++r)
                for (int c2 = 0; c2 < n; ++c2) mm.at(off + r, off + c2) = src.at(r, c2);
            d.action.maps[nid] = std::move(mm);
        }
        ++copy;
    }
    return d;
}

}  // namespace

TEST_CASE("the e57 action validates and is genuinely partial") {
    ValidatedInstance v = load_validated("e57.json");
    CHECK_FALSE(v.action.global);
    CHECK(v.action.ideal_dim(v.G.mor_index("g")) == 2);
    CHECK(v.action.ideal_dim(v.G.mor_index("l")) == 4);
    CHECK(v.action.ideal_dim(v.G.identity_of(0)) == 4);
}

TEST_CASE("global actions validate with the flag set") {
    for (const char* name : {"coarse2.json", "matrix2.json", "trivial.json"}) {
        ValidatedInstance v = load_validated(name);
        CHECK(v.action.global);
    }
}

TEST_CASE("a corrupted alpha_l fails validation with a witness") {
    InstanceFile f = load_fixture("e57.json");
    std::swap(f.action.maps["l"], f.action.maps["m"]);  // ranks no longer match the ideals
    CHECK_THROWS_AS(validate_instance(f), PartialActionAxiomViolation);

    InstanceFile f2 = load_fixture("e57.json");
    Matrix& ml = f2.action.maps["l"];
    // swap the images of e1 and ie1: still a bijection onto A_l, no longer a ring map
    Vec c0 = ml.column(0), c1 = ml.column(1);
    ml.set_column(0, c1);
    ml.set_column(1, c0);
    try {
        validate_instance(f2);
        FAIL("expected PartialActionAxiomViolation");
    } catch (const PartialActionAxiomViolation& e) {
        CHECK(e.axiom == "(ii)");
        CHECK(e.witness == "l");
    }
}

TEST_CASE("moving A_m to the wrong block breaks the composite axiom") {
    InstanceFile f = load_fixture("e57.json");
    // A_m := Q(i)e4 with alpha_m : a e1 -> conj(a) e4
    f.action.idempotents["m"] = qv({0, 0, 0, 0, 0, 0, 1, 0});
    Matrix mm(8, 8);
    mm.at(6, 0) = 1;
    mm.at(7, 1) = -1;
    f.action.maps["m"] = mm;
    Matrix mi(8, 8);  // inverse direction e4 -> e1
    mi.at(0, 6) = 1;
    mi.at(1, 7) = -1;
    f.action.maps["m_inv"] = mi;
    f.action.idempotents["m_inv"] = qv({1, 0, 0, 0, 0, 0, 0, 0});
    CHECK_THROWS_AS(validate_instance(f), PartialActionAxiomViolation);
}

TEST_CASE("identity sweep: inverses, intersection images, globality flag") {
    ValidatedInstance v = load_validated("e57.json");
    VerificationReport rep = check_action_identities(v.action);
    CHECK(rep.ok);

    // alpha_l(A_{l^-1} /\ A_g) = A_l /\ A_{lg} = A_m, with basis {e3, ie3}
    const auto& pa = v.action;
    int l = v.G.mor_index("l"), g = v.G.mor_index("g"), li = v.G.mor_index("l_inv");
    Vec e = v.A.mul(pa.one(li), pa.one(g));
    SpanBuilder image(8);
    for (const Vec& b : v.A.idempotent_ideal_basis(e)) image.insert(pa.map[static_cast<size_t>(l)].apply(b));
    CHECK(image.rank() == 2);
    CHECK(image.contains(v.A.basis_vec(4)));
    CHECK(image.contains(v.A.basis_vec(5)));

    for (const char* name : {"coarse2.json", "matrix2.json"}) {
        ValidatedInstance w = load_validated(name);
        CHECK(check_action_identities(w.action).ok);
    }
}

TEST_CASE("restriction to the isotropy group at each object of e57") {
    ValidatedInstance v = load_validated("e57.json");
    PartialActionData at_x = restrict_to_isotropy(v.action, v.G.object_index("x"));
    CHECK(at_x.A.dim() == 4);
    CHECK(at_x.G.size() == 2);
    // alpha_g is conjugation on Q(i)e1: ie1 -> -ie1, e2-block untouched -> 0
    Vec ie1 = at_x.A.basis_vec(1);
    CHECK(at_x.map[1].apply(ie1) == at_x.A.mul(Vec{Rational(-1), Rational(0), Rational(0), Rational(0)}, ie1));
    CHECK(at_x.map[1].apply(at_x.A.basis_vec(2)) == zero_vec(4));

    PartialActionData at_y = restrict_to_isotropy(v.action, v.G.object_index("y"));
    CHECK(at_y.A.dim() == 4);
    CHECK(at_y.G.size() == 2);
    CHECK_FALSE(at_y.global);

    PartialActionData triv = restrict_to_isotropy(load_validated("coarse2.json").action, 0);
    CHECK(triv.G.size() == 1);
    CHECK(triv.A.dim() == 1);
}

TEST_CASE("restriction to components recovers each copy of a doubled instance") {
    InstanceFile two = doubled(load_fixture("e57.json"));
    ValidatedInstance v = validate_instance(two);
    auto comps = connected_components(v.G);
    REQUIRE(comps.size() == 2);
    for (const auto& comp : comps) {
        PartialActionData sub = restrict_to_component(v.action, comp);
        CHECK(sub.A.dim() == 8);
        CHECK(sub.G.size() == 8);
        CHECK_FALSE(sub.global);
        CHECK(check_action_identities(sub).ok);
        int total = 0;
        for (int g = 0; g < sub.G.size(); ++g) total += sub.ideal_dim(g);
        CHECK(total == 24);
    }
}

TEST_CASE("group-type search on e57 finds {x, l} first and rejects {x, m}") {
    ValidatedInstance v = load_validated("e57.json");
    int x = v.G.object_index("x");
    auto cert = find_group_type(v.action, x);
    REQUIRE(cert);
    CHECK(v.G.mor(cert->tau.tau[1]).id == "l");

    auto all = enumerate_transversals(v.G, x);
    REQUIRE(all.size() == 2);
    CHECK(transversal_is_group_type(v.action, x, all[0]));
    CHECK_FALSE(transversal_is_group_type(v.action, x, all[1]));  // 1_m = e3 != 1_y
    CHECK(group_type_transversals(v.action, x).size() == 1);
}

TEST_CASE("global actions are group-type for every transversal") {
    for (const char* name : {"coarse2.json", "matrix2.json"}) {
        ValidatedInstance v = load_validated(name);
        for (const auto& t : enumerate_transversals(v.G, 0)) CHECK(transversal_is_group_type(v.action, 0, t));
    }
}

TEST_CASE("group-type certificates transport to every other base object") {
    ValidatedInstance v = load_validated("e57.json");
    int x = v.G.object_index("x");
    auto cert = find_group_type(v.action, x);
    REQUIRE(cert);
    for (int z = 0; z < v.G.object_count(); ++z) {
        GroupTypeCertificate moved = transport_certificate(v.action, *cert, z);
        CHECK(moved.base == z);
        CHECK(transversal_is_group_type(v.action, z, moved.tau));
    }
}

TEST_CASE("restricted isotropy actions revalidate") {
    // validate_partial_action is rerun inside restrict_to_isotropy; a passing
    // return is the assertion, this just exercises both objects
    ValidatedInstance v = load_validated("e57.json");
    for (int y = 0; y < v.G.object_count(); ++y) (void)restrict_to_isotropy(v.action, y);
}
