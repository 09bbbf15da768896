#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "parskew/extension.hpp"

using namespace parskew;
using testutil::load_fixture;
using testutil::load_validated;
using testutil::q;
using testutil::qv;

namespace {

struct E57Fact {
    ValidatedInstance v;
    FactorizationResult fact;
    E57Fact() : v(load_validated("e57.json")) {
        auto cert = find_group_type(v.action, v.G.object_index("x"));
        REQUIRE(cert);
        fact = build_factorization(v.action, *cert, true);
    }
};

}  // namespace

TEST_CASE("trace of the isotropy-restricted action reproduces the worked value") {
    ValidatedInstance v = load_validated("e57.json");
    PartialActionData at_x = restrict_to_isotropy(v.action, v.G.object_index("x"));
    TraceOperator tr = trace_maps(at_x);
    // a_x = e1/2 + e2 has t_x(a_x) = a_x + e1/2 = e1 + e2 = 1_x
    Vec ax = zero_vec(4);
    ax[0] = q(1, 2);
    ax[2] = Rational(1);
    CHECK(tr.t_z[0].apply(ax) == at_x.A.unit());
}

TEST_CASE("trace maps of a discrete groupoid are the block projections") {
    ValidatedInstance v = load_validated("coarse2.json");
    // keep only identities: a discrete groupoid over the same algebra
    InstanceFile f = load_fixture("coarse2.json");
    f.groupoid.morphisms.clear();
    f.groupoid.compositions.clear();
    f.action.idempotents.erase("a");
    f.action.idempotents.erase("a_inv");
    f.action.maps.erase("a");
    f.action.maps.erase("a_inv");
    ValidatedInstance disc = validate_instance(f);
    TraceOperator tr = trace_maps(disc.action);
    for (int z = 0; z < 2; ++z)
        CHECK(tr.t_z[static_cast<size_t>(z)] == disc.A.right_mul_matrix(disc.action.one_of_object(z)));
}

TEST_CASE("trace linearity spot checks") {
    ValidatedInstance v = load_validated("e57.json");
    TraceOperator tr = trace_maps(v.action);
    Vec a = qv({1, 0, 2, 0, 0, 1, 0, 0}), b = qv({0, 3, 0, 0, 1, 0, 0, 2});
    Rational lam = q(5, 3);
    for (int z = 0; z < 2; ++z) {
        Vec ab = a;
        add_scaled(ab, lam, b);
        Vec lhs = tr.t_z[static_cast<size_t>(z)].apply(ab);
        Vec rhs = tr.t_z[static_cast<size_t>(z)].apply(a);
        add_scaled(rhs, lam, tr.t_z[static_cast<size_t>(z)].apply(b));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("direct separability of e57 with exact re-substitution") {
    ValidatedInstance v = load_validated("e57.json");
    SeparabilityVerdict verdict = separable_direct(v.action);
    REQUIRE(verdict.separable);
    REQUIRE(verdict.witness);
    TraceOperator tr = trace_maps(v.action);
    for (int z = 0; z < 2; ++z)
        CHECK(tr.t_z[static_cast<size_t>(z)].apply(*verdict.witness) == v.action.one_of_object(z));
}

TEST_CASE("one-object identity instance is separable with witness 1") {
    ValidatedInstance v = load_validated("trivial.json");
    SeparabilityVerdict verdict = separable_direct(v.action);
    REQUIRE(verdict.separable);
    CHECK(*verdict.witness == v.A.unit());
}

TEST_CASE("the doubled-trace group case needs the witness 1/2") {
    // Z2 acting globally and trivially on Q: t(a) = 2a, so a = 1/2
    InstanceFile f;
    f.meta.name = "z2-trivial";
    f.groupoid.objects = {"x"};
    f.groupoid.morphisms.push_back({"s", "x", "x"});
    f.groupoid.compositions.push_back({"s", "s", "id:x"});
    f.algebra.dim = 1;
    f.algebra.basis = {"u"};
    f.algebra.unit = qv({1});
    f.algebra.products.emplace_back(0, 0, SparseVec{{0, 1}});
    f.action.idempotents["id:x"] = qv({1});
    f.action.idempotents["s"] = qv({1});
    f.action.maps["id:x"] = Matrix::identity(1);
    f.action.maps["s"] = Matrix::identity(1);
    ValidatedInstance v = validate_instance(f);
    SeparabilityVerdict verdict = separable_direct(v.action);
    REQUIRE(verdict.separable);
    REQUIRE(verdict.witness->size() == 1);
    CHECK((*verdict.witness)[0] == q(1, 2));
}

TEST_CASE("coarse criterion on e57 accepts the worked witness and the shortcut witness") {
    E57Fact e;
    // a = (e1+e2+e3+e4)/2: sum_z alpha_{tau_z^-1}(a 1_z) = 1_x, exactly
    Vec a = qv({0, 0, 0, 0, 0, 0, 0, 0});
    a[0] = a[2] = a[4] = a[6] = q(1, 2);
    const auto& pa = e.v.action;
    Vec acc = zero_vec(8);
    for (int z = 0; z < 2; ++z) {
        int tz_inv = e.v.G.inv(e.fact.cert.tau.tau[static_cast<size_t>(z)]);
        add_scaled(acc, 1, pa.map[static_cast<size_t>(tz_inv)].apply(e.v.A.mul(a, pa.one_of_object(z))));
    }
    CHECK(acc == pa.one_of_object(0));
    // here |G0| = 2, so the shortcut witness n*1 with n = 1/2 coincides with a
    Vec shortcut = e.v.A.unit();
    for (auto& c : shortcut) c = c * q(1, 2);
    CHECK(shortcut == a);

    auto witness = coarse_separability_criterion(pa, e.fact.cert, e.fact.beta);
    REQUIRE(witness);
    Vec acc2 = zero_vec(8);
    for (int z = 0; z < 2; ++z) {
        int tz_inv = e.v.G.inv(e.fact.cert.tau.tau[static_cast<size_t>(z)]);
        add_scaled(acc2, 1, pa.map[static_cast<size_t>(tz_inv)].apply(e.v.A.mul(*witness, pa.one_of_object(z))));
    }
    CHECK(acc2 == pa.one_of_object(0));
}

TEST_CASE("coarse criterion with one object reduces to a 1_x = 1_x") {
    ValidatedInstance v = load_validated("trivial.json");
    auto cert = find_group_type(v.action, 0);
    REQUIRE(cert);
    PartialActionData beta = induced_coarse_action(v.action, *cert);
    auto witness = coarse_separability_criterion(v.action, *cert, beta);
    REQUIRE(witness);
    CHECK(*witness == v.A.unit());
}

TEST_CASE("composite separability of e57 records both witnesses and agrees with direct") {
    E57Fact e;
    CompositeSeparability comp = separable_composite(e.v.action, e.fact.cert, e.fact.beta);
    CHECK(comp.verdict.separable);
    CHECK(comp.group_separable);
    REQUIRE(comp.group_witness);
    REQUIRE(comp.coarse_witness);
    // group witness re-substitutes in the restricted trace
    PartialActionData at_x = restrict_to_isotropy(e.v.action, e.fact.cert.base);
    TraceOperator tr = trace_maps(at_x);
    CHECK(tr.t_z[0].apply(*comp.group_witness) == at_x.A.unit());
    CHECK(separable_direct(e.v.action).separable == comp.verdict.separable);
}

TEST_CASE("semisimple verdict follows separability and never claims the converse") {
    SeparabilityVerdict yes;
    yes.separable = true;
    CHECK(semisimple_verdict(yes).yes);
    SeparabilityVerdict no;
    CHECK_FALSE(semisimple_verdict(no).yes);
    CHECK(semisimple_verdict(no).text.find("undetermined") != std::string::npos);
}

TEST_CASE("center of the coarse skew ring is the diagonal copy of C(A_x)") {
    E57Fact e;
    CoarseCenterReport rep = center_of_coarse_skew(e.fact.C, e.v.action, e.fact.cert);
    CHECK(rep.report.ok);
    CHECK(rep.center_dim == 4);
    CHECK(rep.diagonal_dim == 4);

    // noncommutative blocks: center of C(A_x) = scalars
    ValidatedInstance m2 = load_validated("matrix2.json");
    auto cert = find_group_type(m2.action, 0);
    REQUIRE(cert);
    FactorizationResult mf = build_factorization(m2.action, *cert, true);
    CoarseCenterReport rep2 = center_of_coarse_skew(mf.C, m2.action, *cert);
    CHECK(rep2.report.ok);
    CHECK(rep2.center_dim == 1);

    // one object: the coarse ring is A_x itself
    ValidatedInstance tr = load_validated("trivial.json");
    auto tcert = find_group_type(tr.action, 0);
    FactorizationResult tf = build_factorization(tr.action, *tcert, true);
    CoarseCenterReport rep3 = center_of_coarse_skew(tf.C, tr.action, *tcert);
    CHECK(rep3.report.ok);
    CHECK(rep3.center_dim == 1);
}

TEST_CASE("frobenius system for A inside the coarse skew ring of e57") {
    E57Fact e;
    FrobeniusSystem fs = frobenius_coarse(e.fact.C);
    CHECK(fs.report.ok);
    CHECK(fs.delta.size() == 4);  // dual bases over every ordered pair of objects
    // eps restricted to the image of A is the identity
    Matrix iota = e.fact.C.embed_algebra_matrix();
    for (int i = 0; i < 8; ++i) CHECK(fs.epsilon.apply(iota.column(i)) == e.v.A.basis_vec(i));
}

TEST_CASE("frobenius system for the isotropy part of e57") {
    E57Fact e;
    FrobeniusSystem fs = frobenius_group_part(e.fact.T, e.fact.gamma);
    CHECK(fs.report.ok);
    // dual-basis identity on every basis slot, brute force:
    // sum_h eps(s * 1'_h d_h) * 1'_{h^-1} d_{h^-1} = s
    const SkewRing& T = e.fact.T;
    const FinGroupoid& gx = e.fact.gamma.pa.G;
    Matrix iota(T.dim(), e.fact.C.dim());
    for (int c = 0; c < e.fact.C.dim(); ++c)
        iota.set_column(c, T.embed_coeff(gx.identity_of(0), e.fact.C.carrier.basis_vec(c)));
    for (int s = 0; s < T.dim(); ++s) {
        Vec acc = zero_vec(T.dim());
        for (size_t di = 0; di < fs.delta.size(); ++di) {
            Vec t1 = T.carrier.mul(T.carrier.basis_vec(s), fs.delta[di].first);
            add_scaled(acc, 1, T.carrier.mul(iota.apply(fs.epsilon.apply(t1)), fs.delta[di].second));
        }
        CHECK(acc == T.carrier.basis_vec(s));
    }
}

TEST_CASE("composite frobenius system for A inside the e57 skew ring") {
    E57Fact e;
    FrobeniusSystem fc = frobenius_coarse(e.fact.C);
    FrobeniusSystem fg = frobenius_group_part(e.fact.T, e.fact.gamma);
    FrobeniusSystem fs = frobenius_composite(e.fact, fc, fg);
    CHECK(fs.report.ok);
    // eps restricted to the image of A is the identity there as well
    Matrix iota = e.fact.S.embed_algebra_matrix();
    for (int i = 0; i < 8; ++i) CHECK(fs.epsilon.apply(iota.column(i)) == e.v.A.basis_vec(i));
}

TEST_CASE("frobenius systems in the trivial case are eps = id, Delta = 1 (x) 1") {
    ValidatedInstance v = load_validated("trivial.json");
    auto cert = find_group_type(v.action, 0);
    FactorizationResult fact = build_factorization(v.action, *cert, true);
    FrobeniusSystem fc = frobenius_coarse(fact.C);
    CHECK(fc.report.ok);
    REQUIRE(fc.delta.size() == 1);
    CHECK(fc.delta[0].first == fact.C.carrier.unit());
    FrobeniusSystem fg = frobenius_group_part(fact.T, fact.gamma);
    CHECK(fg.report.ok);
    REQUIRE(fg.delta.size() == 1);
    CHECK(fg.delta[0].first == fact.T.carrier.unit());
}

TEST_CASE("separability idempotent from the trace witness") {
    ValidatedInstance v = load_validated("e57.json");
    SeparabilityVerdict verdict = separable_direct(v.action);
    REQUIRE(verdict.separable);
    SkewRing S = build_skew_ring(v.action);
    VerificationReport rep = verify_separability_idempotent(S, *verdict.witness);
    CHECK(rep.ok);
}

TEST_CASE("artinian report counts nonzero isotropy ideals") {
    ValidatedInstance v = load_validated("e57.json");
    ArtinianReport rep = artinian_verdict(v.action, v.G.object_index("x"));
    CHECK(rep.artinian);
    CHECK(rep.nonzero_isotropy_ideals == 2);

    // an action with a zero ideal on the nonidentity loop
    InstanceFile f;
    f.meta.name = "zero-loop";
    f.groupoid.objects = {"x"};
    f.groupoid.morphisms.push_back({"s", "x", "x"});
    f.groupoid.compositions.push_back({"s", "s", "id:x"});
    f.algebra.dim = 1;
    f.algebra.basis = {"u"};
    f.algebra.unit = qv({1});
    f.algebra.products.emplace_back(0, 0, SparseVec{{0, 1}});
    f.action.idempotents["id:x"] = qv({1});
    f.action.idempotents["s"] = qv({0});
    f.action.maps["id:x"] = Matrix::identity(1);
    f.action.maps["s"] = Matrix(1, 1);
    ValidatedInstance z = validate_instance(f);
    ArtinianReport rep2 = artinian_verdict(z.action, 0);
    CHECK(rep2.artinian);
    CHECK(rep2.nonzero_isotropy_ideals == 1);

    for (const char* name : {"trivial.json", "coarse2.json", "matrix2.json"}) {
        ValidatedInstance w = load_validated(name);
        CHECK(artinian_verdict(w.action, 0).artinian);
    }
}
