#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "parskew/instance.hpp"

using namespace parskew;
using testutil::fixture_path;
using testutil::load_fixture;

TEST_CASE("e57.json parses to the expected shapes") {
    InstanceFile f = load_fixture("e57.json");
    CHECK(f.meta.name == "e57");
    REQUIRE(f.meta.base_object);
    CHECK(*f.meta.base_object == "x");
    CHECK(f.groupoid.objects.size() == 2);
    CHECK(f.groupoid.morphisms.size() == 6);
    CHECK(f.algebra.dim == 8);
    CHECK(f.action.idempotents.size() == 8);
    CHECK(f.action.maps.size() == 8);
}

TEST_CASE("all bundled fixtures parse and validate") {
    for (const char* name : {"e57.json", "trivial.json", "coarse2.json", "matrix2.json"}) {
        ValidatedInstance v = validate_instance(load_fixture(name));
        CHECK(v.A.dim() > 0);
        CHECK(v.G.size() >= 1);
    }
}

TEST_CASE("rational 1/0 in a file is a parse error") {
    InstanceFile f = load_fixture("trivial.json");
    OrderedJson j = instance_to_json(f);
    j["algebra"]["unit"][0] = "1/0";
    CHECK_THROWS_AS(parse_instance_json(j), ParseError);
}

TEST_CASE("morphism with a source outside the object list is a parse error") {
    OrderedJson j = instance_to_json(load_fixture("coarse2.json"));
    j["groupoid"]["morphisms"][0]["src"] = "nope";
    CHECK_THROWS_AS(parse_instance_json(j), ParseError);
}

TEST_CASE("unknown keys are rejected") {
    OrderedJson j = instance_to_json(load_fixture("trivial.json"));
    j["extra"] = 1;
    CHECK_THROWS_AS(parse_instance_json(j), ParseError);
    OrderedJson j2 = instance_to_json(load_fixture("trivial.json"));
    j2["algebra"]["spice"] = "yes";
    CHECK_THROWS_AS(parse_instance_json(j2), ParseError);
}

TEST_CASE("invalid JSON carries a position in the error") {
    try {
        parse_instance_text("{ \"groupoid\": ");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("invalid JSON") != std::string::npos);
    }
}

TEST_CASE("missing action entries are reported") {
    OrderedJson j = instance_to_json(load_fixture("coarse2.json"));
    j["action"]["idempotents"].erase("a");
    CHECK_THROWS_AS(validate_instance(parse_instance_json(j)), ParseError);
    OrderedJson j2 = instance_to_json(load_fixture("coarse2.json"));
    j2["action"]["idempotents"]["ghost"] = j2["action"]["idempotents"]["a"];
    j2["action"]["maps"]["ghost"] = j2["action"]["maps"]["a"];
    CHECK_THROWS_AS(validate_instance(parse_instance_json(j2)), ParseError);
}

TEST_CASE("serialize-parse round trip is semantically the identity") {
    for (const char* name : {"e57.json", "trivial.json", "coarse2.json", "matrix2.json"}) {
        InstanceFile f = load_fixture(name);
        std::string canon1 = canonical_form(f);
        InstanceFile g = parse_instance_text(serialize_instance(f));
        std::string canon2 = canonical_form(g);
        CHECK(canon1 == canon2);
        // and the canonical form is itself a fixed point
        InstanceFile h = parse_instance_text(canon1);
        CHECK(canonical_form(h) == canon1);
    }
}
