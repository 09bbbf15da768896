#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "parskew/partial_action.hpp"

namespace parskew {

using OrderedJson = nlohmann::ordered_json;

struct RawAlgebra {
    int dim = 0;
    std::vector<std::string> basis;
    Vec unit;
    std::vector<std::tuple<int, int, SparseVec>> products;
};

struct RawAction {
    std::map<std::string, Vec> idempotents;     // morphism id -> 1_g
    std::map<std::string, Matrix> maps;         // morphism id -> alpha_g (dense rows)
};

struct InstanceMeta {
    std::string name;
    std::optional<std::string> base_object;
    std::map<std::string, std::string> transversal_hint;  // object -> morphism
};

/// Parsed instance file: everything the validators need, nothing validated yet.
struct InstanceFile {
    InstanceMeta meta;
    GroupoidDescription groupoid;
    RawAlgebra algebra;
    RawAction action;
};

struct ValidatedInstance {
    FinGroupoid G;
    StructAlgebra A;
    PartialActionData action;
};

namespace detail {

inline void expect_keys(const OrderedJson& j, std::initializer_list<const char*> keys, const std::string& where) {
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (const char* allowed : keys)
            if (k == allowed) known = true;
        if (!known) throw ParseError("unknown key '" + k + "' in " + where);
    }
}

inline Vec parse_vec(const OrderedJson& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + " must be an array of rational strings");
    Vec out;
    for (const auto& e : j) {
        if (!e.is_string()) throw ParseError(where + " entries must be rational strings");
        out.push_back(Rational::parse(e.get<std::string>()));
    }
    return out;
}

inline Matrix parse_matrix(const OrderedJson& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError(where + " must be a nonempty array of rows");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j.at(0).size());
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const auto& row = j.at(static_cast<size_t>(r));
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError(where + " rows have inconsistent lengths");
        for (int c = 0; c < cols; ++c) {
            const auto& e = row.at(static_cast<size_t>(c));
            if (!e.is_string()) throw ParseError(where + " entries must be rational strings");
            m.at(r, c) = Rational::parse(e.get<std::string>());
        }
    }
    return m;
}

inline OrderedJson vec_to_json(const Vec& v) {
    OrderedJson out = OrderedJson::array();
    for (const auto& q : v) out.push_back(q.str());
    return out;
}

inline OrderedJson matrix_to_json(const Matrix& m) {
    OrderedJson out = OrderedJson::array();
    for (int r = 0; r < m.rows(); ++r) {
        OrderedJson row = OrderedJson::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace detail

inline InstanceFile parse_instance_json(const OrderedJson& j) {
    using detail::expect_keys;
    InstanceFile f;
    if (!j.is_object()) throw ParseError("instance must be a JSON object");
    expect_keys(j, {"format", "meta", "groupoid", "algebra", "action"}, "instance");
    if (!j.contains("groupoid") || !j.contains("algebra") || !j.contains("action"))
        throw ParseError("instance needs groupoid, algebra and action sections");
    if (j.contains("format") && j.at("format").get<std::string>() != "parskew-instance/v1")
        throw ParseError("unsupported instance format");

    if (j.contains("meta")) {
        const auto& m = j.at("meta");
        expect_keys(m, {"name", "base_object", "transversal_hint"}, "meta");
        if (m.contains("name")) f.meta.name = m.at("name").get<std::string>();
        if (m.contains("base_object")) f.meta.base_object = m.at("base_object").get<std::string>();
        if (m.contains("transversal_hint"))
            for (const auto& [k, v] : m.at("transversal_hint").items())
                f.meta.transversal_hint[k] = v.get<std::string>();
    }

    const auto& g = j.at("groupoid");
    expect_keys(g, {"objects", "morphisms", "compositions"}, "groupoid");
    for (const auto& o : g.at("objects")) f.groupoid.objects.push_back(o.get<std::string>());
    if (f.groupoid.objects.empty()) throw ParseError("groupoid needs at least one object");
    for (const auto& m : g.at("morphisms")) {
        expect_keys(m, {"id", "src", "tgt"}, "morphism");
        MorphismDecl d{m.at("id").get<std::string>(), m.at("src").get<std::string>(), m.at("tgt").get<std::string>()};
        bool src_ok = false, tgt_ok = false;
        for (const auto& o : f.groupoid.objects) {
            if (o == d.src) src_ok = true;
            if (o == d.tgt) tgt_ok = true;
        }
        if (!src_ok) throw ParseError("morphism '" + d.id + "' source '" + d.src + "' is not an object");
        if (!tgt_ok) throw ParseError("morphism '" + d.id + "' target '" + d.tgt + "' is not an object");
        f.groupoid.morphisms.push_back(std::move(d));
    }
    if (g.contains("compositions"))
        for (const auto& c : g.at("compositions")) {
            if (!c.is_array() || c.size() != 3) throw ParseError("composition entries are [outer, inner, result]");
            f.groupoid.compositions.push_back(
                {c.at(0).get<std::string>(), c.at(1).get<std::string>(), c.at(2).get<std::string>()});
        }

    const auto& a = j.at("algebra");
    expect_keys(a, {"dim", "basis", "unit", "products"}, "algebra");
    f.algebra.dim = a.at("dim").get<int>();
    if (f.algebra.dim <= 0) throw ParseError("algebra dimension must be positive");
    for (const auto& b : a.at("basis")) f.algebra.basis.push_back(b.get<std::string>());
    f.algebra.unit = detail::parse_vec(a.at("unit"), "algebra unit");
    for (const auto& p : a.at("products")) {
        expect_keys(p, {"i", "j", "coords"}, "product entry");
        SparseVec coords;
        for (const auto& e : p.at("coords")) {
            if (!e.is_array() || e.size() != 2) throw ParseError("product coords entries are [index, rational]");
            coords.emplace_back(e.at(0).get<int>(), Rational::parse(e.at(1).get<std::string>()));
        }
        f.algebra.products.emplace_back(p.at("i").get<int>(), p.at("j").get<int>(), std::move(coords));
    }

    const auto& act = j.at("action");
    expect_keys(act, {"idempotents", "maps"}, "action");
    for (const auto& [k, v] : act.at("idempotents").items())
        f.action.idempotents[k] = detail::parse_vec(v, "idempotent of '" + k + "'");
    for (const auto& [k, v] : act.at("maps").items()) f.action.maps[k] = detail::parse_matrix(v, "map of '" + k + "'");
    return f;
}

inline InstanceFile parse_instance_text(const std::string& text) {
    OrderedJson j;
    try {
        j = OrderedJson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_instance_json(j);
}

inline InstanceFile parse_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance_text(ss.str());
}

/// Run all three validators; errors propagate as their specific exceptions.
inline ValidatedInstance validate_instance(const InstanceFile& f) {
    ValidatedInstance out;
    out.G = FinGroupoid::validate(f.groupoid);
    out.A = StructAlgebra(f.algebra.dim, f.algebra.basis, f.algebra.products, f.algebra.unit);
    out.A.validate();

    std::vector<Vec> idem;
    std::vector<Matrix> maps;
    for (int i = 0; i < out.G.size(); ++i) {
        const std::string& id = out.G.mor(i).id;
        auto it = f.action.idempotents.find(id);
        if (it == f.action.idempotents.end()) throw ParseError("action is missing the idempotent of '" + id + "'");
        idem.push_back(it->second);
        auto mt = f.action.maps.find(id);
        if (mt == f.action.maps.end()) throw ParseError("action is missing the map of '" + id + "'");
        maps.push_back(mt->second);
    }
    for (const auto& [k, v] : f.action.idempotents)
        if (!out.G.has_morphism(k)) throw ParseError("action references unknown morphism '" + k + "'");
    for (const auto& [k, v] : f.action.maps)
        if (!f.action.idempotents.count(k)) throw ParseError("map without idempotent for '" + k + "'");

    out.action = validate_partial_action(out.G, out.A, std::move(idem), std::move(maps));
    return out;
}

/// Canonical file form of a validated action: identities explicit, the full
/// closed composition table in row-major morphism order, canonical key order.
inline InstanceFile to_instance_file(const PartialActionData& pa, InstanceMeta meta = {}) {
    InstanceFile f;
    f.meta = std::move(meta);
    f.groupoid.objects = pa.G.objects();
    for (int i = 0; i < pa.G.size(); ++i) {
        if (pa.G.is_identity(i)) continue;
        f.groupoid.morphisms.push_back(
            {pa.G.mor(i).id, pa.G.object(pa.G.src(i)), pa.G.object(pa.G.tgt(i))});
    }
    for (int a = 0; a < pa.G.size(); ++a)
        for (int b = 0; b < pa.G.size(); ++b)
            if (pa.G.composable(a, b))
                f.groupoid.compositions.push_back(
                    {pa.G.mor(a).id, pa.G.mor(b).id, pa.G.mor(pa.G.compose(a, b)).id});

    f.algebra.dim = pa.A.dim();
    f.algebra.basis = pa.A.labels();
    f.algebra.unit = pa.A.unit();
    f.algebra.products = pa.A.products();

    for (int i = 0; i < pa.G.size(); ++i) {
        f.action.idempotents[pa.G.mor(i).id] = pa.one(i);
        f.action.maps[pa.G.mor(i).id] = pa.map[static_cast<size_t>(i)];
    }
    return f;
}

inline OrderedJson instance_to_json(const InstanceFile& f) {
    OrderedJson j;
    j["format"] = "parskew-instance/v1";
    OrderedJson meta;
    meta["name"] = f.meta.name;
    if (f.meta.base_object) meta["base_object"] = *f.meta.base_object;
    if (!f.meta.transversal_hint.empty()) {
        OrderedJson th;
        for (const auto& [k, v] : f.meta.transversal_hint) th[k] = v;
        meta["transversal_hint"] = std::move(th);
    }
    j["meta"] = std::move(meta);

    OrderedJson g;
    g["objects"] = f.groupoid.objects;
    OrderedJson mors = OrderedJson::array();
    for (const auto& m : f.groupoid.morphisms)
        mors.push_back(OrderedJson{{"id", m.id}, {"src", m.src}, {"tgt", m.tgt}});
    g["morphisms"] = std::move(mors);
    OrderedJson comps = OrderedJson::array();
    for (const auto& c : f.groupoid.compositions) comps.push_back(OrderedJson::array({c[0], c[1], c[2]}));
    g["compositions"] = std::move(comps);
    j["groupoid"] = std::move(g);

    OrderedJson a;
    a["dim"] = f.algebra.dim;
    a["basis"] = f.algebra.basis;
    a["unit"] = detail::vec_to_json(f.algebra.unit);
    OrderedJson prods = OrderedJson::array();
    for (const auto& [i, jx, c] : f.algebra.products) {
        OrderedJson coords = OrderedJson::array();
        for (const auto& [k, q] : c) coords.push_back(OrderedJson::array({k, q.str()}));
        prods.push_back(OrderedJson{{"i", i}, {"j", jx}, {"coords", std::move(coords)}});
    }
    a["products"] = std::move(prods);
    j["algebra"] = std::move(a);

    OrderedJson act;
    OrderedJson idems, maps;
    for (const auto& [k, v] : f.action.idempotents) idems[k] = detail::vec_to_json(v);
    for (const auto& [k, v] : f.action.maps) maps[k] = detail::matrix_to_json(v);
    act["idempotents"] = std::move(idems);
    act["maps"] = std::move(maps);
    j["action"] = std::move(act);
    return j;
}

inline std::string serialize_instance(const InstanceFile& f) { return instance_to_json(f).dump(2) + "\n"; }

/// Canonical serialized form after validation; two files describe the same
/// instance exactly when their canonical forms agree.
inline std::string canonical_form(const InstanceFile& f, const std::string& name = "") {
    ValidatedInstance v = validate_instance(f);
    InstanceMeta meta = f.meta;
    if (!name.empty()) meta.name = name;
    return serialize_instance(to_instance_file(v.action, meta));
}

}  // namespace parskew
