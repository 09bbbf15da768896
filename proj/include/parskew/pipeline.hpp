#pragma once

#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "parskew/extension.hpp"
#include "parskew/generator.hpp"
#include "parskew/instance.hpp"

namespace parskew {

struct CheckEntry {
    std::string name;
    std::string status;  // "pass", "fail", "not-applicable"
    std::string detail;
};

struct Report {
    std::string instance;
    std::vector<CheckEntry> checks;
    OrderedJson witnesses = OrderedJson::array();
    std::map<std::string, int> dims;
    std::string transversal;
    double elapsed_ms = 0.0;

    bool all_passed() const {
        for (const auto& c : checks)
            if (c.status == "fail") return false;
        return true;
    }
    void pass(const std::string& name, const std::string& detail = "") { checks.push_back({name, "pass", detail}); }
    void fail(const std::string& name, const std::string& detail) { checks.push_back({name, "fail", detail}); }
    void na(const std::string& name, const std::string& detail) { checks.push_back({name, "not-applicable", detail}); }
    void from(const std::string& name, const VerificationReport& rep) {
        if (rep.ok)
            pass(name, rep.notes.empty() ? "" : rep.notes.front());
        else
            fail(name, rep.failure);
    }
    void witness(const std::string& check, const std::string& label, const Vec& v,
                 const std::vector<std::string>& basis) {
        OrderedJson w;
        w["check"] = check;
        w["label"] = label;
        OrderedJson terms = OrderedJson::array();
        for (size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) terms.push_back(OrderedJson::array({basis[i], v[i].str()}));
        w["value"] = std::move(terms);
        witnesses.push_back(std::move(w));
    }
};

struct PipelineOptions {
    bool run_factorization = true;
    bool run_separability = true;
    bool run_frobenius = true;
    bool run_artinian = true;
    std::optional<std::string> base_object;  // overrides the meta hint
    int casimir_dim_limit = 48;              // skip the idempotent construction above this carrier size
    int inverse_crosscheck_dim_limit = 64;
    bool run_identity_checks = true;
};

inline OrderedJson report_to_json(const Report& r) {
    OrderedJson j;
    j["schema"] = "parskew-report/v1";
    j["instance"] = r.instance;
    OrderedJson checks = OrderedJson::array();
    for (const auto& c : r.checks) {
        OrderedJson e;
        e["name"] = c.name;
        e["status"] = c.status;
        e["detail"] = c.detail;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    j["witnesses"] = r.witnesses;
    OrderedJson dims;
    for (const auto& [k, v] : r.dims) dims[k] = v;
    j["dims"] = std::move(dims);
    j["transversal"] = r.transversal;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

/// Text rendering is derived from the same facts as the JSON one.
inline std::string report_to_text(const Report& r) {
    std::ostringstream os;
    os << "instance: " << r.instance << "\n";
    if (!r.transversal.empty()) os << "transversal: " << r.transversal << "\n";
    if (!r.dims.empty()) {
        os << "dims:";
        for (const auto& [k, v] : r.dims) os << " " << k << "=" << v;
        os << "\n";
    }
    for (const auto& c : r.checks) {
        os << "  [" << c.status << "] " << c.name;
        if (!c.detail.empty()) os << " - " << c.detail;
        os << "\n";
    }
    for (const auto& w : r.witnesses) {
        os << "  witness(" << w.at("check").get<std::string>() << "): " << w.at("label").get<std::string>() << " =";
        for (const auto& t : w.at("value")) os << " " << t.at(1).get<std::string>() << "*" << t.at(0).get<std::string>();
        os << "\n";
    }
    os << (r.all_passed() ? "RESULT: pass" : "RESULT: fail") << "\n";
    return os.str();
}

namespace pipedetail {

inline std::string transversal_string(const PartialActionData& pa, const GroupTypeCertificate& cert) {
    std::ostringstream os;
    os << "base=" << pa.G.object(cert.base) << " {";
    for (int y = 0; y < pa.G.object_count(); ++y) {
        if (y) os << ", ";
        os << pa.G.object(y) << ": " << pa.G.mor(cert.tau.tau[static_cast<size_t>(y)]).id;
    }
    os << "}";
    return os.str();
}

/// Everything after validation, for one connected component.
inline void run_component(const PartialActionData& pa, const InstanceMeta& meta, const PipelineOptions& opt,
                          const std::string& prefix, Report& rep) {
    const auto& A = pa.A;

    if (opt.run_identity_checks) rep.from(prefix + "action_identities", check_action_identities(pa));

    // Base object: explicit option, then the meta hint, then the least object id.
    int base = 0;
    {
        std::string want;
        if (opt.base_object)
            want = *opt.base_object;
        else if (meta.base_object && pa.G.has_object(*meta.base_object))
            want = *meta.base_object;
        if (!want.empty() && pa.G.has_object(want)) {
            base = pa.G.object_index(want);
        } else {
            for (int y = 1; y < pa.G.object_count(); ++y)
                if (pa.G.object(y) < pa.G.object(base)) base = y;
        }
    }

    std::optional<GroupTypeCertificate> cert = find_group_type(pa, base);
    if (cert)
        rep.pass(prefix + "group_type", transversal_string(pa, *cert));
    else
        rep.na(prefix + "group_type", "no transversal satisfies the idempotent equalities at base " +
                                          pa.G.object(base));
    if (cert && rep.transversal.empty()) rep.transversal = transversal_string(pa, *cert);

    std::optional<FactorizationResult> fact;
    if (cert && opt.run_factorization) {
        int sdim = 0;
        for (int g = 0; g < pa.G.size(); ++g) sdim += pa.ideal_dim(g);
        try {
            fact = build_factorization(pa, *cert, sdim <= opt.inverse_crosscheck_dim_limit);
        } catch (const Error& e) {
            rep.fail(prefix + "factorization", e.what());
        }
    }
    if (fact) {
        rep.dims[prefix + "skew"] = fact->S.dim();
        rep.dims[prefix + "coarse_skew"] = fact->C.dim();
        rep.dims[prefix + "iterated"] = fact->T.dim();
        rep.pass(prefix + "factorization",
                 "isomorphism verified; dims " + std::to_string(fact->S.dim()) + " = " + std::to_string(fact->T.dim()));
        auto cc = center_of_coarse_skew(fact->C, pa, *cert);
        rep.dims[prefix + "coarse_center"] = cc.center_dim;
        rep.from(prefix + "coarse_center", cc.report);
        GlobalityReport gl = check_gamma_globality(pa);
        if (gl.applicable)
            rep.pass(prefix + "gamma_globality", gl.all_units ? gl.detail : ("FAIL " + gl.detail));
        else
            rep.na(prefix + "gamma_globality", gl.detail);
    } else if (cert && opt.run_factorization) {
        // failure already recorded
    } else if (!cert && opt.run_factorization) {
        rep.na(prefix + "factorization", "group-type certificate not found; direct criteria still run");
    }

    if (opt.run_separability) {
        SeparabilityVerdict direct = separable_direct(pa);
        if (direct.separable) {
            rep.pass(prefix + "separable_direct", "witness found in C(A)");
            rep.witness(prefix + "separable_direct", "a", *direct.witness, A.labels());
        } else {
            rep.fail(prefix + "separable_direct", "no central element solves the trace system (extension not separable)");
        }
        if (cert && fact) {
            CompositeSeparability comp = separable_composite(pa, *cert, fact->beta);
            rep.checks.push_back({prefix + "separable_group",
                                  comp.group_separable ? "pass" : "fail",
                                  comp.group_separable ? "isotropy-restricted trace witness found"
                                                       : "no witness for the isotropy extension"});
            if (comp.group_witness) {
                PartialActionData restr = restrict_to_isotropy(pa, cert->base);
                rep.witness(prefix + "separable_group", "a_x", *comp.group_witness, restr.A.labels());
            }
            rep.checks.push_back({prefix + "separable_coarse", comp.coarse_witness ? "pass" : "fail",
                                  comp.coarse_witness ? "coarse criterion witness found"
                                                      : "no witness for the coarse criterion"});
            if (comp.coarse_witness)
                rep.witness(prefix + "separable_coarse", "a", *comp.coarse_witness, A.labels());
            if (comp.verdict.separable != direct.separable)
                rep.fail(prefix + "separable_composite", "composite and direct verdicts disagree");
            else
                rep.checks.push_back({prefix + "separable_composite", comp.verdict.separable ? "pass" : "fail",
                                      "agrees with the direct criterion"});
        } else {
            rep.na(prefix + "separable_composite", "needs a group-type certificate");
        }
        SemisimpleReport ss = semisimple_verdict(direct);
        if (ss.yes)
            rep.pass(prefix + "semisimple", ss.text);
        else
            rep.na(prefix + "semisimple", ss.text);

        if (direct.separable) {
            SkewRing S = fact ? fact->S : build_skew_ring(pa);
            if (S.dim() <= opt.casimir_dim_limit)
                rep.from(prefix + "separability_idempotent", verify_separability_idempotent(S, *direct.witness));
            else
                rep.na(prefix + "separability_idempotent",
                       "skipped above dimension " + std::to_string(opt.casimir_dim_limit));
        }
    }

    if (opt.run_frobenius) {
        if (fact) {
            try {
                FrobeniusSystem fc = frobenius_coarse(fact->C);
                rep.pass(prefix + "frobenius_coarse", "system verified; tensor dim " + std::to_string(fc.tensor_dim));
                FrobeniusSystem fg = frobenius_group_part(fact->T, fact->gamma);
                rep.pass(prefix + "frobenius_isotropy", "system verified; tensor dim " + std::to_string(fg.tensor_dim));
                FrobeniusSystem fs = frobenius_composite(*fact, fc, fg);
                rep.pass(prefix + "frobenius_composite", "system verified; tensor dim " + std::to_string(fs.tensor_dim));
            } catch (const Error& e) {
                rep.fail(prefix + "frobenius_composite", e.what());
            }
        } else {
            rep.na(prefix + "frobenius_composite", "needs a group-type certificate");
        }
    }

    if (opt.run_artinian) {
        ArtinianReport ar = artinian_verdict(pa, base);
        rep.pass(prefix + "artinian", ar.text);
        rep.dims[prefix + "nonzero_isotropy_ideals"] = ar.nonzero_isotropy_ideals;
    }
}

}  // namespace pipedetail

/// Validate, split into connected components, then run the factorization and
/// every requested criterion per component. A missing group-type certificate
/// downgrades the factorization-dependent checks to not-applicable; the
/// direct criteria still run.
inline Report run_pipeline(const InstanceFile& inst, const PipelineOptions& opt = {}) {
    Report rep;
    rep.instance = inst.meta.name.empty() ? "(unnamed)" : inst.meta.name;
    auto start = std::chrono::steady_clock::now();

    ValidatedInstance v;
    try {
        v = validate_instance(inst);
        rep.pass("validate", "groupoid, algebra and action axioms hold");
        rep.dims["algebra"] = v.A.dim();
        rep.dims["morphisms"] = v.G.size();
    } catch (const ParseError&) {
        throw;  // input errors are the caller's concern (exit code 2)
    } catch (const Error& e) {
        rep.fail("validate", e.what());
        rep.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return rep;
    }

    auto comps = connected_components(v.G);
    rep.pass("components", std::to_string(comps.size()) + " connected component(s)");
    rep.dims["components"] = static_cast<int>(comps.size());

    if (comps.size() == 1) {
        pipedetail::run_component(v.action, inst.meta, opt, "", rep);
    } else {
        for (size_t ci = 0; ci < comps.size(); ++ci) {
            PartialActionData sub = restrict_to_component(v.action, comps[ci]);
            pipedetail::run_component(sub, inst.meta, opt, "c" + std::to_string(ci) + "/", rep);
        }
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

struct FuzzOptions {
    uint64_t seed = 0;
    int count = 100;
    GeneratorOptions gen;
    std::string out_dir = ".";  // counterexamples land here
};

struct FuzzSummary {
    int count = 0;
    int failures = 0;
    int group_type_instances = 0;
    int global_instances = 0;
    int separable_instances = 0;
    int restricted_instances = 0;
    std::vector<std::string> failure_files;

    std::string str() const {
        std::ostringstream os;
        os << "fuzz: " << count << " instances, " << failures << " failure(s); " << group_type_instances
           << " group-type, " << global_instances << " global, " << restricted_instances << " restricted, "
           << separable_instances << " separable";
        return os.str();
    }
};

/// Deterministic under a fixed seed. Every instance must pass generation-time
/// validation, the action identity sweep, the factorization (when group-type),
/// verdict agreement between the two separability routes, and the globality
/// flag check; any exception or failed check is a finding and the instance is
/// serialized for replay.
inline FuzzSummary fuzz(const FuzzOptions& opt, std::ostream& log) {
    FuzzSummary sum;
    std::mt19937_64 rng(opt.seed);
    for (int i = 0; i < opt.count; ++i) {
        std::string name = "fuzz-" + std::to_string(opt.seed) + "-" + std::to_string(i);
        InstanceFile f;
        bool ok = true;
        std::string why;
        try {
            f = generate_instance(rng, opt.gen, name);
            ValidatedInstance v = validate_instance(f);  // (a) axioms after generation
            if (v.action.global)
                ++sum.global_instances;
            else
                ++sum.restricted_instances;

            VerificationReport ids = check_action_identities(v.action);  // (b)
            if (!ids.ok) throw InternalError(ids.failure);

            auto comps = connected_components(v.G);
            for (const auto& comp : comps) {
                PartialActionData pa = comps.size() == 1 ? v.action : restrict_to_component(v.action, comp);
                auto cert = find_group_type(pa, 0);
                if (pa.global && !cert) throw InternalError("global action must be group-type");
                SeparabilityVerdict direct = separable_direct(pa);
                if (direct.separable) ++sum.separable_instances;
                if (cert) {
                    ++sum.group_type_instances;
                    int sdim = 0;
                    for (int g = 0; g < pa.G.size(); ++g) sdim += pa.ideal_dim(g);
                    FactorizationResult fact = build_factorization(pa, *cert, sdim <= 64);      // (c), (d)
                    CompositeSeparability comp_sep = separable_composite(pa, *cert, fact.beta);  // (e)
                    if (comp_sep.verdict.separable != direct.separable)
                        throw InternalError("separability route disagreement");
                    if (pa.global) {
                        GlobalityReport gl = check_gamma_globality(pa);  // (f)
                        if (!gl.applicable || !gl.all_units)
                            throw InternalError("globality flag violated: " + gl.detail);
                    }
                }
            }
        } catch (const Error& e) {
            ok = false;
            why = e.what();
        }
        if (!ok) {
            ++sum.failures;
            std::string path = opt.out_dir + "/" + name + ".json";
            std::ofstream out(path);
            out << serialize_instance(f);
            sum.failure_files.push_back(path);
            log << "FAIL " << name << ": " << why << " (written to " << path << ")\n";
        }
        ++sum.count;
    }
    log << sum.str() << "\n";
    return sum;
}

}  // namespace parskew
