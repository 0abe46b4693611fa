#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "syzmod/parser.hpp"
#include "syzmod/tower.hpp"

namespace syzmod {

using Json = nlohmann::ordered_json;

namespace detail {

inline void reject_unknown_fields(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw ParseError(where + ": unknown field '" + key + "'");
    }
}

inline const Json& required(const Json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
    return *it;
}

inline std::int64_t as_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
    return j.get<std::int64_t>();
}

inline Rational as_rational(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    throw ParseError(where + ": expected an integer or a \"p/q\" string");
}

inline DimEntry as_entry(const Json& j, const std::string& where) {
    if (j.is_null()) return DimEntry::unknown();
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0) throw ParseError(where + ": negative dimension");
        return DimEntry::exact(v, Provenance::Asserted);
    }
    if (j.is_object()) {
        reject_unknown_fields(j, {"at_least"}, where);
        const auto v = as_int(required(j, "at_least", where), where);
        if (v < 0) throw ParseError(where + ": negative bound");
        return DimEntry::at_least(v, Provenance::Asserted);
    }
    throw ParseError(where + ": table entries are integers, null, or {\"at_least\": k}");
}

inline CohomologyTable as_table(const Json& j, int n, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    if (static_cast<int>(j.size()) != n + 1)
        throw ParseError(where + ": expected " + std::to_string(n + 1) + " entries, got " + std::to_string(j.size()));
    CohomologyTable t(n);
    for (int i = 0; i <= n; ++i) t.entries[i] = as_entry(j[i], where + "[" + std::to_string(i) + "]");
    t.euler_char = t.alternating_sum();
    if (t.euler_char) t.chi_source = Provenance::Asserted;
    return t;
}

inline Tri as_tri(const Json& j, const std::string& where) {
    if (j.is_null()) return Tri::Unknown;
    if (j.is_boolean()) return j.get<bool>() ? Tri::True : Tri::False;
    throw ParseError(where + ": expected true, false or null");
}

inline GradedClass as_class(const Json& j, const RingPtr& ring, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array with one entry per degree");
    if (static_cast<int>(j.size()) > ring->dim() + 1) throw ParseError(where + ": too many degrees");
    std::vector<Rational> coords(ring->size());
    for (int d = 0; d < static_cast<int>(j.size()); ++d) {
        const std::string at = where + "[" + std::to_string(d) + "]";
        if (j[d].is_array()) {
            if (static_cast<int>(j[d].size()) != ring->rank(d)) throw ParseError(at + ": wrong number of coordinates");
            for (int k = 0; k < ring->rank(d); ++k) coords[ring->offset(d) + k] = as_rational(j[d][k], at);
        } else {
            if (ring->rank(d) != 1) throw ParseError(at + ": degree has several basis elements, give an array");
            coords[ring->offset(d)] = as_rational(j[d], at);
        }
    }
    return GradedClass(ring, std::move(coords));
}

inline BasisIndex as_basis(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw ParseError(where + ": basis index is [degree, index]");
    return {static_cast<int>(as_int(j[0], where)), static_cast<int>(as_int(j[1], where))};
}

inline RingPtr as_ring(const Json& j, int n, const std::string& where) {
    reject_unknown_fields(j, {"graded_ranks", "products", "degree_map", "hyperplane"}, where);
    std::vector<int> ranks;
    for (const auto& r : required(j, "graded_ranks", where)) ranks.push_back(static_cast<int>(as_int(r, where)));
    if (static_cast<int>(ranks.size()) != n + 1) throw ParseError(where + ": graded_ranks must have dim+1 entries");
    std::vector<StructureConstant> products;
    if (auto it = j.find("products"); it != j.end()) {
        for (const auto& p : *it) {
            const std::string at = where + ".products";
            reject_unknown_fields(p, {"left", "right", "terms"}, at);
            StructureConstant sc{as_basis(required(p, "left", at), at), as_basis(required(p, "right", at), at), {}};
            for (const auto& t : required(p, "terms", at)) {
                reject_unknown_fields(t, {"basis", "coeff"}, at);
                sc.terms.emplace_back(as_basis(required(t, "basis", at), at), as_rational(required(t, "coeff", at), at));
            }
            products.push_back(std::move(sc));
        }
    }
    std::vector<Rational> degree_map;
    for (const auto& q : required(j, "degree_map", where)) degree_map.push_back(as_rational(q, where + ".degree_map"));
    std::optional<std::vector<Rational>> hyperplane;
    if (auto it = j.find("hyperplane"); it != j.end()) {
        hyperplane.emplace();
        for (const auto& q : *it) hyperplane->push_back(as_rational(q, where + ".hyperplane"));
    }
    try {
        return RingSpec::custom(std::move(ranks), products, std::move(degree_map), std::move(hyperplane));
    } catch (const StructuralError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline std::optional<std::int64_t> as_omega(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "O") return 0;
        if (s.size() > 3 && s.rfind("O(", 0) == 0 && s.back() == ')') {
            try {
                std::size_t used = 0;
                const std::string inner = s.substr(2, s.size() - 3);
                const auto k = std::stoll(inner, &used);
                if (used == inner.size()) return k;
            } catch (const std::exception&) {
            }
        }
    }
    throw ParseError(where + ": omega is \"O\", \"O(k)\" or an integer k");
}

}  // namespace detail

struct LoadedInput {
    std::optional<VarietySpec> variety;
    BundleRegistry bundles;
};

/// Reads a custom variety and/or opaque bundles. Without "dim" the bundles
/// live on `base`, the variety named on the command line.
inline LoadedInput load_input(const Json& doc, const std::optional<VarietySpec>& base) {
    using namespace detail;
    reject_unknown_fields(doc, {"name", "dim", "h_O", "omega", "ring", "tangent_chern", "bundles"}, "input");
    LoadedInput out;
    if (doc.contains("dim")) {
        VarietySpec x;
        x.name = doc.contains("name") ? doc["name"].get<std::string>() : "custom";
        x.n = static_cast<int>(as_int(doc["dim"], "input.dim"));
        if (x.n < 2) throw PreconditionError("input.dim: dimension must be at least 2");
        x.kind = VarietyKind::Custom;
        x.h_O = as_table(required(doc, "h_O", "input"), x.n, "input.h_O");
        for (auto& e : x.h_O.entries) e.source = Provenance::Asserted;
        if (doc.contains("omega")) x.omega_degree = as_omega(doc["omega"], "input.omega");
        if (doc.contains("ring")) x.ring = as_ring(doc["ring"], x.n, "input.ring");
        if (doc.contains("tangent_chern")) {
            if (!x.ring) throw ParseError("input.tangent_chern needs a ring");
            x.tangent = ChernPolynomial(as_class(doc["tangent_chern"], *x.ring, "input.tangent_chern"), x.n);
        }
        x.validate();
        out.variety = std::move(x);
    } else {
        for (auto key : {"name", "h_O", "omega", "ring", "tangent_chern"})
            if (doc.contains(key)) throw ParseError(std::string("input.") + key + " given without dim");
    }
    const VarietySpec* x = out.variety ? &*out.variety : base ? &*base : nullptr;
    if (auto it = doc.find("bundles"); it != doc.end()) {
        if (!x) throw PreconditionError("input bundles need a variety (--variety or dim)");
        if (!it->is_array()) throw ParseError("input.bundles: expected an array");
        for (const auto& b : *it) {
            const std::string at = "bundle " + (b.contains("name") && b["name"].is_string() ? b["name"].get<std::string>() : "?");
            reject_unknown_fields(b, {"name", "rank", "chern", "h", "h_dual", "h_end", "globally_generated", "simple"}, at);
            auto ob = std::make_shared<OpaqueBundle>();
            const Json& name = required(b, "name", at);
            if (!name.is_string() || name.get<std::string>().empty()) throw ParseError(at + ": name must be a string");
            ob->name = name.get<std::string>();
            ob->rank = as_int(required(b, "rank", at), at + ".rank");
            if (ob->rank <= 0) throw ParseError(at + ": rank must be positive");
            if (b.contains("chern") && !b["chern"].is_null()) {
                if (!x->ring) throw ParseError(at + ".chern: variety " + x->name + " has no ring");
                try {
                    ob->chern = ChernPolynomial(as_class(b["chern"], *x->ring, at + ".chern"), ob->rank);
                } catch (const PreconditionError& e) {
                    throw ParseError(at + ".chern: " + e.what());
                }
            }
            ob->h = b.contains("h") ? as_table(b["h"], x->n, at + ".h") : CohomologyTable::unknown(x->n);
            ob->h_dual = b.contains("h_dual") ? as_table(b["h_dual"], x->n, at + ".h_dual") : CohomologyTable::unknown(x->n);
            if (b.contains("h_end") && !b["h_end"].is_null()) ob->h_end = as_table(b["h_end"], x->n, at + ".h_end");
            if (b.contains("globally_generated")) ob->globally_generated = as_tri(b["globally_generated"], at);
            if (b.contains("simple")) ob->simple = as_tri(b["simple"], at);
            if (out.bundles.count(ob->name)) throw ParseError(at + ": defined twice");
            out.bundles.emplace(ob->name, std::move(ob));
        }
    }
    return out;
}

inline LoadedInput load_input_file(const std::string& path, const std::optional<VarietySpec>& base) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open input file " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return load_input(doc, base);
}

// ---- report serialization ----

inline Json to_json(const Rational& q) {
    if (is_integer(q)) {
        const Integer z = numerator_of(q);
        if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max())
            return Json(static_cast<std::int64_t>(z));
    }
    return Json(to_string(q));
}

inline Json to_json(const DimEntry& e) {
    Json j;
    switch (e.kind) {
        case DimEntry::Kind::Exact: j["value"] = e.value; break;
        case DimEntry::Kind::AtLeast: j["at_least"] = e.value; break;
        case DimEntry::Kind::Unknown: j["value"] = nullptr; break;
    }
    j["provenance"] = to_string(e.source);
    return j;
}

inline Json to_json(const CohomologyTable& t) {
    Json j;
    j["h"] = Json::array();
    for (const auto& e : t.entries) j["h"].push_back(to_json(e));
    if (auto chi = t.chi()) j["chi"] = Json{{"value", *chi}, {"provenance", to_string(t.euler_char ? t.chi_source : Provenance::Solver)}};
    else j["chi"] = Json{{"value", nullptr}, {"provenance", to_string(Provenance::None)}};
    return j;
}

inline Json to_json(const ChernPolynomial& c) {
    Json j;
    j["rank"] = c.rank();
    j["total"] = c.total().str();
    Json cls = Json::array();
    for (int d = 0; d <= c.ring().dim(); ++d) {
        auto comp = c.total().component(d);
        if (comp.size() == 1) {
            cls.push_back(to_json(comp[0]));
        } else {
            Json arr = Json::array();
            for (const auto& q : comp) arr.push_back(to_json(q));
            cls.push_back(arr);
        }
    }
    j["classes"] = cls;
    return j;
}

inline Json to_json(const TriFact& f) {
    Json j;
    j["value"] = f.value == Tri::Unknown ? Json(nullptr) : Json(f.value == Tri::True);
    j["provenance"] = to_string(f.source);
    j["reason"] = f.reason;
    return j;
}

inline Json tri_json(Tri t) { return t == Tri::Unknown ? Json(nullptr) : Json(t == Tri::True); }

inline Json to_json(const BundleFacts& f) {
    Json j;
    j["rank"] = f.rank;
    j["chern"] = f.chern ? to_json(*f.chern) : Json(nullptr);
    j["h"] = to_json(f.h);
    j["h_dual"] = to_json(f.h_dual);
    j["globally_generated"] = to_json(f.globally_generated);
    j["simple"] = to_json(f.simple);
    j["h_end"] = f.h_end ? to_json(*f.h_end) : Json(nullptr);
    j["notes"] = f.notes;
    return j;
}

inline const char* status_word(Tri t) { return t == Tri::True ? "holds" : t == Tri::False ? "fails" : "unknown"; }

inline Json to_json(const MembershipVerdict& v) {
    Json j;
    j["in_U"] = tri_json(v.in_U);
    j["in_V"] = tri_json(v.in_V);
    Json facts = Json::array();
    for (const auto& f : v.facts)
        facts.push_back(Json{{"condition", f.condition}, {"status", status_word(f.status)}, {"provenance", f.source}});
    j["blocking_facts"] = facts;
    return j;
}

inline Json to_json(const SyzygyResult& r) {
    Json j;
    j["F"] = to_string(r.F_expr);
    j["w"] = r.w;
    j["S"] = to_string(r.S_expr);
    j["F_facts"] = to_json(r.F);
    j["S_facts"] = to_json(r.S);
    j["membership"] = to_json(r.membership);
    j["simple"] = to_json(r.simple);
    j["h0_S"] = to_json(r.h0_S);
    j["h0_Sdual"] = to_json(r.h0_Sdual);
    j["embedding"] = to_string(r.embedding);
    j["embedding_reasons"] = r.embedding_reasons;
    j["assumptions"] = r.assumptions;
    return j;
}

inline Json to_json(const ReconstructReport& r) {
    Json j;
    j["refused"] = r.refused;
    j["reason"] = r.reason;
    Json rows = Json::array();
    for (const auto& c : r.checks) rows.push_back(Json{{"check", c.name}, {"passed", tri_json(c.passed)}, {"detail", c.detail}});
    j["checks"] = rows;
    return j;
}

inline Json opt_int(const std::optional<std::int64_t>& v, Provenance src) {
    return v ? Json{{"value", *v}, {"provenance", to_string(src)}} : Json{{"value", nullptr}, {"provenance", "none"}};
}

inline Json to_json(const ModuliReport& m) {
    Json j;
    j["v"] = opt_int(m.v, Provenance::Solver);
    j["dim_G0_fiber"] = opt_int(m.dim_G0_fiber, Provenance::ClosedForm);
    j["dim_U_tangent_at_F"] = to_json(m.dim_U_tangent_at_F);
    j["dim_G0_tangent"] = to_json(m.g0_tangent.geometric);
    j["dim_G0_tangent_quot"] = to_json(m.g0_tangent.quot_based);
    j["dim_G0_tangent_quot_pgl"] = to_json(m.g0_tangent.quot_based_pgl);
    j["hom_S_F"] = to_json(m.g0_tangent.hom_SF);
    j["tangent_Spl_S"] = to_json(m.tangent_Spl_S);
    j["obstruction_Spl_S"] = to_json(m.obstruction_Spl_S);
    j["dim_Spl_at_S"] = to_json(m.dim_Spl_at_S);
    j["dim_Spl_hrr"] = to_json(m.spl_hrr.value);
    j["chi_End_S"] = opt_int(m.spl_hrr.chi_end, Provenance::Hrr);
    j["dim_syz"] = to_json(m.locus.dim_syz);
    j["codim_syz"] = to_json(m.locus.codim);
    j["normal_fiber_dim"] = to_json(m.locus.normal_fiber_dim);
    j["codim_consistent"] = tri_json(m.locus.codim_consistent);
    if (m.endo) {
        j["End_S"] = to_json(m.endo->end);
        j["Fdual_S"] = to_json(m.endo->fdual_S);
    } else {
        j["End_S"] = nullptr;
        j["Fdual_S"] = nullptr;
    }
    j["convention_note"] = m.convention_note;
    j["notes"] = m.notes;
    return j;
}

inline Json to_json(const TowerTrace& t) {
    Json j;
    j["status"] = to_string(t.status);
    j["reason"] = t.reason;
    Json steps = Json::array();
    for (const auto& s : t.steps) {
        Json o;
        o["index"] = s.index;
        o["base"] = to_string(s.base);
        o["twist"] = s.twist;
        o["input"] = to_string(s.input);
        o["regularity"] = opt_int(s.regularity, Provenance::Solver);
        o["w"] = s.w;
        o["next_rank"] = s.next_rank;
        o["syzygy"] = to_json(s.syzygy);
        o["moduli"] = to_json(s.moduli);
        steps.push_back(o);
    }
    j["steps"] = steps;
    return j;
}

inline std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace syzmod
