#pragma once

#include <functional>
#include <string>
#include <vector>

#include "syzmod/tower.hpp"

namespace syzmod {

struct GoldenRow {
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
};

namespace detail {

inline GoldenRow golden_row(std::string name, std::string expected, const std::function<std::string()>& compute) {
    GoldenRow row{std::move(name), std::move(expected), "", false};
    try {
        row.computed = compute();
        row.pass = row.computed == row.expected;
    } catch (const std::exception& e) {
        row.computed = std::string("error: ") + e.what();
    }
    return row;
}

inline std::string entry_value(const DimEntry& e) { return e.str(); }

}  // namespace detail

/// Reference numbers reproduced by `syzmod verify`.
inline std::vector<GoldenRow> golden_rows() {
    using detail::golden_row;
    std::vector<GoldenRow> rows;

    Resolver p2(projective_space(2));
    Resolver p3(projective_space(3));

    rows.push_back(golden_row("P2 O(3) w=3: c(S)", "1 - 3h + 9h^2",
                              [&] { return p2.facts(syz(line(3), 3)).chern->total().str(); }));
    rows.push_back(golden_row("P2 O(3) w=3: rank S", "2", [&] { return std::to_string(p2.facts(syz(line(3), 3)).rank); }));
    rows.push_back(golden_row("dim Gr(3, H^0(O_P2(3)))", "21", [&] { return std::to_string(grassmann_dim(3, 10)); }));
    rows.push_back(golden_row("P2 O(3) w=3: ext^1(S,S) from tables", "24", [&] {
        auto res = build_syzygy(p2, line(3), 3);
        return moduli_report(p2, line(3), 3, res).tangent_Spl_S.str();
    }));
    rows.push_back(golden_row("P2 O(3) w=3: ext^2(S,S)", "0", [&] {
        auto res = build_syzygy(p2, line(3), 3);
        return moduli_report(p2, line(3), 3, res).obstruction_Spl_S.str();
    }));
    rows.push_back(golden_row("P2 O(3) w=3: 1 - chi(End S)", "24", [&] {
        auto res = build_syzygy(p2, line(3), 3);
        return moduli_report(p2, line(3), 3, res).spl_hrr.value.str();
    }));
    rows.push_back(golden_row("P2 O(3) w=3: h^2(S(-3))", "3", [&] { return p2.facts(syz(line(3), 3), -3).h[2].str(); }));
    rows.push_back(golden_row("P2 O(3) w=3: codim of syzygy locus", "3", [&] {
        auto res = build_syzygy(p2, line(3), 3);
        return moduli_report(p2, line(3), 3, res).locus.codim.str();
    }));
    rows.push_back(golden_row("P2 O(3) w=3: embedding", "LocallyClosedEmbedding",
                              [&] { return std::string(to_string(build_syzygy(p2, line(3), 3).embedding)); }));

    const SheafExpr F = dual(syz(direct_sum({{line(2), 2}}), 4));
    rows.push_back(golden_row("split rank 2: c(F)", "1 + 4h + 12h^2", [&] { return p2.facts(F).chern->total().str(); }));
    rows.push_back(golden_row("split rank 2: H^0(F)", "4", [&] { return p2.facts(F).h[0].str(); }));
    rows.push_back(golden_row("split rank 2: H^1(F*) != 0", "true",
                              [&] { return p2.facts(F).h_dual[1].known_nonzero() ? "true" : "false"; }));
    rows.push_back(golden_row("split rank 2: S = syz(F, 4) splits as", "O(-2)+O(-2)", [&] {
        const auto& s = p2.facts(syz(F, 4));
        if (!s.split) return std::string("not split");
        std::string out;
        for (auto d : *s.split) out += (out.empty() ? "" : "+") + std::string("O(") + std::to_string(d) + ")";
        return out;
    }));
    rows.push_back(golden_row("split rank 2: H^0(S (x) S*)", "4", [&] { return p2.facts(syz(F, 4)).h_end->entries[0].str(); }));
    rows.push_back(golden_row("split rank 2: S simple", "false",
                              [&] { return std::string(to_string(build_syzygy(p2, F, 4).simple.value)); }));
    rows.push_back(golden_row("split rank 2: F in U", "false",
                              [&] { return std::string(to_string(check_membership(p2.facts(F), p2.variety()).in_U)); }));

    rows.push_back(golden_row("P3 O(1) w=4: embedding", "OpenEmbedding",
                              [&] { return std::string(to_string(build_syzygy(p3, line(1), 4).embedding)); }));
    rows.push_back(golden_row("P3 O(1) w=4 (complete): ext^1(S,S)", "0", [&] {
        auto res = build_syzygy(p3, line(1), 4);
        return moduli_report(p3, line(1), 4, res).tangent_Spl_S.str();
    }));
    rows.push_back(golden_row("P3 O(2) w=9 (incomplete): ext^1(S,S) > 0", "true", [&] {
        auto res = build_syzygy(p3, line(2), 9);
        return moduli_report(p3, line(2), 9, res).tangent_Spl_S.known_nonzero() ? "true" : "false";
    }));

    rows.push_back(golden_row("CY3 h^0(L)=125 w=5: dim syzygy locus", "600", [&] {
        Resolver cy(calabi_yau_quintic());
        auto L = std::make_shared<OpaqueBundle>();
        L->name = "L";
        L->rank = 1;
        L->h = CohomologyTable::exact({125, 0, 0, 0}, Provenance::Asserted);
        L->h_dual = CohomologyTable::unknown(3);
        L->globally_generated = Tri::True;
        L->simple = Tri::True;
        const SheafExpr e = opaque(L);
        auto res = build_syzygy(cy, e, 5);
        return moduli_report(cy, e, 5, res).locus.dim_syz.str();
    }));
    rows.push_back(golden_row("lemma (w,h0F,q)=(4,5,2): hom_SF, quot, h1S, ext1, gap", "21, 5, 9, 36, 31", [] {
        const auto f = lemma_formulas(4, 5, 2);
        return std::to_string(f.hom_SF) + ", " + std::to_string(f.quotient_dim_sq) + ", " + std::to_string(f.h1S) +
               ", " + std::to_string(f.ext1_lower) + ", " + std::to_string(f.surjectivity_gap);
    }));
    return rows;
}

}  // namespace syzmod
