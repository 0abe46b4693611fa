#pragma once

#include <optional>
#include <string>
#include <utility>

#include "syzmod/syzygy.hpp"

namespace syzmod {

inline std::int64_t grassmann_dim(std::int64_t w, std::int64_t v) {
    if (w <= 0 || w > v)
        throw PreconditionError("grassmann_dim needs 0 < w <= v, got w = " + std::to_string(w) + ", v = " +
                                std::to_string(v));
    return w * (v - w);
}

/// (ext^1, ext^2) of S read off the endomorphism table.
inline std::pair<DimEntry, DimEntry> tangent_obstruction_spl(const std::optional<CohomologyTable>& end) {
    if (!end) return {DimEntry::unknown(), DimEntry::unknown()};
    return {(*end)[1], end->n >= 2 ? (*end)[2] : DimEntry::exact(0, Provenance::Structural)};
}

struct HrrDimension {
    DimEntry value;
    std::optional<std::int64_t> chi_end;
    std::string refusal;
};

/// 1 - χ(End S) for simple S with vanishing higher Ext.
inline HrrDimension dim_spl_via_hrr(const BundleFacts& S, const TriFact& simple, const std::optional<CohomologyTable>& end,
                                    const VarietySpec& x) {
    HrrDimension out;
    if (!x.hrr_supported()) {
        out.refusal = "Hirzebruch-Riemann-Roch unavailable on " + x.name;
        return out;
    }
    if (!S.chern) {
        out.refusal = "no Chern data for S";
        return out;
    }
    out.chi_end = euler_char_of_character(endomorphism_character(*S.chern), x);
    if (simple.value != Tri::True) {
        out.refusal = "S not known to be simple";
        return out;
    }
    if (!end) {
        out.refusal = "higher Ext groups of S unknown";
        return out;
    }
    for (int i = 2; i <= x.n; ++i)
        if (!(*end)[i].is_zero()) {
            out.refusal = "h^" + std::to_string(i) + "(End S) not known to vanish";
            return out;
        }
    out.value = DimEntry::exact(1 - *out.chi_end, Provenance::Hrr);
    return out;
}

/// Closed forms for a line bundle F with h^i(F) = 0 for i > 0 and q = h^1(O_X).
struct LemmaFormulas {
    std::int64_t w = 0, h0F = 0, q = 0;
    std::int64_t hom_SF = 0;
    std::int64_t quotient_dim_sq = 0;  // h^0(S* (x) F) - w^2
    std::int64_t quotient_dim_pgl = 0;    // h^0(S* (x) F) - (w^2 - 1)
    std::int64_t h1S = 0;
    std::int64_t ext1_lower = 0;
    std::int64_t surjectivity_gap = 0;
    std::int64_t surjectivity_gap_pgl = 0;
};

inline LemmaFormulas lemma_formulas(std::int64_t w, std::int64_t h0F, std::int64_t q) {
    if (w <= 0 || h0F < 0 || q < 0) throw PreconditionError("lemma_formulas needs w > 0, h0F >= 0, q >= 0");
    LemmaFormulas f{w, h0F, q};
    f.hom_SF = w * h0F + q - 1;
    f.quotient_dim_sq = w * (h0F - w) + q - 1;
    f.quotient_dim_pgl = f.quotient_dim_sq + 1;
    f.h1S = h0F - w + w * q;
    f.ext1_lower = w * f.h1S;
    f.surjectivity_gap = f.ext1_lower - f.quotient_dim_sq;
    f.surjectivity_gap_pgl = f.ext1_lower - f.quotient_dim_pgl;
    return f;
}

inline const char* kConventionNote =
    "geometric: ext^1(F,F) + w(v-w) (Grassmann bundle over the deformations of F); "
    "quot_based: h^0(S* (x) F) - w^2; the PGL(w) count h^0(S* (x) F) - (w^2 - 1) is also given. "
    "The geometric value is primary.";

/// h^0(S* (x) F) from 0 -> F* (x) F -> W* (x) F -> S* (x) F -> 0.
inline CohomologyTable sdual_tensor_f(const BundleFacts& F, std::int64_t w, const std::optional<CohomologyTable>& end_F,
                                      const VarietySpec& x) {
    std::optional<CohomologyTable> e = end_F ? end_F : F.h_end;
    if (!e && F.rank == 1) e = x.h_O;
    SesProblem p;
    p.tables = {e ? *e : CohomologyTable::unknown(x.n), scale(F.h, w), CohomologyTable::unknown(x.n)};
    p.labels = {"F*(x)F", "W*(x)F", "S*(x)F"};
    return les_solve(std::move(p)).c();
}

struct TangentG0 {
    DimEntry geometric;
    DimEntry quot_based;
    DimEntry quot_based_pgl;
    DimEntry hom_SF;
};

inline TangentG0 tangent_g0(const BundleFacts& F, std::int64_t w, const std::optional<CohomologyTable>& end_F,
                            const VarietySpec& x) {
    TangentG0 out;
    std::optional<CohomologyTable> e = end_F ? end_F : F.h_end;
    if (!e && F.rank == 1) e = x.h_O;
    const DimEntry ext1F = e ? (*e)[1] : DimEntry::unknown();
    if (F.h[0].is_exact() && ext1F.is_exact())
        out.geometric = DimEntry::exact(ext1F.value + grassmann_dim(w, F.h[0].value), Provenance::Solver);
    out.hom_SF = sdual_tensor_f(F, w, end_F, x)[0];
    if (out.hom_SF.is_exact()) {
        const std::int64_t a = out.hom_SF.value - w * w, b = a + 1;
        if (a >= 0) out.quot_based = DimEntry::exact(a, Provenance::Solver);
        if (b >= 0) out.quot_based_pgl = DimEntry::exact(b, Provenance::Solver);
    }
    return out;
}

struct LocusDims {
    DimEntry dim_syz;
    DimEntry codim;
    DimEntry normal_fiber_dim;
    Tri codim_consistent = Tri::Unknown;
};

inline DimEntry exact_or_unknown(const DimEntry& a, const DimEntry& b, std::int64_t sign, Provenance src) {
    if (!a.is_exact() || !b.is_exact()) return DimEntry::unknown();
    const std::int64_t v = a.value + sign * b.value;
    if (v < 0) throw InconsistencyError("dimension", "moduli arithmetic", "negative dimension " + std::to_string(v));
    return DimEntry::exact(v, src);
}

struct ModuliReport {
    std::optional<std::int64_t> v;
    std::optional<std::int64_t> dim_G0_fiber;
    DimEntry dim_U_tangent_at_F;
    TangentG0 g0_tangent;
    DimEntry tangent_Spl_S;
    DimEntry obstruction_Spl_S;
    DimEntry dim_Spl_at_S;
    HrrDimension spl_hrr;
    LocusDims locus;
    std::optional<EndoResult> endo;
    std::string convention_note = kConventionNote;
    std::vector<std::string> notes;
};

/// Full dimension report for (F, w). end_F supplies End(F) when F has rank >= 2.
inline ModuliReport moduli_report(Resolver& r, const SheafExpr& F, std::int64_t w, const SyzygyResult& res,
                                  std::optional<CohomologyTable> end_F = std::nullopt) {
    const VarietySpec& x = r.variety();
    ModuliReport m;
    const BundleFacts& Ff = res.F;
    if (Ff.h[0].is_exact()) {
        m.v = Ff.h[0].value;
        m.dim_G0_fiber = grassmann_dim(w, *m.v);
    }
    std::optional<CohomologyTable> eF = end_F ? end_F : Ff.h_end;
    if (!eF && Ff.rank == 1) eF = x.h_O;
    m.dim_U_tangent_at_F = eF ? (*eF)[1] : DimEntry::unknown();
    m.g0_tangent = tangent_g0(Ff, w, eF, x);

    std::optional<CohomologyTable> endS = res.S.h_end;
    if (!endS) {
        try {
            m.endo = endo_cohomology(r, F, w, eF);
            endS = m.endo->end;
        } catch (const UnsupportedError& e) {
            m.notes.push_back(e.what());
        }
    }
    std::tie(m.tangent_Spl_S, m.obstruction_Spl_S) = tangent_obstruction_spl(endS);
    if (res.simple.value != Tri::True) {
        m.notes.push_back("dim Spl at S not reported: S not known to be simple");
    } else if (m.obstruction_Spl_S.is_zero() && m.tangent_Spl_S.is_exact()) {
        m.dim_Spl_at_S = m.tangent_Spl_S;
    } else if (!m.obstruction_Spl_S.is_zero()) {
        m.notes.push_back("dim Spl at S not reported: ext^2(S,S) = 0 not established");
    }
    m.spl_hrr = dim_spl_via_hrr(res.S, res.simple, endS, x);
    if (m.spl_hrr.value.is_exact() && m.tangent_Spl_S.is_exact() && m.spl_hrr.value.value != m.tangent_Spl_S.value)
        throw InconsistencyError("ext^1(S,S)", "Hirzebruch-Riemann-Roch",
                                 "table gives " + std::to_string(m.tangent_Spl_S.value) + ", HRR gives " +
                                     std::to_string(m.spl_hrr.value.value));

    if (m.dim_G0_fiber && m.dim_U_tangent_at_F.is_exact())
        m.locus.dim_syz = DimEntry::exact(m.dim_U_tangent_at_F.value + *m.dim_G0_fiber, Provenance::Solver);
    if (m.endo) m.locus.normal_fiber_dim = m.endo->fdual_S[2];
    if (m.dim_Spl_at_S.is_exact() && m.locus.dim_syz.is_exact() && res.membership.in_U == Tri::True) {
        m.locus.codim = exact_or_unknown(m.dim_Spl_at_S, m.locus.dim_syz, -1, Provenance::Solver);
        if (m.locus.normal_fiber_dim.is_exact())
            m.locus.codim_consistent =
                m.locus.codim.value == m.locus.normal_fiber_dim.value ? Tri::True : Tri::False;
    }
    return m;
}

/// Dimension, codimension and normal fiber of the syzygy locus for a line bundle F in U.
inline LocusDims syz_locus_dims(Resolver& r, const SheafExpr& F, std::int64_t w) {
    const SyzygyResult res = build_syzygy(r, F, w);
    if (res.F.rank != 1) throw UnsupportedError("syz_locus_dims needs F to be a line bundle");
    if (res.membership.in_U == Tri::False) throw PreconditionError("syz_locus_dims needs F in U");
    if (res.membership.in_U == Tri::Unknown) throw UnknownBlockedError("membership of F in U is unknown");
    return moduli_report(r, F, w, res).locus;
}

}  // namespace syzmod
