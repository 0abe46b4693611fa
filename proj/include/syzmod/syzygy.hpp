#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syzmod/facts.hpp"
#include "syzmod/sheaf.hpp"

namespace syzmod {

enum class Embedding { LocallyClosed, Open, NotApplicable };

inline const char* to_string(Embedding e) {
    switch (e) {
        case Embedding::LocallyClosed: return "LocallyClosedEmbedding";
        case Embedding::Open: return "OpenEmbedding";
        case Embedding::NotApplicable: return "NotApplicable";
    }
    return "NotApplicable";
}

struct SyzygyResult {
    SheafExpr F_expr;
    SheafExpr S_expr;
    std::int64_t w = 0;
    BundleFacts F;
    BundleFacts S;
    MembershipVerdict membership;
    TriFact simple;
    DimEntry h0_S;
    DimEntry h0_Sdual;
    Embedding embedding = Embedding::NotApplicable;
    std::vector<std::string> embedding_reasons;
    std::vector<std::string> assumptions;
};

/// S = ker(W (x) O_X -> F) for a w-dimensional W in H^0(F).
inline SyzygyResult build_syzygy(Resolver& r, const SheafExpr& F, std::int64_t w) {
    const VarietySpec& x = r.variety();
    SyzygyResult out;
    out.F_expr = F;
    out.w = w;
    out.F = r.facts(F, 0);
    if (w < x.n + out.F.rank)
        throw PreconditionError("w >= n + r violated: w = " + std::to_string(w) + ", n + r = " +
                                std::to_string(x.n + out.F.rank));
    out.S_expr = syz(F, w);
    out.S = r.facts(out.S_expr, 0);
    out.membership = check_membership(out.F, x);

    if (out.F.globally_generated.value == Tri::True)
        out.assumptions.push_back("generic-W assumption: W (x) O_X -> F is onto for general W of dimension w");
    else
        out.assumptions.push_back("evaluation W (x) O_X -> F assumed onto; global generation of F is not established");
    if (out.F.h[0].is_exact() && out.F.h[0].value == w) out.assumptions.push_back("W = H^0(F) (complete linear system)");

    out.h0_S = out.S.h[0];
    out.h0_Sdual = out.S.h_dual[0];
    out.simple = out.S.simple;

    if (out.membership.in_U == Tri::True) {
        tighten(out.h0_S, DimEntry::exact(0, Provenance::Theorem), "S.h^0", "theorem: F in U");
        tighten(out.h0_Sdual, DimEntry::exact(w, Provenance::Theorem), "S*.h^0", "theorem: F in U");
        out.h0_S.source = Provenance::Theorem;
        out.h0_Sdual.source = Provenance::Theorem;
        out.simple = TriFact::yes(Provenance::Theorem, "S simple for F in U");
        out.embedding = Embedding::LocallyClosed;
        out.embedding_reasons.push_back("F in U");
        if (out.membership.in_V == Tri::True) {
            out.embedding = Embedding::Open;
            out.embedding_reasons.push_back("F in V: h^2(F*) = 0 and h^1(O_X) = 0");
        } else {
            for (const auto& c : out.membership.facts)
                if ((c.condition == "h^2(F*) = 0" || c.condition == "h^1(O_X) = 0") && c.status != Tri::True)
                    out.embedding_reasons.push_back("not open: " + c.condition + " is " +
                                                    (c.status == Tri::False ? "false" : "unknown"));
        }
    } else {
        for (const auto& c : out.membership.facts)
            if (c.status != Tri::True && c.condition != "h^2(F*) = 0" && c.condition != "h^1(O_X) = 0")
                out.embedding_reasons.push_back(std::string("not in U: ") + c.condition + " is " +
                                                (c.status == Tri::False ? "false" : "unknown"));
    }
    if (out.S.h_end && out.S.h_end->entries[0].lower() >= 2) {
        if (out.simple.value == Tri::True)
            throw InconsistencyError("S.simple", "endomorphism count", "simple but h^0(End S) >= 2");
        out.simple = TriFact::no(Provenance::Structural,
                                 "h^0(S (x) S*) = " + out.S.h_end->entries[0].str() + " >= 2");
    }
    return out;
}

struct EndoResult {
    CohomologyTable fdual_S;  // F* (x) S
    CohomologyTable end;      // S (x) S*
    std::optional<std::int64_t> chi_hrr;
    Tri hrr_agrees = Tri::Unknown;
    std::vector<std::string> notes;
};

/// h^i(S (x) S*) by chaining
///   0 -> F* (x) S -> W (x) F* -> F* (x) F -> 0
///   0 -> F* (x) S -> W* (x) S -> S* (x) S -> 0.
/// For F of rank >= 2 the table of End F must be known (from the facts or
/// passed in); otherwise the chain is unsupported.
inline EndoResult endo_cohomology(Resolver& r, const SheafExpr& F, std::int64_t w,
                                  std::optional<CohomologyTable> end_F = std::nullopt) {
    const VarietySpec& x = r.variety();
    const BundleFacts Ff = r.facts(F, 0);
    if (!end_F) {
        if (Ff.h_end) end_F = Ff.h_end;
        else if (Ff.rank == 1) end_F = x.h_O;
        else throw UnsupportedError("endomorphism cohomology needs F to be a line bundle or End(F) to be known");
    }
    const SheafExpr S = syz(F, w);
    const BundleFacts Sf = r.facts(S, 0);

    EndoResult out;
    SesProblem first;
    first.tables = {CohomologyTable::unknown(x.n), scale(Ff.h_dual, w), *end_F};
    first.labels = {"F*(x)S", "W(x)F*", "F*(x)F"};
    if (Ff.split && Ff.split->size() == 1) {
        // F = O(d): F* (x) S = S(-d)
        tighten_table(first.a(), r.facts(S, -(*Ff.split)[0]).h, "F*(x)S", "twist");
    }
    first = les_solve(std::move(first));
    out.fdual_S = first.a();

    SesProblem second;
    second.tables = {out.fdual_S, scale(Sf.h, w), CohomologyTable::unknown(x.n)};
    second.labels = {"F*(x)S", "W*(x)S", "End(S)"};
    tighten(second.c()[0], DimEntry::at_least(1, Provenance::Structural), "End(S).h^0", "identity");
    if (Sf.simple.value == Tri::True) {
        tighten(second.c()[0], DimEntry::exact(1, Sf.simple.source), "End(S).h^0", "S simple");
        out.notes.push_back("h^0(End S) = 1 since S is simple");
    }
    const bool self_dual_serre = x.omega_degree && *x.omega_degree == 0;
    for (int round = 0; round <= x.n + 2; ++round) {
        second = les_solve(std::move(second));
        if (!self_dual_serre) break;
        // End S is self-dual, so with trivial canonical bundle h^i = h^(n-i).
        if (!tighten_table(second.c(), serre_dual_table(second.c(), x.n), "End(S)", "Serre duality")) break;
    }
    out.end = second.c();

    if (x.hrr_supported() && Sf.chern) {
        out.chi_hrr = euler_char_of_character(endomorphism_character(*Sf.chern), x);
        if (auto chi = out.end.chi()) {
            out.hrr_agrees = *chi == *out.chi_hrr ? Tri::True : Tri::False;
            if (out.hrr_agrees == Tri::False)
                throw InconsistencyError("End(S).chi", "Hirzebruch-Riemann-Roch",
                                         "table gives " + std::to_string(*chi) + ", HRR gives " +
                                             std::to_string(*out.chi_hrr));
        }
    }
    return out;
}

struct CheckRow {
    std::string name;
    Tri passed = Tri::Unknown;
    std::string detail;
};

struct ReconstructReport {
    bool refused = false;
    std::string reason;
    std::vector<CheckRow> checks;

    Tri all_passed() const {
        if (refused) return Tri::Unknown;
        Tri t = Tri::True;
        for (const auto& c : checks) t = tri_and(t, c.passed);
        return t;
    }
};

inline bool tables_compatible(const CohomologyTable& a, const CohomologyTable& b) {
    if (a.n != b.n) return false;
    for (int i = 0; i <= a.n; ++i) {
        const DimEntry &p = a[i], &q = b[i];
        if (p.is_exact() && q.is_exact() && p.value != q.value) return false;
        if (p.is_exact() && q.lower() > p.value) return false;
        if (q.is_exact() && p.lower() > q.value) return false;
    }
    return true;
}

/// Recovers F* as the syzygy bundle of (S*, H^0(S*)) and compares invariants.
inline ReconstructReport reconstruct_check(const SyzygyResult& res, const VarietySpec& x) {
    ReconstructReport rep;
    if (res.membership.in_U != Tri::True) {
        rep.refused = true;
        rep.reason = "not in U";
        return rep;
    }
    const std::int64_t w = res.w;
    const BundleFacts& S = res.S;
    const BundleFacts& F = res.F;

    CheckRow h0{"h^0(S*) = w", Tri::Unknown, ""};
    if (S.h_dual[0].is_exact()) {
        h0.passed = S.h_dual[0].value == w ? Tri::True : Tri::False;
        h0.detail = "h^0(S*) = " + std::to_string(S.h_dual[0].value);
    } else {
        h0.detail = "h^0(S*) = " + S.h_dual[0].str() + " (solver), theorem value used";
    }
    rep.checks.push_back(h0);

    const std::int64_t r_rec = w - S.rank;
    rep.checks.push_back({"rank", r_rec == F.rank ? Tri::True : Tri::False,
                          "w - rank(S) = " + std::to_string(r_rec) + ", rank(F) = " + std::to_string(F.rank)});

    if (S.chern && F.chern) {
        const ChernPolynomial rec = chern_invert(chern_dual(*S.chern), r_rec);
        const ChernPolynomial want = chern_dual(*F.chern);
        rep.checks.push_back({"chern", rec == want ? Tri::True : Tri::False,
                              "c = " + rec.total().str() + ", c(F*) = " + want.total().str()});
    } else {
        rep.checks.push_back({"chern", Tri::Unknown, "Chern data unavailable"});
    }

    // 0 -> R -> H^0(S*) (x) O -> S* -> 0 with H^0 an isomorphism.
    SesProblem p;
    p.tables = {CohomologyTable::unknown(x.n), scale(x.h_O, w), S.h_dual};
    p.labels = {"R", "W*(x)O", "S*"};
    tighten(p.c()[0], DimEntry::exact(w, Provenance::Theorem), "S*.h^0", "theorem");
    p.mark_injective_on_sections();
    p.mark_surjective_on_sections();
    p = les_solve(std::move(p));
    // 0 -> S -> W (x) O -> R* -> 0
    SesProblem q;
    q.tables = {S.h, scale(x.h_O, w), CohomologyTable::unknown(x.n)};
    q.labels = {"S", "W(x)O", "R*"};
    q = les_solve(std::move(q));
    const bool ok = tables_compatible(p.a(), F.h_dual) && tables_compatible(q.c(), F.h);
    rep.checks.push_back({"cohomology", ok ? Tri::True : Tri::False,
                          "h(R) = " + p.a().str() + " vs h(F*) = " + F.h_dual.str() + "; h(R*) = " + q.c().str() +
                              " vs h(F) = " + F.h.str()});
    return rep;
}

}  // namespace syzmod
