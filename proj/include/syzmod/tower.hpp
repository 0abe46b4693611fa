#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syzmod/moduli.hpp"

namespace syzmod {

/// Castelnuovo-Mumford regularity on P^n: least m with h^i(E(m-i)) = 0, i >= 1.
inline std::int64_t cm_regularity(Resolver& r, const SheafExpr& e, int cap = kDefaultScanCap) {
    if (!r.variety().is_projective_space())
        throw UnsupportedError("regularity scan needs twisted tables, available on P^n only");
    if (auto m = r.regularity(e, cap)) return *m;
    throw UnknownBlockedError("regularity of " + to_string(e) + " undetermined within [-" + std::to_string(cap) + ", " +
                              std::to_string(cap) + "]");
}

enum class WPolicy { Full, Fixed, MaxGrassmann };

struct TowerPolicy {
    WPolicy w_choice = WPolicy::Full;
    std::int64_t fixed_w = 0;
    int steps = 1;
    bool require_V = false;
    int scan_cap = kDefaultScanCap;
};

inline std::int64_t choose_w(const TowerPolicy& p, std::int64_t lo, std::int64_t v) {
    switch (p.w_choice) {
        case WPolicy::Full: return v;
        case WPolicy::Fixed: return p.fixed_w;
        case WPolicy::MaxGrassmann: return std::clamp(v / 2, lo, v);
    }
    return v;
}

struct TowerStep {
    int index = 0;
    SheafExpr base;
    std::int64_t twist = 0;
    SheafExpr input;
    std::optional<std::int64_t> regularity;
    std::int64_t w = 0;
    SyzygyResult syzygy;
    ModuliReport moduli;
    std::int64_t next_rank = 0;
};

enum class HaltKind { Completed, Definite, Unknown };

inline const char* to_string(HaltKind k) {
    switch (k) {
        case HaltKind::Completed: return "completed";
        case HaltKind::Definite: return "halted";
        case HaltKind::Unknown: return "blocked";
    }
    return "blocked";
}

struct TowerTrace {
    std::vector<TowerStep> steps;
    HaltKind status = HaltKind::Completed;
    std::string reason;
};

namespace detail {

struct TwistCheck {
    Tri ok = Tri::Unknown;
    std::string reason;
    bool permanent = false;  // fails for every larger twist too
};

inline TwistCheck check_twist(Resolver& r, const SheafExpr& e, std::int64_t N, const TowerPolicy& p,
                              std::optional<std::int64_t> reg) {
    const VarietySpec& x = r.variety();
    const BundleFacts& f = r.facts(e, N);
    const std::string at = "twist " + std::to_string(N) + ": ";
    auto vanish = [&](const DimEntry& d, const std::string& what) -> TwistCheck {
        if (d.is_zero()) return {Tri::True, ""};
        if (d.known_nonzero()) return {Tri::False, at + what + " = " + d.str()};
        return {Tri::Unknown, at + what + " undetermined"};
    };
    std::vector<TwistCheck> checks{vanish(f.h[1], "h^1(F)"), vanish(f.h_dual[1], "h^1(F*)")};
    if (p.require_V) {
        checks.push_back(vanish(x.h_O[1], "h^1(O_X)"));
        checks.back().permanent = true;
        TwistCheck c = vanish(f.h_dual[2], "h^2(F*)");
        // On a surface h^2(F(N)*) = h^0(F(N) (x) ω) only grows with N.
        if (c.ok == Tri::False && x.n == 2 && x.is_projective_space()) {
            c.permanent = true;
            c.reason += "; V is empty along every larger twist on this surface";
        }
        checks.push_back(c);
    }
    if (x.is_projective_space()) {
        if (!reg) return {Tri::Unknown, "regularity undetermined"};
        checks.push_back(N >= *reg ? TwistCheck{Tri::True, ""}
                                   : TwistCheck{Tri::False, at + "below regularity " + std::to_string(*reg)});
    } else if (f.globally_generated.value != Tri::True) {
        checks.push_back({f.globally_generated.value, at + "global generation not established"});
    }
    const std::int64_t lo = x.n + f.rank;
    const std::int64_t need = p.w_choice == WPolicy::Fixed ? std::max(lo, p.fixed_w) : lo;
    if (!f.h[0].is_exact())
        checks.push_back({Tri::Unknown, at + "h^0(F) undetermined"});
    else if (f.h[0].value < need)
        checks.push_back({Tri::False, at + "h^0(F) = " + std::to_string(f.h[0].value) + " < " + std::to_string(need)});

    TwistCheck out{Tri::True, ""};
    for (const auto& c : checks) {
        if (c.ok == Tri::False && (out.ok != Tri::False || c.permanent)) out = c;
        else if (c.ok == Tri::Unknown && out.ok == Tri::True) out = c;
    }
    return out;
}

}  // namespace detail

/// Iterates E -> syz(E(N), w), twisting each input just enough to land in U
/// (or V when required), with CM regularity justifying global generation.
inline TowerTrace tower_run(Resolver& r, const SheafExpr& start, const TowerPolicy& p) {
    const VarietySpec& x = r.variety();
    if (p.steps < 1) throw PreconditionError("tower needs at least one step");
    if (p.scan_cap < 0) throw PreconditionError("scan cap must be non-negative");
    if (p.w_choice == WPolicy::Fixed && p.fixed_w <= 0) throw PreconditionError("fixed policy needs w > 0");

    TowerTrace trace;
    SheafExpr E = start;
    std::optional<CohomologyTable> end_E;
    for (int idx = 1; idx <= p.steps; ++idx) {
        std::optional<std::int64_t> reg;
        if (x.is_projective_space()) reg = r.regularity(E, p.scan_cap);

        std::optional<std::int64_t> N;
        detail::TwistCheck last;
        for (std::int64_t k = 0; k <= p.scan_cap; ++k) {
            last = detail::check_twist(r, E, k, p, reg);
            if (last.ok == Tri::True) {
                N = k;
                break;
            }
            if (last.ok == Tri::Unknown) {
                trace.status = HaltKind::Unknown;
                trace.reason = "step " + std::to_string(idx) + ": " + last.reason;
                return trace;
            }
            if (last.permanent) break;
        }
        if (!N) {
            trace.status = HaltKind::Definite;
            trace.reason = "step " + std::to_string(idx) + ": " +
                           (last.permanent ? last.reason
                                           : "twist insufficient, increase scan bound (" + last.reason + ")");
            return trace;
        }

        TowerStep step;
        step.index = idx;
        step.base = E;
        step.twist = *N;
        step.input = *N == 0 ? E : twist(E, *N);
        step.regularity = reg;
        if (reg && r.facts(step.input, 0).globally_generated.value == Tri::Unknown)
            r.assert_global_generation(step.input, true,
                                       "Castelnuovo-Mumford: regularity " + std::to_string(*reg) + " <= twist " +
                                           std::to_string(*N));
        const BundleFacts& F = r.facts(step.input, 0);
        step.w = choose_w(p, x.n + F.rank, F.h[0].value);
        step.syzygy = build_syzygy(r, step.input, step.w);
        const Tri member = p.require_V ? step.syzygy.membership.in_V : step.syzygy.membership.in_U;
        if (member != Tri::True) {
            trace.status = member == Tri::False ? HaltKind::Definite : HaltKind::Unknown;
            trace.reason = "step " + std::to_string(idx) + ": input not in " + (p.require_V ? "V" : "U");
            for (const auto& c : step.syzygy.membership.facts)
                if (c.status != Tri::True) trace.reason += "; " + c.condition + " " + to_string(c.status);
            return trace;
        }
        step.moduli = moduli_report(r, step.input, step.w, step.syzygy, end_E);
        step.next_rank = step.w - F.rank;
        if (step.next_rank != step.syzygy.S.rank) throw InternalError("tower rank bookkeeping failed");
        if (step.moduli.endo) end_E = step.moduli.endo->end;
        else end_E = step.syzygy.S.h_end;
        E = step.syzygy.S_expr;
        trace.steps.push_back(std::move(step));
    }
    return trace;
}

}  // namespace syzmod
