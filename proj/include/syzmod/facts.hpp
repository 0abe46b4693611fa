#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syzmod/cohom.hpp"
#include "syzmod/expr.hpp"
#include "syzmod/variety.hpp"

namespace syzmod {

/// Everything known about a vector bundle E: rank, Chern data, h^i(E),
/// h^i(E*), and the assertions needed by the membership criteria.
struct BundleFacts {
    std::int64_t rank = 0;
    std::optional<ChernPolynomial> chern;
    CohomologyTable h;
    CohomologyTable h_dual;
    TriFact globally_generated;
    TriFact simple;
    /// Table of End(E) = E (x) E* when it is structurally known.
    std::optional<CohomologyTable> h_end;
    /// Degrees of the line-bundle summands when E splits on P^n.
    std::optional<std::vector<std::int64_t>> split;
    std::vector<std::string> notes;

    bool is_line_bundle() const { return rank == 1; }
    DimEntry h0() const { return h[0]; }
};

struct BlockingFact {
    std::string condition;
    Tri status = Tri::Unknown;  // True = holds, False = fails
    std::string source;
};

/// Membership of F in the loci U and V.
///
/// U: F locally free, globally generated, simple, h^1(F) = h^1(F*) = 0.
/// V: F in U with h^2(F*) = 0, on X with h^1(O_X) = 0.
/// Unknown conditions make the verdict unknown, never optimistic.
struct MembershipVerdict {
    Tri in_U = Tri::Unknown;
    Tri in_V = Tri::Unknown;
    std::vector<BlockingFact> facts;

    std::vector<std::string> reasons(Tri which_status) const {
        std::vector<std::string> out;
        for (const auto& f : facts)
            if (f.status == which_status) out.push_back(f.condition);
        return out;
    }
};

inline Tri vanishing_status(const DimEntry& e) {
    if (e.is_zero()) return Tri::True;
    if (e.known_nonzero()) return Tri::False;
    return Tri::Unknown;
}

inline MembershipVerdict check_membership(const BundleFacts& f, const VarietySpec& x) {
    MembershipVerdict v;
    auto add = [&](std::string cond, Tri status, std::string src) {
        v.facts.push_back({std::move(cond), status, std::move(src)});
        return status;
    };
    auto entry_source = [](const DimEntry& e) { return std::string(to_string(e.source)); };

    Tri u = Tri::True;
    u = tri_and(u, add("locally free", Tri::True, "structural"));
    u = tri_and(u, add("globally generated", f.globally_generated.value, to_string(f.globally_generated.source)));
    u = tri_and(u, add("simple", f.simple.value, to_string(f.simple.source)));
    u = tri_and(u, add("h^1(F) = 0", vanishing_status(f.h[1]), entry_source(f.h[1])));
    u = tri_and(u, add("h^1(F*) = 0", vanishing_status(f.h_dual[1]), entry_source(f.h_dual[1])));
    v.in_U = u;

    Tri extra = Tri::True;
    extra = tri_and(extra, add("h^2(F*) = 0", vanishing_status(f.h_dual[2]), entry_source(f.h_dual[2])));
    extra = tri_and(extra, add("h^1(O_X) = 0", vanishing_status(x.h_O[1]), entry_source(x.h_O[1])));
    v.in_V = tri_and(u, extra);
    return v;
}

}  // namespace syzmod
