#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "syzmod/cohom.hpp"
#include "syzmod/ring.hpp"

namespace syzmod {

enum class VarietyKind { ProjectiveSpace, CalabiYau, Custom };

/// The ambient variety X.
///
/// "Ringed" varieties carry an intersection ring and a tangent Chern
/// polynomial, which enables Hirzebruch-Riemann-Roch. Everything else works
/// from h^i(O_X) and the vanishing data attached to bundles.
struct VarietySpec {
    std::string name;
    int n = 0;
    VarietyKind kind = VarietyKind::Custom;
    CohomologyTable h_O;
    /// ω_X = O(omega_degree) in terms of the polarization, when expressible.
    std::optional<std::int64_t> omega_degree;
    std::optional<RingPtr> ring;
    std::optional<ChernPolynomial> tangent;
    bool gorenstein = true;

    bool is_projective_space() const { return kind == VarietyKind::ProjectiveSpace; }
    bool ringed() const { return ring.has_value(); }
    bool hrr_supported() const { return ring && tangent && n <= 3; }

    void validate() const {
        if (n < 2) throw PreconditionError("variety " + name + ": dimension must be at least 2");
        if (h_O.n != n) throw PreconditionError("variety " + name + ": h_O must have n+1 entries");
        if (!(h_O[0].is_exact() && h_O[0].value == 1))
            throw PreconditionError("variety " + name + ": h^0(O_X) must be 1 (X reduced and connected)");
        if (!gorenstein) throw PreconditionError("variety " + name + ": must be Gorenstein");
        if (ring && (*ring)->dim() != n) throw PreconditionError("variety " + name + ": ring degree differs from n");
        if (tangent && (!ring || !same_ring(tangent->ring(), **ring)))
            throw PreconditionError("variety " + name + ": tangent class must live in the variety's ring");
    }
};

inline VarietySpec projective_space(int n) {
    if (n < 2) throw PreconditionError("P^n needs n >= 2");
    VarietySpec x;
    x.name = "P" + std::to_string(n);
    x.n = n;
    x.kind = VarietyKind::ProjectiveSpace;
    x.h_O = line_bundle_cohom_pn(n, 0);
    x.omega_degree = -(n + 1);
    x.ring = RingSpec::projective_space(n);
    // c(T_{P^n}) = (1+h)^(n+1)
    std::vector<Rational> tc;
    for (int k = 0; k <= n; ++k) tc.push_back(Rational(binom64(n + 1, k)));
    x.tangent = ChernPolynomial(GradedClass::from_degrees(*x.ring, tc), n);
    return x;
}

/// Quintic threefold preset: cohomology-only (no intersection ring).
inline VarietySpec calabi_yau_quintic() {
    VarietySpec x;
    x.name = "CY3-quintic";
    x.n = 3;
    x.kind = VarietyKind::CalabiYau;
    x.h_O = CohomologyTable::exact({1, 0, 0, 1}, Provenance::ClosedForm);
    x.omega_degree = 0;
    return x;
}

/// Built-in varieties: P<n> for n >= 2 (P2, P3, P4, ...) and CY3-quintic.
/// Custom varieties are loaded from JSON (see json_io.hpp).
inline VarietySpec catalog(std::string_view name) {
    if (name == "CY3-quintic") return calabi_yau_quintic();
    if (name.size() >= 2 && name[0] == 'P' &&
        std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        const int n = std::stoi(std::string(name.substr(1)));
        if (n >= 2 && n <= 64) return projective_space(n);
    }
    throw PreconditionError("unknown variety '" + std::string(name) + "' (built-ins: P2, P3, P4, ..., CY3-quintic)");
}

inline GradedClass todd_class(const VarietySpec& x) {
    if (!x.ring || !x.tangent) throw UnsupportedError("variety " + x.name + " has no ring/tangent data for a Todd class");
    return todd_class(*x.tangent);
}

/// χ(E) from its Chern character by Hirzebruch-Riemann-Roch.
inline std::int64_t euler_char_of_character(const GradedClass& ch, const VarietySpec& x) {
    if (!x.hrr_supported())
        throw UnsupportedError("Hirzebruch-Riemann-Roch unavailable on " + x.name +
                               (x.ring && x.n > 3 ? " (unsupported degree, n <= 3)" : " (no ring data)"));
    return euler_characteristic(ch, todd_class(x));
}

inline std::int64_t euler_char_hrr(const ChernPolynomial& c, const VarietySpec& x) {
    return euler_char_of_character(chern_character(c), x);
}

/// ch(E) ch(E*) = ch(End E).
inline GradedClass endomorphism_character(const ChernPolynomial& c) {
    return chern_character(c) * chern_character(chern_dual(c));
}

inline CohomologyTable structure_sheaf_twist(const VarietySpec& x, std::int64_t t) {
    if (x.is_projective_space()) return line_bundle_cohom_pn(x.n, t);
    if (t == 0) return x.h_O;
    return CohomologyTable::unknown(x.n);
}

}  // namespace syzmod
