#pragma once

// Randomized property checks. Each returns an empty string on success and a
// description of the first counterexample otherwise.

#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "syzmod/variety.hpp"

namespace props {

using namespace syzmod;

inline std::string show(const std::vector<std::int64_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    return os.str();
}

/// chern_invert: c * c^-1 = 1, inverting twice is the identity, and the
/// coefficients match the integer recursion oracle.
inline std::string chern_invert_roundtrip(int trials, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dim(1, 4), coeff(-9, 9), rank(0, 6);
    for (int trial = 0; trial < trials; ++trial) {
        const int n = dim(rng);
        const auto ring = RingSpec::projective_space(n);
        std::vector<std::int64_t> a(n + 1);
        a[0] = 1;
        for (int k = 1; k <= n; ++k) a[k] = coeff(rng);
        std::vector<Rational> q(a.begin(), a.end());
        const ChernPolynomial c(GradedClass::from_degrees(ring, q), rank(rng));
        const ChernPolynomial inv = chern_invert(c, c.rank());
        if (!(c.total() * inv.total() == GradedClass::one(ring))) return "c * c^-1 != 1 for " + show(a);
        if (!(chern_invert(inv, c.rank()) == c)) return "double inversion differs for " + show(a);
        const auto b = oracle::series_inverse(a);
        for (int k = 0; k <= n; ++k)
            if (inv.total().coeff(k) != b[k]) return "coefficient " + std::to_string(k) + " differs for " + show(a);
    }
    return "";
}

inline CohomologyTable exact_table(const std::vector<std::int64_t>& v) {
    return CohomologyTable::exact(v, Provenance::ClosedForm);
}

/// out carries at least the information of in.
inline bool at_least_as_tight(const DimEntry& out, const DimEntry& in) {
    switch (in.kind) {
        case DimEntry::Kind::Exact: return out.is_exact() && out.value == in.value;
        case DimEntry::Kind::AtLeast: return out.kind != DimEntry::Kind::Unknown && out.value >= in.value;
        case DimEntry::Kind::Unknown: return true;
    }
    return false;
}

inline bool consistent_with(const DimEntry& e, std::int64_t truth) {
    if (e.is_exact()) return e.value == truth;
    return e.lower() <= truth;
}

struct RandomSes {
    int n = 2;
    std::array<std::vector<std::int64_t>, 3> truth;
};

/// 0 -> A -> A + C -> C -> 0 with A, C sums of line bundles on P^n.
inline RandomSes random_split_ses(std::mt19937& rng) {
    std::uniform_int_distribution<int> dim(2, 3), count(1, 2), deg(-6, 5);
    RandomSes s;
    s.n = dim(rng);
    std::vector<std::int64_t> a, c;
    for (int k = count(rng); k > 0; --k) a.push_back(deg(rng));
    for (int k = count(rng); k > 0; --k) c.push_back(deg(rng));
    std::vector<std::int64_t> b = a;
    b.insert(b.end(), c.begin(), c.end());
    s.truth = {oracle::bott_sum(s.n, a), oracle::bott_sum(s.n, b), oracle::bott_sum(s.n, c)};
    return s;
}

inline SesProblem masked_problem(const RandomSes& s, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, 9);
    SesProblem p(CohomologyTable(s.n), CohomologyTable(s.n), CohomologyTable(s.n));
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i <= s.n; ++i) {
            const std::int64_t v = s.truth[j][i];
            const int roll = pick(rng);
            if (roll < 5) p.tables[j][i] = DimEntry::exact(v, Provenance::ClosedForm);
            else if (roll < 7 && v > 0) p.tables[j][i] = DimEntry::at_least(1 + static_cast<std::int64_t>(rng() % v));
        }
        if (pick(rng) < 3) p.tables[j].euler_char = oracle::alternating(s.truth[j]);
    }
    return p;
}

/// les_solve never contradicts the truth, only tightens, and is idempotent.
inline std::string les_monotone_idempotent(int trials, unsigned seed) {
    std::mt19937 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const RandomSes s = random_split_ses(rng);
        const SesProblem in = masked_problem(s, rng);
        SesProblem out;
        try {
            out = les_solve(in);
        } catch (const InconsistencyError& e) {
            return std::string("false contradiction: ") + e.what();
        }
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i <= s.n; ++i) {
                const std::string where = "trial " + std::to_string(trial) + " table " + std::to_string(j) + " h^" +
                                          std::to_string(i);
                if (!consistent_with(out.tables[j][i], s.truth[j][i]))
                    return where + ": solved " + out.tables[j][i].str() + " but truth is " +
                           std::to_string(s.truth[j][i]);
                if (!at_least_as_tight(out.tables[j][i], in.tables[j][i]))
                    return where + ": loosened " + in.tables[j][i].str() + " to " + out.tables[j][i].str();
            }
        const SesProblem again = les_solve(out);
        for (int j = 0; j < 3; ++j)
            if (!again.tables[j].same_entries(out.tables[j]))
                return "trial " + std::to_string(trial) + ": second solve changed table " + std::to_string(j);
    }
    return "";
}

/// A single wrong entry in an otherwise exact problem is always caught.
inline std::string les_detects_contradictions(int trials, unsigned seed) {
    std::mt19937 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const RandomSes s = random_split_ses(rng);
        SesProblem p(exact_table(s.truth[0]), exact_table(s.truth[1]), exact_table(s.truth[2]));
        const int j = static_cast<int>(rng() % 3);
        const int i = static_cast<int>(rng() % (s.n + 1));
        const std::int64_t bump = 1 + static_cast<std::int64_t>(rng() % 3);
        if (rng() % 2 == 0) {
            p.tables[j][i] = DimEntry::exact(s.truth[j][i] + bump);
        } else {
            p.tables[j][i] = DimEntry::at_least(s.truth[j][i] + bump);
        }
        p.tables[j].euler_char.reset();
        try {
            les_solve(p);
        } catch (const InconsistencyError&) {
            continue;
        }
        return "trial " + std::to_string(trial) + ": corrupted table " + std::to_string(j) + " h^" +
               std::to_string(i) + " accepted";
    }
    return "";
}

/// With all connecting maps marked zero (the sequence splits), a fully blanked
/// table is reconstructed exactly from the other two.
inline std::string les_reconstructs_split(int trials, unsigned seed) {
    std::mt19937 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const RandomSes s = random_split_ses(rng);
        const int blank = static_cast<int>(rng() % 3);
        SesProblem p(exact_table(s.truth[0]), exact_table(s.truth[1]), exact_table(s.truth[2]));
        p.tables[blank] = CohomologyTable::unknown(s.n);
        for (int i = 0; i <= s.n; ++i) p.zero_maps.insert(3 * i + 2);
        const SesProblem out = les_solve(p);
        for (int i = 0; i <= s.n; ++i)
            if (!(out.tables[blank][i].is_exact() && out.tables[blank][i].value == s.truth[blank][i]))
                return "trial " + std::to_string(trial) + ": table " + std::to_string(blank) + " h^" +
                       std::to_string(i) + " = " + out.tables[blank][i].str() + ", expected " +
                       std::to_string(s.truth[blank][i]);
    }
    return "";
}

inline std::string serre_involution(int trials, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dim(2, 4), kind(0, 2), val(0, 40);
    for (int trial = 0; trial < trials; ++trial) {
        const int n = dim(rng);
        CohomologyTable t(n);
        for (int i = 0; i <= n; ++i) {
            const int k = kind(rng);
            if (k == 0) t[i] = DimEntry::exact(val(rng));
            else if (k == 1) t[i] = DimEntry::at_least(1 + val(rng));
        }
        const CohomologyTable d = serre_dual_table(t, n);
        for (int i = 0; i <= n; ++i)
            if (!(d[i] == t[n - i])) return "entry " + std::to_string(i) + " not reversed in " + t.str();
        if (!serre_dual_table(d, n).same_entries(t)) return "not an involution on " + t.str();
    }
    return "";
}

/// χ(O(d)) by Riemann-Roch equals the table χ and the Hilbert polynomial.
inline std::string hrr_matches_tables(int n, int dmax) {
    const VarietySpec x = projective_space(n);
    const GradedClass h = GradedClass::hyperplane(*x.ring);
    for (int d = -dmax; d <= dmax; ++d) {
        const ChernPolynomial c(GradedClass::one(*x.ring) + h * Rational(d), 1);
        const std::int64_t hrr = euler_char_hrr(c, x);
        const auto table = line_bundle_cohom_pn(n, d).alternating_sum();
        const std::int64_t brute = oracle::alternating(oracle::bott(n, d));
        if (!table || *table != hrr || brute != hrr || oracle::hilbert_polynomial(n, d) != hrr)
            return "P" + std::to_string(n) + " O(" + std::to_string(d) + "): HRR " + std::to_string(hrr) +
                   ", table " + (table ? std::to_string(*table) : "?") + ", monomials " + std::to_string(brute);
    }
    return "";
}

}  // namespace props
