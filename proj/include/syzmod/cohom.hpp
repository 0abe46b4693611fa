#pragma once

// Cohomology dimension tables and the long-exact-sequence dimension chase.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "syzmod/errors.hpp"
#include "syzmod/rational.hpp"

namespace syzmod {

/// Where a number came from. Reports print these next to every value.
enum class Provenance { None, ClosedForm, Solver, Theorem, Asserted, Hrr, Structural };

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::None: return "none";
        case Provenance::ClosedForm: return "closed-form";
        case Provenance::Solver: return "solver";
        case Provenance::Theorem: return "theorem";
        case Provenance::Asserted: return "asserted";
        case Provenance::Hrr: return "hrr";
        case Provenance::Structural: return "structural";
    }
    return "none";
}

/// A cohomology dimension: exactly k, at least m, or unknown.
/// AtLeast(0) carries no information and is normalized to Unknown.
struct DimEntry {
    enum class Kind { Exact, AtLeast, Unknown };

    Kind kind = Kind::Unknown;
    std::int64_t value = 0;
    Provenance source = Provenance::None;

    static DimEntry exact(std::int64_t k, Provenance src = Provenance::None) {
        if (k < 0) throw InternalError("negative dimension " + std::to_string(k));
        return {Kind::Exact, k, src};
    }
    static DimEntry at_least(std::int64_t m, Provenance src = Provenance::None) {
        if (m <= 0) return unknown();
        return {Kind::AtLeast, m, src};
    }
    static DimEntry unknown() { return {}; }

    bool is_exact() const { return kind == Kind::Exact; }
    bool is_unknown() const { return kind == Kind::Unknown; }
    bool is_zero() const { return is_exact() && value == 0; }
    bool known_nonzero() const { return lower() > 0; }
    std::int64_t lower() const { return kind == Kind::Unknown ? 0 : value; }

    bool operator==(const DimEntry& o) const {
        return kind == o.kind && (kind == Kind::Unknown || value == o.value);
    }

    std::string str() const {
        switch (kind) {
            case Kind::Exact: return std::to_string(value);
            case Kind::AtLeast: return ">=" + std::to_string(value);
            case Kind::Unknown: return "?";
        }
        return "?";
    }
};

/// h^0..h^n of a sheaf on an n-dimensional variety, plus an optional Euler
/// characteristic known independently of the entries.
struct CohomologyTable {
    int n = 0;
    std::vector<DimEntry> entries;
    std::optional<std::int64_t> euler_char;
    Provenance chi_source = Provenance::None;

    CohomologyTable() = default;
    explicit CohomologyTable(int dim) : n(dim), entries(dim + 1) {
        if (dim < 0) throw PreconditionError("table dimension must be non-negative");
    }

    static CohomologyTable unknown(int dim) { return CohomologyTable(dim); }

    static CohomologyTable exact(const std::vector<std::int64_t>& values, Provenance src = Provenance::None) {
        if (values.empty()) throw PreconditionError("empty cohomology table");
        CohomologyTable t(static_cast<int>(values.size()) - 1);
        for (std::size_t i = 0; i < values.size(); ++i) t.entries[i] = DimEntry::exact(values[i], src);
        t.euler_char = t.alternating_sum();
        t.chi_source = src;
        return t;
    }

    const DimEntry& operator[](int i) const { return entries.at(i); }
    DimEntry& operator[](int i) { return entries.at(i); }

    bool all_exact() const {
        return std::all_of(entries.begin(), entries.end(), [](const DimEntry& e) { return e.is_exact(); });
    }
    bool all_zero() const {
        return std::all_of(entries.begin(), entries.end(), [](const DimEntry& e) { return e.is_zero(); });
    }

    std::optional<std::int64_t> alternating_sum() const {
        if (!all_exact()) return std::nullopt;
        std::int64_t s = 0;
        for (int i = 0; i <= n; ++i) s += (i % 2 == 0 ? 1 : -1) * entries[i].value;
        return s;
    }

    /// Euler characteristic from the entries when they are exact, else the stored value.
    std::optional<std::int64_t> chi() const {
        if (auto s = alternating_sum()) return s;
        return euler_char;
    }

    /// Compares entries only (not provenance, not the stored χ).
    bool same_entries(const CohomologyTable& o) const { return n == o.n && entries == o.entries; }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i <= n; ++i) s += (i ? ", " : "") + entries[i].str();
        return s + ")";
    }
};

/// Merges `incoming` into `slot`, keeping the tighter information.
/// Returns true when the slot changed; throws InconsistencyError on conflict.
inline bool tighten(DimEntry& slot, const DimEntry& incoming, const std::string& where, const std::string& rule) {
    if (incoming.is_unknown()) return false;
    if (slot.is_exact()) {
        if (incoming.is_exact() && incoming.value != slot.value)
            throw InconsistencyError(where, rule,
                                     "exact " + std::to_string(slot.value) + " vs exact " + std::to_string(incoming.value));
        if (!incoming.is_exact() && incoming.value > slot.value)
            throw InconsistencyError(where, rule,
                                     "exact " + std::to_string(slot.value) + " vs at least " +
                                         std::to_string(incoming.value));
        return false;
    }
    if (incoming.is_exact()) {
        if (incoming.value < slot.lower())
            throw InconsistencyError(where, rule,
                                     "at least " + std::to_string(slot.lower()) + " vs exact " +
                                         std::to_string(incoming.value));
        slot = incoming;
        return true;
    }
    if (incoming.value > slot.lower()) {
        slot = incoming;
        return true;
    }
    return false;
}

/// Merges every entry of `src` into `dst`; both must have the same length.
inline bool tighten_table(CohomologyTable& dst, const CohomologyTable& src, const std::string& label,
                          const std::string& rule) {
    if (dst.n != src.n) throw StructuralError("table length mismatch in " + label);
    bool changed = false;
    for (int i = 0; i <= dst.n; ++i)
        changed |= tighten(dst.entries[i], src.entries[i], label + ".h^" + std::to_string(i), rule);
    if (src.euler_char) {
        if (dst.euler_char && *dst.euler_char != *src.euler_char)
            throw InconsistencyError(label + ".chi", rule,
                                     std::to_string(*dst.euler_char) + " vs " + std::to_string(*src.euler_char));
        if (!dst.euler_char) {
            dst.euler_char = src.euler_char;
            dst.chi_source = src.chi_source;
            changed = true;
        }
    }
    return changed;
}

/// Uses a known χ to pin a single open entry, or to bound an entry from
/// below when every other open entry enters χ with the opposite sign.
inline bool refine_table_with_chi(CohomologyTable& t, const std::string& label) {
    if (!t.euler_char) return false;
    std::int64_t acc = 0;
    std::vector<int> open;
    for (int i = 0; i <= t.n; ++i) {
        if (t.entries[i].is_exact()) acc += (i % 2 == 0 ? 1 : -1) * t.entries[i].value;
        else open.push_back(i);
    }
    const std::int64_t rest = *t.euler_char - acc;
    const std::string where = label + ".h^";
    if (open.empty()) {
        if (rest != 0)
            throw InconsistencyError(label + ".chi", "euler characteristic",
                                     "entries sum to " + std::to_string(acc) + " but chi is " +
                                         std::to_string(*t.euler_char));
        return false;
    }
    bool changed = false;
    for (int i : open) {
        const int si = i % 2 == 0 ? 1 : -1;
        bool opposite = true;
        std::int64_t others = 0;
        for (int j : open) {
            if (j == i) continue;
            if ((j % 2 == 0 ? 1 : -1) == si) opposite = false;
            others += t.entries[j].lower();
        }
        if (!opposite) continue;
        // h_i = s_i * rest + sum of the other open entries
        const std::int64_t v = si * rest + others;
        if (open.size() == 1) {
            if (v < 0)
                throw InconsistencyError(where + std::to_string(i), "euler characteristic",
                                         "forced negative dimension " + std::to_string(v));
            changed |= tighten(t.entries[i], DimEntry::exact(v, Provenance::Solver), where + std::to_string(i),
                               "euler characteristic");
        } else if (v > 0) {
            changed |= tighten(t.entries[i], DimEntry::at_least(v, Provenance::Solver), where + std::to_string(i),
                               "euler characteristic bound");
        }
    }
    return changed;
}

/// Bott formula for O(d) on P^n.
inline CohomologyTable line_bundle_cohom_pn(int n, std::int64_t d) {
    if (n < 1) throw PreconditionError("line_bundle_cohom_pn needs n >= 1");
    CohomologyTable t(n);
    for (int i = 0; i <= n; ++i) t.entries[i] = DimEntry::exact(0, Provenance::ClosedForm);
    if (d >= 0) t.entries[0] = DimEntry::exact(binom64(n + d, n), Provenance::ClosedForm);
    if (d <= -n - 1) t.entries[n] = DimEntry::exact(binom64(-d - 1, n), Provenance::ClosedForm);
    t.euler_char = t.alternating_sum();
    t.chi_source = Provenance::ClosedForm;
    return t;
}

/// Given the table of E* (x) ω_X, returns the table of E: h^i(E) = h^(n-i)(E* (x) ω).
inline CohomologyTable serre_dual_table(const CohomologyTable& t, int n) {
    if (t.n != n) throw StructuralError("serre_dual_table: table has length " + std::to_string(t.n + 1));
    CohomologyTable out(n);
    for (int i = 0; i <= n; ++i) out.entries[i] = t.entries[n - i];
    if (t.euler_char) {
        out.euler_char = n % 2 == 0 ? *t.euler_char : -*t.euler_char;
        out.chi_source = t.chi_source;
    }
    return out;
}

/// Entrywise sum with multiplicities. A contributing Unknown absorbs the slot.
inline CohomologyTable table_sum(const std::vector<CohomologyTable>& ts, const std::vector<std::int64_t>& mults) {
    if (ts.empty()) throw PreconditionError("table_sum of nothing");
    if (ts.size() != mults.size()) throw PreconditionError("table_sum: one multiplicity per table");
    const int n = ts.front().n;
    CohomologyTable out(n);
    bool chi_known = true;
    std::int64_t chi = 0;
    Provenance src = Provenance::ClosedForm;
    for (int i = 0; i <= n; ++i) {
        bool unknown = false, lower_only = false;
        std::int64_t sum = 0;
        for (std::size_t k = 0; k < ts.size(); ++k) {
            if (ts[k].n != n) throw PreconditionError("table_sum: tables of different dimensions");
            if (mults[k] < 0) throw PreconditionError("table_sum: negative multiplicity");
            if (mults[k] == 0) continue;
            const DimEntry& e = ts[k].entries[i];
            if (e.is_unknown()) unknown = true;
            else if (!e.is_exact()) lower_only = true;
            sum += mults[k] * e.lower();
            if (e.source != Provenance::ClosedForm) src = e.source;
        }
        out.entries[i] = unknown ? DimEntry::unknown() : lower_only ? DimEntry::at_least(sum, src) : DimEntry::exact(sum, src);
    }
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (mults[k] == 0) continue;
        if (auto c = ts[k].chi()) chi += mults[k] * *c;
        else chi_known = false;
    }
    if (chi_known) {
        out.euler_char = chi;
        out.chi_source = src;
    }
    return out;
}

inline CohomologyTable scale(const CohomologyTable& t, std::int64_t k) { return table_sum({t}, {k}); }

/// Short exact sequence 0 -> A -> B -> C -> 0 with possibly partial tables.
///
/// The long exact sequence is indexed by position p = 3i + j (j = 0,1,2 for
/// A,B,C in degree i). `zero_maps` lists positions p whose outgoing map
/// p -> p+1 is known to vanish; they split the sequence like an Exact(0).
struct SesProblem {
    std::array<CohomologyTable, 3> tables;
    std::array<std::string, 3> labels{"A", "B", "C"};
    std::set<int> zero_maps;

    SesProblem() = default;
    SesProblem(CohomologyTable a, CohomologyTable b, CohomologyTable c) : tables{std::move(a), std::move(b), std::move(c)} {
        if (tables[0].n != tables[1].n || tables[1].n != tables[2].n)
            throw StructuralError("short exact sequence tables have different lengths");
    }

    int n() const { return tables[0].n; }
    CohomologyTable& a() { return tables[0]; }
    CohomologyTable& b() { return tables[1]; }
    CohomologyTable& c() { return tables[2]; }
    const CohomologyTable& a() const { return tables[0]; }
    const CohomologyTable& b() const { return tables[1]; }
    const CohomologyTable& c() const { return tables[2]; }

    /// H^0(B) -> H^0(C) is injective (e.g. W is a subspace of H^0(F)).
    void mark_injective_on_sections() { zero_maps.insert(0); }
    /// H^0(B) -> H^0(C) is surjective: the first connecting map vanishes.
    void mark_surjective_on_sections() { zero_maps.insert(2); }
};

namespace detail {

class LesSolver {
  public:
    explicit LesSolver(SesProblem& p) : p_(p), n_(p.n()), len_(3 * (p.n() + 1)) {}

    void run() {
        const int cap = (3 * (n_ + 1)) * (3 * (n_ + 1));
        for (int round = 0; round < cap; ++round) {
            bool changed = false;
            changed |= chi_rules();
            changed |= segment_rules();
            changed |= triple_rules();
            if (!changed) return;
        }
        throw InternalError("les_solve: no fixpoint after " + std::to_string(cap) + " rounds");
    }

  private:
    DimEntry& at(int pos) { return p_.tables[pos % 3].entries[pos / 3]; }
    std::string name(int pos) const { return p_.labels[pos % 3] + ".h^" + std::to_string(pos / 3); }
    bool cut_after(int pos) const { return pos < 0 || pos >= len_ - 1 || p_.zero_maps.count(pos) > 0; }
    bool separator(int pos) { return at(pos).is_zero(); }

    bool set(int pos, const DimEntry& e, const char* rule) { return tighten(at(pos), e, name(pos), rule); }

    bool chi_rules() {
        bool changed = false;
        std::array<std::optional<std::int64_t>, 3> chi;
        for (int k = 0; k < 3; ++k) {
            CohomologyTable& t = p_.tables[k];
            const auto sum = t.alternating_sum();
            if (sum && t.euler_char && *sum != *t.euler_char)
                throw InconsistencyError(p_.labels[k] + ".chi", "euler characteristic",
                                         "entries sum to " + std::to_string(*sum) + " but chi is " +
                                             std::to_string(*t.euler_char));
            if (sum && !t.euler_char) {
                t.euler_char = sum;
                t.chi_source = Provenance::Solver;
                changed = true;
            }
            if (t.euler_char && !sum) changed |= refine_table_with_chi(t, p_.labels[k]);
            chi[k] = t.euler_char;
        }
        // χ(B) = χ(A) + χ(C)
        auto fill = [&](int k, std::int64_t v) {
            CohomologyTable& t = p_.tables[k];
            if (t.euler_char) {
                if (*t.euler_char != v)
                    throw InconsistencyError(p_.labels[k] + ".chi", "chi additivity",
                                             std::to_string(*t.euler_char) + " vs " + std::to_string(v));
                return false;
            }
            t.euler_char = v;
            t.chi_source = Provenance::Solver;
            return true;
        };
        if (chi[0] && chi[2]) changed |= fill(1, *chi[0] + *chi[2]);
        if (chi[1] && chi[2]) changed |= fill(0, *chi[1] - *chi[2]);
        if (chi[0] && chi[1]) changed |= fill(2, *chi[1] - *chi[0]);
        return changed;
    }

    // Rule: inside a maximal run bounded by zeros, boundaries or vanishing
    // maps, the alternating sum of dimensions is zero.
    bool segment_rules() {
        bool changed = false;
        int pos = 0;
        while (pos < len_) {
            if (separator(pos)) {
                ++pos;
                continue;
            }
            int end = pos;
            while (!cut_after(end) && end + 1 < len_ && !separator(end + 1)) ++end;
            changed |= solve_segment(pos, end);
            pos = end + 1;
        }
        return changed;
    }

    bool solve_segment(int s, int e) {
        bool changed = false;
        std::vector<int> open;
        std::int64_t exact_sum = 0;
        for (int k = s; k <= e; ++k) {
            const int sign = (k - s) % 2 == 0 ? 1 : -1;
            if (at(k).is_exact()) exact_sum += sign * at(k).value;
            else open.push_back(k);
        }
        if (open.empty()) {
            if (exact_sum != 0)
                throw InconsistencyError(name(s), "exact segment",
                                         "alternating sum " + std::to_string(exact_sum) + " over " + name(s) + ".." +
                                             name(e));
            return false;
        }
        if (open.size() == 1) {
            const int j = open.front();
            const int sj = (j - s) % 2 == 0 ? 1 : -1;
            const std::int64_t v = -sj * exact_sum;
            if (v < 0) throw InconsistencyError(name(j), "exact segment", "forced negative dimension " + std::to_string(v));
            return set(j, DimEntry::exact(v, Provenance::Solver), "exact segment");
        }
        // Several open entries: x_j = sum_k coef_k x_k with coef = -s_j s_k.
        for (int j : open) {
            const int sj = (j - s) % 2 == 0 ? 1 : -1;
            std::int64_t lo = 0, hi = 0;
            bool lo_ok = true, hi_ok = true;
            for (int k = s; k <= e; ++k) {
                if (k == j) continue;
                const int sk = (k - s) % 2 == 0 ? 1 : -1;
                const DimEntry& x = at(k);
                if (-sj * sk > 0) {
                    lo += x.lower();
                    if (x.is_exact()) hi += x.value;
                    else hi_ok = false;
                } else {
                    hi -= x.lower();
                    if (x.is_exact()) lo -= x.value;
                    else lo_ok = false;
                }
            }
            if (hi_ok) {
                if (hi < at(j).lower())
                    throw InconsistencyError(name(j), "exact segment",
                                             "upper bound " + std::to_string(hi) + " below " + at(j).str());
                if (hi == at(j).lower() || hi == 0) {
                    changed |= set(j, DimEntry::exact(hi, Provenance::Solver), "exact segment");
                    continue;
                }
            }
            if (lo_ok && lo > 0) changed |= set(j, DimEntry::at_least(lo, Provenance::Solver), "exact segment bound");
        }
        return changed;
    }

    // Rule: each term is at most the sum of its neighbours; bounds flow both ways.
    bool triple_rules() {
        bool changed = false;
        for (int p = 0; p < len_; ++p) {
            const bool left_zero = cut_after(p - 1);
            const bool right_zero = cut_after(p);
            const DimEntry zero = DimEntry::exact(0);
            const DimEntry L = left_zero ? zero : at(p - 1);
            const DimEntry R = right_zero ? zero : at(p + 1);
            const DimEntry& M = at(p);
            if (L.is_exact() && R.is_exact()) {
                const std::int64_t ub = L.value + R.value;
                if (M.lower() > ub)
                    throw InconsistencyError(name(p), "neighbour bound",
                                             M.str() + " exceeds sum of neighbours " + std::to_string(ub));
                if (!M.is_exact() && M.lower() == ub)
                    changed |= set(p, DimEntry::exact(ub, Provenance::Solver), "neighbour bound");
            }
            if (M.lower() > 0) {
                if (!left_zero && R.is_exact())
                    changed |= set(p - 1, DimEntry::at_least(M.lower() - R.value, Provenance::Solver), "neighbour bound");
                if (!right_zero && L.is_exact())
                    changed |= set(p + 1, DimEntry::at_least(M.lower() - L.value, Provenance::Solver), "neighbour bound");
            }
        }
        return changed;
    }

    SesProblem& p_;
    int n_;
    int len_;
};

}  // namespace detail

/// Runs the dimension chase to its fixpoint and returns the refined problem.
/// Entries only ever tighten; contradictions raise InconsistencyError naming
/// the slot and rule.
inline SesProblem les_solve(SesProblem p) {
    for (auto& t : p.tables)
        if (static_cast<int>(t.entries.size()) != t.n + 1) throw StructuralError("malformed cohomology table");
    detail::LesSolver(p).run();
    return p;
}

}  // namespace syzmod
