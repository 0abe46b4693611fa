#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "syzmod/cohom.hpp"
#include "syzmod/expr.hpp"
#include "syzmod/facts.hpp"
#include "syzmod/variety.hpp"

namespace syzmod {

inline constexpr int kDefaultScanCap = 50;

/// Derives BundleFacts for expressions over a fixed variety.
///
/// facts(e, t) describes e(t). Results are memoized per (node, twist); the
/// memo keeps every node it has seen alive, so rewritten subexpressions stay
/// valid for the resolver's lifetime.
class Resolver {
  public:
    explicit Resolver(VarietySpec x) : x_(std::move(x)) { x_.validate(); }

    const VarietySpec& variety() const { return x_; }

    const BundleFacts& facts(const SheafExpr& e, std::int64_t t = 0) {
        if (!e) throw StructuralError("empty expression");
        const auto key = std::make_pair(e, t);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        BundleFacts f = compute(e, t);
        finish(e, t, f);
        return memo_.emplace(key, std::move(f)).first->second;
    }

    /// Records a global-generation assertion for e (untwisted).
    /// Contradicting a derived value raises InconsistencyError.
    const BundleFacts& assert_global_generation(const SheafExpr& e, bool value, std::string why) {
        const BundleFacts& cur = facts(e, 0);
        const Tri want = value ? Tri::True : Tri::False;
        if (cur.globally_generated.value != Tri::Unknown && cur.globally_generated.value != want)
            throw InconsistencyError(to_string(e) + ".globally_generated", "assertion",
                                     std::string("derived ") + syzmod::to_string(cur.globally_generated.value) +
                                         ", asserted " + syzmod::to_string(want));
        gg_assertions_[e] = TriFact{want, Provenance::Asserted, std::move(why)};
        memo_.clear();
        regularity_memo_.clear();
        return facts(e, 0);
    }

    /// Least m with h^i(E(m-i)) = 0 for all i >= 1, searched over [-cap, cap].
    /// nullopt when a needed entry is undetermined or nothing in range works.
    std::optional<std::int64_t> regularity(const SheafExpr& e, int cap = kDefaultScanCap) {
        const auto key = std::make_pair(e, cap);
        if (auto it = regularity_memo_.find(key); it != regularity_memo_.end()) return it->second;
        std::optional<std::int64_t> out;
        for (std::int64_t m = -cap; m <= cap; ++m) {
            const Tri r = regular_at(e, m);
            if (r == Tri::Unknown) break;
            if (r == Tri::True) {
                if (m > -cap) out = m;
                break;
            }
        }
        regularity_memo_[key] = out;
        return out;
    }

    /// True if h^i(E(m-i)) = 0 for i = 1..n, False if some such entry is nonzero.
    Tri regular_at(const SheafExpr& e, std::int64_t m) {
        Tri acc = Tri::True;
        for (int i = 1; i <= x_.n; ++i) {
            const DimEntry& d = facts(e, m - i).h[i];
            if (d.known_nonzero()) return Tri::False;
            if (!d.is_zero()) acc = Tri::Unknown;
        }
        return acc;
    }

  private:
    VarietySpec x_;
    std::map<std::pair<SheafExpr, std::int64_t>, BundleFacts> memo_;
    std::map<std::pair<SheafExpr, int>, std::optional<std::int64_t>> regularity_memo_;
    std::map<SheafExpr, TriFact> gg_assertions_;

    std::optional<GradedClass> hyperplane_class() const {
        if (!x_.ring || !(*x_.ring)->hyperplane()) return std::nullopt;
        return GradedClass::hyperplane(*x_.ring);
    }

    std::optional<ChernPolynomial> twisted(const std::optional<ChernPolynomial>& c, std::int64_t t) const {
        if (!c) return std::nullopt;
        if (t == 0) return c;
        auto h = hyperplane_class();
        if (!h) return std::nullopt;
        return chern_of_twist(*c, *h * Rational(t));
    }

    CohomologyTable structure_twist(std::int64_t t) const { return structure_sheaf_twist(x_, t); }

    BundleFacts compute(const SheafExpr& e, std::int64_t t) {
        return std::visit([&](const auto& node) { return compute_node(e, node, t); }, e->node);
    }

    BundleFacts compute_node(const SheafExpr&, const LineBundle& l, std::int64_t t) {
        const std::int64_t d = l.degree + t;
        BundleFacts f;
        f.rank = 1;
        if (auto h = hyperplane_class()) f.chern = ChernPolynomial(GradedClass::one(*x_.ring) + *h * Rational(d), 1);
        f.h = structure_twist(d);
        f.h_dual = structure_twist(-d);
        if (x_.is_projective_space()) {
            f.globally_generated = d >= 0 ? TriFact::yes(Provenance::ClosedForm, "O(d) with d >= 0")
                                          : TriFact::no(Provenance::ClosedForm, "O(d) with d < 0 has no sections");
            f.split = std::vector<std::int64_t>{d};
        } else if (d == 0) {
            f.globally_generated = TriFact::yes(Provenance::Structural, "O_X");
        }
        f.simple = TriFact::yes(Provenance::Structural, "line bundle");
        f.h_end = x_.h_O;
        return f;
    }

    BundleFacts compute_node(const SheafExpr&, const DirectSum& s, std::int64_t t) {
        BundleFacts f;
        std::vector<CohomologyTable> hs, hds;
        std::vector<std::int64_t> mults;
        std::int64_t total = 0;
        bool chern_ok = true, split_ok = true;
        Tri gg = Tri::True;
        std::optional<GradedClass> c;
        std::vector<std::int64_t> split;
        for (const auto& [term, k] : s.terms) {
            const BundleFacts& tf = facts(term, t);
            f.rank += k * tf.rank;
            total += k;
            hs.push_back(tf.h);
            hds.push_back(tf.h_dual);
            mults.push_back(k);
            gg = tri_and(gg, tf.globally_generated.value);
            if (tf.chern && chern_ok) {
                for (std::int64_t i = 0; i < k; ++i) c = c ? *c * tf.chern->total() : tf.chern->total();
            } else {
                chern_ok = false;
            }
            if (tf.split && split_ok) {
                for (std::int64_t i = 0; i < k; ++i) split.insert(split.end(), tf.split->begin(), tf.split->end());
            } else {
                split_ok = false;
            }
        }
        if (chern_ok && c) f.chern = ChernPolynomial(*c, f.rank);
        f.h = table_sum(hs, mults);
        f.h_dual = table_sum(hds, mults);
        f.globally_generated = gg == Tri::True    ? TriFact::yes(Provenance::Structural, "every summand is")
                               : gg == Tri::False ? TriFact::no(Provenance::Structural, "a summand is not")
                                                  : TriFact::unknown();
        if (total >= 2) {
            f.simple = TriFact::no(Provenance::Structural, "direct sum with at least two summands");
        } else {
            const BundleFacts& only = facts(s.terms.front().first, t);
            f.simple = only.simple;
            f.h_end = only.h_end;
        }
        if (split_ok) {
            std::vector<CohomologyTable> parts;
            std::vector<std::int64_t> ones;
            for (auto a : split)
                for (auto b : split) {
                    parts.push_back(line_bundle_cohom_pn(x_.n, a - b));
                    ones.push_back(1);
                }
            f.h_end = table_sum(parts, ones);
            f.split = std::move(split);
        }
        return f;
    }

    BundleFacts compute_node(const SheafExpr&, const Dual& d, std::int64_t t) {
        const BundleFacts& in = facts(d.inner, -t);
        BundleFacts f;
        f.rank = in.rank;
        if (in.chern) f.chern = chern_dual(*in.chern);
        f.h = in.h_dual;
        f.h_dual = in.h;
        f.simple = in.simple;
        f.h_end = in.h_end;
        if (in.split) {
            std::vector<std::int64_t> neg;
            bool all_nonneg = true;
            for (auto a : *in.split) {
                neg.push_back(-a);
                all_nonneg = all_nonneg && -a >= 0;
            }
            f.split = neg;
            f.globally_generated = all_nonneg ? TriFact::yes(Provenance::ClosedForm, "sum of O(d), d >= 0")
                                              : TriFact::no(Provenance::ClosedForm, "has a summand O(d), d < 0");
        } else if (node_as<SyzygyOf>(d.inner) && (t == 0 || (t > 0 && x_.is_projective_space()))) {
            f.globally_generated = TriFact::yes(Provenance::Structural, "dual of a syzygy bundle is a quotient of W* (x) O");
        }
        return f;
    }

    BundleFacts compute_node(const SheafExpr&, const Twist& tw, std::int64_t t) {
        BundleFacts f = facts(tw.inner, t + tw.by);
        f.notes.clear();
        return f;
    }

    BundleFacts compute_node(const SheafExpr&, const Tensor& ts, std::int64_t t) {
        const auto* l = node_as<LineBundle>(ts.line);
        if (!l) throw StructuralError("tensor() needs a line-bundle factor");
        BundleFacts f = facts(ts.inner, t + l->degree);
        f.notes.clear();
        return f;
    }

    BundleFacts compute_node(const SheafExpr&, const Opaque& o, std::int64_t t) {
        const OpaqueBundle& b = *o.data;
        if (b.h.n != x_.n) throw StructuralError("bundle " + b.name + " has tables for dimension " + std::to_string(b.h.n));
        BundleFacts f;
        f.rank = b.rank;
        f.chern = twisted(b.chern, t);
        if (t == 0) {
            f.h = b.h;
            f.h_dual = b.h_dual;
            f.h_end = b.h_end;
            if (b.globally_generated != Tri::Unknown)
                f.globally_generated = {b.globally_generated, Provenance::Asserted, "input data"};
        } else {
            f.h = CohomologyTable::unknown(x_.n);
            f.h_dual = CohomologyTable::unknown(x_.n);
            f.h_end = b.h_end;
            if (b.globally_generated == Tri::True && t > 0 && x_.is_projective_space())
                f.globally_generated = TriFact::yes(Provenance::Structural, "positive twist of a globally generated bundle");
        }
        if (b.simple != Tri::Unknown) f.simple = {b.simple, Provenance::Asserted, "input data"};
        if (b.rank == 1) {
            f.simple = TriFact::yes(Provenance::Structural, "line bundle");
            f.h_end = x_.h_O;
        }
        return f;
    }

    BundleFacts compute_node(const SheafExpr&, const SyzygyOf& s, std::int64_t t) {
        const BundleFacts& F0 = facts(s.bundle, 0);
        const std::int64_t w = s.w;
        if (w < x_.n + F0.rank)
            throw PreconditionError("syz: need w >= n + rank(F) = " + std::to_string(x_.n + F0.rank) + ", got w = " +
                                    std::to_string(w));
        if (F0.h[0].is_exact() && w > F0.h[0].value)
            throw PreconditionError("syz: W must be a subspace of H^0(F), but w = " + std::to_string(w) +
                                    " > h^0(F) = " + std::to_string(F0.h[0].value));
        if (F0.globally_generated.value == Tri::False)
            throw PreconditionError("syz: F is not globally generated, so W (x) O -> F cannot be onto");
        if (F0.rank == 1 && F0.h[0].is_exact() && F0.h[0].value == 1)
            throw PreconditionError("syz: F = O_X is excluded");

        if (const auto* d = node_as<Dual>(s.bundle)) {
            if (const auto* inner = node_as<SyzygyOf>(d->inner); inner && inner->w == w) {
                const BundleFacts& G = facts(inner->bundle, 0);
                if (G.h_dual[0].is_zero() && G.h_dual[1].is_zero()) {
                    BundleFacts f = facts(dual(inner->bundle), t);
                    f.notes.push_back("reconstruction: syz(dual(syz(G, w)), w) = dual(G) since h^0(G*) = h^1(G*) = 0");
                    return f;
                }
            }
        }

        BundleFacts f;
        f.rank = w - F0.rank;
        if (F0.chern) f.chern = twisted(chern_invert(*F0.chern, f.rank), t);

        const bool complete = F0.h[0].is_exact() && F0.h[0].value == w;
        bool surjective = false;
        if (t > 0 && complete && x_.is_projective_space()) {
            auto reg = regularity(s.bundle);
            surjective = reg && *reg <= 0;
        }

        auto make_up = [&](std::int64_t tt) {
            SesProblem p;
            p.tables = {CohomologyTable::unknown(x_.n), scale(structure_twist(tt), w), facts(s.bundle, tt).h};
            p.labels = {"S(" + std::to_string(tt) + ")", "W(x)O(" + std::to_string(tt) + ")",
                        "F(" + std::to_string(tt) + ")"};
            if (tt == 0) p.mark_injective_on_sections();
            if ((tt == t && surjective) || (tt == 0 && complete)) p.mark_surjective_on_sections();
            return les_solve(std::move(p));
        };
        auto make_down = [&](std::int64_t tt) {
            SesProblem p;
            p.tables = {facts(s.bundle, tt).h_dual, scale(structure_twist(-tt), w), CohomologyTable::unknown(x_.n)};
            p.labels = {"F*(" + std::to_string(-tt) + ")", "W*(x)O(" + std::to_string(-tt) + ")",
                        "S*(" + std::to_string(-tt) + ")"};
            return les_solve(std::move(p));
        };

        SesProblem up = make_up(t);
        SesProblem down = make_down(t);
        if (x_.omega_degree) {
            // h^i(S(t)) = h^(n-i)(S*(k-t)) for ω = O(k)
            const std::int64_t k = *x_.omega_degree;
            if (k != 0) {
                tighten_table(up.a(), serre_dual_table(make_down(t - k).c(), x_.n), up.labels[0], "Serre duality");
                tighten_table(down.c(), serre_dual_table(make_up(t + k).a(), x_.n), down.labels[2], "Serre duality");
                up = les_solve(std::move(up));
                down = les_solve(std::move(down));
            } else {
                for (int round = 0; round <= x_.n + 2; ++round) {
                    bool changed = tighten_table(up.a(), serre_dual_table(down.c(), x_.n), up.labels[0], "Serre duality");
                    changed |= tighten_table(down.c(), serre_dual_table(up.a(), x_.n), down.labels[2], "Serre duality");
                    if (!changed) break;
                    up = les_solve(std::move(up));
                    down = les_solve(std::move(down));
                }
            }
        }
        f.h = up.a();
        f.h_dual = down.c();
        if (t == 0)
            f.notes.push_back(surjective ? "sections: injective and surjective" : "sections: W injects into H^0(F)");
        else if (surjective)
            f.notes.push_back("twist " + std::to_string(t) + ": H^0 surjective since W is complete and F is 0-regular");

        const MembershipVerdict m = check_membership(F0, x_);
        if (m.in_U == Tri::True) f.simple = TriFact::yes(Provenance::Theorem, "syzygy bundle of F in U");
        return f;
    }

    void finish(const SheafExpr& e, std::int64_t t, BundleFacts& f) {
        if (t == 0)
            if (auto it = gg_assertions_.find(e); it != gg_assertions_.end() && f.globally_generated.value == Tri::Unknown)
                f.globally_generated = it->second;
        if (f.h.n != x_.n || f.h_dual.n != x_.n) throw InternalError("facts table has the wrong length");

        if (x_.hrr_supported() && f.chern) {
            const std::int64_t chi = euler_char_hrr(*f.chern, x_);
            const std::int64_t chi_dual = euler_char_hrr(chern_dual(*f.chern), x_);
            tighten_chi(f.h, chi, to_string(e));
            tighten_chi(f.h_dual, chi_dual, to_string(e) + "*");
        }

        // A simple, globally generated bundle other than O_X has no sections in its dual.
        const bool not_trivial = f.rank >= 2 || f.h[0].lower() >= 2;
        if (f.simple.value == Tri::True && f.globally_generated.value == Tri::True && not_trivial)
            tighten(f.h_dual[0], DimEntry::exact(0, Provenance::Theorem), to_string(e) + "*.h^0",
                    "simple globally generated");

        if (x_.omega_degree && *x_.omega_degree == 0) {
            tighten_table(f.h, serre_dual_table(f.h_dual, x_.n), to_string(e) + ".h", "Serre duality");
            tighten_table(f.h_dual, serre_dual_table(f.h, x_.n), to_string(e) + "*.h", "Serre duality");
        }
        if (f.h_end && f.h_end->n != x_.n) throw InternalError("End table has the wrong length");
        refine_table_with_chi(f.h, to_string(e));
        refine_table_with_chi(f.h_dual, to_string(e) + "*");
    }

    static void tighten_chi(CohomologyTable& t, std::int64_t chi, const std::string& label) {
        if (auto cur = t.chi(); cur && *cur != chi)
            throw InconsistencyError(label + ".chi", "Hirzebruch-Riemann-Roch",
                                     "table gives " + std::to_string(*cur) + ", HRR gives " + std::to_string(chi));
        if (!t.euler_char) {
            t.euler_char = chi;
            t.chi_source = Provenance::Hrr;
        }
    }
};

/// One-shot facts for e over x.
inline BundleFacts resolve_facts(const SheafExpr& e, const VarietySpec& x) {
    Resolver r(x);
    return r.facts(e, 0);
}

}  // namespace syzmod
