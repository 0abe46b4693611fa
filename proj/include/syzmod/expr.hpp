#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "syzmod/cohom.hpp"
#include "syzmod/ring.hpp"

namespace syzmod {

enum class Tri { False, True, Unknown };

inline const char* to_string(Tri t) {
    switch (t) {
        case Tri::False: return "false";
        case Tri::True: return "true";
        case Tri::Unknown: return "unknown";
    }
    return "unknown";
}

inline Tri tri_and(Tri a, Tri b) {
    if (a == Tri::False || b == Tri::False) return Tri::False;
    if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
    return Tri::True;
}

/// A yes/no/unknown fact with its origin.
struct TriFact {
    Tri value = Tri::Unknown;
    Provenance source = Provenance::None;
    std::string reason;

    static TriFact yes(Provenance src, std::string why) { return {Tri::True, src, std::move(why)}; }
    static TriFact no(Provenance src, std::string why) { return {Tri::False, src, std::move(why)}; }
    static TriFact unknown(std::string why = {}) { return {Tri::Unknown, Provenance::None, std::move(why)}; }
};

/// A bundle known only through user-supplied data.
struct OpaqueBundle {
    std::string name;
    std::int64_t rank = 0;
    std::optional<ChernPolynomial> chern;
    CohomologyTable h;
    CohomologyTable h_dual;
    std::optional<CohomologyTable> h_end;
    Tri globally_generated = Tri::Unknown;
    Tri simple = Tri::Unknown;
};

struct SheafNode;
using SheafExpr = std::shared_ptr<const SheafNode>;

struct LineBundle {
    std::int64_t degree;
};
struct DirectSum {
    std::vector<std::pair<SheafExpr, std::int64_t>> terms;
};
struct Dual {
    SheafExpr inner;
};
struct Twist {
    SheafExpr inner;
    std::int64_t by;
};
struct SyzygyOf {
    SheafExpr bundle;
    std::int64_t w;
};
/// Tensor with a line bundle O(d); other tensor products are rejected.
struct Tensor {
    SheafExpr inner;
    SheafExpr line;
};
struct Opaque {
    std::shared_ptr<const OpaqueBundle> data;
};

struct SheafNode {
    std::variant<LineBundle, DirectSum, Dual, Twist, SyzygyOf, Tensor, Opaque> node;
};

template <class T>
const T* node_as(const SheafExpr& e) {
    return e ? std::get_if<T>(&e->node) : nullptr;
}

inline SheafExpr line(std::int64_t d) { return std::make_shared<SheafNode>(SheafNode{LineBundle{d}}); }

inline SheafExpr direct_sum(std::vector<std::pair<SheafExpr, std::int64_t>> terms) {
    if (terms.empty()) throw StructuralError("sum() needs at least one summand");
    for (const auto& [e, k] : terms) {
        if (!e) throw StructuralError("sum() with an empty summand");
        if (k < 1) throw StructuralError("sum() multiplicities must be positive");
    }
    return std::make_shared<SheafNode>(SheafNode{DirectSum{std::move(terms)}});
}

inline SheafExpr dual(SheafExpr e) {
    if (!e) throw StructuralError("dual() of nothing");
    return std::make_shared<SheafNode>(SheafNode{Dual{std::move(e)}});
}

inline SheafExpr twist(SheafExpr e, std::int64_t by) {
    if (!e) throw StructuralError("twist() of nothing");
    return std::make_shared<SheafNode>(SheafNode{Twist{std::move(e), by}});
}

inline SheafExpr syz(SheafExpr f, std::int64_t w) {
    if (!f) throw StructuralError("syz() of nothing");
    if (w < 1) throw StructuralError("syz(): w must be positive");
    return std::make_shared<SheafNode>(SheafNode{SyzygyOf{std::move(f), w}});
}

inline SheafExpr tensor(SheafExpr a, SheafExpr b) {
    if (!a || !b) throw StructuralError("tensor() of nothing");
    if (!node_as<LineBundle>(b) && node_as<LineBundle>(a)) std::swap(a, b);
    if (!node_as<LineBundle>(b))
        throw StructuralError("tensor() needs a line-bundle factor O(d); endomorphism bundles go through endo_cohomology");
    return std::make_shared<SheafNode>(SheafNode{Tensor{std::move(a), std::move(b)}});
}

inline SheafExpr opaque(std::shared_ptr<const OpaqueBundle> data) {
    if (!data) throw StructuralError("opaque() without data");
    if (data->rank <= 0) throw StructuralError("opaque bundle " + data->name + ": rank must be positive");
    if (data->h.n != data->h_dual.n || static_cast<int>(data->h.entries.size()) != data->h.n + 1)
        throw StructuralError("opaque bundle " + data->name + ": inconsistent table lengths");
    if (data->h_end && data->h_end->n != data->h.n)
        throw StructuralError("opaque bundle " + data->name + ": h_end has the wrong length");
    if (data->chern && data->chern->rank() != data->rank)
        throw StructuralError("opaque bundle " + data->name + ": Chern polynomial rank differs from rank");
    return std::make_shared<SheafNode>(SheafNode{Opaque{std::move(data)}});
}

/// Renders an expression in the CLI grammar.
inline std::string to_string(const SheafExpr& e) {
    struct V {
        std::string operator()(const LineBundle& x) const { return "O(" + std::to_string(x.degree) + ")"; }
        std::string operator()(const DirectSum& x) const {
            std::string s = "sum(";
            for (std::size_t i = 0; i < x.terms.size(); ++i) {
                s += (i ? "," : "") + to_string(x.terms[i].first);
                if (x.terms[i].second != 1) s += "," + std::to_string(x.terms[i].second);
            }
            return s + ")";
        }
        std::string operator()(const Dual& x) const { return "dual(" + to_string(x.inner) + ")"; }
        std::string operator()(const Twist& x) const {
            return "twist(" + to_string(x.inner) + "," + std::to_string(x.by) + ")";
        }
        std::string operator()(const SyzygyOf& x) const {
            return "syz(" + to_string(x.bundle) + "," + std::to_string(x.w) + ")";
        }
        std::string operator()(const Tensor& x) const {
            return "tensor(" + to_string(x.inner) + "," + to_string(x.line) + ")";
        }
        std::string operator()(const Opaque& x) const { return "opaque(" + x.data->name + ")"; }
    };
    return std::visit(V{}, e->node);
}

}  // namespace syzmod
