#pragma once

// Truncated graded intersection rings and the Chern-class calculus on them.
//
// A ring is presented by a basis graded in degrees 0..n (degree 0 is spanned
// by the unit), dense structure constants, and a linear functional on the top
// graded piece. Products landing above degree n vanish. Projective space P^n
// is the special case with one generator h per degree and h^a h^b = h^(a+b).

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "syzmod/errors.hpp"
#include "syzmod/rational.hpp"

namespace syzmod {

struct BasisIndex {
    int degree = 0;
    int index = 0;
};

/// One nonzero product of two basis elements, as a combination of basis
/// elements of the summed degree.
struct StructureConstant {
    BasisIndex left;
    BasisIndex right;
    std::vector<std::pair<BasisIndex, Rational>> terms;
};

class RingSpec;
using RingPtr = std::shared_ptr<const RingSpec>;

class RingSpec {
  public:
    enum class Kind { ProjectiveSpace, Custom };

    static RingPtr projective_space(int n) {
        if (n < 0) throw PreconditionError("projective space dimension must be non-negative");
        std::shared_ptr<RingSpec> r(new RingSpec(Kind::ProjectiveSpace, std::vector<int>(n + 1, 1)));
        for (int a = 0; a <= n; ++a)
            for (int b = 0; a + b <= n; ++b) r->product_mut(a, b)[a + b] = 1;
        r->degree_map_ = {Rational(1)};
        r->hyperplane_ = std::vector<Rational>{Rational(1)};
        return r;
    }

    /// Builds a custom ring. Products not listed vanish, listing (a, b)
    /// implies (b, a), and the degree-0 basis element acts as the unit.
    /// Throws StructuralError when the table is not graded, commutative and
    /// associative.
    static RingPtr custom(std::vector<int> graded_ranks, const std::vector<StructureConstant>& products,
                          std::vector<Rational> degree_map,
                          std::optional<std::vector<Rational>> hyperplane = std::nullopt) {
        if (graded_ranks.empty() || graded_ranks[0] != 1)
            throw StructuralError("custom ring: degree 0 must have rank 1 (the unit)");
        for (int r : graded_ranks)
            if (r < 0) throw StructuralError("custom ring: graded ranks must be non-negative");
        const int n = static_cast<int>(graded_ranks.size()) - 1;
        std::shared_ptr<RingSpec> ring(new RingSpec(Kind::Custom, std::move(graded_ranks)));
        for (int i = 0; i < ring->size(); ++i) {
            ring->product_mut(0, i)[i] = 1;
            ring->product_mut(i, 0)[i] = 1;
        }
        auto flat = [&](BasisIndex b) {
            if (b.degree < 0 || b.degree > n || b.index < 0 || b.index >= ring->rank(b.degree))
                throw StructuralError("custom ring: basis index out of range");
            return ring->offset(b.degree) + b.index;
        };
        for (const auto& sc : products) {
            const int i = flat(sc.left);
            const int j = flat(sc.right);
            const int target = sc.left.degree + sc.right.degree;
            std::vector<Rational> value(ring->size());
            for (const auto& [basis, coeff] : sc.terms) {
                if (basis.degree != target)
                    throw StructuralError("custom ring: product is not graded");
                value[flat(basis)] += coeff;
            }
            if (target > n) {
                if (std::any_of(value.begin(), value.end(), [](const Rational& q) { return q != 0; }))
                    throw StructuralError("custom ring: product above top degree must vanish");
                continue;
            }
            ring->product_mut(i, j) = value;
            ring->product_mut(j, i) = value;
        }
        if (static_cast<int>(degree_map.size()) != ring->rank(n))
            throw StructuralError("custom ring: degree_map must have one entry per top-degree basis element");
        ring->degree_map_ = std::move(degree_map);
        if (hyperplane) {
            if (n < 1 || static_cast<int>(hyperplane->size()) != ring->rank(1))
                throw StructuralError("custom ring: hyperplane class must be a degree-1 coordinate vector");
            ring->hyperplane_ = std::move(hyperplane);
        }
        ring->verify_axioms();
        return ring;
    }

    Kind kind() const { return kind_; }
    int dim() const { return static_cast<int>(ranks_.size()) - 1; }
    int rank(int degree) const { return degree < 0 || degree > dim() ? 0 : ranks_[degree]; }
    int offset(int degree) const { return offsets_[degree]; }
    int size() const { return size_; }
    int degree_of(int flat) const {
        int d = 0;
        while (d < dim() && offsets_[d + 1] <= flat) ++d;
        return d;
    }
    bool one_per_degree() const {
        return std::all_of(ranks_.begin(), ranks_.end(), [](int r) { return r == 1; });
    }

    const std::vector<Rational>& product(int i, int j) const { return table_[static_cast<std::size_t>(i) * size_ + j]; }
    const std::vector<Rational>& degree_map() const { return degree_map_; }
    const std::optional<std::vector<Rational>>& hyperplane() const { return hyperplane_; }

    bool operator==(const RingSpec& o) const {
        return kind_ == o.kind_ && ranks_ == o.ranks_ && table_ == o.table_ && degree_map_ == o.degree_map_ &&
               hyperplane_ == o.hyperplane_;
    }

    /// Exhaustive check of commutativity and associativity on basis triples.
    void verify_axioms() const {
        for (int i = 0; i < size_; ++i)
            for (int j = 0; j < size_; ++j)
                if (product(i, j) != product(j, i))
                    throw StructuralError("ring is not commutative on basis pair (" + std::to_string(i) + "," +
                                          std::to_string(j) + ")");
        for (int i = 0; i < size_; ++i)
            for (int j = 0; j < size_; ++j)
                for (int k = 0; k < size_; ++k)
                    if (mul_basis_vec(product(i, j), k, false) != mul_basis_vec(product(j, k), i, true))
                        throw StructuralError("ring is not associative on basis triple (" + std::to_string(i) + "," +
                                              std::to_string(j) + "," + std::to_string(k) + ")");
    }

  private:
    RingSpec(Kind kind, std::vector<int> ranks) : kind_(kind), ranks_(std::move(ranks)) {
        offsets_.resize(ranks_.size() + 1);
        for (std::size_t d = 0; d < ranks_.size(); ++d) offsets_[d + 1] = offsets_[d] + ranks_[d];
        size_ = offsets_.back();
        table_.assign(static_cast<std::size_t>(size_) * size_, std::vector<Rational>(size_));
    }

    std::vector<Rational>& product_mut(int i, int j) { return table_[static_cast<std::size_t>(i) * size_ + j]; }

    // (v * e_k) when !left, (e_k * v) when left; equal by commutativity but
    // kept separate so the associativity check is not circular.
    std::vector<Rational> mul_basis_vec(const std::vector<Rational>& v, int k, bool left) const {
        std::vector<Rational> out(size_);
        for (int a = 0; a < size_; ++a) {
            if (v[a] == 0) continue;
            const auto& p = left ? product(k, a) : product(a, k);
            for (int c = 0; c < size_; ++c)
                if (p[c] != 0) out[c] += v[a] * p[c];
        }
        return out;
    }

    Kind kind_;
    std::vector<int> ranks_;
    std::vector<int> offsets_;
    int size_ = 0;
    std::vector<std::vector<Rational>> table_;
    std::vector<Rational> degree_map_;
    std::optional<std::vector<Rational>> hyperplane_;
};

inline bool same_ring(const RingSpec& a, const RingSpec& b) { return &a == &b || a == b; }

/// An element of a truncated graded ring: dense coordinates over the flat basis.
class GradedClass {
  public:
    explicit GradedClass(RingPtr ring) : ring_(std::move(ring)), coords_(ring_->size()) {}
    GradedClass(RingPtr ring, std::vector<Rational> coords) : ring_(std::move(ring)), coords_(std::move(coords)) {
        if (static_cast<int>(coords_.size()) != ring_->size())
            throw StructuralError("class has " + std::to_string(coords_.size()) + " coordinates, ring has " +
                                  std::to_string(ring_->size()));
    }

    static GradedClass one(RingPtr ring) {
        GradedClass c(std::move(ring));
        c.coords_[0] = 1;
        return c;
    }

    /// For rings with one basis element per degree: coefficients of h^0..h^k.
    /// Missing degrees are zero; degrees above n are rejected.
    static GradedClass from_degrees(RingPtr ring, const std::vector<Rational>& coeffs) {
        if (!ring->one_per_degree()) throw StructuralError("from_degrees needs a ring with rank-1 graded pieces");
        if (static_cast<int>(coeffs.size()) > ring->size())
            throw StructuralError("class has components above the top degree");
        GradedClass c(std::move(ring));
        std::copy(coeffs.begin(), coeffs.end(), c.coords_.begin());
        return c;
    }

    static GradedClass hyperplane(RingPtr ring) {
        if (!ring->hyperplane()) throw UnsupportedError("ring has no designated hyperplane class");
        GradedClass c(ring);
        const auto& h = *ring->hyperplane();
        std::copy(h.begin(), h.end(), c.coords_.begin() + ring->offset(1));
        return c;
    }

    const RingSpec& ring() const { return *ring_; }
    const RingPtr& ring_ptr() const { return ring_; }
    std::span<const Rational> coords() const { return coords_; }

    std::span<const Rational> component(int degree) const {
        if (degree < 0 || degree > ring_->dim()) return {};
        return std::span<const Rational>(coords_).subspan(ring_->offset(degree), ring_->rank(degree));
    }

    /// Coefficient in a rank-1 degree (the h^d coefficient on P^n).
    const Rational& coeff(int degree) const {
        if (ring_->rank(degree) != 1) throw StructuralError("coeff() needs a rank-1 graded piece");
        return coords_[ring_->offset(degree)];
    }

    GradedClass part(int degree) const {
        GradedClass out(ring_);
        if (degree < 0 || degree > ring_->dim()) return out;
        for (int k = ring_->offset(degree); k < ring_->offset(degree) + ring_->rank(degree); ++k) out.coords_[k] = coords_[k];
        return out;
    }

    bool is_zero() const {
        return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
    }
    bool is_pure_degree(int degree) const { return (*this - part(degree)).is_zero(); }
    bool integral() const { return std::all_of(coords_.begin(), coords_.end(), is_integer); }

    GradedClass operator+(const GradedClass& o) const {
        check_same(o);
        GradedClass r(*this);
        for (std::size_t k = 0; k < coords_.size(); ++k) r.coords_[k] += o.coords_[k];
        return r;
    }
    GradedClass operator-(const GradedClass& o) const { return *this + (-o); }
    GradedClass operator-() const {
        GradedClass r(*this);
        for (auto& q : r.coords_) q = -q;
        return r;
    }
    GradedClass operator*(const Rational& s) const {
        GradedClass r(*this);
        for (auto& q : r.coords_) q *= s;
        return r;
    }
    GradedClass operator*(const GradedClass& o) const {
        check_same(o);
        GradedClass r(ring_);
        const int n = ring_->size();
        for (int i = 0; i < n; ++i) {
            if (coords_[i] == 0) continue;
            for (int j = 0; j < n; ++j) {
                if (o.coords_[j] == 0) continue;
                const auto& p = ring_->product(i, j);
                const Rational s = coords_[i] * o.coords_[j];
                for (int k = 0; k < n; ++k)
                    if (p[k] != 0) r.coords_[k] += s * p[k];
            }
        }
        return r;
    }
    GradedClass& operator+=(const GradedClass& o) { return *this = *this + o; }

    bool operator==(const GradedClass& o) const { return same_ring(*ring_, *o.ring_) && coords_ == o.coords_; }

    /// Degree functional applied to the top component.
    Rational integrate() const {
        const auto top = component(ring_->dim());
        Rational s(0);
        for (std::size_t k = 0; k < top.size(); ++k) s += top[k] * ring_->degree_map()[k];
        return s;
    }

    std::string str() const {
        std::string out;
        const bool pn = ring_->one_per_degree();
        for (int d = 0; d <= ring_->dim(); ++d) {
            const auto comp = component(d);
            for (std::size_t k = 0; k < comp.size(); ++k) {
                if (comp[k] == 0) continue;
                Rational c = comp[k];
                if (!out.empty()) {
                    out += c < 0 ? " - " : " + ";
                    if (c < 0) c = -c;
                } else if (c < 0) {
                    out += "-";
                    c = -c;
                }
                std::string mono = d == 0 ? "" : pn ? (d == 1 ? "h" : "h^" + std::to_string(d))
                                                    : "e" + std::to_string(d) + "_" + std::to_string(k);
                const bool frac = !is_integer(c);
                if (mono.empty()) out += c.str();
                else if (c != 1) out += (frac ? "(" + c.str() + ")" : c.str()) + mono;
                else out += mono;
            }
        }
        return out.empty() ? "0" : out;
    }

  private:
    void check_same(const GradedClass& o) const {
        if (!same_ring(*ring_, *o.ring_)) throw StructuralError("operands belong to different rings");
    }

    RingPtr ring_;
    std::vector<Rational> coords_;
};

inline GradedClass class_mul(const GradedClass& a, const GradedClass& b) { return a * b; }

/// Inverse of a class whose degree-0 part is a nonzero scalar. Positive
/// degree parts are nilpotent, so the geometric series terminates at n.
inline GradedClass class_inverse(const GradedClass& c) {
    const Rational a = c.coords()[0];
    if (a == 0) throw PreconditionError("class with zero constant term is not invertible");
    const GradedClass x = (c - GradedClass::one(c.ring_ptr()) * a) * (Rational(1) / a);
    GradedClass term = GradedClass::one(c.ring_ptr());
    GradedClass sum = term;
    for (int k = 1; k <= c.ring().dim(); ++k) {
        term = term * (-x);
        sum += term;
    }
    return sum * (Rational(1) / a);
}

/// Total Chern class with degree-0 part exactly 1, paired with a rank.
class ChernPolynomial {
  public:
    ChernPolynomial(GradedClass total, std::int64_t rank) : total_(std::move(total)), rank_(rank) {
        if (total_.coords()[0] != 1) throw PreconditionError("invalid Chern polynomial: degree-0 component must be 1");
        if (rank_ < 0) throw PreconditionError("invalid Chern polynomial: negative rank");
    }

    static ChernPolynomial trivial(RingPtr ring, std::int64_t rank) { return {GradedClass::one(std::move(ring)), rank}; }

    const GradedClass& total() const { return total_; }
    std::int64_t rank() const { return rank_; }
    const RingSpec& ring() const { return total_.ring(); }
    GradedClass c(int i) const { return total_.part(i); }

    bool integral() const { return total_.integral(); }
    void require_integral(const std::string& what) const {
        if (!integral()) throw InternalError(what + ": Chern classes are not integral: " + total_.str());
    }

    bool operator==(const ChernPolynomial& o) const { return rank_ == o.rank_ && total_ == o.total_; }

  private:
    GradedClass total_;
    std::int64_t rank_;
};

/// Chern polynomial of the kernel in 0 -> S -> O^w -> F -> 0: the inverse
/// class, with rank w - r supplied by the caller.
inline ChernPolynomial chern_invert(const ChernPolynomial& c, std::int64_t new_rank) {
    return {class_inverse(c.total()), new_rank};
}

inline ChernPolynomial chern_invert(const ChernPolynomial& c) { return chern_invert(c, c.rank()); }

inline ChernPolynomial whitney_sum(const ChernPolynomial& a, const ChernPolynomial& b) {
    return {a.total() * b.total(), a.rank() + b.rank()};
}

inline ChernPolynomial chern_dual(const ChernPolynomial& c) {
    GradedClass out = c.total();
    for (int d = 1; d <= c.ring().dim(); d += 2) out = out - c.total().part(d) * Rational(2);
    return {out, c.rank()};
}

/// Total Chern class of E (x) L for a degree-1 class l:
/// c_i(E(x)L) = sum_{j<=i} C(r-j, i-j) l^(i-j) c_j(E). Binomials are the
/// generalized ones, so virtual ranks are handled too.
inline ChernPolynomial chern_of_twist(const ChernPolynomial& c, const GradedClass& l) {
    if (!same_ring(c.ring(), l.ring())) throw StructuralError("twist class lives in a different ring");
    if (!l.is_pure_degree(1)) throw PreconditionError("twist class must be of pure degree 1");
    const int n = c.ring().dim();
    std::vector<GradedClass> lpow{GradedClass::one(l.ring_ptr())};
    for (int k = 1; k <= n; ++k) lpow.push_back(lpow.back() * l);
    GradedClass out(l.ring_ptr());
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= i; ++j) out += c.c(j) * lpow[i - j] * binomial(Rational(c.rank() - j), i - j);
    return {out, c.rank()};
}

/// Newton power sums p_k of the Chern roots, k = 1..n.
inline std::vector<GradedClass> power_sums(const ChernPolynomial& c) {
    const int n = c.ring().dim();
    std::vector<GradedClass> p(n + 1, GradedClass(c.total().ring_ptr()));
    for (int k = 1; k <= n; ++k) {
        GradedClass acc = c.c(k) * Rational(k % 2 == 1 ? k : -k);
        for (int i = 1; i < k; ++i) acc += c.c(i) * p[k - i] * Rational(i % 2 == 1 ? 1 : -1);
        p[k] = acc;
    }
    return p;
}

/// ch = r + sum_k p_k / k!, exact, truncated at n.
inline GradedClass chern_character(const ChernPolynomial& c) {
    const auto p = power_sums(c);
    GradedClass ch = GradedClass::one(c.total().ring_ptr()) * Rational(c.rank());
    for (int k = 1; k <= c.ring().dim(); ++k) ch += p[k] * (Rational(1) / factorial(k));
    return ch;
}

/// Inverse of chern_character: recovers rank and total Chern class from a
/// character with integral rank.
inline ChernPolynomial chern_from_character(const GradedClass& ch) {
    const Rational r = ch.coords()[0];
    if (!is_integer(r) || r < 0) throw PreconditionError("character rank must be a non-negative integer");
    const int n = ch.ring().dim();
    std::vector<GradedClass> p(n + 1, GradedClass(ch.ring_ptr()));
    for (int k = 1; k <= n; ++k) p[k] = ch.part(k) * factorial(k);
    std::vector<GradedClass> e{GradedClass::one(ch.ring_ptr())};
    for (int k = 1; k <= n; ++k) {
        GradedClass acc(ch.ring_ptr());
        for (int i = 1; i <= k; ++i) acc += e[k - i] * p[i] * Rational(i % 2 == 1 ? 1 : -1);
        e.push_back(acc * (Rational(1) / k));
    }
    GradedClass total(ch.ring_ptr());
    for (const auto& x : e) total += x;
    return {total, to_int64(r)};
}

/// Todd class from the tangent Chern polynomial, implemented through degree 3.
inline GradedClass todd_class(const ChernPolynomial& tangent) {
    const int n = tangent.ring().dim();
    if (n > 3) throw UnsupportedError("Todd class: unsupported degree " + std::to_string(n) + " (n <= 3 supported)");
    const GradedClass c1 = tangent.c(1);
    const GradedClass c2 = tangent.c(2);
    GradedClass td = GradedClass::one(tangent.total().ring_ptr());
    td += c1 * Rational(1, 2);
    td += (c1 * c1 + c2) * Rational(1, 12);
    td += c1 * c2 * Rational(1, 24);
    // Products above degree n already vanish in the ring.
    return td;
}

/// Integral of ch * td over the ring; must be an integer.
inline std::int64_t euler_characteristic(const GradedClass& ch, const GradedClass& td) {
    const Rational chi = (ch * td).integrate();
    if (!is_integer(chi))
        throw InternalError("Hirzebruch-Riemann-Roch produced a non-integer Euler characteristic " + chi.str());
    return to_int64(chi);
}

}  // namespace syzmod
