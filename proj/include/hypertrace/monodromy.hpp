#ifndef HYPERTRACE_MONODROMY_HPP
#define HYPERTRACE_MONODROMY_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "qfactor.hpp"

namespace hypertrace {

/// A point of P^1 carrying local monodromy: a rational number, infinity, or
/// an algebraic place known only through its minimal polynomial and degree.
struct PointId {
    enum class Kind { Finite, Infinity, Algebraic };
    Kind kind = Kind::Finite;
    Rational value;
    QPoly min_poly;  // monic, for algebraic places
    long degree = 1;

    static PointId finite(Rational v) {
        PointId p;
        p.kind = Kind::Finite;
        p.value = std::move(v);
        return p;
    }
    static PointId infinity() {
        PointId p;
        p.kind = Kind::Infinity;
        return p;
    }
    static PointId algebraic(QPoly poly) {
        PointId p;
        p.kind = Kind::Algebraic;
        p.degree = poly.degree();
        p.min_poly = std::move(poly);
        return p;
    }

    friend bool operator==(const PointId& a, const PointId& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
            case Kind::Finite: return a.value == b.value;
            case Kind::Infinity: return true;
            case Kind::Algebraic: return a.min_poly == b.min_poly;
        }
        return false;
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::Finite: return value.to_string();
            case Kind::Infinity: return "inf";
            case Kind::Algebraic:
                return "place:" + std::to_string(degree) + ":" + min_poly.to_string();
        }
        return "?";
    }
};

/// Semisimple local monodromy: the multiset of eigenvalue exponents in [0,1)
/// (eigenvalue exp(2 pi i a)), stored sorted.
struct LocalDatum {
    std::vector<Rational> exponents;

    explicit LocalDatum(std::vector<Rational> exps) : exponents(std::move(exps)) {
        for (auto& e : exponents) e = e.mod1();
        std::sort(exponents.begin(), exponents.end());
    }

    bool is_trivial() const {
        for (const auto& e : exponents)
            if (!e.is_zero()) return false;
        return true;
    }

    Rational sum() const {
        Rational s;
        for (const auto& e : exponents) s += e;
        return s;
    }

    /// sum of squared multiplicities of the distinct eigenvalues
    long centralizer_dim() const {
        long total = 0;
        size_t i = 0;
        while (i < exponents.size()) {
            size_t j = i;
            while (j < exponents.size() && exponents[j] == exponents[i]) ++j;
            long m = static_cast<long>(j - i);
            total += m * m;
            i = j;
        }
        return total;
    }

    friend bool operator==(const LocalDatum& a, const LocalDatum& b) {
        return a.exponents == b.exponents;
    }
};

/// Rank d local system data on P^1: singular points with semisimple local
/// monodromy, subject to the integral determinant condition.
struct MonodromyTuple {
    long rank = 1;
    std::vector<std::pair<PointId, LocalDatum>> local;

    MonodromyTuple(long d, std::vector<std::pair<PointId, LocalDatum>> data)
        : rank(d), local(std::move(data)) {
        for (auto& [pt, datum] : local) {
            if (static_cast<long>(datum.exponents.size()) != rank)
                throw Error("local datum size must equal the rank");
        }
        for (size_t i = 0; i < local.size(); ++i)
            for (size_t j = i + 1; j < local.size(); ++j)
                if (local[i].first == local[j].first)
                    throw Error("singular points must be pairwise distinct");
        if (!determinant_sum().is_integer())
            throw DeterminantViolation("total exponent sum is not an integer");
    }

    /// Degree-weighted sum of all exponents; integrality is the determinant
    /// condition (product of local determinants = 1).
    Rational determinant_sum() const {
        Rational s;
        for (const auto& [pt, datum] : local)
            s += datum.sum() * Rational(pt.degree);
        return s;
    }

    /// Number of geometric singular points (degree-weighted).
    long geometric_point_count() const {
        long m = 0;
        for (const auto& [pt, datum] : local) m += pt.degree;
        return m;
    }

    const LocalDatum* datum_at(const PointId& p) const {
        for (const auto& [pt, datum] : local)
            if (pt == p) return &datum;
        return nullptr;
    }
};

/// rig(F) = (2 - m) d^2 + sum over geometric singular points of the local
/// centralizer dimension; rig = 2 is cohomological rigidity.
inline long rigidity_index(const MonodromyTuple& t) {
    long m = t.geometric_point_count();
    long rig = (2 - m) * t.rank * t.rank;
    for (const auto& [pt, datum] : t.local) rig += pt.degree * datum.centralizer_dim();
    return rig;
}

/// Pullback along a rational map: each place (x0, e) over a singular point c
/// acquires exponents e * (exponents at c) mod 1; places where every
/// exponent becomes an integer are dropped (the pullback is lisse there).
inline MonodromyTuple pullback_tuple(const MonodromyTuple& t, const RationalMap& R) {
    std::vector<std::pair<PointId, LocalDatum>> out;
    for (const auto& [pt, datum] : t.local) {
        std::optional<Rational> c;
        if (pt.kind == PointId::Kind::Finite) c = pt.value;
        else if (pt.kind == PointId::Kind::Infinity) c = std::nullopt;
        else throw UnsupportedAlgebraicSingularity("pullback needs rational singular points");
        for (const auto& place : rational_map_fibers(R, c)) {
            std::vector<Rational> exps;
            for (const auto& e : datum.exponents)
                exps.push_back((e * Rational(place.ram)).mod1());
            LocalDatum nd(std::move(exps));
            if (nd.is_trivial()) continue;
            PointId np = place.at_infinity ? PointId::infinity()
                        : place.algebraic  ? PointId::algebraic(place.min_poly)
                                           : PointId::finite(place.point);
            out.emplace_back(std::move(np), std::move(nd));
        }
    }
    return MonodromyTuple(t.rank, std::move(out));
}

/// Tensor with a rank-1 system given by (point, exponent) twists. The twist
/// exponents must be integral in degree-weighted total (a genuine rank-1
/// local system on P^1).
inline MonodromyTuple kummer_twist(const MonodromyTuple& t,
                                   const std::vector<std::pair<PointId, Rational>>& twist) {
    Rational total;
    for (const auto& [pt, e] : twist) total += e * Rational(pt.degree);
    if (!total.is_integer())
        throw DeterminantViolation("twist exponents do not sum to an integer");
    std::vector<std::pair<PointId, LocalDatum>> out = t.local;
    for (const auto& [pt, e] : twist) {
        if (e.mod1().is_zero()) continue;
        bool found = false;
        for (auto& [qt, datum] : out) {
            if (!(qt == pt)) continue;
            std::vector<Rational> exps;
            for (const auto& x : datum.exponents) exps.push_back((x + e).mod1());
            datum = LocalDatum(std::move(exps));
            found = true;
            break;
        }
        if (!found) {
            std::vector<Rational> exps(static_cast<size_t>(t.rank), e.mod1());
            out.emplace_back(pt, LocalDatum(std::move(exps)));
        }
    }
    std::vector<std::pair<PointId, LocalDatum>> kept;
    for (auto& entry : out)
        if (!entry.second.is_trivial()) kept.push_back(std::move(entry));
    return MonodromyTuple(t.rank, std::move(kept));
}

/// The Riemann scheme of 2F1(a, b; c): exponents {0, 1-c}, {0, c-a-b}, {a, b}
/// at 0, 1, infinity.
inline MonodromyTuple f21_scheme(const Rational& a, const Rational& b, const Rational& c) {
    std::vector<std::pair<PointId, LocalDatum>> local;
    local.emplace_back(PointId::finite(Rational(0)),
                       LocalDatum({Rational(0), (Rational(1) - c).mod1()}));
    local.emplace_back(PointId::finite(Rational(1)),
                       LocalDatum({Rational(0), (c - a - b).mod1()}));
    local.emplace_back(PointId::infinity(), LocalDatum({a.mod1(), b.mod1()}));
    return MonodromyTuple(2, std::move(local));
}

/// H^can(alpha; beta) local shape from exponent lists (rationals mod 1):
/// alpha at 0, the pseudoreflection {0, sum(beta) - sum(alpha)} at 1, and
/// -beta at infinity. Requires semisimple data: distinct entries within each
/// list and a nontrivial pseudoreflection.
inline MonodromyTuple hcan_local_shape(std::vector<Rational> alpha, std::vector<Rational> beta) {
    if (alpha.size() != beta.size()) throw Error("hcan shape needs a = b");
    auto has_repeat = [](std::vector<Rational> v) {
        for (auto& e : v) e = e.mod1();
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) != v.end();
    };
    if (has_repeat(alpha) || has_repeat(beta))
        throw NonSemisimple("repeated characters give non-semisimple local monodromy");
    Rational det;
    for (const auto& e : beta) det += e;
    for (const auto& e : alpha) det -= e;
    if (det.mod1().is_zero())
        throw NonSemisimple("unipotent pseudoreflection at 1");
    const long d = static_cast<long>(alpha.size());
    std::vector<Rational> at1(static_cast<size_t>(d), Rational(0));
    at1.back() = det.mod1();
    std::vector<Rational> at_inf;
    for (const auto& e : beta) at_inf.push_back((-e).mod1());
    std::vector<std::pair<PointId, LocalDatum>> local;
    local.emplace_back(PointId::finite(Rational(0)), LocalDatum(std::move(alpha)));
    local.emplace_back(PointId::finite(Rational(1)), LocalDatum(std::move(at1)));
    local.emplace_back(PointId::infinity(), LocalDatum(std::move(at_inf)));
    return MonodromyTuple(d, std::move(local));
}

/// Fuchs relation for an exponent scheme with canonical representatives:
/// the exponents of a rank-d system with m singular points sum to
/// (m - 2) d (d - 1) / 2.
inline void fuchs_check(const MonodromyTuple& t) {
    Rational expected(( t.geometric_point_count() - 2) * t.rank * (t.rank - 1), 2);
    if (t.determinant_sum() != expected)
        throw FuchsViolation("exponent sum " + t.determinant_sum().to_string() +
                             " != " + expected.to_string());
}

/// Equality of tuples as point-indexed multisets of local data.
inline bool same_local_data(const MonodromyTuple& a, const MonodromyTuple& b) {
    if (a.rank != b.rank || a.local.size() != b.local.size()) return false;
    for (const auto& [pt, datum] : a.local) {
        const LocalDatum* other = b.datum_at(pt);
        if (!other || !(*other == datum)) return false;
    }
    return true;
}

}  // namespace hypertrace

#endif
