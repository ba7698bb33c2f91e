#pragma once

#include <pact/errors.hpp>
#include <pact/rational.hpp>

#include <algorithm>
#include <vector>

namespace pact {

enum class GroupKind { Zd, RationalLine };

/// An ordered abelian group: Z^d with the orthant cone, or the rational line
/// with the non-negative cone.
struct GroupDescriptor {
    GroupKind kind = GroupKind::Zd;
    int rank = 1;  // only meaningful for Zd

    static GroupDescriptor zd(int rank) {
        if (rank < 1) throw malformed_input("Zd rank must be >= 1");
        return {GroupKind::Zd, rank};
    }
    static GroupDescriptor rational_line() { return {GroupKind::RationalLine, 0}; }

    friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
        return a.kind == b.kind && (a.kind != GroupKind::Zd || a.rank == b.rank);
    }
    friend bool operator!=(const GroupDescriptor& a, const GroupDescriptor& b) { return !(a == b); }
};

/// Element of either group kind.  Zd elements use `coords` (length = rank);
/// RationalLine elements use `rat` and leave `coords` empty.
struct GroupElement {
    std::vector<Int> coords;
    Rational rat;

    static GroupElement zd(std::vector<Int> c) {
        GroupElement e;
        e.coords = std::move(c);
        return e;
    }
    static GroupElement line(Rational r) {
        GroupElement e;
        e.rat = std::move(r);
        return e;
    }

    bool is_line() const { return coords.empty(); }

    bool is_zero() const {
        if (is_line()) return rat == 0;
        return std::all_of(coords.begin(), coords.end(), [](const Int& v) { return v == 0; });
    }

    friend GroupElement operator+(const GroupElement& a, const GroupElement& b) {
        if (a.coords.size() != b.coords.size()) throw malformed_input("group element rank mismatch");
        GroupElement r;
        r.rat = a.rat + b.rat;
        r.coords.reserve(a.coords.size());
        for (size_t i = 0; i < a.coords.size(); ++i) r.coords.push_back(a.coords[i] + b.coords[i]);
        return r;
    }
    friend GroupElement operator-(const GroupElement& a, const GroupElement& b) { return a + (-b); }
    friend GroupElement operator-(const GroupElement& a) {
        GroupElement r;
        r.rat = -a.rat;
        r.coords.reserve(a.coords.size());
        for (const auto& v : a.coords) r.coords.push_back(-v);
        return r;
    }
    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.coords == b.coords && a.rat == b.rat;
    }
    friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }
    friend bool operator<(const GroupElement& a, const GroupElement& b) {
        if (a.coords != b.coords) return a.coords < b.coords;
        return a.rat < b.rat;
    }
};

inline GroupElement group_zero(const GroupDescriptor& desc) {
    if (desc.kind == GroupKind::RationalLine) return GroupElement::line(0);
    return GroupElement::zd(std::vector<Int>(static_cast<size_t>(desc.rank), Int(0)));
}

inline void check_shape(const GroupDescriptor& desc, const GroupElement& g) {
    if (desc.kind == GroupKind::RationalLine) {
        if (!g.coords.empty()) throw malformed_input("expected rational-line element");
    } else if (g.coords.size() != static_cast<size_t>(desc.rank)) {
        throw malformed_input("group element rank mismatch");
    }
}

inline bool cone_contains(const GroupDescriptor& desc, const GroupElement& g) {
    check_shape(desc, g);
    if (desc.kind == GroupKind::RationalLine) return g.rat >= 0;
    return std::all_of(g.coords.begin(), g.coords.end(), [](const Int& v) { return v >= 0; });
}

inline bool is_totally_ordering(const GroupDescriptor& desc) {
    return desc.kind == GroupKind::RationalLine || desc.rank == 1;
}

/// Finitely generated subgroup.  Zd: rows of `basis` are a Hermite-style
/// triangular basis (pivot columns strictly increasing, pivots positive).
/// RationalLine: cyclic, generated by `line_gen` >= 0 (0 = trivial subgroup).
struct Subgroup {
    GroupDescriptor desc;
    std::vector<std::vector<Int>> basis;
    Rational line_gen = 0;
};

namespace detail {

/// Row-reduce an integer matrix to Hermite normal form (row style):
/// nonzero rows first, pivot columns strictly increasing, pivots positive,
/// entries above a pivot reduced into [0, pivot).
inline std::vector<std::vector<Int>> hnf(std::vector<std::vector<Int>> rows) {
    if (rows.empty()) return rows;
    const size_t n = rows[0].size();
    size_t r = 0;  // next pivot row
    for (size_t col = 0; col < n && r < rows.size(); ++col) {
        // euclidean elimination on column `col` among rows r..end
        while (true) {
            size_t best = rows.size();
            for (size_t i = r; i < rows.size(); ++i) {
                if (rows[i][col] != 0 &&
                    (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])))
                    best = i;
            }
            if (best == rows.size()) break;  // column all zero below r
            std::swap(rows[r], rows[best]);
            if (rows[r][col] < 0)
                for (auto& v : rows[r]) v = -v;
            bool clean = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                Int q = rows[i][col] / rows[r][col];
                if (rows[i][col] - q * rows[r][col] < 0) q -= 1;  // floor division
                for (size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[r][col] != 0) {
            // reduce entries above the pivot
            for (size_t i = 0; i < r; ++i) {
                Int q = rows[i][col] / rows[r][col];
                if (rows[i][col] - q * rows[r][col] < 0) q -= 1;
                for (size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
            }
            ++r;
        }
    }
    rows.resize(r);
    return rows;
}

}  // namespace detail

inline Subgroup subgroup_reduce(const GroupDescriptor& desc, const std::vector<GroupElement>& gens) {
    Subgroup h;
    h.desc = desc;
    if (desc.kind == GroupKind::RationalLine) {
        // gcd of rationals: gcd of numerators over lcm of denominators
        Rational g = 0;
        for (const auto& e : gens) {
            check_shape(desc, e);
            if (e.rat == 0) continue;
            if (g == 0) {
                g = e.rat < 0 ? -e.rat : e.rat;
                continue;
            }
            Int den = boost::multiprecision::lcm(rat_den(g), rat_den(e.rat));
            Int a = rat_num(g) * (den / rat_den(g));
            Int b = rat_num(e.rat) * (den / rat_den(e.rat));
            g = Rational(boost::multiprecision::gcd(abs(a), abs(b)), den);
        }
        h.line_gen = g;
        return h;
    }
    std::vector<std::vector<Int>> rows;
    for (const auto& e : gens) {
        check_shape(desc, e);
        if (!e.is_zero()) rows.push_back(e.coords);
    }
    h.basis = detail::hnf(std::move(rows));
    return h;
}

inline bool subgroup_member(const Subgroup& h, const GroupElement& g) {
    check_shape(h.desc, g);
    if (h.desc.kind == GroupKind::RationalLine) {
        if (g.rat == 0) return true;
        if (h.line_gen == 0) return false;
        Rational q = g.rat / h.line_gen;
        return rat_den(q) == 1;
    }
    std::vector<Int> v = g.coords;
    size_t row = 0;
    const size_t n = v.size();
    for (size_t col = 0; col < n; ++col) {
        if (row < h.basis.size()) {
            // find this row's pivot column
            size_t pc = 0;
            while (pc < n && h.basis[row][pc] == 0) ++pc;
            if (pc == col) {
                if (v[col] % h.basis[row][col] != 0) return false;
                Int q = v[col] / h.basis[row][col];
                for (size_t j = 0; j < n; ++j) v[j] -= q * h.basis[row][j];
                ++row;
                continue;
            }
        }
        if (v[col] != 0) return false;
    }
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

/// True iff the subgroup is all of the ambient group.
inline bool subgroup_is_full(const Subgroup& h) {
    if (h.desc.kind == GroupKind::RationalLine)
        // Q is not finitely generated; "full" is not attainable here.
        return false;
    if (h.basis.size() != static_cast<size_t>(h.desc.rank)) return false;
    Int det = 1;
    for (size_t i = 0; i < h.basis.size(); ++i) det *= h.basis[i][i];
    return det == 1 || det == -1;
}

inline std::string elem_to_string(const GroupElement& g) {
    if (g.is_line()) return rat_to_string(g.rat);
    std::string s = "(";
    for (size_t i = 0; i < g.coords.size(); ++i) {
        if (i) s += ",";
        s += g.coords[i].str();
    }
    return s + ")";
}

}  // namespace pact
