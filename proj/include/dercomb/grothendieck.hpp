#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dercomb/errors.hpp"
#include "dercomb/label.hpp"

namespace dercomb {

using Integer = boost::multiprecision::cpp_int;
using Matrix = std::vector<std::vector<Integer>>;

inline Matrix identity_matrix(std::size_t n) {
    Matrix m(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline std::size_t columns(const Matrix& m, std::size_t fallback = 0) { return m.empty() ? fallback : m.front().size(); }

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size(), k = b.size(), p = columns(b);
    Matrix r(n, std::vector<Integer>(p, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < p; ++j) r[i][j] += a[i][t] * b[t][j];
        }
    return r;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(Matrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        if (k + 1 == n) break;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

struct SmithForm {
    Matrix U;
    Matrix S;
    Matrix V;

    std::vector<Integer> diagonal() const {
        std::vector<Integer> d;
        for (std::size_t i = 0; i < S.size() && i < columns(S); ++i) d.push_back(S[i][i]);
        return d;
    }
};

/// S = U·M·V with U, V unimodular and S diagonal, d_i | d_{i+1}, d_i ≥ 0.
/// Pivot: smallest nonzero |entry|, ties broken row-major.
inline SmithForm smith_normal_form(const Matrix& m, std::size_t ncols = 0) {
    const std::size_t r = m.size();
    const std::size_t c = columns(m, ncols);
    for (const auto& row : m)
        if (row.size() != c) throw InputError("ragged matrix");
    SmithForm f{identity_matrix(r), m, identity_matrix(c)};
    auto& s = f.S;
    auto swap_rows = [&](std::size_t a, std::size_t b) {
        std::swap(s[a], s[b]);
        std::swap(f.U[a], f.U[b]);
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (auto& row : s) std::swap(row[a], row[b]);
        for (auto& row : f.V) std::swap(row[a], row[b]);
    };
    // row_a += q·row_b
    auto add_row = [&](std::size_t a, std::size_t b, const Integer& q) {
        for (std::size_t j = 0; j < c; ++j) s[a][j] += q * s[b][j];
        for (std::size_t j = 0; j < r; ++j) f.U[a][j] += q * f.U[b][j];
    };
    auto add_col = [&](std::size_t a, std::size_t b, const Integer& q) {
        for (std::size_t i = 0; i < r; ++i) s[i][a] += q * s[i][b];
        for (std::size_t i = 0; i < c; ++i) f.V[i][a] += q * f.V[i][b];
    };
    for (std::size_t t = 0; t < std::min(r, c); ++t) {
        while (true) {
            std::optional<std::pair<std::size_t, std::size_t>> piv;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j)
                    if (s[i][j] != 0 && (!piv || abs(s[i][j]) < abs(s[piv->first][piv->second]))) piv = {i, j};
            if (!piv) return f;
            swap_rows(t, piv->first);
            swap_cols(t, piv->second);
            bool dirty = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (s[i][t] == 0) continue;
                Integer q = s[i][t] / s[t][t];
                add_row(i, t, -q);
                dirty = dirty || s[i][t] != 0;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (s[t][j] == 0) continue;
                Integer q = s[t][j] / s[t][t];
                add_col(j, t, -q);
                dirty = dirty || s[t][j] != 0;
            }
            if (dirty) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < r && divides; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (s[i][j] % s[t][t] != 0) {
                        add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (s[t][t] < 0) {
            for (auto& x : s[t]) x = -x;
            for (auto& x : f.U[t]) x = -x;
        }
    }
    return f;
}

struct K0Presentation {
    std::vector<Label> generators;
    /// (a, b, c): [b] = [a] + [c]
    std::vector<std::tuple<Label, Label, Label>> cofiber;
    /// (x, y): [x] = [y]
    std::vector<std::pair<Label, Label>> iso;
    /// z: [z] = 0
    std::vector<Label> zero;
};

/// Rows are relations, columns generators.
inline Matrix relation_matrix(const K0Presentation& p) {
    std::unordered_map<Label, std::size_t, LabelHash> col;
    for (std::size_t i = 0; i < p.generators.size(); ++i)
        if (!col.emplace(p.generators[i], i).second) throw InputError("duplicate generator " + p.generators[i].str());
    auto at = [&](const Label& l) {
        auto it = col.find(l);
        if (it == col.end()) throw InputError("relation mentions unknown generator " + l.str());
        return it->second;
    };
    const std::size_t g = p.generators.size();
    Matrix m;
    for (const auto& [a, b, c] : p.cofiber) {
        std::vector<Integer> row(g, 0);
        row[at(b)] += 1;
        row[at(a)] -= 1;
        row[at(c)] -= 1;
        m.push_back(std::move(row));
    }
    for (const auto& [x, y] : p.iso) {
        std::vector<Integer> row(g, 0);
        row[at(x)] += 1;
        row[at(y)] -= 1;
        m.push_back(std::move(row));
    }
    for (const auto& z : p.zero) {
        std::vector<Integer> row(g, 0);
        row[at(z)] += 1;
        m.push_back(std::move(row));
    }
    return m;
}

/// ℤ^rank ⊕ ⊕ ℤ/d_i. Class coordinates list the torsion summands first (each
/// reduced into [0, d_i)), then the free ones.
struct AbelianGroup {
    std::vector<Integer> torsion;
    std::size_t rank = 0;
    std::vector<Label> generators;
    std::vector<std::vector<Integer>> classes;

    bool trivial() const { return rank == 0 && torsion.empty(); }

    const std::vector<Integer>& class_of(const Label& g) const {
        for (std::size_t i = 0; i < generators.size(); ++i)
            if (generators[i] == g) return classes[i];
        throw InputError("unknown generator " + g.str());
    }

    /// a + b in the group coordinates
    std::vector<Integer> add(const std::vector<Integer>& a, const std::vector<Integer>& b) const {
        std::vector<Integer> r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            r[i] = a[i] + b[i];
            if (i < torsion.size()) r[i] %= torsion[i];
        }
        return r;
    }
};

inline AbelianGroup k0_group(const K0Presentation& p) {
    Matrix m = relation_matrix(p);
    const std::size_t g = p.generators.size();
    SmithForm f = smith_normal_form(m, g);
    auto diag = f.diagonal();
    AbelianGroup out;
    out.generators = p.generators;
    std::vector<std::size_t> torsion_cols, free_cols;
    for (std::size_t j = 0; j < g; ++j) {
        Integer d = j < diag.size() ? diag[j] : Integer(0);
        if (d == 0) {
            free_cols.push_back(j);
        } else if (d != 1) {
            torsion_cols.push_back(j);
            out.torsion.push_back(d);
        }
    }
    out.rank = free_cols.size();
    // generator i ↦ e_i V, read modulo the diagonal
    for (std::size_t i = 0; i < g; ++i) {
        std::vector<Integer> cls;
        for (std::size_t t = 0; t < torsion_cols.size(); ++t) {
            Integer v = f.V[i][torsion_cols[t]] % out.torsion[t];
            if (v < 0) v += out.torsion[t];
            cls.push_back(v);
        }
        for (auto j : free_cols) cls.push_back(f.V[i][j]);
        out.classes.push_back(std::move(cls));
    }
    return out;
}

/// First input relation the class map does not satisfy.
inline std::optional<std::string> class_map_violation(const K0Presentation& p, const AbelianGroup& k) {
    std::vector<Integer> zero(k.torsion.size() + k.rank, 0);
    for (const auto& [a, b, c] : p.cofiber)
        if (k.class_of(b) != k.add(k.class_of(a), k.class_of(c)))
            return "[" + b.str() + "] != [" + a.str() + "] + [" + c.str() + "]";
    for (const auto& [x, y] : p.iso)
        if (k.class_of(x) != k.class_of(y)) return "[" + x.str() + "] != [" + y.str() + "]";
    for (const auto& z : p.zero)
        if (k.class_of(z) != zero) return "[" + z.str() + "] != 0";
    return std::nullopt;
}

} // namespace dercomb
