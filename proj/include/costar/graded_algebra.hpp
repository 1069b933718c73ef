#pragma once

#include "costar/diffop.hpp"
#include "costar/rational.hpp"
#include "costar/rng.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace costar {

// Element of a finite graded vector space: coefficients on a fixed basis.
using GVec = std::map<size_t, Rat>;

inline void gvec_add(GVec &a, size_t i, const Rat &c) {
    if (c == 0)
        return;
    auto it = a.find(i);
    if (it == a.end()) {
        a[i] = c;
        return;
    }
    it->second += c;
    if (it->second == 0)
        a.erase(it);
}
inline void gvec_add(GVec &a, const GVec &b, const Rat &scale = Rat(1)) {
    for (const auto &[i, c] : b)
        gvec_add(a, i, c * scale);
}

// Finite-dimensional graded associative algebra given by structure constants.
struct GradedAlgebra {
    std::vector<std::string> names;
    std::vector<int> degrees;
    std::vector<std::vector<GVec>> mult; // mult[i][j] = e_i e_j
    size_t unit = 0;

    size_t dim() const { return names.size(); }

    GVec product(const GVec &a, const GVec &b) const {
        GVec out;
        for (const auto &[i, ca] : a)
            for (const auto &[j, cb] : b)
                gvec_add(out, mult[i][j], ca * cb);
        return out;
    }

    bool is_associative() const {
        for (size_t i = 0; i < dim(); ++i)
            for (size_t j = 0; j < dim(); ++j)
                for (size_t k = 0; k < dim(); ++k) {
                    GVec left = product(mult[i][j], GVec{{k, Rat(1)}});
                    GVec right = product(GVec{{i, Rat(1)}}, mult[j][k]);
                    for (const auto &[t, c] : right)
                        gvec_add(left, t, -c);
                    if (!left.empty())
                        return false;
                }
        return true;
    }

    // Grassmann algebra on m odd generators; basis indexed by subset masks.
    static GradedAlgebra exterior(int m) {
        GradedAlgebra g;
        size_t d = 1u << m;
        g.names.resize(d);
        g.degrees.resize(d);
        g.mult.assign(d, std::vector<GVec>(d));
        for (size_t s = 0; s < d; ++s) {
            g.degrees[s] = __builtin_popcount(static_cast<unsigned>(s));
            std::string nm = "e";
            for (int c = 0; c < m; ++c)
                if (s & (1u << c))
                    nm += std::to_string(c + 1);
            g.names[s] = (s == 0) ? "1" : nm;
            for (size_t t = 0; t < d; ++t) {
                if (s & t)
                    continue; // zero
                int sign = merge_sign(static_cast<IndexMask>(s), static_cast<IndexMask>(t));
                g.mult[s][t] = GVec{{s | t, Rat(sign)}};
            }
        }
        g.unit = 0;
        return g;
    }

    // Q[x]/(x^{D+1}) in degree 0 (one variable).
    static GradedAlgebra truncated_polynomials(int /*nvars*/, int maxdeg) {
        GradedAlgebra g;
        size_t d = static_cast<size_t>(maxdeg) + 1;
        g.names.resize(d);
        g.degrees.assign(d, 0);
        g.mult.assign(d, std::vector<GVec>(d));
        for (size_t i = 0; i < d; ++i) {
            g.names[i] = i == 0 ? "1" : "x^" + std::to_string(i);
            for (size_t j = 0; j < d; ++j)
                if (i + j < d)
                    g.mult[i][j] = GVec{{i + j, Rat(1)}};
        }
        g.unit = 0;
        return g;
    }
};

// Degree-homogeneous multilinear cochain on a finite graded algebra, stored by
// its values on basis tuples.
struct GradedCochain {
    int arity = 0;
    int degree = 0; // |phi|
    std::map<std::vector<size_t>, GVec> table;

    bool is_zero() const {
        for (const auto &[k, v] : table)
            if (!v.empty())
                return false;
        return true;
    }
    GVec value_on(const std::vector<size_t> &tuple) const {
        auto it = table.find(tuple);
        return it == table.end() ? GVec{} : it->second;
    }
    GVec value_on_vec(const std::vector<GVec> &args) const {
        GVec out;
        std::vector<size_t> tuple(arity, 0);
        std::function<void(int, const Rat &)> rec = [&](int slot, const Rat &scale) {
            if (slot == arity) {
                gvec_add(out, value_on(tuple), scale);
                return;
            }
            for (const auto &[i, c] : args[slot]) {
                tuple[slot] = i;
                rec(slot + 1, scale * c);
            }
        };
        rec(0, Rat(1));
        return out;
    }

    static GradedCochain identity(const GradedAlgebra &g) {
        GradedCochain c;
        c.arity = 1;
        c.degree = 0;
        for (size_t i = 0; i < g.dim(); ++i)
            c.table[{i}] = GVec{{i, Rat(1)}};
        return c;
    }
};

// Graded Hochschild cobord:
// (b phi)(f_1..f_{k+1}) = (-1)^{|f_1||phi|} f_1 phi(f_2..f_{k+1})
//   + sum_{r=1}^{k} (-1)^r phi(f_1,..,f_r f_{r+1},..,f_{k+1})
//   + (-1)^{k+1} phi(f_1..f_k) f_{k+1}.
inline GradedCochain graded_b(const GradedAlgebra &g, const GradedCochain &phi) {
    if (!g.is_associative())
        throw std::invalid_argument("graded_b requires an associative algebra");
    const int k = phi.arity;
    GradedCochain out;
    out.arity = k + 1;
    out.degree = phi.degree; // b raises the arity, the internal degree is kept
    std::vector<size_t> tuple(k + 1, 0);
    std::function<void(int)> rec = [&](int slot) {
        if (slot < k + 1) {
            for (size_t i = 0; i < g.dim(); ++i) {
                tuple[slot] = i;
                rec(slot + 1);
            }
            return;
        }
        GVec val;
        // first term
        {
            std::vector<size_t> rest(tuple.begin() + 1, tuple.end());
            GVec inner = phi.value_on(rest);
            GVec prod = g.product(GVec{{tuple[0], Rat(1)}}, inner);
            int sgn = (g.degrees[tuple[0]] * phi.degree) % 2 ? -1 : 1;
            gvec_add(val, prod, Rat(sgn));
        }
        // middle terms
        for (int r = 1; r <= k; ++r) {
            GVec prod = g.mult[tuple[r - 1]][tuple[r]];
            for (const auto &[m, cm] : prod) {
                std::vector<size_t> args;
                for (int q = 0; q < r - 1; ++q)
                    args.push_back(tuple[q]);
                args.push_back(m);
                for (int q = r + 1; q <= k; ++q)
                    args.push_back(tuple[q]);
                gvec_add(val, phi.value_on(args), cm * Rat(r % 2 ? -1 : 1));
            }
        }
        // last term
        {
            std::vector<size_t> head(tuple.begin(), tuple.end() - 1);
            GVec inner = phi.value_on(head);
            GVec prod = g.product(inner, GVec{{tuple.back(), Rat(1)}});
            gvec_add(val, prod, Rat((k + 1) % 2 ? -1 : 1));
        }
        if (!val.empty())
            out.table[tuple] = val;
    };
    rec(0);
    return out;
}

// Random degree-homogeneous cochain (used by identity suites).
inline GradedCochain random_graded_cochain(const GradedAlgebra &g, Rng &rng, int arity) {
    GradedCochain c;
    c.arity = arity;
    // choose a target degree shift achievable in the algebra
    int mind = g.degrees[0], maxd = g.degrees[0];
    for (int d : g.degrees) {
        mind = std::min(mind, d);
        maxd = std::max(maxd, d);
    }
    c.degree = rng.uniform(-(maxd - mind), maxd - mind);
    std::vector<size_t> tuple(arity, 0);
    std::function<void(int)> rec = [&](int slot) {
        if (slot == arity) {
            int in_deg = 0;
            for (size_t i : tuple)
                in_deg += g.degrees[i];
            GVec v;
            for (size_t t = 0; t < g.dim(); ++t)
                if (g.degrees[t] == in_deg + c.degree && rng.uniform(0, 2) == 0)
                    gvec_add(v, t, rng.rat());
            if (!v.empty())
                c.table[tuple] = v;
            return;
        }
        for (size_t i = 0; i < g.dim(); ++i) {
            tuple[slot] = i;
            rec(slot + 1);
        }
    };
    rec(0);
    return c;
}

// Encode a polynomial multidifferential operator on Q[x1] into a cochain over
// Q[x]/(x^{D+1}); values falling outside the span are truncated away.
inline GradedCochain encode_diffop(const GradedAlgebra &g, const PolyDiffOp &op) {
    GradedCochain c;
    c.arity = op.arity();
    c.degree = 0;
    size_t d = g.dim();
    std::vector<size_t> tuple(op.arity(), 0);
    std::function<void(int)> rec = [&](int slot) {
        if (slot == c.arity) {
            std::vector<Poly> args;
            for (size_t i : tuple)
                args.push_back(Poly::var(base_var(1), static_cast<uint32_t>(i)));
            Poly v = op.apply(args);
            GVec enc;
            for (const auto &[m, coeff] : v.terms()) {
                uint32_t e = mono_exp(m, base_var(1));
                if (e < d)
                    gvec_add(enc, e, coeff);
            }
            if (!enc.empty())
                c.table[tuple] = enc;
            return;
        }
        for (size_t i = 0; i < d; ++i) {
            tuple[slot] = i;
            rec(slot + 1);
        }
    };
    rec(0);
    return c;
}

} // namespace costar
