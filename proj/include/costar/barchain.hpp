#pragma once

#include "costar/multivector.hpp"
#include "costar/poly.hpp"
#include "costar/space.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace costar {

// Element of CH^k = polynomial functions of (a, x_1..x_k, b), each slot of
// width n. Aux slots may appear as spectator parameters (s_H recursion).
struct BarChain {
    SpaceConfig cfg;
    int k = 0;
    Poly value;

    BarChain() = default;
    BarChain(SpaceConfig c, int arity, Poly v = Poly()) : cfg(c), k(arity), value(std::move(v)) {}

    friend bool operator==(const BarChain &a, const BarChain &b) {
        return a.cfg == b.cfg && a.k == b.k && a.value == b.value;
    }
};

// Element of CK^k = A^e (x) Lambda^k E^*: coefficients are polynomials in the
// (a, b) slots, basis covectors e^S.
struct KoszulChain {
    SpaceConfig cfg;
    int k = 0;
    std::map<IndexMask, Poly> terms;

    KoszulChain() = default;
    KoszulChain(SpaceConfig c, int deg) : cfg(c), k(deg) {}

    void add(IndexMask s, const Poly &p) {
        if (mask_rank(s) != k)
            throw std::invalid_argument("Koszul term degree mismatch");
        if (p.is_zero())
            return;
        auto it = terms.find(s);
        if (it == terms.end()) {
            terms[s] = p;
            return;
        }
        it->second += p;
        if (it->second.is_zero())
            terms.erase(it);
    }
    friend bool operator==(const KoszulChain &a, const KoszulChain &b) {
        return a.cfg == b.cfg && a.k == b.k && a.terms == b.terms;
    }
    friend KoszulChain operator-(KoszulChain a, const KoszulChain &b) {
        for (const auto &[s, p] : b.terms)
            a.add(s, -p);
        return a;
    }
    friend KoszulChain operator+(KoszulChain a, const KoszulChain &b) {
        for (const auto &[s, p] : b.terms)
            a.add(s, p);
        return a;
    }
    bool is_zero() const { return terms.empty(); }
};

namespace barops {

// slot -> slot substitution helpers (each of width n)
inline std::map<Var, Poly> slot_subst(const SpaceConfig &cfg,
                                      const std::vector<std::pair<Var, Var>> &pairs) {
    std::map<Var, Poly> m;
    for (auto [from, to] : pairs)
        m[from] = Poly::var(to);
    return m;
}

inline void map_slot(std::map<Var, Poly> &m, const SpaceConfig &cfg, Slot from_slot,
                     int from_idx, Slot to_slot, int to_idx) {
    for (int c = 1; c <= cfg.n; ++c) {
        Var from{from_slot, static_cast<uint16_t>(from_idx), static_cast<uint16_t>(c)};
        Var to{to_slot, static_cast<uint16_t>(to_idx), static_cast<uint16_t>(c)};
        m[from] = Poly::var(to);
    }
}

} // namespace barops

// Hochschild boundary of the bar complex:
// (del_H Phi)(a,x_1..x_{k-1},b) = Phi(a,a,x_1,..) + sum (-1)^r Phi(..,x_r,x_r,..)
//                                 + (-1)^k Phi(..,b,b).
inline BarChain del_H(const BarChain &phi) {
    if (phi.k < 1)
        throw std::invalid_argument("del_H needs k >= 1");
    const SpaceConfig &cfg = phi.cfg;
    const int k = phi.k;
    BarChain out(cfg, k - 1);
    for (int j = 0; j <= k; ++j) {
        std::map<Var, Poly> m;
        // argument list (a, y_1..y_{k}, b) with y_i read from the new slots,
        // duplicating position j.
        for (int i = 1; i <= k; ++i) {
            Slot to_slot;
            int to_idx = 0;
            int pos = (i <= j) ? i : i - 1; // new argument index feeding old slot i
            if (i <= j)
                pos = i;
            else
                pos = i - 1;
            if (j == 0) {
                // (a, a, x_1, .., x_{k-1}, b): old x_1 <- a, old x_i <- x_{i-1}
                if (i == 1) {
                    to_slot = Slot::A;
                    to_idx = 0;
                } else {
                    to_slot = Slot::X;
                    to_idx = i - 1;
                }
            } else if (j == k) {
                // (a, x_1..x_{k-1}, b, b): old x_k <- b
                if (i == k) {
                    to_slot = Slot::B;
                    to_idx = 0;
                } else {
                    to_slot = Slot::X;
                    to_idx = i;
                }
            } else {
                // duplicate x_j: old x_i <- x_i (i<=j), old x_{j+1} <- x_j,
                // old x_i <- x_{i-1} (i>j+1)
                to_slot = Slot::X;
                if (i <= j)
                    to_idx = i;
                else if (i == j + 1)
                    to_idx = j;
                else
                    to_idx = i - 1;
            }
            barops::map_slot(m, cfg, Slot::X, i, to_slot, to_idx);
        }
        Poly term = substitute(phi.value, m);
        out.value += (j % 2) ? -term : term;
    }
    return out;
}

// Augmentation CH^0 (or CK^0) -> A: set b = a, read off a as the base point.
inline Poly augment(const SpaceConfig &cfg, const Poly &p) {
    std::map<Var, Poly> m;
    for (int c = 1; c <= cfg.n; ++c) {
        m[a_var(c)] = Poly::var(base_var(c));
        m[b_var(c)] = Poly::var(base_var(c));
    }
    return substitute(p, m);
}

// h_H^{-1}: A -> CH^0, f |-> f(a).
inline Poly coaugment(const SpaceConfig &cfg, const Poly &f) {
    std::map<Var, Poly> m;
    for (int c = 1; c <= cfg.n; ++c)
        m[base_var(c)] = Poly::var(a_var(c));
    return substitute(f, m);
}

// Bar homotopy h_H^k: (h Phi)(a,x_1..x_{k+1},b) = (-1)^{k+1} Phi(a,x_1..x_k,x_{k+1}).
inline BarChain h_H(const BarChain &phi) {
    const SpaceConfig &cfg = phi.cfg;
    const int k = phi.k;
    BarChain out(cfg, k + 1);
    std::map<Var, Poly> m;
    barops::map_slot(m, cfg, Slot::B, 0, Slot::X, k + 1);
    Poly v = substitute(phi.value, m);
    out.value = ((k + 1) % 2) ? -v : v;
    return out;
}

// Koszul boundary: contraction with xi(a,b) = a - b.
inline KoszulChain del_K(const KoszulChain &w) {
    if (w.k < 1)
        throw std::invalid_argument("del_K needs k >= 1");
    const SpaceConfig &cfg = w.cfg;
    KoszulChain out(cfg, w.k - 1);
    for (const auto &[s, p] : w.terms) {
        int pos = 0;
        for (int c = 1; c <= cfg.n; ++c) {
            if (!mask_has(s, c))
                continue;
            Poly factor = Poly::var(a_var(c)) - Poly::var(b_var(c));
            Rat sgn = (pos % 2) ? Rat(-1) : Rat(1);
            out.add(mask_remove(s, c), p * factor * sgn);
            ++pos;
        }
    }
    return out;
}

// Koszul homotopy:
// (h_K w)(a,b) = - sum_j e^j ^ Int_0^1 t^k (d w / d b_j)(a, t b + (1-t) a) dt.
inline KoszulChain h_K(const KoszulChain &w) {
    const SpaceConfig &cfg = w.cfg;
    const int k = w.k;
    KoszulChain out(cfg, k + 1);
    const Var t = t_var(1);
    std::map<Var, Poly> seg;
    for (int c = 1; c <= cfg.n; ++c)
        seg[b_var(c)] = Poly::var(t) * Poly::var(b_var(c)) +
                        (Poly(1) - Poly::var(t)) * Poly::var(a_var(c));
    for (const auto &[s, p] : w.terms) {
        for (int j = 1; j <= cfg.n; ++j) {
            if (mask_has(s, j))
                continue;
            Poly dp = derive(p, b_var(j));
            if (dp.is_zero())
                continue;
            Poly integrand = substitute(dp, seg) * Poly::var(t).pow(k);
            Poly integral = integrate(integrand, t, Poly(0), Poly(1));
            int sgn = merge_sign(1u << (j - 1), s);
            out.add(mask_add(s, j), integral * Rat(-sgn));
        }
    }
    return out;
}

// Chain map F: CK -> CH, (F w)(a,x_1..x_k,b) = w(a,b)(x_1-a,...,x_k-a).
inline BarChain to_bar(const KoszulChain &w) {
    const SpaceConfig &cfg = w.cfg;
    const int k = w.k;
    BarChain out(cfg, k);
    for (const auto &[s, p] : w.terms) {
        std::vector<int> coords;
        for (int c = 1; c <= cfg.n; ++c)
            if (mask_has(s, c))
                coords.push_back(c);
        // e^{i_1}^..^e^{i_k} evaluated on (v_1..v_k) = det[ (v_c)_{i_r} ]
        // expand over permutations
        std::vector<int> perm(k);
        for (int i = 0; i < k; ++i)
            perm[i] = i;
        do {
            int sgn = 1;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j)
                    if (perm[i] > perm[j])
                        sgn = -sgn;
            Poly prod = Poly(Rat(sgn));
            for (int r = 0; r < k; ++r) {
                int coord = coords[r];
                int slot = perm[r] + 1; // argument v_{slot}
                prod *= Poly::var(x_var(slot, coord)) - Poly::var(a_var(coord));
            }
            out.value += p * prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

// Chain map G: CH -> CK via iterated simplex integrals of mixed first partials
// along the segment t a + (1-t) b.
inline KoszulChain to_koszul(const BarChain &phi) {
    const SpaceConfig &cfg = phi.cfg;
    const int k = phi.k;
    KoszulChain out(cfg, k);
    if (k == 0) {
        out.add(0, phi.value);
        return out;
    }
    std::vector<int> tuple(k, 1);
    while (true) {
        // skip tuples with repeated coordinates (wedge kills them)
        bool repeat = false;
        for (int i = 0; i < k && !repeat; ++i)
            for (int j = i + 1; j < k; ++j)
                if (tuple[i] == tuple[j]) {
                    repeat = true;
                    break;
                }
        if (!repeat) {
            Poly integrand = phi.value;
            for (int r = 0; r < k; ++r)
                integrand = derive(integrand, x_var(r + 1, tuple[r]));
            if (!integrand.is_zero()) {
                std::map<Var, Poly> seg;
                for (int r = 1; r <= k; ++r)
                    for (int c = 1; c <= cfg.n; ++c)
                        seg[x_var(r, c)] = Poly::var(t_var(r)) * Poly::var(a_var(c)) +
                                           (Poly(1) - Poly::var(t_var(r))) * Poly::var(b_var(c));
                integrand = substitute(integrand, seg);
                // innermost integral first: t_k from 0 to t_{k-1}, ..., t_1 from 0 to 1
                for (int r = k; r >= 1; --r) {
                    Poly lo(0);
                    Poly hi = (r == 1) ? Poly(1) : Poly::var(t_var(r - 1));
                    integrand = integrate(integrand, t_var(r), lo, hi);
                }
                // wedge e^{tuple[0]} ^ ... ^ e^{tuple[k-1]} into canonical basis
                IndexMask m = 0;
                int sgn = 1;
                for (int r = 0; r < k; ++r) {
                    IndexMask one = 1u << (tuple[r] - 1);
                    sgn *= merge_sign(m, one);
                    // merge_sign(m,one): moving e^{c} past the part of m above c
                    // -- but we are appending on the right; sign is the count of
                    // already-present indices greater than c
                    m |= one;
                }
                if (!integrand.is_zero())
                    out.add(m, integrand * Rat(sgn));
            }
        }
        int pos = k - 1;
        while (pos >= 0 && tuple[pos] == cfg.n) {
            tuple[pos] = 1;
            --pos;
        }
        if (pos < 0)
            break;
        ++tuple[pos];
    }
    return out;
}

inline BarChain theta(const BarChain &phi) { return to_bar(to_koszul(phi)); }

namespace detail {

// s_H recursion with explicit spectator slots Aux(2d-1) = a', Aux(2d) = b'.
inline BarChain s_H_impl(const BarChain &phi, int depth);

inline BarChain id_minus_theta(const BarChain &phi) {
    BarChain th = theta(phi);
    BarChain out(phi.cfg, phi.k);
    out.value = phi.value - th.value;
    return out;
}

inline BarChain s_H_impl(const BarChain &phi, int depth) {
    const SpaceConfig &cfg = phi.cfg;
    const int k = phi.k;
    if (k <= 0)
        return BarChain(cfg, k + 1); // s_H^0 = 0
    if (k == 1) {
        // explicit formula:
        // (s Phi)(a,x1,x2,b) = Phi(a,x1,b)
        //   - sum_i (x1_i - a_i) Int_0^1 dPhi/dx1_i (a, t a + (1-t) x2, b) dt
        BarChain out(cfg, 2);
        out.value = phi.value; // Phi(a,x1,b), x2 absent
        const Var t = t_var(1);
        std::map<Var, Poly> seg;
        for (int c = 1; c <= cfg.n; ++c)
            seg[x_var(1, c)] = Poly::var(t) * Poly::var(a_var(c)) +
                               (Poly(1) - Poly::var(t)) * Poly::var(x_var(2, c));
        for (int c = 1; c <= cfg.n; ++c) {
            Poly dphi = derive(phi.value, x_var(1, c));
            if (dphi.is_zero())
                continue;
            Poly integrand = substitute(dphi, seg);
            Poly integral = integrate(integrand, t, Poly(0), Poly(1));
            out.value -= (Poly::var(x_var(1, c)) - Poly::var(a_var(c))) * integral;
        }
        return out;
    }
    // recursion: s^{k} Phi = h_H( (id - Theta - s^{k-1} del_H) Phi~ )|_{a'=a, b'=b}
    // with Phi~(a', a, x_1..x_k, b, b') = Phi(a', x_1..x_k, b').
    const int aux_a = 2 * depth - 1, aux_b = 2 * depth;
    std::map<Var, Poly> to_aux;
    barops::map_slot(to_aux, cfg, Slot::A, 0, Slot::Aux, aux_a);
    barops::map_slot(to_aux, cfg, Slot::B, 0, Slot::Aux, aux_b);
    BarChain phi_tilde(cfg, k, substitute(phi.value, to_aux));
    BarChain u = id_minus_theta(phi_tilde);
    BarChain sd = s_H_impl(del_H(phi_tilde), depth + 1);
    u.value -= sd.value;
    BarChain v = h_H(u);
    std::map<Var, Poly> back;
    barops::map_slot(back, cfg, Slot::Aux, aux_a, Slot::A, 0);
    barops::map_slot(back, cfg, Slot::Aux, aux_b, Slot::B, 0);
    v.value = substitute(v.value, back);
    return v;
}

} // namespace detail

// Simplified homotopy: id - Theta = del_H s_H + s_H del_H, s_H^0 = 0.
inline BarChain s_H(const BarChain &phi) { return detail::s_H_impl(phi, 1); }

} // namespace costar
