#pragma once

#include "costar/poly.hpp"
#include "costar/space.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace costar {

namespace detail {

// Shared container for rank-homogeneous exterior objects: coefficients in the
// Base variables indexed by strictly increasing index sets.
struct ExtTerms {
    SpaceConfig cfg;
    int rank = 0;
    std::map<IndexMask, Poly> terms;

    void add(IndexMask s, const Poly &p) {
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
    bool operator==(const ExtTerms &o) const {
        return cfg == o.cfg && rank == o.rank && terms == o.terms;
    }
};

} // namespace detail

// Multivector field of homogeneous rank k: sum of f_S d/dx_S.
class MultiVec {
  public:
    MultiVec() = default;
    MultiVec(SpaceConfig cfg, int rank) {
        d_.cfg = cfg;
        d_.rank = rank;
        check_rank();
    }
    static MultiVec scalar(SpaceConfig cfg, const Poly &f) {
        MultiVec v(cfg, 0);
        v.add_term(0, f);
        return v;
    }
    static MultiVec basis(SpaceConfig cfg, std::initializer_list<int> coords,
                          const Poly &coeff = Poly(1)) {
        MultiVec v(cfg, static_cast<int>(coords.size()));
        IndexMask m = 0;
        int sign = 1;
        for (int c : coords) {
            if (mask_has(m, c))
                return MultiVec(cfg, static_cast<int>(coords.size()));
            sign *= merge_sign(m, 1u << (c - 1));
            m = mask_add(m, c);
        }
        v.add_term(m, coeff * Rat(sign));
        return v;
    }

    const SpaceConfig &config() const { return d_.cfg; }
    int rank() const { return d_.rank; }
    const std::map<IndexMask, Poly> &terms() const { return d_.terms; }
    bool is_zero() const { return d_.terms.empty(); }
    void add_term(IndexMask s, const Poly &p) {
        if (mask_rank(s) != d_.rank)
            throw std::invalid_argument("index set rank mismatch");
        d_.add(s, p);
    }
    Poly coeff(IndexMask s) const {
        auto it = d_.terms.find(s);
        return it == d_.terms.end() ? Poly() : it->second;
    }

    MultiVec &operator+=(const MultiVec &o) {
        require_same(o);
        for (const auto &[s, p] : o.d_.terms)
            d_.add(s, p);
        return *this;
    }
    MultiVec &operator-=(const MultiVec &o) {
        require_same(o);
        for (const auto &[s, p] : o.d_.terms)
            d_.add(s, -p);
        return *this;
    }
    friend MultiVec operator+(MultiVec a, const MultiVec &b) { return a += b; }
    friend MultiVec operator-(MultiVec a, const MultiVec &b) { return a -= b; }
    friend MultiVec operator*(const MultiVec &a, const Rat &s) {
        MultiVec out(a.config(), a.rank());
        for (const auto &[m, p] : a.terms())
            out.add_term(m, p * s);
        return out;
    }
    friend MultiVec operator*(const Poly &f, const MultiVec &a) {
        MultiVec out(a.config(), a.rank());
        for (const auto &[m, p] : a.terms())
            out.add_term(m, f * p);
        return out;
    }
    friend bool operator==(const MultiVec &a, const MultiVec &b) { return a.d_ == b.d_; }
    friend bool operator!=(const MultiVec &a, const MultiVec &b) { return !(a == b); }

  private:
    void check_rank() {
        // ranks above n (or below 0) index the zero space; the container just
        // stays empty there
        if (d_.rank < -1)
            throw std::invalid_argument("multivector rank out of range");
    }
    void require_same(const MultiVec &o) const {
        if (!(d_.cfg == o.d_.cfg) || d_.rank != o.d_.rank)
            throw std::invalid_argument("multivector config/rank mismatch");
    }
    detail::ExtTerms d_;
};

// Differential form of homogeneous degree k: sum of f_S dx_S.
class DiffForm {
  public:
    DiffForm() = default;
    DiffForm(SpaceConfig cfg, int degree) {
        d_.cfg = cfg;
        d_.rank = degree;
    }
    static DiffForm basis(SpaceConfig cfg, std::initializer_list<int> coords,
                          const Poly &coeff = Poly(1)) {
        DiffForm v(cfg, static_cast<int>(coords.size()));
        IndexMask m = 0;
        int sign = 1;
        for (int c : coords) {
            if (mask_has(m, c))
                return DiffForm(cfg, static_cast<int>(coords.size()));
            sign *= merge_sign(m, 1u << (c - 1));
            m = mask_add(m, c);
        }
        v.add_term(m, coeff * Rat(sign));
        return v;
    }

    const SpaceConfig &config() const { return d_.cfg; }
    int degree() const { return d_.rank; }
    const std::map<IndexMask, Poly> &terms() const { return d_.terms; }
    bool is_zero() const { return d_.terms.empty(); }
    void add_term(IndexMask s, const Poly &p) {
        if (mask_rank(s) != d_.rank)
            throw std::invalid_argument("index set degree mismatch");
        d_.add(s, p);
    }

    DiffForm &operator+=(const DiffForm &o) {
        for (const auto &[s, p] : o.d_.terms)
            d_.add(s, p);
        return *this;
    }
    DiffForm &operator-=(const DiffForm &o) {
        for (const auto &[s, p] : o.d_.terms)
            d_.add(s, -p);
        return *this;
    }
    friend DiffForm operator+(DiffForm a, const DiffForm &b) { return a += b; }
    friend DiffForm operator-(DiffForm a, const DiffForm &b) { return a -= b; }
    friend bool operator==(const DiffForm &a, const DiffForm &b) { return a.d_ == b.d_; }
    friend bool operator!=(const DiffForm &a, const DiffForm &b) { return !(a == b); }

  private:
    detail::ExtTerms d_;
};

// Element of gtilde^k = Gamma(C, Lambda^k(T_C X / TC)): transversal index sets,
// coefficients independent of x''.
class GTildeVec {
  public:
    GTildeVec() = default;
    GTildeVec(SpaceConfig cfg, int rank) {
        d_.cfg = cfg;
        d_.rank = rank;
    }
    const SpaceConfig &config() const { return d_.cfg; }
    int rank() const { return d_.rank; }
    const std::map<IndexMask, Poly> &terms() const { return d_.terms; }
    bool is_zero() const { return d_.terms.empty(); }

    void add_term(IndexMask s, const Poly &p) {
        if (mask_rank(s) != d_.rank)
            throw std::invalid_argument("index set rank mismatch");
        for (int c = 1; c <= d_.cfg.n; ++c)
            if (mask_has(s, c) && !d_.cfg.transversal(c))
                throw std::invalid_argument("gtilde index sets must be transversal");
        for (const Var &v : p.variables())
            if (v.slot == Slot::Base && d_.cfg.transversal(v.coord))
                throw std::invalid_argument("gtilde coefficients must not involve x''");
        d_.add(s, p);
    }

    friend GTildeVec operator+(GTildeVec a, const GTildeVec &b) {
        for (const auto &[s, p] : b.d_.terms)
            a.d_.add(s, p);
        return a;
    }
    friend GTildeVec operator-(GTildeVec a, const GTildeVec &b) {
        for (const auto &[s, p] : b.d_.terms)
            a.d_.add(s, -p);
        return a;
    }
    friend bool operator==(const GTildeVec &a, const GTildeVec &b) { return a.d_ == b.d_; }
    friend bool operator!=(const GTildeVec &a, const GTildeVec &b) { return !(a == b); }

  private:
    detail::ExtTerms d_;
};

// ---------------------------------------------------------------------------
// operations

inline MultiVec wedge(const MultiVec &x, const MultiVec &y) {
    if (!(x.config() == y.config()))
        throw std::invalid_argument("config mismatch");
    MultiVec out(x.config(), x.rank() + y.rank());
    if (x.rank() + y.rank() > x.config().n)
        return out;
    for (const auto &[s, p] : x.terms())
        for (const auto &[t, q] : y.terms()) {
            if (s & t)
                continue;
            out.add_term(s | t, p * q * Rat(merge_sign(s, t)));
        }
    return out;
}

inline DiffForm wedge(const DiffForm &x, const DiffForm &y) {
    DiffForm out(x.config(), x.degree() + y.degree());
    if (x.degree() + y.degree() > x.config().n)
        return out;
    for (const auto &[s, p] : x.terms())
        for (const auto &[t, q] : y.terms()) {
            if (s & t)
                continue;
            out.add_term(s | t, p * q * Rat(merge_sign(s, t)));
        }
    return out;
}

// Schouten bracket, standard convention: extends the Lie bracket of vector
// fields, graded Leibniz in each slot, [X,f] = sum_r (-1)^{k-r} X_r(f) X_{(r)}
// on decomposables with constant frame vectors.
inline MultiVec schouten(const MultiVec &x, const MultiVec &y) {
    if (!(x.config() == y.config()))
        throw std::invalid_argument("config mismatch");
    const int k = x.rank(), l = y.rank();
    MultiVec out(x.config(), k + l - 1); // rank -1 is the zero space

    auto coords_of = [&](IndexMask m) {
        std::vector<int> v;
        for (int c = 1; c <= x.config().n; ++c)
            if (mask_has(m, c))
                v.push_back(c);
        return v;
    };
    for (const auto &[s, f] : x.terms()) {
        auto sc = coords_of(s);
        for (const auto &[t, g] : y.terms()) {
            auto tc = coords_of(t);
            // f dS acting on g: sum_r (-1)^{k-r} f d_{i_r}(g) dS\{i_r} ^ dT
            for (int r = 0; r < k; ++r) {
                Poly dg = derive(g, base_var(sc[r]));
                if (dg.is_zero())
                    continue;
                IndexMask s2 = mask_remove(s, sc[r]);
                if (s2 & t)
                    continue;
                int sgn = ((k - 1 - r) % 2 ? -1 : 1) * merge_sign(s2, t);
                out.add_term(s2 | t, f * dg * Rat(sgn));
            }
            // g dT differentiating f: sum_s (-1)^s d_{j_s}(f) g dS ^ dT\{j_s}
            for (int q = 0; q < l; ++q) {
                Poly df = derive(f, base_var(tc[q]));
                if (df.is_zero())
                    continue;
                IndexMask t2 = mask_remove(t, tc[q]);
                if (s & t2)
                    continue;
                int sgn = ((q + 1) % 2 ? -1 : 1) * merge_sign(s, t2);
                out.add_term(s | t2, df * g * Rat(sgn));
            }
        }
    }
    return out;
}

// Interior product i(x1^...^xk) = i(x1)...i(xk); i(f)alpha = f alpha.
inline DiffForm interior(const MultiVec &x, const DiffForm &alpha) {
    if (!(x.config() == alpha.config()))
        throw std::invalid_argument("config mismatch");
    const int k = x.rank();
    DiffForm out(x.config(), alpha.degree() - k);
    if (alpha.degree() < k)
        return out;
    auto contract_one = [&](int coord, IndexMask s, int &sign_out) -> IndexMask {
        sign_out = mask_position(s, coord) % 2 ? -1 : 1;
        return mask_remove(s, coord);
    };
    for (const auto &[s, f] : x.terms()) {
        std::vector<int> coords;
        for (int c = x.config().n; c >= 1; --c)
            if (mask_has(s, c))
                coords.push_back(c); // apply i(x_k) first, i.e. innermost last coordinate
        // i(x_{c1}^...^x_{ck}) = i(x_{c1}) o ... o i(x_{ck}); iterate right to left.
        for (const auto &[t, g] : alpha.terms()) {
            IndexMask cur = t;
            int sign = 1;
            bool dead = false;
            for (int c : coords) { // c runs x_k, x_{k-1}, ..., x_1
                if (!mask_has(cur, c)) {
                    dead = true;
                    break;
                }
                int s1;
                cur = contract_one(c, cur, s1);
                sign *= s1;
            }
            if (!dead)
                out.add_term(cur, f * g * Rat(sign));
        }
    }
    return out;
}

inline DiffForm de_rham(const DiffForm &alpha) {
    DiffForm out(alpha.config(), alpha.degree() + 1);
    if (alpha.degree() + 1 > alpha.config().n)
        return out;
    for (const auto &[s, f] : alpha.terms())
        for (int c = 1; c <= alpha.config().n; ++c) {
            if (mask_has(s, c))
                continue;
            Poly df = derive(f, base_var(c));
            if (df.is_zero())
                continue;
            out.add_term(mask_add(s, c), df * Rat(merge_sign(1u << (c - 1), s)));
        }
    return out;
}

// L(x) = [i(x), d] (graded commutator; i(x) has degree -rank(x)).
inline DiffForm lie_derivative(const MultiVec &x, const DiffForm &alpha) {
    DiffForm first = interior(x, de_rham(alpha));
    DiffForm second = de_rham(interior(x, alpha));
    int sign = x.rank() % 2 ? -1 : 1; // -(-1)^{-k*1}
    DiffForm out(alpha.config(), alpha.degree() + 1 - x.rank());
    for (const auto &[s, p] : first.terms())
        out.add_term(s, p);
    for (const auto &[s, p] : second.terms())
        out.add_term(s, p * Rat(-sign));
    return out;
}

// Membership in the vanishing ideal I = <x''>: the x''-independent part is 0.
inline bool in_ideal(const Poly &p, const SpaceConfig &cfg) {
    std::map<Var, Poly> kill;
    for (int c = cfg.n - cfg.l + 1; c <= cfg.n; ++c)
        kill[base_var(c)] = Poly();
    return substitute(p, kill).is_zero();
}

inline Poly restrict_to_c(const Poly &p, const SpaceConfig &cfg) {
    std::map<Var, Poly> kill;
    for (int c = cfg.n - cfg.l + 1; c <= cfg.n; ++c)
        kill[base_var(c)] = Poly();
    return substitute(p, kill);
}

// Adaptedness test (Def. of compatible multivectors, coefficient criterion):
// every all-transversal index set must carry a coefficient in I.
inline bool is_adapted_mv(const MultiVec &x) {
    const SpaceConfig &cfg = x.config();
    IndexMask transversal = 0;
    for (int c = cfg.n - cfg.l + 1; c <= cfg.n; ++c)
        transversal = mask_add(transversal, c);
    for (const auto &[s, p] : x.terms()) {
        if ((s & ~transversal) == 0 && !in_ideal(p, cfg))
            return false;
    }
    return true;
}

// Psi: keep all-transversal index sets, restrict coefficients to C.
inline GTildeVec psi_project(const MultiVec &x) {
    const SpaceConfig &cfg = x.config();
    GTildeVec out(cfg, x.rank());
    IndexMask transversal = 0;
    for (int c = cfg.n - cfg.l + 1; c <= cfg.n; ++c)
        transversal = mask_add(transversal, c);
    for (const auto &[s, p] : x.terms()) {
        if ((s & ~transversal) != 0)
            continue;
        Poly r = restrict_to_c(p, cfg);
        if (!r.is_zero()) {
            GTildeVec one(cfg, x.rank());
            one.add_term(s, r);
            out = out + one;
        }
    }
    return out;
}

// Flat-case section of Psi: coefficients constant in x''.
inline MultiVec embed_gtilde(const GTildeVec &xi) {
    MultiVec out(xi.config(), xi.rank());
    for (const auto &[s, p] : xi.terms())
        out.add_term(s, p);
    return out;
}

} // namespace costar
