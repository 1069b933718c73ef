#pragma once

#include "costar/rational.hpp"
#include "costar/variables.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace costar {

// Monomial: exponent vector as a sorted (Var, exp>0) list.
using Monomial = std::vector<std::pair<Var, uint32_t>>;

inline uint32_t mono_exp(const Monomial &m, const Var &v) {
    for (const auto &[var, e] : m)
        if (var == v)
            return e;
    return 0;
}

inline Monomial mono_mul(const Monomial &a, const Monomial &b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first)
            out.push_back(a[i++]);
        else if (b[j].first < a[i].first)
            out.push_back(b[j++]);
        else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
}

inline uint32_t mono_total_degree(const Monomial &m) {
    uint32_t d = 0;
    for (const auto &[v, e] : m)
        d += e;
    return d;
}

// Sparse exact polynomial over Q. Canonical form: map ordered by monomial,
// no zero coefficients stored.
class Poly {
  public:
    using Terms = std::map<Monomial, Rat>;

    Poly() = default;
    explicit Poly(const Rat &c) {
        if (c != 0)
            terms_[Monomial{}] = c;
    }
    Poly(long long c) : Poly(Rat(c)) {}
    explicit Poly(const Var &v) { terms_[Monomial{{v, 1}}] = Rat(1); }

    static Poly monomial(const Monomial &m, const Rat &c) {
        Poly p;
        if (c != 0)
            p.terms_[m] = c;
        return p;
    }
    static Poly var(const Var &v, uint32_t e = 1) {
        if (e == 0)
            return Poly(Rat(1));
        return monomial(Monomial{{v, e}}, Rat(1));
    }

    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rat constant_term() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    friend bool operator==(const Poly &a, const Poly &b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly &a, const Poly &b) { return !(a == b); }
    friend bool operator<(const Poly &a, const Poly &b) { return a.terms_ < b.terms_; }

    void add_term(const Monomial &m, const Rat &c) {
        if (c == 0)
            return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
            return;
        }
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }

    Poly &operator+=(const Poly &o) {
        for (const auto &[m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    Poly &operator-=(const Poly &o) {
        for (const auto &[m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
    friend Poly operator-(const Poly &a) {
        Poly out;
        for (const auto &[m, c] : a.terms_)
            out.terms_[m] = -c;
        return out;
    }

    friend Poly operator*(const Poly &a, const Poly &b) {
        Poly out;
        for (const auto &[ma, ca] : a.terms_)
            for (const auto &[mb, cb] : b.terms_)
                out.add_term(mono_mul(ma, mb), ca * cb);
        return out;
    }
    Poly &operator*=(const Poly &o) { return *this = *this * o; }

    friend Poly operator*(const Poly &a, const Rat &s) {
        Poly out;
        if (s == 0)
            return out;
        for (const auto &[m, c] : a.terms_)
            out.terms_[m] = c * s;
        return out;
    }
    friend Poly operator*(const Rat &s, const Poly &a) { return a * s; }
    Poly &operator*=(const Rat &s) { return *this = *this * s; }

    Poly pow(uint32_t e) const {
        Poly out(Rat(1));
        for (uint32_t i = 0; i < e; ++i)
            out = out * (*this);
        return out;
    }

    uint32_t total_degree() const {
        uint32_t d = 0;
        for (const auto &[m, c] : terms_)
            d = std::max(d, mono_total_degree(m));
        return d;
    }
    uint32_t degree_in(const Var &v) const {
        uint32_t d = 0;
        for (const auto &[m, c] : terms_)
            d = std::max(d, mono_exp(m, v));
        return d;
    }
    bool depends_on(const Var &v) const { return degree_in(v) > 0; }
    bool depends_on_slot(Slot s) const {
        for (const auto &[m, c] : terms_)
            for (const auto &[var, e] : m)
                if (var.slot == s)
                    return true;
        return false;
    }
    std::vector<Var> variables() const {
        std::vector<Var> vs;
        for (const auto &[m, c] : terms_)
            for (const auto &[var, e] : m)
                if (std::find(vs.begin(), vs.end(), var) == vs.end())
                    vs.push_back(var);
        std::sort(vs.begin(), vs.end());
        return vs;
    }

    std::string str() const;

  private:
    Terms terms_;
};

inline Poly derive(const Poly &p, const Var &v) {
    Poly out;
    for (const auto &[m, c] : p.terms()) {
        uint32_t e = mono_exp(m, v);
        if (e == 0)
            continue;
        Monomial m2;
        m2.reserve(m.size());
        for (const auto &[var, exp] : m) {
            if (var == v) {
                if (exp > 1)
                    m2.emplace_back(var, exp - 1);
            } else
                m2.emplace_back(var, exp);
        }
        out.add_term(m2, c * Rat(e));
    }
    return out;
}

inline Poly derive(const Poly &p, const Var &v, uint32_t times) {
    Poly out = p;
    for (uint32_t i = 0; i < times && !out.is_zero(); ++i)
        out = derive(out, v);
    return out;
}

// Simultaneous substitution. Variables not bound are left alone.
inline Poly substitute(const Poly &p, const std::map<Var, Poly> &bindings) {
    Poly out;
    for (const auto &[m, c] : p.terms()) {
        Poly term(c);
        Monomial untouched;
        for (const auto &[var, e] : m) {
            auto it = bindings.find(var);
            if (it == bindings.end())
                untouched.emplace_back(var, e);
            else
                term *= it->second.pow(e);
        }
        out += term * Poly::monomial(untouched, Rat(1));
    }
    return out;
}

inline Poly substitute(const Poly &p, const Var &v, const Poly &value) {
    return substitute(p, std::map<Var, Poly>{{v, value}});
}

// Definite integral in v between polynomial bounds not containing v.
inline Poly integrate(const Poly &p, const Var &v, const Poly &lo, const Poly &hi) {
    if (lo.depends_on(v) || hi.depends_on(v))
        throw std::invalid_argument("integration bounds contain the integration variable");
    Poly anti;
    for (const auto &[m, c] : p.terms()) {
        uint32_t e = mono_exp(m, v);
        Monomial m2;
        bool placed = false;
        for (const auto &[var, exp] : m) {
            if (var == v) {
                m2.emplace_back(var, exp + 1);
                placed = true;
            } else
                m2.emplace_back(var, exp);
        }
        if (!placed) {
            m2.emplace_back(v, 1);
            std::sort(m2.begin(), m2.end());
        }
        anti.add_term(m2, c / Rat(e + 1));
    }
    return substitute(anti, v, hi) - substitute(anti, v, lo);
}

inline std::string Poly::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        Rat ac = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0)
                os << "-";
            first = false;
        } else
            os << (c < 0 ? " - " : " + ");
        bool coeff_one = (ac == 1) && !m.empty();
        if (!coeff_one)
            os << rat_to_string(ac);
        bool need_star = !coeff_one;
        for (const auto &[var, e] : m) {
            if (need_star)
                os << "*";
            os << var_name(var);
            if (e > 1)
                os << "^" << e;
            need_star = true;
        }
    }
    return os.str();
}

// Parser for the canonical text form, e.g. "-3/2*x1^2*y1 + x2".
inline Poly poly_from_string(const std::string &s) {
    Poly out;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    };
    skip_ws();
    if (i == s.size())
        return out;
    bool expect_term = true;
    int sign = 1;
    while (i < s.size()) {
        skip_ws();
        if (i == s.size())
            break;
        if (s[i] == '+' || s[i] == '-') {
            // unicode minus is normalized by callers; ASCII only here
            if (!expect_term)
                sign = 1;
            if (s[i] == '-')
                sign = -sign;
            ++i;
            expect_term = true;
            continue;
        }
        // one term: [rational][*var[^e]]*
        Rat coeff(1);
        Monomial mono;
        bool saw_digit_coeff = false;
        skip_ws();
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            std::string numstr = s.substr(i, j - i);
            i = j;
            skip_ws();
            if (i < s.size() && s[i] == '/') {
                ++i;
                skip_ws();
                size_t k = i;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])))
                    ++k;
                if (k == i)
                    throw std::invalid_argument("bad rational in polynomial: " + s);
                coeff = rat_from_string(numstr + "/" + s.substr(i, k - i));
                i = k;
            } else
                coeff = rat_from_string(numstr);
            saw_digit_coeff = true;
        }
        bool more = true;
        while (more) {
            skip_ws();
            if (i < s.size() && s[i] == '*') {
                ++i;
                skip_ws();
            } else if (saw_digit_coeff || !mono.empty()) {
                // factors must be '*'-separated after the first
                if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i])))
                    throw std::invalid_argument("missing '*' between factors: " + s);
                more = false;
                continue;
            }
            if (i >= s.size() || !std::isalpha(static_cast<unsigned char>(s[i]))) {
                if (mono.empty() && !saw_digit_coeff)
                    throw std::invalid_argument("empty term in polynomial: " + s);
                more = false;
                continue;
            }
            size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            Var v = var_from_name(s.substr(i, j - i));
            i = j;
            uint32_t e = 1;
            skip_ws();
            if (i < s.size() && s[i] == '^') {
                ++i;
                skip_ws();
                size_t k = i;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])))
                    ++k;
                if (k == i)
                    throw std::invalid_argument("bad exponent: " + s);
                e = static_cast<uint32_t>(std::stoul(s.substr(i, k - i)));
                i = k;
            }
            Monomial single{{v, e}};
            mono = mono_mul(mono, single);
        }
        out.add_term(mono, coeff * Rat(sign));
        sign = 1;
        expect_term = false;
    }
    return out;
}

} // namespace costar
