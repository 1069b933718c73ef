#pragma once

#include "costar/coalg.hpp"
#include "costar/diffop.hpp"
#include "costar/formality.hpp"
#include "costar/multivector.hpp"
#include "costar/poly.hpp"

#include <json.hpp>

#include <stdexcept>

namespace costar {

using Json = nlohmann::json;

inline Json rat_num_to_json(const BigInt &n) {
    if (n >= std::numeric_limits<int64_t>::min() && n <= std::numeric_limits<int64_t>::max())
        return Json(static_cast<int64_t>(n));
    return Json(n.str());
}

inline BigInt bigint_from_json(const Json &j) {
    if (j.is_number_integer())
        return BigInt(j.get<int64_t>());
    if (j.is_string())
        return BigInt(j.get<std::string>());
    throw std::invalid_argument("expected integer or integer string");
}

// {"monomials":[{"exps":{"x1":2,"y1":1},"num":-3,"den":2}, ...]}
inline Json poly_to_json(const Poly &p) {
    Json monos = Json::array();
    for (const auto &[m, c] : p.terms()) {
        Json exps = Json::object();
        for (const auto &[v, e] : m)
            exps[var_name(v)] = e;
        monos.push_back({{"exps", exps},
                         {"num", rat_num_to_json(rat_num(c))},
                         {"den", rat_num_to_json(rat_den(c))}});
    }
    return Json{{"monomials", monos}};
}

inline Poly poly_from_json(const Json &j) {
    Poly out;
    if (!j.contains("monomials"))
        throw std::invalid_argument("polynomial JSON lacks \"monomials\"");
    for (const auto &mono : j.at("monomials")) {
        Monomial m;
        for (const auto &[name, e] : mono.at("exps").items()) {
            uint32_t exp = e.get<uint32_t>();
            if (exp > 0)
                m.emplace_back(var_from_name(name), exp);
        }
        std::sort(m.begin(), m.end());
        BigInt num = bigint_from_json(mono.at("num"));
        BigInt den = mono.contains("den") ? bigint_from_json(mono.at("den")) : BigInt(1);
        if (den == 0)
            throw std::invalid_argument("zero denominator in polynomial JSON");
        out.add_term(m, Rat(num, den));
    }
    return out;
}


// {"n":2,"l":1,"rank":2,"terms":[{"indices":[1,2],"coeff":<Poly>}]}
inline Json multivec_to_json(const MultiVec &x) {
    Json terms = Json::array();
    for (const auto &[mask, p] : x.terms()) {
        Json idx = Json::array();
        for (int c = 1; c <= x.config().n; ++c)
            if (mask_has(mask, c))
                idx.push_back(c);
        terms.push_back({{"indices", idx}, {"coeff", poly_to_json(p)}});
    }
    return Json{{"n", x.config().n},
                {"l", x.config().l},
                {"rank", x.rank()},
                {"terms", terms}};
}

inline MultiVec multivec_from_json(const Json &j) {
    SpaceConfig cfg(j.at("n").get<int>(), j.at("l").get<int>());
    MultiVec out(cfg, j.at("rank").get<int>());
    for (const auto &t : j.at("terms")) {
        IndexMask m = 0;
        for (const auto &i : t.at("indices"))
            m = mask_add(m, i.get<int>());
        out.add_term(m, poly_from_json(t.at("coeff")));
    }
    return out;
}

// {"n":2,"l":1,"arity":2,"terms":[{"I":[[1],[2]],"coeff":<Poly>}]} where a
// multi-index is the list of differentiated coordinates with multiplicity.
inline Json diffop_to_json(const PolyDiffOp &op) {
    Json terms = Json::array();
    for (const auto &[key, c] : op.terms()) {
        Json idxs = Json::array();
        for (const MultiIdx &mi : key) {
            Json one = Json::array();
            for (int coord = 1; coord <= op.config().n; ++coord)
                for (uint32_t r = 0; r < mi.o[coord - 1]; ++r)
                    one.push_back(coord);
            idxs.push_back(one);
        }
        terms.push_back({{"I", idxs}, {"coeff", poly_to_json(c)}});
    }
    return Json{{"n", op.config().n},
                {"l", op.config().l},
                {"arity", op.arity()},
                {"terms", terms}};
}

inline PolyDiffOp diffop_from_json(const Json &j) {
    SpaceConfig cfg(j.at("n").get<int>(), j.at("l").get<int>());
    PolyDiffOp out(cfg, j.at("arity").get<int>());
    for (const auto &t : j.at("terms")) {
        PolyDiffOp::Key key;
        for (const auto &one : t.at("I")) {
            MultiIdx mi(cfg.n);
            for (const auto &coord : one)
                mi.o[coord.get<int>() - 1] += 1;
            key.push_back(mi);
        }
        out.add_term(key, poly_from_json(t.at("coeff")));
    }
    return out;
}

// {"n":..,"l":..,"order":N,"C":[<PolyDiffOp>...]}
inline Json star_to_json(const StarProduct &s) {
    Json cs = Json::array();
    for (const auto &c : s.C)
        cs.push_back(diffop_to_json(c));
    return Json{{"n", s.cfg.n}, {"l", s.cfg.l}, {"order", s.order}, {"C", cs}};
}

inline StarProduct star_from_json(const Json &j) {
    StarProduct s;
    s.cfg = SpaceConfig(j.at("n").get<int>(), j.at("l").get<int>());
    s.order = j.at("order").get<int>();
    for (const auto &c : j.at("C"))
        s.C.push_back(diffop_from_json(c));
    if (static_cast<int>(s.C.size()) != s.order)
        throw std::invalid_argument("star product order does not match C list");
    return s;
}

inline Json obstruction_to_json(const ObstructionReport &r) {
    return Json{{"order", r.order}, {"class", multivec_to_json(r.cls)}};
}


// {"basis":[{"name":"u","degree":1}, ...]}
inline Json graded_space_to_json(const coalg::GradedSpace &h) {
    Json basis = Json::array();
    for (size_t i = 0; i < h.dim(); ++i)
        basis.push_back({{"name", h.names[i]}, {"degree", h.degrees[i]}});
    return Json{{"basis", basis}};
}

inline coalg::GradedSpace graded_space_from_json(const Json &j) {
    coalg::GradedSpace h;
    for (const auto &b : j.at("basis")) {
        h.names.push_back(b.at("name").get<std::string>());
        h.degrees.push_back(b.at("degree").get<int>());
    }
    return h;
}

} // namespace costar
