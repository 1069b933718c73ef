#pragma once

#include "costar/diffop.hpp"
#include "costar/multivector.hpp"
#include "costar/poly.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace costar {

// Deterministic generators for randomized identity suites.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    int uniform(int lo, int hi) { // inclusive
        std::uniform_int_distribution<int> d(lo, hi);
        return d(gen_);
    }

    Rat rat(int num_range = 4) {
        int n = uniform(-num_range, num_range);
        int d = uniform(1, 3);
        return Rat(n, d);
    }
    Rat nonzero_rat(int num_range = 4) {
        Rat r = rat(num_range);
        while (r == 0)
            r = rat(num_range);
        return r;
    }

    Poly poly(const SpaceConfig &cfg, uint32_t max_deg, int terms = 3) {
        Poly p;
        for (int t = 0; t < terms; ++t) {
            Monomial m;
            uint32_t deg = static_cast<uint32_t>(uniform(0, static_cast<int>(max_deg)));
            for (uint32_t i = 0; i < deg; ++i) {
                Var v = base_var(uniform(1, cfg.n));
                m = mono_mul(m, Monomial{{v, 1}});
            }
            p.add_term(m, rat());
        }
        return p;
    }

    // Polynomial in the ideal I = <x''>.
    Poly ideal_poly(const SpaceConfig &cfg, uint32_t max_deg, int terms = 3) {
        if (cfg.l == 0)
            return Poly();
        Poly p = poly(cfg, max_deg > 0 ? max_deg - 1 : 0, terms);
        Var xpp = base_var(uniform(cfg.n - cfg.l + 1, cfg.n));
        return p * Poly::var(xpp);
    }

    MultiVec multivec(const SpaceConfig &cfg, int rank, uint32_t max_deg, int terms = 2) {
        rank = std::min(rank, cfg.n);
        MultiVec v(cfg, rank);
        for (int t = 0; t < terms; ++t) {
            IndexMask m = 0;
            while (mask_rank(m) < rank)
                m = mask_add(m, uniform(1, cfg.n));
            v.add_term(m, poly(cfg, max_deg, 2));
        }
        return v;
    }

    MultiVec adapted_multivec(const SpaceConfig &cfg, int rank, uint32_t max_deg,
                              int terms = 2) {
        rank = std::min(rank, cfg.n);
        MultiVec v(cfg, rank);
        IndexMask transversal = 0;
        for (int c = cfg.n - cfg.l + 1; c <= cfg.n; ++c)
            transversal = mask_add(transversal, c);
        for (int t = 0; t < terms; ++t) {
            IndexMask m = 0;
            while (mask_rank(m) < rank)
                m = mask_add(m, uniform(1, cfg.n));
            Poly c = ((m & ~transversal) == 0 && rank >= 0)
                         ? ideal_poly(cfg, max_deg)
                         : poly(cfg, max_deg, 2);
            if ((m & ~transversal) != 0)
                c = poly(cfg, max_deg, 2);
            v.add_term(m, c);
        }
        return v;
    }

    MultiIdx multi_idx(const SpaceConfig &cfg, uint32_t max_order) {
        MultiIdx m(cfg.n);
        uint32_t total = static_cast<uint32_t>(uniform(0, static_cast<int>(max_order)));
        for (uint32_t i = 0; i < total; ++i)
            m.o[uniform(1, cfg.n) - 1] += 1;
        return m;
    }

    PolyDiffOp diffop(const SpaceConfig &cfg, int arity, uint32_t max_order,
                      uint32_t max_deg, int terms = 2) {
        PolyDiffOp op(cfg, arity);
        for (int t = 0; t < terms; ++t) {
            PolyDiffOp::Key key;
            for (int i = 0; i < arity; ++i)
                key.push_back(multi_idx(cfg, max_order));
            op.add_term(key, poly(cfg, max_deg, 2));
        }
        return op;
    }

    PolyDiffOp adapted_diffop(const SpaceConfig &cfg, int arity, uint32_t max_order,
                              uint32_t max_deg, int terms = 2) {
        PolyDiffOp op(cfg, arity);
        for (int t = 0; t < terms; ++t) {
            PolyDiffOp::Key key;
            for (int i = 0; i < arity; ++i)
                key.push_back(multi_idx(cfg, max_order));
            Poly c;
            if (arity == 0 || key.back().has_transversal(cfg))
                c = ideal_poly(cfg, max_deg);
            else
                c = poly(cfg, max_deg, 2);
            op.add_term(key, c);
        }
        return op;
    }

    std::mt19937_64 &raw() { return gen_; }

  private:
    std::mt19937_64 gen_;
};

} // namespace costar
