#pragma once

#include "costar/rational.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace costar {

// Sparse row over Q, indexed by column.
using SparseRow = std::map<size_t, Rat>;

// Exact linear algebra over Q. Rows are cleared to integers, then eliminated
// fraction-free (Bareiss): pivots divide out exactly at every step.
// Deterministic pivoting: smallest column index, first row.
class QMatrix {
  public:
    QMatrix(size_t rows, size_t cols) : cols_(cols), rows_(rows) {}

    size_t rows() const { return rows_.size(); }
    size_t cols() const { return cols_; }

    void set(size_t r, size_t c, const Rat &v) {
        if (v == 0)
            rows_[r].erase(c);
        else
            rows_[r][c] = v;
    }
    void add(size_t r, size_t c, const Rat &v) {
        auto &row = rows_[r];
        auto it = row.find(c);
        if (it == row.end()) {
            if (v != 0)
                row[c] = v;
        } else {
            it->second += v;
            if (it->second == 0)
                row.erase(it);
        }
    }
    const SparseRow &row(size_t r) const { return rows_[r]; }

    // Row echelon form (in place), returns pivot columns in order.
    std::vector<size_t> echelonize() {
        std::vector<SparseRow> integer_rows;
        integer_rows.reserve(rows_.size());
        for (auto &r : rows_)
            integer_rows.push_back(clear_denominators(r));
        std::vector<size_t> pivots;
        size_t lead_row = 0;
        BigInt prev_pivot = 1;
        for (size_t col = 0; col < cols_ && lead_row < integer_rows.size(); ++col) {
            size_t sel = integer_rows.size();
            for (size_t r = lead_row; r < integer_rows.size(); ++r) {
                if (!integer_rows[r].empty() && integer_rows[r].begin()->first == col) {
                    sel = r;
                    break;
                }
            }
            if (sel == integer_rows.size())
                continue;
            std::swap(integer_rows[lead_row], integer_rows[sel]);
            const BigInt pivot = bigint_of(integer_rows[lead_row].begin()->second);
            for (size_t r = lead_row + 1; r < integer_rows.size(); ++r) {
                auto it = integer_rows[r].find(col);
                if (it == integer_rows[r].end())
                    continue;
                const BigInt factor = bigint_of(it->second);
                // Bareiss step: row_r <- (pivot*row_r - factor*row_lead)/prev_pivot
                SparseRow updated;
                auto a = integer_rows[r].begin();
                auto b = integer_rows[lead_row].begin();
                while (a != integer_rows[r].end() || b != integer_rows[lead_row].end()) {
                    size_t ca = a != integer_rows[r].end() ? a->first : cols_;
                    size_t cb = b != integer_rows[lead_row].end() ? b->first : cols_;
                    size_t cc = std::min(ca, cb);
                    BigInt va = ca == cc ? bigint_of(a->second) : BigInt(0);
                    BigInt vb = cb == cc ? bigint_of(b->second) : BigInt(0);
                    BigInt nv = pivot * va - factor * vb;
                    if (prev_pivot != 1)
                        nv /= prev_pivot; // divides exactly (Bareiss)
                    if (nv != 0)
                        updated[cc] = Rat(nv);
                    if (ca == cc)
                        ++a;
                    if (cb == cc)
                        ++b;
                }
                updated.erase(col);
                integer_rows[r] = std::move(updated);
            }
            prev_pivot = pivot;
            pivots.push_back(col);
            ++lead_row;
        }
        // move zero rows to the bottom, keep echelon order
        std::stable_sort(integer_rows.begin(), integer_rows.end(),
                         [this](const SparseRow &a, const SparseRow &b) {
                             size_t ca = a.empty() ? cols_ : a.begin()->first;
                             size_t cb = b.empty() ? cols_ : b.begin()->first;
                             return ca < cb;
                         });
        rows_ = std::move(integer_rows);
        return pivots;
    }

    size_t rank() {
        auto p = echelonize();
        return p.size();
    }

    // Basis of the (right) kernel: vectors v with M v = 0.
    std::vector<std::vector<Rat>> kernel_basis() {
        auto pivots = echelonize();
        std::vector<bool> is_pivot(cols_, false);
        std::vector<size_t> pivot_row_of(cols_, 0);
        for (size_t i = 0; i < pivots.size(); ++i) {
            is_pivot[pivots[i]] = true;
            pivot_row_of[pivots[i]] = i;
        }
        std::vector<std::vector<Rat>> basis;
        for (size_t free_col = 0; free_col < cols_; ++free_col) {
            if (is_pivot[free_col])
                continue;
            std::vector<Rat> v(cols_, Rat(0));
            v[free_col] = Rat(1);
            // back substitution over the echelon rows
            for (size_t i = pivots.size(); i-- > 0;) {
                size_t pc = pivots[i];
                if (pc > free_col)
                    continue;
                Rat s(0);
                for (const auto &[c, val] : rows_[i])
                    if (c != pc)
                        s += val * v[c];
                v[pc] = -s / rows_[i].at(pc);
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }

  private:
    static BigInt bigint_of(const Rat &r) { return rat_num(r); } // rows already integral

    SparseRow clear_denominators(const SparseRow &r) {
        BigInt lcm = 1;
        for (const auto &[c, v] : r) {
            BigInt d = rat_den(v);
            lcm = lcm / gcd(lcm, d) * d;
        }
        SparseRow out;
        for (const auto &[c, v] : r)
            out[c] = Rat(rat_num(v) * (lcm / rat_den(v)));
        return out;
    }

    size_t cols_;
    std::vector<SparseRow> rows_;
};

// Reduce vector v against a set of echelon rows (sparse, integer). Returns the
// residue; zero residue means v is in the row span.
inline std::vector<Rat> reduce_against(const std::vector<std::vector<Rat>> &echelon,
                                       std::vector<Rat> v) {
    for (const auto &row : echelon) {
        size_t lead = row.size();
        for (size_t c = 0; c < row.size(); ++c)
            if (row[c] != 0) {
                lead = c;
                break;
            }
        if (lead == row.size())
            continue;
        if (v[lead] == 0)
            continue;
        Rat f = v[lead] / row[lead];
        for (size_t c = lead; c < row.size(); ++c)
            v[c] -= f * row[c];
    }
    return v;
}

// Gram-style span utility: maintain an echelonized basis of inserted vectors.
class SpanBasis {
  public:
    explicit SpanBasis(size_t dim) : dim_(dim) {}

    // Returns true if v was independent (and absorbed).
    bool insert(std::vector<Rat> v) {
        v = reduce_against(rows_, std::move(v));
        size_t lead = dim_;
        for (size_t c = 0; c < dim_; ++c)
            if (v[c] != 0) {
                lead = c;
                break;
            }
        if (lead == dim_)
            return false;
        rows_.push_back(std::move(v));
        std::sort(rows_.begin(), rows_.end(), [this](const auto &a, const auto &b) {
            return lead_of(a) < lead_of(b);
        });
        return true;
    }
    bool contains(std::vector<Rat> v) const {
        v = reduce_against(rows_, std::move(v));
        for (const auto &x : v)
            if (x != 0)
                return false;
        return true;
    }
    size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<Rat>> &rows() const { return rows_; }

  private:
    size_t lead_of(const std::vector<Rat> &v) const {
        for (size_t c = 0; c < dim_; ++c)
            if (v[c] != 0)
                return c;
        return dim_;
    }
    size_t dim_;
    std::vector<std::vector<Rat>> rows_;
};

// Solve M x = rhs exactly; returns false if inconsistent.
inline bool solve_linear(QMatrix M, const std::vector<Rat> &rhs, std::vector<Rat> &x) {
    // augment
    size_t n = M.cols();
    QMatrix aug(M.rows(), n + 1);
    for (size_t r = 0; r < M.rows(); ++r) {
        for (const auto &[c, v] : M.row(r))
            aug.set(r, c, v);
        if (rhs[r] != 0)
            aug.set(r, n, rhs[r]);
    }
    auto pivots = aug.echelonize();
    for (size_t i = 0; i < pivots.size(); ++i)
        if (pivots[i] == n)
            return false; // inconsistent
    x.assign(n, Rat(0));
    for (size_t i = pivots.size(); i-- > 0;) {
        size_t pc = pivots[i];
        Rat s(0);
        Rat pivot(0);
        Rat b(0);
        for (const auto &[c, v] : aug.row(i)) {
            if (c == pc)
                pivot = v;
            else if (c == n)
                b = v;
            else
                s += v * x[c];
        }
        x[pc] = (b - s) / pivot;
    }
    return true;
}

} // namespace costar
