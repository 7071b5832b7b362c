#pragma once

// Exact linear algebra over the Scalar field: fraction-free (Bareiss)
// elimination, rectangular solving with nullspace extraction, and an
// incremental span basis for sparse vectors.

#include "vxa/scalar.hpp"

#include <vector>

namespace vxa {

using Matrix = std::vector<std::vector<Scalar>>;

struct LinSolveResult {
    bool consistent = false;
    std::vector<Scalar> solution;                // particular solution (free vars = 0)
    std::vector<std::vector<Scalar>> nullspace;  // basis of homogeneous solutions
    int rank = 0;
};

// Solve A x = b exactly (A rectangular).
LinSolveResult solve_linear(const Matrix& A, const std::vector<Scalar>& b);

Scalar det_bareiss(Matrix A);
Scalar det_cofactor(const Matrix& A);

// Incremental span of sparse vectors keyed by an ordered type, kept in
// reduced row echelon form (each row's support avoids all other pivots).
template <class Key>
class SpanBasis {
  public:
    using Vec = std::map<Key, Scalar>;

    // Reduce v against the basis; returns the residual.
    Vec reduce(Vec v) const {
        for (const auto& [pivot, row] : rows_) {
            auto it = v.find(pivot);
            if (it == v.end()) continue;
            subtract(v, it->second, row);
        }
        return v;
    }

    // Returns true if v enlarged the span.
    bool add(const Vec& v) {
        Vec r = reduce(v);
        if (r.empty()) return false;
        // pivot on the smallest key; scale pivot coefficient to 1
        Key pivot = r.begin()->first;
        Scalar inv = r.begin()->second.inverse();
        for (auto& [k, val] : r) val *= inv;
        for (auto& [p, row] : rows_) {
            auto it = row.find(pivot);
            if (it != row.end()) subtract(row, it->second, r);
        }
        rows_.emplace(pivot, std::move(r));
        return true;
    }

    bool contains(const Vec& v) const { return reduce(v).empty(); }
    size_t dim() const { return rows_.size(); }
    const std::map<Key, Vec>& rows() const { return rows_; }

  private:
    static void subtract(Vec& v, Scalar c, const Vec& row) {
        for (const auto& [k, val] : row) {
            auto jt = v.find(k);
            Scalar nv = (jt != v.end() ? jt->second : Scalar()) - c * val;
            if (nv.is_zero()) {
                if (jt != v.end()) v.erase(jt);
            } else if (jt != v.end()) {
                jt->second = nv;
            } else {
                v[k] = nv;
            }
        }
    }

    std::map<Key, Vec> rows_;  // pivot -> row (pivot coefficient 1)
};

}  // namespace vxa
