#include "vxa/linalg.hpp"

namespace vxa {

LinSolveResult solve_linear(const Matrix& A, const std::vector<Scalar>& b) {
    size_t m = A.size();
    size_t n = m ? A[0].size() : 0;
    for (auto& row : A)
        if (row.size() != n) throw error("solve_linear: ragged matrix");
    if (b.size() != m) throw error("solve_linear: size mismatch");

    // fraction-free elimination on the augmented matrix
    Matrix M(m);
    for (size_t i = 0; i < m; ++i) {
        M[i] = A[i];
        M[i].push_back(b[i]);
    }
    std::vector<int> pivot_col;
    Scalar prev(1L);
    size_t r = 0;
    for (size_t col = 0; col < n && r < m; ++col) {
        size_t piv = r;
        while (piv < m && M[piv][col].is_zero()) ++piv;
        if (piv == m) continue;
        std::swap(M[r], M[piv]);
        for (size_t i = r + 1; i < m; ++i) {
            for (size_t j = col + 1; j <= n; ++j)
                M[i][j] = (M[r][col] * M[i][j] - M[i][col] * M[r][j]) / prev;
            M[i][col] = Scalar();
        }
        prev = M[r][col];
        pivot_col.push_back(int(col));
        ++r;
    }

    LinSolveResult res;
    res.rank = int(r);
    res.consistent = true;
    for (size_t i = r; i < m; ++i)
        if (!M[i][n].is_zero()) res.consistent = false;

    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[size_t(c)] = true;

    if (res.consistent) {
        res.solution.assign(n, Scalar());
        for (size_t i = r; i-- > 0;) {
            size_t col = size_t(pivot_col[i]);
            Scalar acc = M[i][n];
            for (size_t j = col + 1; j < n; ++j) acc -= M[i][j] * res.solution[j];
            res.solution[col] = acc / M[i][col];
        }
    }

    for (size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(n, Scalar());
        v[f] = Scalar(1L);
        for (size_t i = r; i-- > 0;) {
            size_t col = size_t(pivot_col[i]);
            Scalar acc;
            for (size_t j = col + 1; j < n; ++j) acc -= M[i][j] * v[j];
            v[col] = acc / M[i][col];
        }
        res.nullspace.push_back(std::move(v));
    }
    return res;
}

Scalar det_bareiss(Matrix M) {
    size_t n = M.size();
    for (auto& row : M)
        if (row.size() != n) throw error("det_bareiss: not square");
    if (n == 0) return Scalar(1L);
    Scalar prev(1L);
    int sign = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && M[piv][col].is_zero()) ++piv;
        if (piv == n) return Scalar();
        if (piv != col) {
            std::swap(M[col], M[piv]);
            sign = -sign;
        }
        for (size_t i = col + 1; i < n; ++i) {
            for (size_t j = col + 1; j < n; ++j)
                M[i][j] = (M[col][col] * M[i][j] - M[i][col] * M[col][j]) / prev;
            M[i][col] = Scalar();
        }
        prev = M[col][col];
    }
    Scalar d = M[n - 1][n - 1];
    return sign < 0 ? -d : d;
}

Scalar det_cofactor(const Matrix& A) {
    size_t n = A.size();
    if (n == 0) return Scalar(1L);
    if (n == 1) return A[0][0];
    Scalar acc;
    for (size_t k = 0; k < n; ++k) {
        if (A[0][k].is_zero()) continue;
        Matrix sub(n - 1);
        for (size_t i = 1; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (j != k) sub[i - 1].push_back(A[i][j]);
        Scalar term = A[0][k] * det_cofactor(sub);
        acc += (k % 2 == 0) ? term : -term;
    }
    return acc;
}

}  // namespace vxa
