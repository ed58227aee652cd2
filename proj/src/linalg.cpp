#include "cherryvine/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace cherryvine {

SquareMatrix SquareMatrix::identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Inversion invert(const SquareMatrix& m) {
    const std::size_t n = m.size();
    SquareMatrix a = m;
    SquareMatrix inv = SquareMatrix::identity(n);
    double log_det = 0.0;
    int sign = 1;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a(r, col)) > std::fabs(a(pivot, col))) pivot = r;
        if (std::fabs(a(pivot, col)) < kPivotFloor)
            throw singular_matrix_error("matrix is singular to working precision (pivot " +
                                        std::to_string(a(pivot, col)) + ")");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
            sign = -sign;
        }
        const double p = a(col, col);
        log_det += std::log(std::fabs(p));
        if (p < 0.0) sign = -sign;
        const double scale = 1.0 / p;
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) *= scale;
            inv(col, j) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    if (sign < 0) throw singular_matrix_error("matrix has a negative determinant");
    return {std::move(inv), log_det};
}

SquareMatrix submatrix(const SquareMatrix& m, const std::vector<std::size_t>& index) {
    SquareMatrix out(index.size());
    for (std::size_t i = 0; i < index.size(); ++i)
        for (std::size_t j = 0; j < index.size(); ++j) out(i, j) = m(index[i], index[j]);
    return out;
}

double min_cholesky_pivot(const SquareMatrix& m) {
    const std::size_t n = m.size();
    SquareMatrix l(n);
    double min_pivot = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                min_pivot = std::min(min_pivot, s);
                if (s <= 0.0) return min_pivot;
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return min_pivot;
}

} // namespace cherryvine
