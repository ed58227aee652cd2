#ifndef CHERRYVINE_LINALG_HPP
#define CHERRYVINE_LINALG_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cherryvine {

class singular_matrix_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense square matrix, row-major. Sized for the marginal blocks this
/// library works with (d up to a few dozen); elimination with partial
/// pivoting, pivot floor 1e-12.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    static SquareMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    bool operator==(const SquareMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

inline constexpr double kPivotFloor = 1e-12;

struct Inversion {
    SquareMatrix inverse;
    double log_det; // log of the determinant; requires positive determinant
};

/// Gauss-Jordan with partial pivoting. Throws singular_matrix_error when a
/// pivot falls below the floor or the determinant is not positive (all
/// callers invert symmetric positive definite blocks).
Inversion invert(const SquareMatrix& m);

/// Rows and columns selected by `index` in the given order.
SquareMatrix submatrix(const SquareMatrix& m, const std::vector<std::size_t>& index);

/// Smallest diagonal residual seen during a Cholesky-style elimination;
/// nonpositive values mean the matrix is not positive definite.
double min_cholesky_pivot(const SquareMatrix& m);

} // namespace cherryvine

#endif
