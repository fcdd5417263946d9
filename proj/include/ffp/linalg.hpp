#ifndef FFP_LINALG_HPP
#define FFP_LINALG_HPP

#include <cstddef>
#include <vector>

#include "ffp/errors.hpp"

namespace ffp {

using Vector = std::vector<double>;

// Dense row-major matrix. Rows correspond to output units, so one row of
// a weight matrix is one unit's fan-in.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data; // rows * cols entries, row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    const double* row(std::size_t i) const { return data.data() + i * cols; }
    double* row(std::size_t i) { return data.data() + i * cols; }

    void fill(double value) { data.assign(data.size(), value); }

    bool same_shape(const Matrix& other) const {
        return rows == other.rows && cols == other.cols;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

Matrix identity_matrix(std::size_t n);

// result[i] = sum_j m[i,j] * x[j]
Vector matvec(const Matrix& m, const Vector& x);

// result[i] = a * x[i] + y[i]
Vector axpy(double a, const Vector& x, const Vector& y);

// acc[i,j] += scale * u[i] * v[j]
void outer_accumulate(Matrix& acc, const Vector& u, const Vector& v, double scale);

} // namespace ffp

#endif
