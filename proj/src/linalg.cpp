#include "ffp/linalg.hpp"

namespace ffp {

Matrix identity_matrix(std::size_t n) {
    Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vector matvec(const Matrix& m, const Vector& x) {
    if (m.cols != x.size()) {
        throw DimensionError("matvec: matrix cols must match vector length",
                             m.cols, x.size());
    }
    Vector out(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        const double* row = m.row(i);
        double sum = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) {
            sum += row[j] * x[j];
        }
        out[i] = sum;
    }
    return out;
}

Vector axpy(double a, const Vector& x, const Vector& y) {
    if (x.size() != y.size()) {
        throw DimensionError("axpy: vector lengths must match", x.size(), y.size());
    }
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = a * x[i] + y[i];
    }
    return out;
}

void outer_accumulate(Matrix& acc, const Vector& u, const Vector& v, double scale) {
    if (acc.rows != u.size()) {
        throw DimensionError("outer_accumulate: acc rows must match u length",
                             acc.rows, u.size());
    }
    if (acc.cols != v.size()) {
        throw DimensionError("outer_accumulate: acc cols must match v length",
                             acc.cols, v.size());
    }
    for (std::size_t i = 0; i < acc.rows; ++i) {
        double* row = acc.row(i);
        const double su = scale * u[i];
        for (std::size_t j = 0; j < acc.cols; ++j) {
            row[j] += su * v[j];
        }
    }
}

} // namespace ffp
