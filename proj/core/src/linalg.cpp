#include "offpol/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "offpol/errors.hpp"

namespace offpol {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

double max_abs(const Matrix& m) {
    double s = 0.0;
    for (double x : m.data()) s = std::max(s, std::abs(x));
    return s;
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.rows(), "matrix product: inner dimensions differ");
    Matrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double ark = a(r, k);
            if (ark == 0.0) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
        }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sum: shapes differ");
    Matrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix difference: shapes differ");
    Matrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) -= b(r, c);
    return out;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) *= s;
    return out;
}

Vector mat_vec(const Matrix& m, const Vector& v) {
    require(m.cols() == v.size(), "mat_vec: dimension mismatch");
    Vector out(m.rows(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

Vector vec_mat(const Vector& v, const Matrix& m) {
    require(m.rows() == v.size(), "vec_mat: dimension mismatch");
    Vector out(m.cols(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const double vr = v[r];
        if (vr == 0.0) continue;
        for (std::size_t c = 0; c < m.cols(); ++c) out[c] += vr * m(r, c);
    }
    return out;
}

double dot(const Vector& a, const Vector& b) {
    require(a.size() == b.size(), "dot: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double inf_norm(const Vector& v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

Vector subtract(const Vector& a, const Vector& b) {
    require(a.size() == b.size(), "subtract: dimension mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

bool all_finite(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

bool all_finite(const Matrix& m) {
    return std::all_of(m.data().begin(), m.data().end(),
                       [](double x) { return std::isfinite(x); });
}

Vector solve_linear(Matrix a, Vector rhs) {
    require(a.rows() == a.cols(), "solve_linear: square matrix required");
    require(a.rows() == rhs.size(), "solve_linear: rhs length mismatch");
    const std::size_t n = a.rows();
    const double scale = std::max(max_abs(a), 1e-300);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) <= 1e-13 * scale)
            throw RankError("solve_linear: matrix is singular to working precision");
        if (pivot != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(a(col, c), a(pivot, c));
            std::swap(rhs[col], rhs[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            a(r, col) = 0.0;
            for (std::size_t c = col + 1; c < n; ++c) a(r, c) -= f * a(col, c);
            rhs[r] -= f * rhs[col];
        }
    }
    Vector x(n, 0.0);
    for (std::size_t ri = n; ri-- > 0;) {
        double acc = rhs[ri];
        for (std::size_t c = ri + 1; c < n; ++c) acc -= a(ri, c) * x[c];
        x[ri] = acc / a(ri, ri);
    }
    return x;
}

Vector solve_spd(const Matrix& a, const Vector& rhs) {
    require(a.rows() == a.cols(), "solve_spd: square matrix required");
    require(a.rows() == rhs.size(), "solve_spd: rhs length mismatch");
    const std::size_t n = a.rows();
    const double scale = std::max(max_abs(a), 1e-300);

    // lower Cholesky factor; bail to pivoted elimination on a non-positive pivot
    Matrix l(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c <= r; ++c) {
            double acc = a(r, c);
            for (std::size_t k = 0; k < c; ++k) acc -= l(r, k) * l(c, k);
            if (r == c) {
                if (acc <= 1e-14 * scale) return solve_linear(a, rhs);
                l(r, r) = std::sqrt(acc);
            } else {
                l(r, c) = acc / l(c, c);
            }
        }
    }
    Vector y(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        double acc = rhs[r];
        for (std::size_t c = 0; c < r; ++c) acc -= l(r, c) * y[c];
        y[r] = acc / l(r, r);
    }
    Vector x(n, 0.0);
    for (std::size_t ri = n; ri-- > 0;) {
        double acc = y[ri];
        for (std::size_t c = ri + 1; c < n; ++c) acc -= l(c, ri) * x[c];
        x[ri] = acc / l(ri, ri);
    }
    return x;
}

Vector symmetric_eigenvalues(Matrix a) {
    require(a.rows() == a.cols(), "symmetric_eigenvalues: square matrix required");
    const std::size_t n = a.rows();
    if (n == 0) return {};

    const double scale = max_abs(a);
    if (scale == 0.0) return Vector(n, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r + 1; c < n; ++c)
            require(std::abs(a(r, c) - a(c, r)) <= 1e-12 * scale,
                    "symmetric_eigenvalues: matrix is not symmetric");

    bool converged = false;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        double off = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c) off = std::max(off, std::abs(a(r, c)));
        if (off <= 1e-15 * scale) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-18 * scale) continue;
                const double phi = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (phi >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(phi) + std::sqrt(phi * phi + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // A <- J^T A J with J the (p,q) rotation
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    if (!converged) throw NumericError("symmetric_eigenvalues: Jacobi sweeps did not converge");

    Vector eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace offpol
