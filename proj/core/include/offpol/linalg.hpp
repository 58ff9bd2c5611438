#pragma once

#include <cstddef>
#include <vector>

namespace offpol {

using Vector = std::vector<double>;

/// Dense row-major matrix. Everything in this library is tiny (states and
/// feature dimensions in the tens), so no attempt is made at blocking or
/// sparsity.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    Matrix transposed() const;

    const std::vector<double>& data() const { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

Vector mat_vec(const Matrix& m, const Vector& v);
Vector vec_mat(const Vector& v, const Matrix& m);

double dot(const Vector& a, const Vector& b);
double inf_norm(const Vector& v);
Vector subtract(const Vector& a, const Vector& b);

bool all_finite(const Vector& v);
bool all_finite(const Matrix& m);

/// Solves a*x = rhs by Gaussian elimination with partial pivoting.
/// Throws RankError when a pivot falls below the singularity threshold.
Vector solve_linear(Matrix a, Vector rhs);

/// Solves a symmetric positive definite system via Cholesky, falling back to
/// pivoted elimination when a pivot is not strictly positive.
Vector solve_spd(const Matrix& a, const Vector& rhs);

/// All eigenvalues of a symmetric matrix, ascending, computed by cyclic
/// Jacobi rotations. Throws NumericError if the sweeps do not converge and
/// std::invalid_argument if the input is not symmetric.
Vector symmetric_eigenvalues(Matrix a);

}  // namespace offpol
