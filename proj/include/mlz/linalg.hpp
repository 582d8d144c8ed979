#pragma once

#include <complex>
#include <vector>

namespace mlz {

/// Dense real matrix, row-major. Small and value-semantic; every operation
/// reduces in a fixed sequential order so results are bit-reproducible.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0) {}

    static Matrix identity(int n);
    static Matrix diagonal(const std::vector<double>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    Matrix transpose() const;

    bool same_shape(const Matrix& other) const { return rows_ == other.rows_ && cols_ == other.cols_; }

    /// Relative symmetry check: |a_ij - a_ji| < tol * max|a|.
    bool is_symmetric(double tol = 1e-12) const;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(double s);

    friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
    friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
    friend Matrix operator*(double s, Matrix m) { return m *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

using Complex = std::complex<double>;

/// Dense complex matrix, row-major; carries evolution operators and amplitudes.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    Complex operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<Complex>& data() const { return data_; }
    std::vector<Complex>& data() { return data_; }

    ComplexMatrix adjoint() const;

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> data_;
};

/// XY - YX. Throws std::invalid_argument on shape mismatch.
Matrix commutator(const Matrix& x, const Matrix& y);
ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y);

double frobenius_norm(const Matrix& m);
double frobenius_norm(const ComplexMatrix& m);

double max_abs(const Matrix& m);

/// Deviation of U from unitarity, ||U^dag U - I||_F.
double unitarity_defect(const ComplexMatrix& u);

/// Eigendecomposition of a real symmetric matrix. values ascending; vectors
/// holds orthonormal eigenvectors as columns, each signed so that its first
/// component of largest magnitude is positive.
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;
};

/// Cyclic Jacobi sweeps; off-diagonal threshold 1e-14 * ||S||_F.
/// Throws std::invalid_argument if S is not symmetric within 1e-12 relative.
EigenDecomposition sym_eigen(const Matrix& s);

/// Singular value decomposition M = U diag(sigma) V^T via one-sided Jacobi,
/// sigma sorted descending. U columns are defined only where sigma > 0.
struct Svd {
    Matrix u;                    // m x n
    std::vector<double> sigma;   // n
    Matrix v;                    // n x n, always orthogonal
};

Svd svd(const Matrix& m);

/// Least-squares solve of M x = b with rank decisions at tol * sigma_max.
struct LinearSolveResult {
    std::vector<double> particular;             // minimum-norm least-squares solution
    std::vector<std::vector<double>> nullspace; // orthonormal basis of the numerical nullspace
    double residual = 0.0;                      // ||M particular - b||_2
};

LinearSolveResult solve_linear(const Matrix& m, const std::vector<double>& b, double tol = 1e-10);

// small vector helpers, fixed evaluation order
double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);

} // namespace mlz
