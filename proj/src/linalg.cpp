#include "mlz/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mlz {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool Matrix::is_symmetric(double tol) const {
    if (rows_ != cols_) return false;
    const double scale = max_abs(*this);
    for (int r = 0; r < rows_; ++r)
        for (int c = r + 1; c < cols_; ++c)
            if (std::abs((*this)(r, c) - (*this)(c, r)) > tol * std::max(scale, 1.0)) return false;
    return true;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    if (!same_shape(rhs)) throw std::invalid_argument("matrix shape mismatch in +=");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    if (!same_shape(rhs)) throw std::invalid_argument("matrix shape mismatch in -=");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& x : data_) x *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in *");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
    return t;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in *");
    ComplexMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix commutator(const Matrix& x, const Matrix& y) {
    if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
        throw std::invalid_argument("commutator requires square matrices of equal dimension");
    return x * y - y * x;
}

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
        throw std::invalid_argument("commutator requires square matrices of equal dimension");
    ComplexMatrix xy = x * y;
    const ComplexMatrix yx = y * x;
    for (size_t i = 0; i < xy.data().size(); ++i) xy.data()[i] -= yx.data()[i];
    return xy;
}

double frobenius_norm(const Matrix& m) {
    double s = 0.0;
    for (double x : m.data()) s += x * x;
    return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const Complex& x : m.data()) s += std::norm(x);
    return std::sqrt(s);
}

double max_abs(const Matrix& m) {
    double s = 0.0;
    for (double x : m.data()) s = std::max(s, std::abs(x));
    return s;
}

double unitarity_defect(const ComplexMatrix& u) {
    ComplexMatrix g = u.adjoint() * u;
    for (int i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
    return frobenius_norm(g);
}

namespace {

// Apply one Jacobi rotation in the (p,q) plane, zeroing s(p,q).
void jacobi_rotate(Matrix& s, Matrix& v, int p, int q) {
    const double spq = s(p, q);
    if (spq == 0.0) return;
    const double theta = (s(q, q) - s(p, p)) / (2.0 * spq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double sn = t * c;
    const int n = s.rows();

    const double spp = s(p, p), sqq = s(q, q);
    s(p, p) = spp - t * spq;
    s(q, q) = sqq + t * spq;
    s(p, q) = 0.0;
    s(q, p) = 0.0;
    for (int k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const double skp = s(k, p), skq = s(k, q);
        s(k, p) = c * skp - sn * skq;
        s(p, k) = s(k, p);
        s(k, q) = sn * skp + c * skq;
        s(q, k) = s(k, q);
    }
    for (int k = 0; k < n; ++k) {
        const double vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp - sn * vkq;
        v(k, q) = sn * vkp + c * vkq;
    }
}

double off_diagonal_norm(const Matrix& s) {
    double sum = 0.0;
    for (int r = 0; r < s.rows(); ++r)
        for (int c = 0; c < s.cols(); ++c)
            if (r != c) sum += s(r, c) * s(r, c);
    return std::sqrt(sum);
}

} // namespace

EigenDecomposition sym_eigen(const Matrix& input) {
    if (input.rows() != input.cols()) throw std::invalid_argument("sym_eigen requires a square matrix");
    if (!input.is_symmetric(1e-12)) throw std::invalid_argument("sym_eigen requires a symmetric matrix");

    const int n = input.rows();
    Matrix s = input;
    // symmetrize exactly so the rotations act on a clean input
    for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c) {
            const double avg = 0.5 * (s(r, c) + s(c, r));
            s(r, c) = avg;
            s(c, r) = avg;
        }
    Matrix v = Matrix::identity(n);

    const double threshold = 1e-14 * std::max(frobenius_norm(s), 1e-300);
    for (int sweep = 0; sweep < 128; ++sweep) {
        if (off_diagonal_norm(s) <= threshold) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q)
                if (std::abs(s(p, q)) > threshold / n) jacobi_rotate(s, v, p, q);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return s(a, a) < s(b, b); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (int j = 0; j < n; ++j) {
        const int src = order[j];
        out.values[j] = s(src, src);
        int imax = 0;
        double amax = -1.0;
        for (int i = 0; i < n; ++i) {
            const double a = std::abs(v(i, src));
            if (a > amax) {
                amax = a;
                imax = i;
            }
        }
        const double sign = v(imax, src) < 0.0 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) out.vectors(i, j) = sign * v(i, src);
    }
    return out;
}

Svd svd(const Matrix& m) {
    const int rows = m.rows(), cols = m.cols();
    // column storage; zero rows appended implicitly have no effect on dot products
    std::vector<std::vector<double>> a(cols, std::vector<double>(rows));
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) a[j][i] = m(i, j);
    std::vector<std::vector<double>> v(cols, std::vector<double>(cols, 0.0));
    for (int j = 0; j < cols; ++j) v[j][j] = 1.0;

    for (int sweep = 0; sweep < 128; ++sweep) {
        bool rotated = false;
        for (int i = 0; i < cols - 1; ++i) {
            for (int j = i + 1; j < cols; ++j) {
                const double alpha = dot(a[i], a[i]);
                const double beta = dot(a[j], a[j]);
                const double gamma = dot(a[i], a[j]);
                if (std::abs(gamma) <= 1e-300 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int k = 0; k < rows; ++k) {
                    const double x = a[i][k], y = a[j][k];
                    a[i][k] = c * x - s * y;
                    a[j][k] = s * x + c * y;
                }
                for (int k = 0; k < cols; ++k) {
                    const double x = v[i][k], y = v[j][k];
                    v[i][k] = c * x - s * y;
                    v[j][k] = s * x + c * y;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sig(cols);
    for (int j = 0; j < cols; ++j) sig[j] = norm2(a[j]);
    std::vector<int> order(cols);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return sig[x] > sig[y]; });

    Svd out;
    out.sigma.resize(cols);
    out.u = Matrix(rows, cols);
    out.v = Matrix(cols, cols);
    for (int j = 0; j < cols; ++j) {
        const int src = order[j];
        out.sigma[j] = sig[src];
        if (sig[src] > 0.0)
            for (int i = 0; i < rows; ++i) out.u(i, j) = a[src][i] / sig[src];
        for (int i = 0; i < cols; ++i) out.v(i, j) = v[src][i];
    }
    return out;
}

LinearSolveResult solve_linear(const Matrix& m, const std::vector<double>& b, double tol) {
    if (m.cols() < 1) throw std::invalid_argument("solve_linear requires at least one column");
    if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("solve_linear rhs size mismatch");
    if (tol <= 0.0) throw std::invalid_argument("solve_linear requires tol > 0");

    const Svd dec = svd(m);
    const double smax = dec.sigma.empty() ? 0.0 : dec.sigma[0];
    const double cutoff = tol * smax;

    LinearSolveResult out;
    out.particular.assign(m.cols(), 0.0);
    for (int j = 0; j < m.cols(); ++j) {
        if (dec.sigma[j] > cutoff && dec.sigma[j] > 0.0) {
            double uj_b = 0.0;
            for (int i = 0; i < m.rows(); ++i) uj_b += dec.u(i, j) * b[i];
            const double coef = uj_b / dec.sigma[j];
            for (int i = 0; i < m.cols(); ++i) out.particular[i] += coef * dec.v(i, j);
        } else {
            std::vector<double> dir(m.cols());
            for (int i = 0; i < m.cols(); ++i) dir[i] = dec.v(i, j);
            out.nullspace.push_back(std::move(dir));
        }
    }

    double res = 0.0;
    for (int i = 0; i < m.rows(); ++i) {
        double mi = 0.0;
        for (int j = 0; j < m.cols(); ++j) mi += m(i, j) * out.particular[j];
        const double d = mi - b[i];
        res += d * d;
    }
    out.residual = std::sqrt(res);
    return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

} // namespace mlz
