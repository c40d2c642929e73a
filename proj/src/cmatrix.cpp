#include "giqls/cmatrix.hpp"

#include <cmath>
#include <string>

namespace giqls {

namespace {

void require_shape(bool ok, const std::string& what) {
    if (!ok) throw validation_error("shape mismatch: " + what);
}

} // namespace

CMatrix::CMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw validation_error("negative matrix dimension");
    ent_.assign(static_cast<size_t>(rows) * cols, cplx(0.0, 0.0));
}

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    require_shape(a.cols() == b.rows(), "matmul " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                            " * " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    CMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

CMatrix dagger(const CMatrix& a) {
    CMatrix c(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

CMatrix conjugate(const CMatrix& a) {
    CMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = std::conj(a(i, j));
    return c;
}

CMatrix transpose(const CMatrix& a) {
    CMatrix c(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(j, i) = a(i, j);
    return c;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

CMatrix schur(const CMatrix& a, const CMatrix& b) {
    require_shape(a.rows() == b.rows() && a.cols() == b.cols(), "schur product");
    CMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) * b(i, j);
    return c;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

CMatrix operator*(const cplx& s, const CMatrix& a) {
    CMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    require_shape(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sum");
    CMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    require_shape(a.rows() == b.rows() && a.cols() == b.cols(), "matrix difference");
    CMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

cplx trace(const CMatrix& a) {
    require_shape(a.rows() == a.cols(), "trace of non-square matrix");
    cplx t(0.0, 0.0);
    for (int i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

cplx hs_inner(const CMatrix& a, const CMatrix& b) {
    require_shape(a.rows() == a.cols() && a.rows() == b.rows() && a.cols() == b.cols(),
                  "hs_inner needs equal square matrices");
    cplx t(0.0, 0.0);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t += std::conj(a(i, j)) * b(i, j);
    return t / static_cast<double>(a.rows());
}

double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (const cplx& v : a.entries()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require_shape(a.rows() == b.rows() && a.cols() == b.cols(), "matrix comparison");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return max_abs_diff(a, b) <= tol;
}

double unitarity_defect(const CMatrix& a) {
    if (a.rows() != a.cols()) return 1.0;
    const CMatrix g = matmul(a, dagger(a));
    return max_abs_diff(g, CMatrix::identity(a.rows()));
}

bool is_unitary(const CMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return unitarity_defect(a) <= tol;
}

bool is_doubly_stochastic(const CMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    const int n = a.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (std::abs(a(i, j).imag()) > tol) return false;
            if (a(i, j).real() < -tol) return false;
        }
    for (int i = 0; i < n; ++i) {
        double rs = 0.0, cs = 0.0;
        for (int j = 0; j < n; ++j) {
            rs += a(i, j).real();
            cs += a(j, i).real();
        }
        if (std::abs(rs - 1.0) > tol || std::abs(cs - 1.0) > tol) return false;
    }
    return true;
}

std::vector<std::vector<bool>> support_pattern(const CMatrix& a, double eps) {
    std::vector<std::vector<bool>> s(a.rows(), std::vector<bool>(a.cols(), false));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s[i][j] = std::abs(a(i, j)) > eps;
    return s;
}

int support_size(const CMatrix& a, double eps) {
    int c = 0;
    for (const cplx& v : a.entries())
        if (std::abs(v) > eps) ++c;
    return c;
}

bool is_real(const CMatrix& a, double tol) {
    for (const cplx& v : a.entries())
        if (std::abs(v.imag()) > tol) return false;
    return true;
}

} // namespace giqls
