#pragma once

#include <complex>
#include <vector>

#include "giqls/error.hpp"

namespace giqls {

using cplx = std::complex<double>;

// eq_tol: entrywise equality threshold. supp_eps: zero/nonzero classification.
// Defaults leave many orders of magnitude between double round-off and the
// smallest nonzero entry occurring in practice (1/36).
struct Tolerance {
    double eq_tol = 1e-9;
    double supp_eps = 1e-9;
};

// Dense row-major complex matrix. Values are treated as immutable once built;
// every operation returns a fresh matrix.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(int rows, int cols);

    static CMatrix identity(int n);
    static CMatrix zero(int rows, int cols) { return CMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int r, int c) { return ent_[static_cast<size_t>(r) * cols_ + c]; }
    const cplx& operator()(int r, int c) const { return ent_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<cplx>& entries() const { return ent_; }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> ent_;
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix dagger(const CMatrix& a);
CMatrix conjugate(const CMatrix& a);
CMatrix transpose(const CMatrix& a);

// Row (i,k) of A⊗B sits at i*rows(B)+k, same for columns.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Entrywise (Hadamard) product A∘B.
CMatrix schur(const CMatrix& a, const CMatrix& b);

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(const cplx& s, const CMatrix& a);
CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);

cplx trace(const CMatrix& a);

// Normalized Hilbert-Schmidt inner product Tr(A†B)/d, antilinear in A.
cplx hs_inner(const CMatrix& a, const CMatrix& b);

double max_abs(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
bool approx_equal(const CMatrix& a, const CMatrix& b, double tol);

// max |(AA† - I)_{xy}| <= tol
bool is_unitary(const CMatrix& a, double tol);
double unitarity_defect(const CMatrix& a);

// Entries real and >= -tol, every row and column sum within tol of 1.
bool is_doubly_stochastic(const CMatrix& a, double tol);

// True where |entry| > eps.
std::vector<std::vector<bool>> support_pattern(const CMatrix& a, double eps);
int support_size(const CMatrix& a, double eps);

bool is_real(const CMatrix& a, double tol);

} // namespace giqls
