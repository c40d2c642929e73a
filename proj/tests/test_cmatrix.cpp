#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "giqls/cmatrix.hpp"
#include "giqls/error.hpp"

using namespace giqls;
using fixtures::mat;

TEST_CASE("identity and basic algebra") {
    const CMatrix i3 = CMatrix::identity(3);
    CHECK(i3(0, 0) == cplx(1, 0));
    CHECK(i3(0, 1) == cplx(0, 0));
    const CMatrix a = mat(2, 2, {1, 2, 3, 4});
    const CMatrix b = mat(2, 2, {0, 1, 1, 0});
    const CMatrix ab = a * b;  // hand-computed: swaps columns of a
    CHECK(ab(0, 0) == cplx(2, 0));
    CHECK(ab(0, 1) == cplx(1, 0));
    CHECK(ab(1, 0) == cplx(4, 0));
    CHECK(ab(1, 1) == cplx(3, 0));
    CHECK(max_abs_diff(a + b - b, a) == doctest::Approx(0));
    const CMatrix two_a = 2.0 * a;
    CHECK(two_a(1, 1) == cplx(8, 0));
}

TEST_CASE("dagger conjugate transpose") {
    const CMatrix a = mat(2, 3, {cplx(1, 1), 2, 0, 3, cplx(0, -2), 5});
    const CMatrix d = dagger(a);
    CHECK(d.rows() == 3);
    CHECK(d.cols() == 2);
    CHECK(d(0, 0) == cplx(1, -1));
    CHECK(d(1, 1) == cplx(0, 2));
    CHECK(max_abs_diff(transpose(conjugate(a)), d) == doctest::Approx(0));
    CHECK(max_abs_diff(dagger(d), a) == doctest::Approx(0));
}

TEST_CASE("kron dimensions and entries") {
    const CMatrix a = mat(2, 2, {1, 2, 3, 4});
    const CMatrix b = mat(2, 2, {0, 5, 6, 7});
    const CMatrix k = kron(a, b);
    CHECK(k.rows() == 4);
    CHECK(k.cols() == 4);
    // block (0,1) = 2*b
    CHECK(k(0, 2) == cplx(0, 0));
    CHECK(k(0, 3) == cplx(10, 0));
    CHECK(k(1, 2) == cplx(12, 0));
    CHECK(k(1, 3) == cplx(14, 0));
    // block (1,0) = 3*b
    CHECK(k(2, 0) == cplx(0, 0));
    CHECK(k(3, 1) == cplx(21, 0));
    // kron with identity keeps unitarity
    const CMatrix h = mat(2, 2, {cplx(1 / std::sqrt(2.0)), cplx(1 / std::sqrt(2.0)),
                                 cplx(1 / std::sqrt(2.0)), cplx(-1 / std::sqrt(2.0))});
    CHECK(is_unitary(kron(h, CMatrix::identity(3)), 1e-12));
}

TEST_CASE("schur product") {
    const CMatrix a = mat(2, 2, {1, cplx(0, 2), 3, 4});
    const CMatrix s = schur(a, conjugate(a));
    CHECK(s(0, 0) == cplx(1, 0));
    CHECK(s(0, 1) == cplx(4, 0));  // |2i|^2
    CHECK(s(1, 1) == cplx(16, 0));
}

TEST_CASE("trace and normalized inner product") {
    const CMatrix a = mat(2, 2, {1, 0, 0, cplx(0, 1)});
    CHECK(trace(a) == cplx(1, 1));
    // hs_inner(I, I) = 1 in every dimension (normalized by d)
    for (int d = 1; d <= 5; ++d) {
        const CMatrix id = CMatrix::identity(d);
        CHECK(hs_inner(id, id).real() == doctest::Approx(1.0));
    }
    // hs_inner(A, B) = Tr(A^dag B)/d
    const CMatrix b = mat(2, 2, {0, 1, 1, 0});
    CHECK(hs_inner(a, b) == cplx(0, 0));
}

TEST_CASE("unitarity checks") {
    CHECK(is_unitary(CMatrix::identity(4), 1e-12));
    CHECK(unitarity_defect(CMatrix::identity(4)) == doctest::Approx(0));
    CMatrix a = CMatrix::identity(2);
    a(0, 0) = 1.5;
    CHECK_FALSE(is_unitary(a, 1e-9));
    CHECK(unitarity_defect(a) > 1.0);
    // non-square is never unitary
    CHECK_FALSE(is_unitary(CMatrix(2, 3), 1e-9));
}

TEST_CASE("doubly stochastic check") {
    CHECK(is_doubly_stochastic(fixtures::z4z22_q(), 1e-12));
    CHECK(is_doubly_stochastic(fixtures::z5_golden(), 1e-12));
    CMatrix bad = fixtures::z4z22_q();
    bad(1, 2) = 0.6;  // row sum 1.1
    CHECK_FALSE(is_doubly_stochastic(bad, 1e-9));
    CMatrix neg = CMatrix::identity(2);
    neg(0, 0) = -1;
    neg(0, 1) = 2;
    neg(1, 0) = 2;
    neg(1, 1) = -1;
    CHECK_FALSE(is_doubly_stochastic(neg, 1e-9));  // negative entries rejected
}

TEST_CASE("support pattern and realness") {
    const CMatrix q = fixtures::z4z22_q();
    const auto sup = support_pattern(q, 1e-9);
    int count = 0;
    for (const auto& row : sup)
        for (bool b : row) count += b ? 1 : 0;
    CHECK(count == 6);
    CHECK(is_real(q, 1e-12));
    CHECK_FALSE(is_real(fixtures::z4z22_u(), 1e-12));
}

TEST_CASE("max_abs and comparisons") {
    const CMatrix a = mat(2, 2, {1, -3, cplx(0, 2), 0.5});
    CHECK(max_abs(a) == doctest::Approx(3.0));
    CMatrix b = a;
    b(1, 1) = 0.5 + 1e-12;
    CHECK(approx_equal(a, b, 1e-9));
    CHECK_FALSE(approx_equal(a, b, 1e-15));
    CHECK(max_abs_diff(a, b) == doctest::Approx(1e-12));
}

TEST_CASE("frozen correlation literals are doubly stochastic") {
    CHECK(is_doubly_stochastic(fixtures::z5_golden_sq(), 1e-12));
    CHECK(is_doubly_stochastic(fixtures::z6_d_pi(), 1e-12));
    CHECK(is_doubly_stochastic(fixtures::z6_d_pi1(), 1e-12));
    CHECK(is_doubly_stochastic(fixtures::z6_d_pi2(), 1e-12));
    CHECK(is_doubly_stochastic(fixtures::z24_q(), 1e-12));
    CHECK(is_doubly_stochastic(fixtures::s3_q1(), 1e-12));
    CHECK(is_doubly_stochastic(fixtures::s3_q2(), 1e-12));
}

TEST_CASE("frozen unitary literals are unitary") {
    CHECK(is_unitary(fixtures::z4z22_u(), 1e-12));
    CHECK(is_unitary(fixtures::s3_v(), 1e-12));
    CHECK(is_unitary(fixtures::s3_u1(), 1e-12));
    CHECK(is_unitary(fixtures::s3_u2(), 1e-12));
}

TEST_CASE("golden matrix times its transpose matches the frozen product") {
    const CMatrix m = fixtures::z5_golden();
    CHECK(max_abs_diff(m * transpose(m), fixtures::z5_golden_sq()) < 1e-12);
}
