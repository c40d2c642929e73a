// Frozen reference values shared by the test binaries, plus small helpers.
#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "giqls/cmatrix.hpp"

namespace fixtures {

using giqls::CMatrix;
using giqls::cplx;

inline CMatrix mat(int rows, int cols, std::initializer_list<cplx> vals) {
    CMatrix m(rows, cols);
    int i = 0;
    for (const cplx& v : vals) {
        m(i / cols, i % cols) = v;
        ++i;
    }
    return m;
}

// ---- (Z4, Z2 x Z2): transformation matrix, correlation, quantum Latin square.

inline CMatrix z4z22_u() {
    const cplx a(0.5, -0.5), b(0.5, 0.5);
    return mat(4, 4,
               {1, 0, 0, 0,
                0, 0, a, b,
                0, 1, 0, 0,
                0, 0, b, a});
}

inline CMatrix z4z22_q() {
    return mat(4, 4,
               {1, 0, 0, 0,
                0, 0, 0.5, 0.5,
                0, 1, 0, 0,
                0, 0, 0.5, 0.5});
}

// The reference quantum Latin square: vectors[a][b] with entries (1/2) * the
// listed 4-tuples, rows indexed by Z4 and columns by Z2 x Z2.
inline std::vector<std::vector<std::vector<cplx>>> z4z22_qls() {
    const cplx i(0, 1);
    const std::vector<std::vector<std::vector<cplx>>> rows = {
        {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}},
        {{1, -i, -1, i}, {1, i, -1, -i}, {1, -i, 1, -i}, {1, i, 1, i}},
        {{1, -1, 1, -1}, {1, 1, 1, 1}, {1, -1, -1, 1}, {1, 1, -1, -1}},
        {{1, i, -1, -i}, {1, -i, -1, i}, {1, i, 1, i}, {1, -i, 1, -i}}};
    auto out = rows;
    for (auto& r : out)
        for (auto& v : r)
            for (auto& e : v) e *= 0.5;
    return out;
}

// ---- Z5: the golden-ratio correlation matrix and its transpose product.

inline CMatrix z5_golden() {
    const double p = (1.0 + std::sqrt(5.0)) / 2.0;
    const double A = (1 + p) / 5, B = 1.0 / 5, C = (2 - p) / 5;
    return mat(5, 5,
               {1, 0, 0, 0, 0,
                0, A, B, B, C,
                0, B, C, A, B,
                0, B, A, C, B,
                0, C, B, B, A});
}

inline CMatrix z5_golden_sq() {
    const double a = 9.0 / 25, b = 6.0 / 25, c = 4.0 / 25;
    return mat(5, 5,
               {1, 0, 0, 0, 0,
                0, a, b, b, c,
                0, b, a, c, b,
                0, b, c, a, b,
                0, c, b, b, a});
}

// ---- Z6: the non-extreme D^pi decomposition. Each 5x5 block is the reference
// principal submatrix with the identity row and column removed; embed() puts
// back row/column 0.

inline CMatrix embed_tilde(const CMatrix& t) {
    CMatrix m(6, 6);
    m(0, 0) = 1;
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) m(r + 1, c + 1) = t(r, c);
    return m;
}

inline CMatrix z6_d_pi() {  // pi = (1,3)
    const double t = 1.0 / 3, h = 0.5;
    return embed_tilde(mat(5, 5,
                           {t, 0, t, 0, t,
                            0, h, 0, h, 0,
                            t, 0, t, 0, t,
                            0, h, 0, h, 0,
                            t, 0, t, 0, t}));
}

inline CMatrix z6_d_pi1() {  // pi1 = (0,1)(2,3)(4,5)
    const double h = 0.5;
    return embed_tilde(mat(5, 5,
                           {0, 0, h, 0, h,
                            0, 1, 0, 0, 0,
                            h, 0, 0, 0, h,
                            0, 0, 0, 1, 0,
                            h, 0, h, 0, 0}));
}

inline CMatrix z6_d_pi2() {  // pi2 = (1,3)(2,4)
    const double h = 0.5;
    return embed_tilde(mat(5, 5,
                           {h, 0, h, 0, 0,
                            0, 0, 0, 1, 0,
                            h, 0, 0, 0, h,
                            0, 1, 0, 0, 0,
                            0, 0, h, 0, h}));
}

// ---- Z2^4: the strongly nonlocal correlation. The cycle string reproduces
// the frozen matrix below under this library's composition conventions.

inline const char* z24_pihat_cycles() { return "(1,11)(2,4,14,6,5,15,10,7,3,8)"; }

inline CMatrix z24_q() {
    const double q4 = 0.25;
    const std::vector<int> blk = {4, 5, 6, 7, 12, 13, 14, 15};
    CMatrix m(16, 16);
    auto put = [&m](int r, std::initializer_list<int> cols, double v) {
        for (int c : cols) m(r, c) = v;
    };
    auto put_blk = [&m, &blk](int r) {
        for (int c : blk) m(r, c) = 1.0 / 16;
    };
    m(0, 0) = 1;
    put(1, {1, 3, 12, 14}, q4);
    put_blk(2); put(2, {9, 10}, q4);
    put_blk(3); put(3, {8, 9}, q4);
    put(4, {1, 3, 4, 6}, q4);
    put(5, {5, 7, 13, 15}, q4);
    put_blk(6); put(6, {10, 11}, q4);
    put_blk(7); put(7, {8, 11}, q4);
    put_blk(8); put(8, {1, 2}, q4);
    put_blk(9); put(9, {2, 3}, q4);
    put(10, {8, 9, 10, 11}, q4);
    put(11, {5, 7, 9, 11}, q4);
    put_blk(12); put(12, {2, 3}, q4);
    put_blk(13); put(13, {1, 2}, q4);
    put(14, {8, 10, 12, 14}, q4);
    put(15, {4, 6, 13, 15}, q4);
    return m;
}

// ---- S3: block diagonalizer, the two reference transformation matrices, their
// correlations, and the separating hyperplane. Rows are ordered
// e, (123), (321), (12), (23), (13).

inline CMatrix s3_v() {
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const cplx w2 = std::conj(w);
    const double s = 1.0 / std::sqrt(6.0);
    const cplx v0 = 1, v1 = w, v2 = w2;  // v = (1, w, w^2)
    const cplx u0 = 1, u1 = w2, u2 = w;  // u = (1, w^2, w)
    CMatrix m = mat(6, 6,
                    {1, 1, v0, v0, u0, -u0,
                     1, 1, v1, v1, u1, -u1,
                     1, 1, v2, v2, u2, -u2,
                     1, -1, v0, -v0, u0, u0,
                     1, -1, v1, -v1, u1, u1,
                     1, -1, v2, -v2, u2, u2});
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) m(r, c) *= s;
    return m;
}

inline CMatrix s3_u1() {
    const double r3 = std::sqrt(3.0);
    const cplx a(0, 1.0 / r3), b(0, 1.0 / (2.0 * r3));
    const double t = 1.0 / 3, s6 = 1.0 / 6;
    return mat(6, 6,
               {1, 0, 0, 0, 0, 0,
                0, 0.5, 0.5, a, -b, -b,
                0, 0.5, 0.5, -a, b, b,
                0, -a, a, t, t, t,
                0, b, -b, t, -s6, 5 * s6,
                0, b, -b, t, 5 * s6, -s6});
}

inline CMatrix s3_u2() {
    const double r3 = std::sqrt(3.0);
    const cplx a(0, 1.0 / r3), b(0, 1.0 / (2.0 * r3));
    const double t = 1.0 / 3, s6 = 1.0 / 6;
    return mat(6, 6,
               {1, 0, 0, 0, 0, 0,
                0, 0.5, 0.5, a, -b, -b,
                0, 0.5, 0.5, -a, b, b,
                0, -a, a, -t, -t, -t,
                0, b, -b, -t, -5 * s6, s6,
                0, b, -b, -t, s6, -5 * s6});
}

inline CMatrix s3_q1() {
    const double q = 0.25, t = 1.0 / 3, tw = 1.0 / 12, n = 1.0 / 9, a = 1.0 / 36,
                 b = 25.0 / 36;
    return mat(6, 6,
               {1, 0, 0, 0, 0, 0,
                0, q, q, t, tw, tw,
                0, q, q, t, tw, tw,
                0, t, t, n, n, n,
                0, tw, tw, n, a, b,
                0, tw, tw, n, b, a});
}

inline CMatrix s3_q2() {
    const double q = 0.25, t = 1.0 / 3, tw = 1.0 / 12, n = 1.0 / 9, a = 1.0 / 36,
                 b = 25.0 / 36;
    return mat(6, 6,
               {1, 0, 0, 0, 0, 0,
                0, q, q, t, tw, tw,
                0, q, q, t, tw, tw,
                0, t, t, n, n, n,
                0, tw, tw, n, b, a,
                0, tw, tw, n, a, b});
}

inline CMatrix s3_hyperplane() {
    return mat(6, 6,
               {1, 0, 0, 0, 0, 0,
                0, 0, 0, -1, 1, 1,
                0, 0, 0, -1, 1, 1,
                0, -1, -1, 1, 0, 0,
                0, 1, 1, 0, -1, -1,
                0, 1, 1, 0, -1, -1});
}

// A 5x5 Latin square that is not a group multiplication table (fails
// associativity), used to exercise input validation.
inline std::vector<std::vector<int>> bad_loop_table() {
    return {{0, 1, 2, 3, 4},
            {1, 0, 3, 4, 2},
            {2, 3, 4, 0, 1},
            {3, 4, 1, 2, 0},
            {4, 2, 0, 1, 3}};
}

} // namespace fixtures
