#include "giqls/qtransform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <utility>

#include "giqls/error.hpp"

namespace giqls {

bool TransformViolation::ok(double tol) const {
    return unitarity <= tol && conj_symmetry <= tol && convolution <= tol &&
           dual_convolution <= tol;
}

std::string TransformViolation::describe() const {
    std::ostringstream os;
    os << "unitarity defect " << unitarity;
    os << "; conjugation symmetry defect " << conj_symmetry << " at (a,b)=(" << worst_conj[0]
       << "," << worst_conj[1] << ")";
    os << "; convolution defect " << convolution << " at (a,b,c)=(" << worst_conv[0] << ","
       << worst_conv[1] << "," << worst_conv[2] << ")";
    os << "; dual convolution defect " << dual_convolution << " at (a,b,c)=(" << worst_dual[0]
       << "," << worst_dual[1] << "," << worst_dual[2] << ")";
    return os.str();
}

TransformViolation check_transformation(const CMatrix& u, const FiniteGroup& G,
                                        const FiniteGroup& Gp) {
    if (G.n != Gp.n)
        throw validation_error("transformation matrices require groups of equal order");
    if (u.rows() != G.n || u.cols() != Gp.n)
        throw validation_error("matrix shape does not match the group pair");
    const int n = G.n;
    TransformViolation v;
    v.unitarity = unitarity_defect(u);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double d = std::abs(std::conj(u(a, b)) - u(G.invert(a), Gp.invert(b)));
            if (d > v.conj_symmetry) {
                v.conj_symmetry = d;
                v.worst_conj[0] = a;
                v.worst_conj[1] = b;
            }
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int ab = G.op(a, b);
            for (int c = 0; c < n; ++c) {
                cplx acc = 0.0;
                for (int x = 0; x < n; ++x) acc += u(a, x) * u(b, Gp.op(Gp.invert(x), c));
                const double d = std::abs(u(ab, c) - acc);
                if (d > v.convolution) {
                    v.convolution = d;
                    v.worst_conv[0] = a;
                    v.worst_conv[1] = b;
                    v.worst_conv[2] = c;
                }
            }
        }
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
            const int bc = Gp.op(b, c);
            for (int a = 0; a < n; ++a) {
                cplx acc = 0.0;
                for (int x = 0; x < n; ++x) acc += u(x, b) * u(G.op(G.invert(x), a), c);
                const double d = std::abs(u(a, bc) - acc);
                if (d > v.dual_convolution) {
                    v.dual_convolution = d;
                    v.worst_dual[0] = a;
                    v.worst_dual[1] = b;
                    v.worst_dual[2] = c;
                }
            }
        }
    return v;
}

TransformationMatrix verify_transformation(CMatrix u, const FiniteGroup& G,
                                           const FiniteGroup& Gp, double tol) {
    TransformViolation v = check_transformation(u, G, Gp);
    if (!v.ok(tol))
        throw validation_error("not a transformation matrix: " + v.describe());
    return TransformationMatrix{std::move(u), G, Gp, true};
}

TransformationMatrix abelian_transformation(const GroupBijection& pihat) {
    const FiniteGroup& G = pihat.codomain;
    const FiniteGroup& Gp = pihat.domain;
    if (!G.abelian() || !Gp.abelian())
        throw validation_error("character construction requires abelian groups");
    CMatrix u = dagger(character_table(G)) * perm_matrix(pihat) * character_table(Gp);
    return verify_transformation(std::move(u), G, Gp, 1e-9);
}

std::vector<TransformationMatrix> enumerate_abelian_transformations(
    const FiniteGroup& G, const FiniteGroup& Gp, std::optional<long long> limit) {
    if (!G.abelian() || !Gp.abelian())
        throw validation_error("character construction requires abelian groups");
    if (G.n != Gp.n)
        throw validation_error("group pair must have equal order");
    const int n = G.n;
    if (n > 6 && !limit)
        throw validation_error("full enumeration is capped at order 6; pass a limit to sample");
    const CMatrix cd = dagger(character_table(G));
    const CMatrix cp = character_table(Gp);
    std::vector<TransformationMatrix> out;
    std::vector<int> map(n);
    std::iota(map.begin(), map.end(), 0);
    long long count = 0;
    do {
        if (limit && count >= *limit) break;
        GroupBijection pihat = make_bijection(Gp, G, map);
        CMatrix u = cd * perm_matrix(pihat) * cp;
        out.push_back(verify_transformation(std::move(u), G, Gp, 1e-9));
        ++count;
    } while (std::next_permutation(map.begin(), map.end()));
    return out;
}

CorrelationMatrix correlation_of(const TransformationMatrix& u) {
    return make_correlation(schur(u.U, conjugate(u.U)), u.G, u.Gp, 1e-9);
}

TransformationMatrix compose_transformations(const TransformationMatrix& u1,
                                             const TransformationMatrix& u2) {
    if (!same_group(u1.Gp, u2.G))
        throw validation_error("composition requires the inner groups to coincide");
    return verify_transformation(u1.U * u2.U, u1.G, u2.Gp, 1e-9);
}

TransformationMatrix dagger_transformation(const TransformationMatrix& u) {
    return verify_transformation(dagger(u.U), u.Gp, u.G, 1e-9);
}

TransformationMatrix conj_transformation(const TransformationMatrix& u) {
    return verify_transformation(conjugate(u.U), u.G, u.Gp, 1e-9);
}

QuantumLatinSquare reconstruct_qls(const TransformationMatrix& u,
                                   const std::optional<CMatrix>& basis, double tol) {
    const int n = u.G.n;
    CMatrix b = basis ? *basis : CMatrix::identity(n);
    if (b.cols() != n)
        throw validation_error("basis must supply one column per group element");
    if (max_abs_diff(dagger(b) * b, CMatrix::identity(n)) > tol)
        throw validation_error("basis columns are not orthonormal");
    const int dim = b.rows();
    QuantumLatinSquare q;
    q.G = u.G;
    q.Gp = u.Gp;
    q.vectors.assign(n, std::vector<std::vector<cplx>>(n, std::vector<cplx>(dim)));
    for (int a = 0; a < n; ++a)
        for (int bb = 0; bb < n; ++bb) {
            auto& psi = q.vectors[a][bb];
            for (int x = 0; x < n; ++x) {
                const cplx coeff = u.U(a, u.Gp.op(u.Gp.invert(x), bb));
                if (coeff == cplx(0.0, 0.0)) continue;
                for (int r = 0; r < dim; ++r) psi[r] += coeff * b(r, x);
            }
        }
    return q;
}

namespace {
cplx vec_inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}
} // namespace

TransformationMatrix qls_transformation(const QuantumLatinSquare& q, double tol) {
    const int n = q.G.n;
    if (static_cast<int>(q.vectors.size()) != n)
        throw validation_error("vector array shape does not match the group");
    size_t dim = 0;
    for (const auto& row : q.vectors) {
        if (static_cast<int>(row.size()) != q.Gp.n)
            throw validation_error("vector array shape does not match the group pair");
        for (const auto& psi : row) {
            if (dim == 0) dim = psi.size();
            if (psi.size() != dim || dim == 0)
                throw validation_error("vectors must share one nonzero ambient dimension");
        }
    }
    CMatrix u(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) u(x, y) = vec_inner(q.vectors[0][0], q.vectors[x][y]);
    double worst = 0.0;
    int wa = 0, wb = 0, wc = 0, wd = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const cplx g = vec_inner(q.vectors[a][b], q.vectors[c][d]);
                    const cplx want = u(q.G.op(q.G.invert(a), c), q.Gp.op(q.Gp.invert(b), d));
                    const double dev = std::abs(g - want);
                    if (dev > worst) {
                        worst = dev;
                        wa = a; wb = b; wc = c; wd = d;
                    }
                }
    if (worst > tol) {
        std::ostringstream os;
        os << "Gram matrix is not group-invariant: deviation " << worst << " at ((a,b),(c,d))=(("
           << wa << "," << wb << "),(" << wc << "," << wd << "))";
        throw validation_error(os.str());
    }
    return verify_transformation(std::move(u), q.G, q.Gp, tol);
}

bool conjugation_check(const TransformationMatrix& u, double tol, double* worst) {
    const int n = u.G.n;
    double w = 0.0;
    const CMatrix ud = dagger(u.U);
    for (int b = 0; b < n; ++b) {
        const CMatrix lhs = u.U * regular_representation(u.Gp, b) * ud;
        CMatrix rhs(n, n);
        for (int a = 0; a < n; ++a) {
            const cplx coeff = u.U(a, b);
            if (coeff == cplx(0.0, 0.0)) continue;
            rhs = rhs + coeff * regular_representation(u.G, a);
        }
        w = std::max(w, max_abs_diff(lhs, rhs));
    }
    if (worst) *worst = w;
    return w <= tol;
}

RepresentationMap regular_rep_map(const FiniteGroup& g) {
    RepresentationMap rho;
    rho.group = g;
    rho.mats.reserve(g.n);
    for (int a = 0; a < g.n; ++a) rho.mats.push_back(regular_representation(g, a));
    return rho;
}

void validate_representation(const RepresentationMap& rho, double tol) {
    const int n = rho.group.n;
    if (static_cast<int>(rho.mats.size()) != n)
        throw validation_error("representation must supply one matrix per element");
    const int d = rho.mats[0].rows();
    for (const CMatrix& m : rho.mats) {
        if (m.rows() != d || m.cols() != d)
            throw validation_error("representation matrices must share one square shape");
        if (!is_unitary(m, tol))
            throw validation_error("representation matrices must be unitary");
    }
    if (max_abs_diff(rho.mats[0], CMatrix::identity(d)) > tol)
        throw validation_error("representation must send the identity to I");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (max_abs_diff(rho.mats[a] * rho.mats[b], rho.mats[rho.group.op(a, b)]) > tol)
                throw validation_error("representation is not a homomorphism");
}

bool is_quasi_regular(const RepresentationMap& rho, double tol) {
    const int n = rho.group.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const cplx v = hs_inner(rho.mats[a], rho.mats[b]);
            const cplx want = (a == b) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
            if (std::abs(v - want) > tol) return false;
        }
    return true;
}

RepresentationMap quasi_regular_pushforward(const RepresentationMap& rho,
                                            const TransformationMatrix& u, double tol) {
    if (!same_group(rho.group, u.G))
        throw validation_error("representation group must be the transformation row group");
    validate_representation(rho, tol);
    if (!is_quasi_regular(rho, tol))
        throw validation_error("representation is not quasi-regular");
    const int n = u.G.n;
    const int d = rho.mats[0].rows();
    RepresentationMap out;
    out.group = u.Gp;
    out.mats.reserve(n);
    for (int b = 0; b < n; ++b) {
        CMatrix m(d, d);
        for (int a = 0; a < n; ++a) {
            const cplx coeff = u.U(a, b);
            if (coeff == cplx(0.0, 0.0)) continue;
            m = m + coeff * rho.mats[a];
        }
        out.mats.push_back(std::move(m));
    }
    validate_representation(out, tol);
    if (!is_quasi_regular(out, tol))
        throw validation_error("pushforward failed to be quasi-regular");
    // Span agreement: the inverse expansion must recover rho exactly.
    for (int a = 0; a < n; ++a) {
        CMatrix back(d, d);
        for (int b = 0; b < n; ++b) {
            const cplx coeff = std::conj(u.U(a, b));
            if (coeff == cplx(0.0, 0.0)) continue;
            back = back + coeff * out.mats[b];
        }
        if (max_abs_diff(back, rho.mats[a]) > tol)
            throw validation_error("pushforward span does not match the source span");
    }
    return out;
}

namespace {
std::vector<int> summand_offsets(const std::vector<int>& degrees) {
    std::vector<int> off(degrees.size() + 1, 0);
    for (size_t i = 0; i < degrees.size(); ++i) off[i + 1] = off[i] + degrees[i] * degrees[i];
    return off;
}
} // namespace

BlockDiagonalizer make_block_diagonalizer(CMatrix v, std::vector<int> degrees,
                                          const FiniteGroup& g, double tol) {
    const int n = g.n;
    if (v.rows() != n || v.cols() != n)
        throw validation_error("diagonalizer shape does not match the group");
    int sq = 0;
    for (int d : degrees) {
        if (d <= 0) throw validation_error("degrees must be positive");
        sq += d * d;
    }
    if (sq != n)
        throw validation_error("degree squares must sum to the group order");
    if (!is_unitary(v, tol))
        throw validation_error("diagonalizer must be unitary");
    const auto off = summand_offsets(degrees);
    const CMatrix vd = dagger(v);
    double worst = 0.0;
    for (int e = 0; e < n; ++e) {
        const CMatrix b = vd * regular_representation(g, e) * v;
        // Zero outside the diagonal summand blocks.
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                size_t ri = 0, ci = 0;
                while (off[ri + 1] <= r) ++ri;
                while (off[ci + 1] <= c) ++ci;
                if (ri != ci) worst = std::max(worst, std::abs(b(r, c)));
            }
        // Within summand i: block (l,l') vanishes for l != l' and the diagonal
        // blocks repeat the l = 0 copy.
        for (size_t i = 0; i < degrees.size(); ++i) {
            const int d = degrees[i];
            for (int l = 0; l < d; ++l)
                for (int lp = 0; lp < d; ++lp)
                    for (int k = 0; k < d; ++k)
                        for (int kp = 0; kp < d; ++kp) {
                            const cplx val = b(off[i] + l * d + k, off[i] + lp * d + kp);
                            const cplx want = (l == lp) ? b(off[i] + k, off[i] + kp) : cplx(0.0);
                            worst = std::max(worst, std::abs(val - want));
                        }
        }
    }
    if (worst > tol) {
        std::ostringstream os;
        os << "conjugated regular representation is not in block-diagonal form: deviation "
           << worst;
        throw validation_error(os.str());
    }
    return BlockDiagonalizer{std::move(v), std::move(degrees), g};
}

std::vector<CMatrix> x_matrices(const BlockDiagonalizer& bd, double tol) {
    const auto off = summand_offsets(bd.degrees);
    const int n = bd.G.n;
    std::vector<CMatrix> out;
    out.reserve(bd.degrees.size());
    for (size_t i = 0; i < bd.degrees.size(); ++i) {
        const int d = bd.degrees[i];
        CMatrix x(d, d);
        for (int l = 0; l < d; ++l)
            for (int k = 0; k < d; ++k) x(l, k) = std::conj(bd.V(0, off[i] + l * d + k));
        const double scale = std::sqrt(static_cast<double>(n) / d);
        if (!is_unitary(scale * x, tol))
            throw validation_error("identity-row block is not unitary up to scale");
        out.push_back(std::move(x));
    }
    return out;
}

BlockDiagonalizer normalize_block_diagonalizer(const BlockDiagonalizer& bd, double tol) {
    const auto xs = x_matrices(bd, tol);
    const int n = bd.G.n;
    CMatrix r(n, n);
    const auto off = summand_offsets(bd.degrees);
    for (size_t i = 0; i < bd.degrees.size(); ++i) {
        const int d = bd.degrees[i];
        const double scale = std::sqrt(static_cast<double>(n) / d);
        const CMatrix blk = kron(scale * xs[i], CMatrix::identity(d));
        for (int r0 = 0; r0 < d * d; ++r0)
            for (int c0 = 0; c0 < d * d; ++c0) r(off[i] + r0, off[i] + c0) = blk(r0, c0);
    }
    return make_block_diagonalizer(bd.V * r, bd.degrees, bd.G, tol);
}

TransformationMatrix general_construct(const BlockDiagonalizer& v, const BlockDiagonalizer& w,
                                       const std::vector<int>& perm,
                                       const std::vector<CMatrix>& n_mats, double tol) {
    std::vector<int> mv = v.degrees, mw = w.degrees;
    std::sort(mv.begin(), mv.end());
    std::sort(mw.begin(), mw.end());
    if (mv != mw)
        throw validation_error(
            "irrep degree multisets differ; no transformation matrix exists for this group pair");
    const size_t r = w.degrees.size();
    if (perm.size() != r)
        throw validation_error("summand permutation has the wrong length");
    std::vector<bool> seen(r, false);
    for (int p : perm) {
        if (p < 0 || static_cast<size_t>(p) >= r || seen[p])
            throw validation_error("summand permutation is not a bijection");
        seen[p] = true;
    }
    for (size_t i = 0; i < r; ++i)
        if (v.degrees[perm[i]] != w.degrees[i])
            throw validation_error(
                "summand permutation does not preserve degrees; reorder summands or adjust it");
    if (n_mats.size() != r)
        throw validation_error("one N matrix is required per summand");
    for (size_t i = 0; i < r; ++i) {
        const int d = w.degrees[i];
        if (n_mats[i].rows() != d || n_mats[i].cols() != d || !is_unitary(n_mats[i], tol))
            throw validation_error("N matrices must be unitary of the summand degree");
    }
    const int n = w.G.n;
    const auto offv = summand_offsets(v.degrees);
    const auto offw = summand_offsets(w.degrees);
    const auto xs = x_matrices(v, tol);
    const auto ys = x_matrices(w, tol);
    CMatrix phat(n, n);
    CMatrix block(n, n);
    for (size_t i = 0; i < r; ++i) {
        const int d = w.degrees[i];
        for (int l = 0; l < d; ++l)
            for (int k = 0; k < d; ++k)
                phat(offv[perm[i]] + l * d + k, offw[i] + l * d + k) = 1.0;
        // (Y^i)^-1 = (n/d) (Y^i)^dag since sqrt(n/d) Y^i is unitary.
        const CMatrix m =
            xs[perm[i]] * conjugate(n_mats[i]) * ((static_cast<double>(n) / d) * dagger(ys[i]));
        const CMatrix blk = kron(m, n_mats[i]);
        for (int r0 = 0; r0 < d * d; ++r0)
            for (int c0 = 0; c0 < d * d; ++c0) block(offw[i] + r0, offw[i] + c0) = blk(r0, c0);
    }
    CMatrix u = v.V * (phat * block) * dagger(w.V);
    return verify_transformation(std::move(u), v.G, w.G, tol);
}

BlockDiagonalizer s3_block_diagonalizer() {
    const FiniteGroup g = symmetric(3);
    const double s = 1.0 / std::sqrt(6.0);
    const cplx om = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const cplx om2 = std::conj(om);
    const cplx v3[3] = {1.0, om, om2};
    const cplx u3[3] = {1.0, om2, om};
    CMatrix v(6, 6);
    for (int t = 0; t < 3; ++t) {
        v(t, 0) = s;
        v(3 + t, 0) = s;
        v(t, 1) = s;
        v(3 + t, 1) = -s;
        v(t, 2) = s * v3[t];
        v(3 + t, 2) = s * v3[t];
        v(t, 3) = s * v3[t];
        v(3 + t, 3) = -s * v3[t];
        v(t, 4) = s * u3[t];
        v(3 + t, 4) = s * u3[t];
        v(t, 5) = -s * u3[t];
        v(3 + t, 5) = s * u3[t];
    }
    return make_block_diagonalizer(std::move(v), {1, 1, 2}, g, 1e-9);
}

IsoExtraction extract_isomorphism(const TransformationMatrix& u, double supp_eps, double tol) {
    const int n = u.G.n;
    std::vector<int> srows, scols;
    std::vector<int> row_hit(n, -1), col_hit(n, -1);
    for (int a = 0; a < n; ++a) {
        int cnt = 0, hit = -1;
        for (int b = 0; b < n; ++b)
            if (std::abs(u.U(a, b)) > supp_eps) {
                ++cnt;
                hit = b;
            }
        if (cnt == 1) {
            srows.push_back(a);
            row_hit[a] = hit;
        }
    }
    for (int b = 0; b < n; ++b) {
        int cnt = 0, hit = -1;
        for (int a = 0; a < n; ++a)
            if (std::abs(u.U(a, b)) > supp_eps) {
                ++cnt;
                hit = a;
            }
        if (cnt == 1) {
            scols.push_back(b);
            col_hit[b] = hit;
        }
    }
    if (srows.empty() || srows[0] != 0)
        throw validation_error("identity row must have a single support entry; corrupt input");
    if (scols.empty() || scols[0] != 0)
        throw validation_error("identity column must have a single support entry; corrupt input");
    if (srows.size() != scols.size())
        throw validation_error(
            "single-support rows and columns do not pair up; corrupt transformation matrix");
    if (!is_subgroup(u.G, srows))
        throw validation_error("single-support rows do not form a subgroup");
    if (!is_subgroup(u.Gp, scols))
        throw validation_error("single-support columns do not form a subgroup");
    // sigma must carry the rows onto the columns bijectively.
    std::vector<int> sigma;
    sigma.reserve(srows.size());
    for (int a : srows) {
        const int b = row_hit[a];
        if (col_hit[b] != a)
            throw validation_error(
                "single-support rows and columns do not pair up; corrupt transformation matrix");
        sigma.push_back(b);
    }
    for (size_t i = 0; i < srows.size(); ++i)
        for (size_t j = 0; j < srows.size(); ++j) {
            const int prod = u.G.op(srows[i], srows[j]);
            const auto it = std::lower_bound(srows.begin(), srows.end(), prod);
            const size_t k = static_cast<size_t>(it - srows.begin());
            if (sigma[k] != u.Gp.op(sigma[i], sigma[j]))
                throw validation_error("support pairing is not a homomorphism; corrupt input");
        }
    IsoExtraction out;
    out.S = Subgroup{u.G, srows};
    out.Sp = Subgroup{u.Gp, scols};
    out.sigma = sigma;
    out.chi.reserve(srows.size());
    for (size_t i = 0; i < srows.size(); ++i) out.chi.push_back(u.U(srows[i], sigma[i]));
    out.chip.reserve(scols.size());
    for (int b : scols) out.chip.push_back(u.U(col_hit[b], b));
    auto check_character = [&](const std::vector<int>& elems, const FiniteGroup& g,
                               const std::vector<cplx>& chi) {
        for (size_t i = 0; i < elems.size(); ++i) {
            if (std::abs(std::abs(chi[i]) - 1.0) > tol)
                throw validation_error("extracted character is not unimodular");
            for (size_t j = 0; j < elems.size(); ++j) {
                const int prod = g.op(elems[i], elems[j]);
                const auto it = std::lower_bound(elems.begin(), elems.end(), prod);
                const size_t k = static_cast<size_t>(it - elems.begin());
                if (std::abs(chi[k] - chi[i] * chi[j]) > tol)
                    throw validation_error("extracted character is not multiplicative");
            }
        }
    };
    check_character(srows, u.G, out.chi);
    check_character(scols, u.Gp, out.chip);
    return out;
}

TransformationMatrix product_extension(const GroupBijection& sigma, const std::vector<cplx>& chi,
                                       const TransformationMatrix& w, double tol) {
    if (!is_isomorphism(sigma))
        throw validation_error("sigma must be a group isomorphism");
    const FiniteGroup& h = sigma.domain;
    const FiniteGroup& hp = sigma.codomain;
    if (static_cast<int>(chi.size()) != h.n)
        throw validation_error("chi must assign one value per element");
    for (int a = 0; a < h.n; ++a) {
        if (std::abs(std::abs(chi[a]) - 1.0) > tol)
            throw validation_error("chi must be unimodular");
        for (int b = 0; b < h.n; ++b)
            if (std::abs(chi[h.op(a, b)] - chi[a] * chi[b]) > tol)
                throw validation_error("chi must be a linear character");
    }
    CMatrix v(h.n, hp.n);
    for (int a = 0; a < h.n; ++a) v(a, sigma.map[a]) = chi[a];
    return verify_transformation(kron(v, w.U), direct_product(h, w.G),
                                 direct_product(hp, w.Gp), tol);
}

TransformationMatrix sub_transformation(const TransformationMatrix& u, const Subgroup& h,
                                        const Subgroup& hp, double tol) {
    if (!same_group(h.parent, u.G) || !same_group(hp.parent, u.Gp))
        throw validation_error("subgroups must live in the transformation's group pair");
    if (h.elements.size() != hp.elements.size())
        throw validation_error("subgroup orders differ");
    const int m = static_cast<int>(h.elements.size());
    CMatrix s(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) s(i, j) = u.U(h.elements[i], hp.elements[j]);
    try {
        return verify_transformation(std::move(s), subgroup_as_group(h),
                                     subgroup_as_group(hp), tol);
    } catch (const validation_error& e) {
        throw validation_error(
            std::string("restriction is not a transformation matrix; the supplied subgroups "
                        "are not the matched pair: ") +
            e.what());
    }
}

double char_correlation_relation(const GroupBijection& pi,
                                 const std::optional<GroupBijection>& phi,
                                 const std::optional<GroupBijection>& phip) {
    const FiniteGroup& G = pi.codomain;
    const FiniteGroup& Gp = pi.domain;
    if (!G.abelian() || !Gp.abelian())
        throw validation_error("character relation requires abelian groups");
    // For abelian groups pointwise character products multiply indices through
    // the group law, so the index-identity map is an isomorphism dual -> group.
    GroupBijection f = phi ? *phi : identity_bijection(G);
    GroupBijection fp = phip ? *phip : identity_bijection(Gp);
    if (!is_isomorphism(f) || !is_isomorphism(fp))
        throw validation_error("phi maps must be group isomorphisms");
    const GroupBijection pihat = compose(compose(inverse(f), pi), fp);
    const CMatrix lhs = correlation_of(abelian_transformation(pihat)).mat;
    const CMatrix d = classical_corr_matrix(pi).mat;
    const CMatrix rhs = dagger(character_table(G)) * dagger(perm_matrix(f)) * d *
                        perm_matrix(fp) * character_table(Gp);
    return max_abs_diff(lhs, rhs);
}

} // namespace giqls
