#pragma once

#include <optional>
#include <string>

#include "giqls/classical.hpp"

namespace giqls {

// Worst violation of each defining condition of a transformation matrix,
// together with the offending indices. All three (plus the derived dual
// convolution) must sit within tolerance for the matrix to qualify.
struct TransformViolation {
    double unitarity = 0.0;
    double conj_symmetry = 0.0;   // max |conj(U_{a,b}) - U_{a^-1,b^-1}|
    double convolution = 0.0;     // max |U_{ab,c} - sum_{xy=c} U_{a,x} U_{b,y}|
    double dual_convolution = 0.0;
    int worst_conj[2] = {0, 0};
    int worst_conv[3] = {0, 0, 0}; // (a, b, c)
    int worst_dual[3] = {0, 0, 0};

    bool ok(double tol) const;
    std::string describe() const;
};

// G x G' unitary satisfying the transformation conditions; rows indexed by G,
// columns by G'.
struct TransformationMatrix {
    CMatrix U;
    FiniteGroup G;
    FiniteGroup Gp;
    bool validated = false;
};

TransformViolation check_transformation(const CMatrix& u, const FiniteGroup& G,
                                        const FiniteGroup& Gp);
// Throws with the per-condition report when any violation exceeds tol.
TransformationMatrix verify_transformation(CMatrix u, const FiniteGroup& G,
                                           const FiniteGroup& Gp, double tol = 1e-9);

// Character-conjugation construction for abelian pairs: U = C^dag P^pihat C'.
// pihat permutes character indices, i.e. it is a bijection from the dual of
// G' (indexed like G') to the dual of G (indexed like G).
TransformationMatrix abelian_transformation(const GroupBijection& pihat);

// All n! abelian transformation matrices for the pair, in lexicographic pihat
// order. Capped at n <= 6 unless limit asks for a prefix of the enumeration.
std::vector<TransformationMatrix> enumerate_abelian_transformations(
    const FiniteGroup& G, const FiniteGroup& Gp,
    std::optional<long long> limit = std::nullopt);

// Q = U o conj(U), validated as a correlation matrix.
CorrelationMatrix correlation_of(const TransformationMatrix& u);

TransformationMatrix compose_transformations(const TransformationMatrix& u1,
                                             const TransformationMatrix& u2);
TransformationMatrix dagger_transformation(const TransformationMatrix& u);
TransformationMatrix conj_transformation(const TransformationMatrix& u);

// vectors[a][b] is psi_{a,b}, a vector of the ambient dimension.
struct QuantumLatinSquare {
    FiniteGroup G;
    FiniteGroup Gp;
    std::vector<std::vector<std::vector<cplx>>> vectors;
};

// psi_{a,b} = sum_x U_{a, x^-1 b} e_x, or with columns of `basis` (orthonormal,
// ambient dim x n) in place of the standard e_x.
QuantumLatinSquare reconstruct_qls(const TransformationMatrix& u,
                                   const std::optional<CMatrix>& basis = std::nullopt,
                                   double tol = 1e-9);

// Gram-based inverse of reconstruct_qls: U_{x,y} = <psi_{e,e}, psi_{x,y}>,
// after checking the Gram matrix only depends on the quotients.
TransformationMatrix qls_transformation(const QuantumLatinSquare& q, double tol = 1e-9);

// U lambda'(b) U^dag = sum_a U_{a,b} lambda(a) for every b.
bool conjugation_check(const TransformationMatrix& u, double tol = 1e-9,
                       double* worst = nullptr);

// One unitary per group element, acting on a common space.
struct RepresentationMap {
    FiniteGroup group;
    std::vector<CMatrix> mats;
};

RepresentationMap regular_rep_map(const FiniteGroup& g);
// rho(e) = I, homomorphism, unitary images; throws otherwise.
void validate_representation(const RepresentationMap& rho, double tol = 1e-9);
// Images orthonormal under the normalized trace inner product.
bool is_quasi_regular(const RepresentationMap& rho, double tol = 1e-9);

// rho'(b) = sum_a U_{a,b} rho(a); validated as a quasi-regular representation
// of G' with the same span as rho.
RepresentationMap quasi_regular_pushforward(const RepresentationMap& rho,
                                            const TransformationMatrix& u, double tol = 1e-9);

// Unitary V with V^dag lambda(g) V = direct sum over summands i of
// I_{d_i} (x) m_i(g). Column (i, l, k) sits at offset_i + l*d_i + k where
// offset_i = sum_{j<i} d_j^2.
struct BlockDiagonalizer {
    CMatrix V;
    std::vector<int> degrees;
    FiniteGroup G;
};

BlockDiagonalizer make_block_diagonalizer(CMatrix v, std::vector<int> degrees,
                                          const FiniteGroup& g, double tol = 1e-9);

// X^i_{l,k} = conj(V_{e,(i,l,k)}); each sqrt(n/d_i) X^i is unitary.
std::vector<CMatrix> x_matrices(const BlockDiagonalizer& bd, double tol = 1e-9);

// Right-multiplies V by the direct sum of (sqrt(n/d_i) X^i) (x) I_{d_i}, after
// which every X-matrix is sqrt(d_i/n) I.
BlockDiagonalizer normalize_block_diagonalizer(const BlockDiagonalizer& bd, double tol = 1e-9);

// The general construction: given diagonalizers V (for G) and W (for G'),
// a degree-preserving summand permutation and unitaries N^i of size d_i,
// returns V (Phat . blockdiag_i (M^i (x) N^i)) W^dag with
// M^i = X^{perm(i)} conj(N^i) (Y^i)^-1. Requires equal degree multisets.
TransformationMatrix general_construct(const BlockDiagonalizer& v, const BlockDiagonalizer& w,
                                       const std::vector<int>& perm,
                                       const std::vector<CMatrix>& n_mats, double tol = 1e-9);

// The 6x6 diagonalizer for the order-6 symmetric group used throughout the
// worked examples; degrees (1,1,2).
BlockDiagonalizer s3_block_diagonalizer();

// Rows with a single support entry cut out subgroups S <= G, S' <= G' with an
// isomorphism sigma: S -> S' and linear characters chi, chi' read off the
// surviving entries.
struct IsoExtraction {
    Subgroup S;
    Subgroup Sp;
    std::vector<int> sigma;  // along S.elements, values in Sp.elements
    std::vector<cplx> chi;   // chi[k] = U(S.elements[k], sigma[k])
    std::vector<cplx> chip;  // along Sp.elements
};

IsoExtraction extract_isomorphism(const TransformationMatrix& u, double supp_eps = 1e-9,
                                  double tol = 1e-9);

// V_{h,h'} = chi(h) if h' = sigma(h), else 0; returns kron(V, W.U) over the
// product groups. sigma maps H to H' (domain H, codomain H'), chi is a linear
// character of H given along its elements.
TransformationMatrix product_extension(const GroupBijection& sigma,
                                       const std::vector<cplx>& chi,
                                       const TransformationMatrix& w, double tol = 1e-9);

// Restriction of U to subgroup rows/columns, revalidated for the subgroup pair.
TransformationMatrix sub_transformation(const TransformationMatrix& u, const Subgroup& h,
                                        const Subgroup& hp, double tol = 1e-9);

// Checks Q^{pihat} = C^dag Phi_m^dag D^pi Phi'_m C' with
// pihat = Phi^-1 o pi o Phi'. Phi defaults to the index-identity isomorphism
// between the dual group and the group itself. Returns the max deviation.
double char_correlation_relation(const GroupBijection& pi,
                                 const std::optional<GroupBijection>& phi = std::nullopt,
                                 const std::optional<GroupBijection>& phip = std::nullopt);

} // namespace giqls
