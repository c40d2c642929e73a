#pragma once

#include <optional>
#include <utility>

#include "giqls/groups.hpp"

namespace giqls {

// G x G' doubly stochastic matrix with entry (0,0) = 1. Encodes the group
// invariant correlation p(b,d|a,c) = D_{b^-1 d, a^-1 c} / |G|; rows live in
// G (output quotients), columns in G' (input quotients).
struct CorrelationMatrix {
    CMatrix mat;
    FiniteGroup G;  // rows
    FiniteGroup Gp; // columns
};

bool is_correlation_matrix(const CMatrix& m, double tol);
// Validates (doubly stochastic, corner 1) and wraps.
CorrelationMatrix make_correlation(CMatrix m, const FiniteGroup& G, const FiniteGroup& Gp,
                                   double tol = 1e-9);

// D^pi by the counting form: D_{s,t} = (1/n) |{y in G' : pi(y)^-1 pi(yt) = s}|.
// pi maps G' to G, i.e. pi.domain = G', pi.codomain = G.
CorrelationMatrix classical_corr_matrix(const GroupBijection& pi);

// R^G, the n^2 x n matrix with R_{(a,b),c} = 1 iff b^-1 a = c; pair rows
// encoded (a,b) -> a*n+b.
CMatrix reduction_matrix(const FiniteGroup& g);

// Same value as classical_corr_matrix, via (1/n) (R^G)^T (P^pi x P^pi) R^G'.
CorrelationMatrix classical_via_reduction(const GroupBijection& pi);

// Third route: the average (1/n) sum_g P^{pi(g)^-1} P^pi P^g.
CorrelationMatrix corr_by_average(const GroupBijection& pi);

// Matrix product; correlations compose contravariantly through the shared
// middle group.
CorrelationMatrix compose_corr(const CorrelationMatrix& d1, const CorrelationMatrix& d2);

// If D is a permutation matrix, returns the bijection, which is then required
// to be a group isomorphism; a permutation that fails that check signals a
// corrupt input and throws. Non-permutation D returns nullopt.
std::optional<GroupBijection> classify_perm_corr(const CorrelationMatrix& d, double tol = 1e-9);

// True iff pi2 = tau_a o pi1 o tau_b for some a in G, b in G'.
bool equivalent_bijections(const GroupBijection& pi1, const GroupBijection& pi2);

// Deduplicated {D^pi}; only identity-fixing representatives are iterated
// since every equivalence class contains one. n <= 8.
std::vector<CorrelationMatrix> enumerate_classical_vertices(const FiniteGroup& G, const FiniteGroup& Gp);

// Entrywise check of target = sum w_i * D_i; weights must be nonnegative and
// sum to 1 within tol (violations throw).
bool verify_convex_combination(const CorrelationMatrix& target,
                               const std::vector<std::pair<double, CorrelationMatrix>>& terms,
                               double tol = 1e-9);

// Minimum of the real Frobenius form Tr(M^T D^pi) over all of bij(G,G'),
// with the lexicographically first attaining bijection. n <= 8.
std::pair<double, GroupBijection> min_hyperplane(const FiniteGroup& G, const FiniteGroup& Gp,
                                                 const CMatrix& m);

// Rounded-entry key at 1e-9 granularity, used to deduplicate matrices whose
// entries are small algebraic numbers.
std::vector<long long> dedup_key(const CMatrix& m);

} // namespace giqls
