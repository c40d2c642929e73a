#pragma once

#include <cstdint>
#include <optional>

#include "giqls/qtransform.hpp"

namespace giqls {

// Cayley digraph data of the support of a correlation matrix: vertices are
// G x G', and (a,b) -> (c,d) is an arc iff Q_{a^-1 c, b^-1 d} is nonzero.
// The connection lists the product-group indices with nonzero Q entry, the
// identity excluded.
struct SupportGraph {
    FiniteGroup product;
    FiniteGroup G;
    FiniteGroup Gp;
    std::vector<int> connection;
};

SupportGraph support_graph(const CorrelationMatrix& q, double supp_eps = 1e-9);

// K = <connection>, H and H' its coordinate slices through the identity.
// Weak components of the support graph are the left K-cosets; the support of
// Q is confined to matched (H-coset) x (H'-coset) blocks, each of which is a
// rescaled correlation matrix of weight s = |H| / |G|.
struct Decomposition {
    Subgroup K;  // of G x G'
    Subgroup H;  // of G, normal
    Subgroup Hp; // of G', normal
    std::vector<int> coset_reps; // left K-coset representatives, identity first
    double s = 0.0;
    // Full-shape matrices p_i with Q = sum_i s * p_i; p_i carries (1/s) Q on
    // the i-th matched coset block and zero elsewhere.
    std::vector<CMatrix> component_matrices;
    std::vector<std::vector<int>> block_rows;
    std::vector<std::vector<int>> block_cols;
    // Q restricted to (H, H'): an exact correlation matrix of the subgroup pair.
    std::optional<CorrelationMatrix> identity_block;
};

Decomposition component_subgroup(const CorrelationMatrix& q, double supp_eps = 1e-9);
Decomposition decompose(const CorrelationMatrix& q, double supp_eps = 1e-9, double tol = 1e-9);

// Assigns weight Q_{x,y}/|G| to every arc of quotient type (x,y) and checks
// the flow is nowhere-zero and balanced at each vertex, and that every weak
// component is strongly connected.
bool flow_check(const CorrelationMatrix& q, double supp_eps = 1e-9, double tol = 1e-9);

// Backtracking search for a full clique {(pi(y), y)} in the support graph,
// i.e. a classical bijection whose correlation support sits inside supp(Q).
// Absence of such a clique is strong nonlocality of the measurement built
// from the matching quantum Latin square.
struct SearchReport {
    enum class Verdict { clique_found, strongly_nonlocal };
    Verdict verdict = Verdict::strongly_nonlocal;
    std::optional<GroupBijection> witness; // identity-fixing, domain G'
    long long nodes = 0;
    double elapsed_seconds = 0.0;
};

SearchReport has_full_clique(const CorrelationMatrix& q, double supp_eps = 1e-9);

// U (x) I_m over (G x Z_m, G' x Z_m); exact for the character construction,
// where it realizes pihat extended by the identity on the new factor.
TransformationMatrix tensor_lift(const TransformationMatrix& u, int m);
CorrelationMatrix tensor_lift(const CorrelationMatrix& q, int m);

struct RandomHit {
    long long trial = 0;
    GroupBijection pihat;
    SearchReport report;
};

// Draws `trials` identity-fixing character bijections from the seeded
// generator, builds each Q^pihat and keeps those with no full clique. The
// trial stream is fixed by the seed; jobs only spreads the evaluation.
std::vector<RandomHit> random_search(const FiniteGroup& G, const FiniteGroup& Gp,
                                     long long trials, std::uint64_t seed, int jobs = 0);

} // namespace giqls
