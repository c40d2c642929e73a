#pragma once

#include <optional>
#include <utility>

#include "giqls/nonlocal.hpp"

namespace giqls {

// Connected components of the bipartite graph on G (rows) and G' (columns)
// with an edge wherever Q is nonzero. Row and column classes of a component
// always have equal size. The component containing the identities comes
// first; the rest are ordered by their least row index.
struct BipartiteComponents {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> comps;
    int k() const { return static_cast<int>(comps.size()); }
};

BipartiteComponents auxiliary_components(const CorrelationMatrix& q, double supp_eps = 1e-9);

struct Digraph {
    int n = 0;
    std::vector<std::vector<bool>> adj;
};

// Arcs g -> gc for every c in the connection (loops appear iff e is in it),
// matching the support-graph convention.
Digraph cayley_digraph(const FiniteGroup& g, const std::vector<int>& connection);

// The digraph pair Cay(G, C_I), Cay(G', C'_I) for a subset I of component
// indices, with C_I the union of the row classes and C'_I of the column
// classes.
struct CayleyPair {
    std::vector<int> I;
    std::vector<int> C;
    std::vector<int> Cp;
    Digraph X;
    Digraph Y;
};

CayleyPair pairs_for(const CorrelationMatrix& q, const BipartiteComponents& bc,
                     const std::vector<int>& I);

// Q 1_{C'} = 1_C : exactly the condition for the pair to be winnable with the
// correlation Q.
bool verify_indicator(const CorrelationMatrix& q, const std::vector<int>& c,
                      const std::vector<int>& cp, double tol = 1e-9);

// Digraph isomorphism by color refinement plus backtracking; returns a vertex
// map from x to y when one exists. Capped at 64 vertices.
std::optional<std::vector<int>> digraph_isomorphic(const Digraph& x, const Digraph& y);

struct HuntEntry {
    std::vector<int> I;
    int csize = 0;
    bool isomorphic = false;
};

// One entry per subset of components up to complement symmetry (a pair and
// its complement pair have the same verdict). k is capped at 20 unless a
// prefix limit is supplied.
struct HuntReport {
    int k = 0;
    std::vector<HuntEntry> entries;
    bool found_nonisomorphic = false;
};

HuntReport hunt(const CorrelationMatrix& q, double supp_eps = 1e-9,
                std::optional<long long> limit = std::nullopt);

} // namespace giqls
