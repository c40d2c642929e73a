#pragma once

#include <optional>
#include <string>
#include <vector>

#include "giqls/cmatrix.hpp"

namespace giqls {

// Finite group as a multiplication table over element indices 0..n-1.
// The identity is always index 0; that pins D_{e,e} to the (0,0) corner
// everywhere downstream.
struct FiniteGroup {
    int n = 0;
    std::vector<std::vector<int>> mult;
    std::vector<int> inv;
    // Cyclic decomposition, present iff built as a product of cyclic groups.
    std::optional<std::vector<int>> abelian_factors;
    // Irrep degrees when known from a fixture or a user-supplied file.
    std::optional<std::vector<int>> degrees_meta;
    std::string name;

    int op(int a, int b) const { return mult[a][b]; }
    int invert(int a) const { return inv[a]; }
    bool abelian() const { return abelian_factors.has_value(); }
};

// Structural equality of tables (names ignored).
bool same_group(const FiniteGroup& a, const FiniteGroup& b);

FiniteGroup cyclic(int n);
// Index (a,b) -> a*|H|+b, identity (0,0) -> 0.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);
// n <= 6. For n = 3 the element order is the fixture order
// e, (123), (321), (12), (23), (13); composition is (ab)(x) = a(b(x)).
FiniteGroup symmetric(int n);
// Validates identity at 0, inverses, associativity; reports each failure
// distinctly.
FiniteGroup from_table(const std::vector<std::vector<int>>& table);

// Normalized character table of an abelian product group: entry (a,x) =
// (1/sqrt(n)) exp(2*pi*i * sum_j a_j x_j / d_j) over mixed-radix digits,
// most significant digit first, matching the direct_product encoding.
CMatrix character_table(const FiniteGroup& g);

// Left regular representation, (lambda(g))_{x,y} = delta_{x,gy}.
CMatrix regular_representation(const FiniteGroup& g, int elem);

struct Subgroup {
    FiniteGroup parent;
    std::vector<int> elements; // sorted, always contains 0
};

Subgroup subgroup_generated(const FiniteGroup& g, const std::vector<int>& gens);
bool is_subgroup(const FiniteGroup& g, const std::vector<int>& sorted_elements);
bool is_normal(const Subgroup& h);
// Reindexed group on the subgroup's elements (sorted, so identity stays 0).
FiniteGroup subgroup_as_group(const Subgroup& h);

// Sorted multiset of irreducible representation degrees. Abelian groups give
// all ones; otherwise degrees_meta must be present (fixture or user file) or
// this throws: degrees are never guessed.
std::vector<int> irrep_degree_multiset(const FiniteGroup& g);
bool same_degree_multiset(const FiniteGroup& g, const FiniteGroup& h);

// Bijection from `domain` to `codomain`; map[y] is the image of y.
// Throughout, bij(G,G') denotes the set of bijections from G' to G, so a
// bijection used as pi in a (G,G') context has domain G' and codomain G.
struct GroupBijection {
    FiniteGroup domain;
    FiniteGroup codomain;
    std::vector<int> map;
};

GroupBijection make_bijection(const FiniteGroup& domain, const FiniteGroup& codomain,
                              std::vector<int> map);
GroupBijection identity_bijection(const FiniteGroup& g);
// tau_a : x -> ax on (G,G).
GroupBijection translation(const FiniteGroup& g, int a);
// (f o g)(x) = f(g(x)); g's codomain must match f's domain.
GroupBijection compose(const GroupBijection& f, const GroupBijection& g);
GroupBijection inverse(const GroupBijection& f);
bool is_isomorphism(const GroupBijection& f);

// P^pi with P_{pi(y),y} = 1: rows indexed by the codomain, columns by the
// domain.
CMatrix perm_matrix(const GroupBijection& pi);

// Cycle notation over element indices, fixed points omitted: "(1,3)(2,4)".
// "()" (or empty text) is the identity.
std::vector<int> parse_cycles(const std::string& text, int n);
std::string format_cycles(const std::vector<int>& map);

// Mixed-radix digits of idx, most significant first.
std::vector<int> mixed_radix_digits(int idx, const std::vector<int>& factors);

} // namespace giqls
