#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "giqls/cayleypairs.hpp"
#include "giqls/error.hpp"

using namespace giqls;

namespace {

const FiniteGroup Z4 = cyclic(4);
const FiniteGroup K4 = direct_product(cyclic(2), cyclic(2));
const FiniteGroup Z6 = cyclic(6);

CorrelationMatrix fixture_correlation() {
    return correlation_of(verify_transformation(fixtures::z4z22_u(), Z4, K4, 1e-9));
}

CorrelationMatrix reference_correlation() {
    FiniteGroup g = cyclic(2);
    for (int i = 1; i < 4; ++i) g = direct_product(g, cyclic(2));
    return correlation_of(abelian_transformation(
        make_bijection(g, g, parse_cycles(fixtures::z24_pihat_cycles(), 16))));
}

Digraph make_digraph(int n, const std::vector<std::pair<int, int>>& arcs) {
    Digraph d;
    d.n = n;
    d.adj.assign(n, std::vector<bool>(n, false));
    for (const auto& [u, v] : arcs) d.adj[u][v] = true;
    return d;
}

bool map_preserves_arcs(const Digraph& x, const Digraph& y, const std::vector<int>& map) {
    for (int u = 0; u < x.n; ++u)
        for (int v = 0; v < x.n; ++v)
            if (x.adj[u][v] != y.adj[map[u]][map[v]]) return false;
    return true;
}

} // namespace

TEST_CASE("bipartite components of the (Z4, Z2^2) correlation") {
    const CorrelationMatrix q = fixture_correlation();
    const BipartiteComponents bc = auxiliary_components(q, 1e-9);
    REQUIRE(bc.k() == 3);
    CHECK(bc.comps[0].first == std::vector<int>{0});
    CHECK(bc.comps[0].second == std::vector<int>{0});
    CHECK(bc.comps[1].first == std::vector<int>{1, 3});
    CHECK(bc.comps[1].second == std::vector<int>{2, 3});
    CHECK(bc.comps[2].first == std::vector<int>{2});
    CHECK(bc.comps[2].second == std::vector<int>{1});
}

TEST_CASE("bipartite components of the 16-element correlation") {
    const BipartiteComponents bc = auxiliary_components(reference_correlation(), 1e-9);
    REQUIRE(bc.k() == 2);
    CHECK(bc.comps[0].first == std::vector<int>{0});
    CHECK(bc.comps[0].second == std::vector<int>{0});
    CHECK(bc.comps[1].first.size() == 15);
    CHECK(bc.comps[1].second.size() == 15);
}

TEST_CASE("cayley digraph construction") {
    const Digraph c6 = cayley_digraph(Z6, {1});
    for (int v = 0; v < 6; ++v)
        for (int w = 0; w < 6; ++w) CHECK(c6.adj[v][w] == (w == (v + 1) % 6));
    // the identity in the connection produces loops
    const Digraph loops = cayley_digraph(Z4, {0});
    for (int v = 0; v < 4; ++v)
        for (int w = 0; w < 4; ++w) CHECK(loops.adj[v][w] == (v == w));
}

TEST_CASE("pairs for a component subset") {
    const CorrelationMatrix q = fixture_correlation();
    const BipartiteComponents bc = auxiliary_components(q, 1e-9);
    const CayleyPair cp = pairs_for(q, bc, {1});
    CHECK(cp.C == std::vector<int>{1, 3});
    CHECK(cp.Cp == std::vector<int>{2, 3});
    // both digraphs are undirected 4-cycles; an isomorphism exists and maps
    // arcs onto arcs
    const auto iso = digraph_isomorphic(cp.X, cp.Y);
    REQUIRE(iso.has_value());
    CHECK(map_preserves_arcs(cp.X, cp.Y, *iso));
    // errors
    CHECK_THROWS_AS(pairs_for(q, bc, {1, 1}), validation_error);
    CHECK_THROWS_AS(pairs_for(q, bc, {3}), validation_error);
}

TEST_CASE("indicator identity") {
    const CorrelationMatrix q = fixture_correlation();
    const BipartiteComponents bc = auxiliary_components(q, 1e-9);
    // every component union satisfies it
    CHECK(verify_indicator(q, {}, {}));
    CHECK(verify_indicator(q, {0}, {0}));
    CHECK(verify_indicator(q, {1, 3}, {2, 3}));
    CHECK(verify_indicator(q, {0, 1, 3}, {0, 2, 3}));
    // a mismatched pair fails
    CHECK_FALSE(verify_indicator(q, {0}, {0, 1}));
    CHECK_FALSE(verify_indicator(q, {1, 3}, {0, 1}));
    CHECK_THROWS_AS(verify_indicator(q, {7}, {0}), validation_error);
}

TEST_CASE("digraph isomorphism") {
    // rotations of a directed triangle
    const Digraph t1 = make_digraph(3, {{0, 1}, {1, 2}, {2, 0}});
    const Digraph t2 = make_digraph(3, {{0, 2}, {2, 1}, {1, 0}});
    const auto iso = digraph_isomorphic(t1, t2);
    REQUIRE(iso.has_value());
    CHECK(map_preserves_arcs(t1, t2, *iso));
    // a path is not a cycle
    CHECK_FALSE(digraph_isomorphic(make_digraph(3, {{0, 1}, {1, 2}}), t1).has_value());
    // color refinement alone cannot split a 4-cycle from two 2-cycles; the
    // backtracking stage must
    const Digraph c4 = make_digraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const Digraph c22 = make_digraph(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    CHECK_FALSE(digraph_isomorphic(c4, c22).has_value());
    // loops are part of the signature
    CHECK_FALSE(digraph_isomorphic(make_digraph(1, {{0, 0}}), make_digraph(1, {})).has_value());
    // trivial and error cases
    CHECK(digraph_isomorphic(make_digraph(0, {}), make_digraph(0, {})).has_value());
    CHECK_FALSE(digraph_isomorphic(make_digraph(2, {}), make_digraph(3, {})).has_value());
    Digraph big;
    big.n = 65;
    big.adj.assign(65, std::vector<bool>(65, false));
    CHECK_THROWS_AS(digraph_isomorphic(big, big), validation_error);
    // circulant pair with equal connection size but different structure:
    // a 6-cycle against two triangles
    CHECK_FALSE(digraph_isomorphic(cayley_digraph(Z6, {1}), cayley_digraph(Z6, {2}))
                    .has_value());
    // reversing a cycle is a relabeling
    const auto rev = digraph_isomorphic(cayley_digraph(Z6, {1}), cayley_digraph(Z6, {5}));
    REQUIRE(rev.has_value());
    CHECK(map_preserves_arcs(cayley_digraph(Z6, {1}), cayley_digraph(Z6, {5}), *rev));
}

TEST_CASE("hunt over the (Z4, Z2^2) correlation") {
    const HuntReport rep = hunt(fixture_correlation(), 1e-9, std::nullopt);
    CHECK(rep.k == 3);
    REQUIRE(rep.entries.size() == 4); // 2^3 subsets up to complement
    CHECK_FALSE(rep.found_nonisomorphic);
    CHECK(rep.entries[0].I.empty());
    CHECK(rep.entries[0].csize == 0);
    CHECK(rep.entries[1].I == std::vector<int>{0});
    CHECK(rep.entries[2].I == std::vector<int>{1});
    CHECK(rep.entries[2].csize == 2);
    CHECK(rep.entries[3].I == std::vector<int>{0, 1});
    for (const auto& e : rep.entries) CHECK(e.isomorphic);
    // prefix limit
    CHECK(hunt(fixture_correlation(), 1e-9, 2).entries.size() == 2);
}

TEST_CASE("hunt over the 16-element correlation") {
    const HuntReport rep = hunt(reference_correlation(), 1e-9, std::nullopt);
    CHECK(rep.k == 2);
    REQUIRE(rep.entries.size() == 2);
    CHECK_FALSE(rep.found_nonisomorphic);
    CHECK(rep.entries[0].csize == 0);
    CHECK(rep.entries[1].I == std::vector<int>{0});
    CHECK(rep.entries[1].csize == 1);
}

TEST_CASE("hunt flags a nonisomorphic pair") {
    // permutation correlation pairing row x with column sigma^-1(x); the
    // subset through row 1 pairs the 6-cycle Cay(Z6,{1}) with the two
    // triangles Cay(Z6,{2})
    CMatrix p(6, 6);
    p(0, 0) = 1;
    p(1, 2) = 1;
    p(2, 4) = 1;
    p(3, 1) = 1;
    p(4, 3) = 1;
    p(5, 5) = 1;
    const CorrelationMatrix q = make_correlation(p, Z6, Z6, 1e-9);
    const BipartiteComponents bc = auxiliary_components(q, 1e-9);
    CHECK(bc.k() == 6);
    const CayleyPair cp = pairs_for(q, bc, {1});
    CHECK(cp.C == std::vector<int>{1});
    CHECK(cp.Cp == std::vector<int>{2});
    CHECK_FALSE(digraph_isomorphic(cp.X, cp.Y).has_value());
    const HuntReport rep = hunt(q, 1e-9, std::nullopt);
    CHECK(rep.k == 6);
    CHECK(rep.found_nonisomorphic);
}
