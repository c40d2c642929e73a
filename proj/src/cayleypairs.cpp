#include "giqls/cayleypairs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "giqls/error.hpp"

namespace giqls {

BipartiteComponents auxiliary_components(const CorrelationMatrix& q, double supp_eps) {
    const int n = q.G.n;
    const int np = q.Gp.n;
    // Union-find over rows [0,n) and columns [n, n+np).
    std::vector<int> parent(n + np);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < np; ++y)
            if (std::abs(q.mat(x, y)) > supp_eps) parent[find(x)] = find(n + y);
    std::map<int, std::pair<std::vector<int>, std::vector<int>>> groups;
    for (int x = 0; x < n; ++x) groups[find(x)].first.push_back(x);
    for (int y = 0; y < np; ++y) groups[find(n + y)].second.push_back(y);
    BipartiteComponents bc;
    std::vector<std::pair<int, std::pair<std::vector<int>, std::vector<int>>>> ordered;
    for (auto& [root, comp] : groups) {
        if (comp.first.empty() || comp.second.empty())
            throw validation_error("bipartite component misses one side; not doubly stochastic");
        if (comp.first.size() != comp.second.size())
            throw validation_error("bipartite component classes have unequal size");
        ordered.emplace_back(comp.first.front(), std::move(comp));
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [least, comp] : ordered) bc.comps.push_back(std::move(comp));
    return bc;
}

Digraph cayley_digraph(const FiniteGroup& g, const std::vector<int>& connection) {
    Digraph d;
    d.n = g.n;
    d.adj.assign(g.n, std::vector<bool>(g.n, false));
    for (int v = 0; v < g.n; ++v)
        for (int c : connection) d.adj[v][g.op(v, c)] = true;
    return d;
}

CayleyPair pairs_for(const CorrelationMatrix& q, const BipartiteComponents& bc,
                     const std::vector<int>& I) {
    CayleyPair cp;
    cp.I = I;
    std::sort(cp.I.begin(), cp.I.end());
    for (size_t j = 1; j < cp.I.size(); ++j)
        if (cp.I[j] == cp.I[j - 1]) throw validation_error("subset has repeated indices");
    for (int i : cp.I) {
        if (i < 0 || i >= bc.k()) throw validation_error("component index out of range");
        cp.C.insert(cp.C.end(), bc.comps[i].first.begin(), bc.comps[i].first.end());
        cp.Cp.insert(cp.Cp.end(), bc.comps[i].second.begin(), bc.comps[i].second.end());
    }
    std::sort(cp.C.begin(), cp.C.end());
    std::sort(cp.Cp.begin(), cp.Cp.end());
    cp.X = cayley_digraph(q.G, cp.C);
    cp.Y = cayley_digraph(q.Gp, cp.Cp);
    return cp;
}

bool verify_indicator(const CorrelationMatrix& q, const std::vector<int>& c,
                      const std::vector<int>& cp, double tol) {
    const int n = q.G.n;
    const int np = q.Gp.n;
    std::vector<double> want(n, 0.0);
    for (int x : c) {
        if (x < 0 || x >= n) throw validation_error("connection element out of range");
        want[x] = 1.0;
    }
    std::vector<char> incp(np, 0);
    for (int y : cp) {
        if (y < 0 || y >= np) throw validation_error("connection element out of range");
        incp[y] = 1;
    }
    for (int x = 0; x < n; ++x) {
        double acc = 0.0;
        for (int y = 0; y < np; ++y)
            if (incp[y]) acc += q.mat(x, y).real();
        if (std::abs(acc - want[x]) > tol) return false;
    }
    return true;
}

namespace {

// Iterated in/out neighbourhood color refinement; returns stable colors.
std::vector<int> refine_colors(const Digraph& g, const Digraph& h, std::vector<int>& hc) {
    const int n = g.n;
    std::vector<int> gc(n, 0);
    hc.assign(n, 0);
    for (int round = 0; round < n; ++round) {
        std::map<std::vector<int>, int> dict;
        auto signature = [&](const Digraph& d, const std::vector<int>& col, int v) {
            std::vector<int> outs, ins;
            for (int w = 0; w < n; ++w) {
                if (d.adj[v][w]) outs.push_back(col[w]);
                if (d.adj[w][v]) ins.push_back(col[w]);
            }
            std::sort(outs.begin(), outs.end());
            std::sort(ins.begin(), ins.end());
            std::vector<int> sig{col[v], d.adj[v][v] ? 1 : 0, -1};
            sig.insert(sig.end(), outs.begin(), outs.end());
            sig.push_back(-2);
            sig.insert(sig.end(), ins.begin(), ins.end());
            return sig;
        };
        std::vector<int> ngc(n), nhc(n);
        for (int v = 0; v < n; ++v) {
            auto sig = signature(g, gc, v);
            ngc[v] = dict.emplace(std::move(sig), static_cast<int>(dict.size())).first->second;
        }
        for (int v = 0; v < n; ++v) {
            auto sig = signature(h, hc, v);
            nhc[v] = dict.emplace(std::move(sig), static_cast<int>(dict.size())).first->second;
        }
        if (ngc == gc && nhc == hc) break;
        gc = std::move(ngc);
        hc = std::move(nhc);
    }
    return gc;
}

bool extend_iso(const Digraph& x, const Digraph& y, const std::vector<int>& xc,
                const std::vector<int>& yc, std::vector<int>& map, std::vector<char>& used,
                int assigned) {
    const int n = x.n;
    if (assigned == n) return true;
    // Most-constrained unassigned vertex: most arcs into the assigned set.
    int best = -1, bestdeg = -1;
    for (int v = 0; v < n; ++v) {
        if (map[v] >= 0) continue;
        int deg = 0;
        for (int w = 0; w < n; ++w)
            if (map[w] >= 0 && (x.adj[v][w] || x.adj[w][v])) ++deg;
        if (deg > bestdeg) {
            bestdeg = deg;
            best = v;
        }
    }
    for (int t = 0; t < n; ++t) {
        if (used[t] || yc[t] != xc[best]) continue;
        if (y.adj[t][t] != x.adj[best][best]) continue;
        bool okc = true;
        for (int w = 0; w < n && okc; ++w) {
            if (map[w] < 0) continue;
            if (x.adj[best][w] != y.adj[t][map[w]] || x.adj[w][best] != y.adj[map[w]][t])
                okc = false;
        }
        if (!okc) continue;
        map[best] = t;
        used[t] = 1;
        if (extend_iso(x, y, xc, yc, map, used, assigned + 1)) return true;
        map[best] = -1;
        used[t] = 0;
    }
    return false;
}

} // namespace

std::optional<std::vector<int>> digraph_isomorphic(const Digraph& x, const Digraph& y) {
    if (x.n != y.n) return std::nullopt;
    if (x.n > 64) throw validation_error("isomorphism test is capped at 64 vertices");
    if (x.n == 0) return std::vector<int>{};
    std::vector<int> yc;
    std::vector<int> xc = refine_colors(x, y, yc);
    std::vector<int> xs = xc, ys = yc;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    if (xs != ys) return std::nullopt;
    std::vector<int> map(x.n, -1);
    std::vector<char> used(x.n, 0);
    if (!extend_iso(x, y, xc, yc, map, used, 0)) return std::nullopt;
    return map;
}

HuntReport hunt(const CorrelationMatrix& q, double supp_eps, std::optional<long long> limit) {
    const BipartiteComponents bc = auxiliary_components(q, supp_eps);
    const int k = bc.k();
    if (k > 20 && !limit)
        throw validation_error("component count exceeds the 2^20 subset cap; pass a limit");
    HuntReport rep;
    rep.k = k;
    const std::uint64_t full = (k >= 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << k) - 1);
    long long done = 0;
    for (std::uint64_t mask = 0; mask <= full; ++mask) {
        // Complement pruning: a pair and its complement share the verdict.
        if ((full ^ mask) < mask) continue;
        if (limit && done >= *limit) break;
        std::vector<int> I;
        for (int i = 0; i < k; ++i)
            if (mask & (std::uint64_t(1) << i)) I.push_back(i);
        CayleyPair cp = pairs_for(q, bc, I);
        if (!verify_indicator(q, cp.C, cp.Cp))
            throw validation_error("component union fails the indicator identity");
        HuntEntry e;
        e.I = std::move(I);
        e.csize = static_cast<int>(cp.C.size());
        e.isomorphic = digraph_isomorphic(cp.X, cp.Y).has_value();
        if (!e.isomorphic) rep.found_nonisomorphic = true;
        rep.entries.push_back(std::move(e));
        ++done;
        if (mask == full) break; // guard the k = 64 wraparound, not reachable
    }
    return rep;
}

} // namespace giqls
