#include "giqls/nonlocal.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "giqls/error.hpp"

namespace giqls {

SupportGraph support_graph(const CorrelationMatrix& q, double supp_eps) {
    SupportGraph sg;
    sg.G = q.G;
    sg.Gp = q.Gp;
    sg.product = direct_product(q.G, q.Gp);
    for (int x = 0; x < q.G.n; ++x)
        for (int y = 0; y < q.Gp.n; ++y) {
            if (x == 0 && y == 0) continue;
            if (std::abs(q.mat(x, y)) > supp_eps) sg.connection.push_back(x * q.Gp.n + y);
        }
    return sg;
}

Decomposition component_subgroup(const CorrelationMatrix& q, double supp_eps) {
    const SupportGraph sg = support_graph(q, supp_eps);
    const int n = q.G.n;
    const int np = q.Gp.n;
    Decomposition dec;
    dec.K = subgroup_generated(sg.product, sg.connection);
    std::vector<char> in_k(sg.product.n, 0);
    for (int v : dec.K.elements) in_k[v] = 1;
    std::vector<int> h, hp;
    for (int a = 0; a < n; ++a)
        if (in_k[a * np]) h.push_back(a);
    for (int b = 0; b < np; ++b)
        if (in_k[b]) hp.push_back(b);
    dec.H = Subgroup{q.G, h};
    dec.Hp = Subgroup{q.Gp, hp};
    if (!is_subgroup(q.G, h) || !is_subgroup(q.Gp, hp) || !is_normal(dec.H) ||
        !is_normal(dec.Hp))
        throw validation_error("coordinate slices of K are not normal subgroups; corrupt input");
    if (dec.K.elements.size() != h.size() * static_cast<size_t>(np) ||
        dec.K.elements.size() != hp.size() * static_cast<size_t>(n))
        throw validation_error("|K| != |H| |G'|; corrupt input");
    dec.s = static_cast<double>(dec.K.elements.size()) / sg.product.n;
    // Left K-cosets in ascending order of their least element; vK with v = e
    // comes first automatically.
    std::vector<int> coset_of(sg.product.n, -1);
    for (int v = 0; v < sg.product.n; ++v) {
        if (coset_of[v] >= 0) continue;
        dec.coset_reps.push_back(v);
        for (int k : dec.K.elements) coset_of[sg.product.op(v, k)] = v;
    }
    return dec;
}

Decomposition decompose(const CorrelationMatrix& q, double supp_eps, double tol) {
    Decomposition dec = component_subgroup(q, supp_eps);
    const int n = q.G.n;
    const int np = q.Gp.n;
    // Left H'-cosets of G', identity coset first, then by least element.
    std::vector<int> col_coset(np, -1);
    std::vector<std::vector<int>> col_blocks;
    for (int b = 0; b < np; ++b) {
        if (col_coset[b] >= 0) continue;
        const int id = static_cast<int>(col_blocks.size());
        std::vector<int> blk;
        for (int h : dec.Hp.elements) {
            const int e = q.Gp.op(b, h);
            col_coset[e] = id;
            blk.push_back(e);
        }
        std::sort(blk.begin(), blk.end());
        col_blocks.push_back(std::move(blk));
    }
    std::vector<int> row_coset(n, -1);
    for (int a = 0; a < n; ++a) {
        if (row_coset[a] >= 0) continue;
        for (int h : dec.H.elements) row_coset[q.G.op(a, h)] = a;
    }
    // Support must pair each column coset with exactly one row coset.
    std::vector<int> match(col_blocks.size(), -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < np; ++y) {
            if (std::abs(q.mat(x, y)) <= supp_eps) continue;
            const int cb = col_coset[y];
            if (match[cb] < 0) match[cb] = row_coset[x];
            else if (match[cb] != row_coset[x])
                throw validation_error("support is not confined to matched coset blocks");
        }
    for (size_t i = 0; i < col_blocks.size(); ++i)
        if (match[i] < 0)
            throw validation_error("a column coset carries no support; not doubly stochastic");
    if (col_blocks.size() * dec.K.elements.size() != static_cast<size_t>(n) * np)
        throw validation_error("coset block count disagrees with |K|; corrupt input");
    for (size_t i = 0; i < col_blocks.size(); ++i) {
        std::vector<int> rows;
        for (int h : dec.H.elements) rows.push_back(q.G.op(match[i], h));
        std::sort(rows.begin(), rows.end());
        CMatrix p(n, np);
        for (int x : rows)
            for (int y : col_blocks[i]) p(x, y) = q.mat(x, y) / dec.s;
        dec.component_matrices.push_back(std::move(p));
        dec.block_rows.push_back(std::move(rows));
        dec.block_cols.push_back(col_blocks[i]);
    }
    // Reassembly must be exact up to tolerance.
    CMatrix acc(n, np);
    for (const CMatrix& p : dec.component_matrices) acc = acc + dec.s * p;
    if (max_abs_diff(acc, q.mat) > tol)
        throw validation_error("component matrices do not reassemble the input");
    // Identity block: Q restricted to (H, H') is itself a correlation matrix.
    const int m = static_cast<int>(dec.H.elements.size());
    CMatrix idb(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) idb(i, j) = q.mat(dec.H.elements[i], dec.Hp.elements[j]);
    dec.identity_block = make_correlation(std::move(idb), subgroup_as_group(dec.H),
                                          subgroup_as_group(dec.Hp), tol);
    return dec;
}

bool flow_check(const CorrelationMatrix& q, double supp_eps, double tol) {
    const SupportGraph sg = support_graph(q, supp_eps);
    const int nv = sg.product.n;
    const int np = q.Gp.n;
    std::vector<double> inflow(nv, 0.0), outflow(nv, 0.0);
    for (int v = 0; v < nv; ++v)
        for (int c : sg.connection) {
            const double w = q.mat(c / np, c % np).real() / q.G.n;
            outflow[v] += w;
            inflow[sg.product.op(v, c)] += w;
        }
    for (int v = 0; v < nv; ++v)
        if (std::abs(inflow[v] - outflow[v]) > tol) return false;
    // Weak components are K-cosets; each must be strongly connected.
    std::vector<int> inv_conn;
    for (int c : sg.connection) inv_conn.push_back(sg.product.invert(c));
    const Subgroup k = subgroup_generated(sg.product, sg.connection);
    std::vector<char> seen_f(nv, 0), seen_b(nv, 0);
    std::vector<int> coset_done(nv, 0);
    for (int v0 = 0; v0 < nv; ++v0) {
        if (coset_done[v0]) continue;
        std::vector<int> comp;
        for (int kk : k.elements) {
            const int w = sg.product.op(v0, kk);
            coset_done[w] = 1;
            comp.push_back(w);
        }
        auto reach = [&](std::vector<char>& seen, const std::vector<int>& steps) {
            std::vector<int> stack{v0};
            seen[v0] = 1;
            size_t cnt = 1;
            while (!stack.empty()) {
                const int v = stack.back();
                stack.pop_back();
                for (int c : steps) {
                    const int w = sg.product.op(v, c);
                    if (!seen[w]) {
                        seen[w] = 1;
                        ++cnt;
                        stack.push_back(w);
                    }
                }
            }
            return cnt;
        };
        if (reach(seen_f, sg.connection) != comp.size()) return false;
        if (reach(seen_b, inv_conn) != comp.size()) return false;
    }
    return true;
}

SearchReport has_full_clique(const CorrelationMatrix& q, double supp_eps) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = q.G.n;
    if (n != q.Gp.n)
        throw validation_error("clique search requires groups of equal order");
    if (n > 64)
        throw validation_error("clique search is capped at order 64");
    // allowed[z][s]: bitmask of w such that assigning tau(x) = z, tau(y) = w
    // with x^-1 y = s keeps both arcs of the pair inside the support.
    std::vector<std::vector<std::uint64_t>> allowed(n, std::vector<std::uint64_t>(n, 0));
    for (int z = 0; z < n; ++z)
        for (int s = 0; s < n; ++s) {
            std::uint64_t m = 0;
            const int sp = q.Gp.invert(s);
            for (int w = 0; w < n; ++w) {
                const bool fwd = std::abs(q.mat(q.G.op(q.G.invert(z), w), s)) > supp_eps;
                const bool bwd = std::abs(q.mat(q.G.op(q.G.invert(w), z), sp)) > supp_eps;
                if (fwd && bwd) m |= std::uint64_t(1) << w;
            }
            allowed[z][s] = m;
        }
    SearchReport rep;
    // WLOG tau(e) = e: every clique is a translate of one through the identity.
    std::vector<int> tau(n, -1);
    tau[0] = 0;
    std::vector<std::uint64_t> pos(n, 0);
    for (int y = 1; y < n; ++y) pos[y] = allowed[0][y] & ~std::uint64_t(1);
    std::vector<std::vector<std::uint64_t>> snap(n, std::vector<std::uint64_t>(n));
    std::uint64_t used = 1;
    int depth = 1; // number of assigned inputs
    struct Frame {
        int y = -1;
        std::uint64_t cand = 0;
    };
    std::vector<Frame> stack(n + 1);
    auto pick = [&]() {
        int best = -1, bestc = n + 1;
        for (int y = 0; y < n; ++y) {
            if (tau[y] >= 0) continue;
            const int c = std::popcount(pos[y]);
            if (c < bestc) {
                bestc = c;
                best = y;
            }
        }
        return best;
    };
    while (true) {
        if (depth == n) {
            GroupBijection w = make_bijection(q.Gp, q.G, tau);
            // Defensive pairwise recheck of the witness.
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    if (x == y) continue;
                    const int s = q.Gp.op(q.Gp.invert(x), y);
                    if (std::abs(q.mat(q.G.op(q.G.invert(tau[x]), tau[y]), s)) <= supp_eps)
                        throw validation_error("internal error: clique witness failed recheck");
                }
            rep.verdict = SearchReport::Verdict::clique_found;
            rep.witness = std::move(w);
            break;
        }
        Frame& f = stack[depth];
        if (f.y < 0) {
            f.y = pick();
            f.cand = pos[f.y];
        }
        if (f.cand == 0) {
            // Exhausted this level; undo the previous assignment.
            f.y = -1;
            --depth;
            if (depth == 0) break; // search space exhausted
            Frame& g = stack[depth];
            used &= ~(std::uint64_t(1) << tau[g.y]);
            tau[g.y] = -1;
            pos = snap[depth];
            continue;
        }
        const int z = std::countr_zero(f.cand);
        f.cand &= f.cand - 1;
        ++rep.nodes;
        snap[depth] = pos;
        tau[f.y] = z;
        used |= std::uint64_t(1) << z;
        const int yinv = q.Gp.invert(f.y);
        bool dead = false;
        for (int y = 0; y < n; ++y) {
            if (tau[y] >= 0) continue;
            pos[y] &= ~used & allowed[z][q.Gp.op(yinv, y)];
            if (pos[y] == 0) dead = true;
        }
        if (dead) {
            used &= ~(std::uint64_t(1) << z);
            tau[f.y] = -1;
            pos = snap[depth];
            continue;
        }
        ++depth;
    }
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

TransformationMatrix tensor_lift(const TransformationMatrix& u, int m) {
    if (m < 1) throw validation_error("lift factor must be positive");
    if (!u.G.abelian() || !u.Gp.abelian())
        throw validation_error("tensor lift applies to abelian pairs");
    const FiniteGroup zm = cyclic(m);
    return verify_transformation(kron(u.U, CMatrix::identity(m)), direct_product(u.G, zm),
                                 direct_product(u.Gp, zm), 1e-9);
}

CorrelationMatrix tensor_lift(const CorrelationMatrix& q, int m) {
    if (m < 1) throw validation_error("lift factor must be positive");
    if (!q.G.abelian() || !q.Gp.abelian())
        throw validation_error("tensor lift applies to abelian pairs");
    const FiniteGroup zm = cyclic(m);
    return make_correlation(kron(q.mat, CMatrix::identity(m)), direct_product(q.G, zm),
                            direct_product(q.Gp, zm), 1e-9);
}

std::vector<RandomHit> random_search(const FiniteGroup& G, const FiniteGroup& Gp,
                                     long long trials, std::uint64_t seed, int jobs) {
    if (!G.abelian() || !Gp.abelian())
        throw validation_error("random character search requires abelian groups");
    if (G.n != Gp.n)
        throw validation_error("group pair must have equal order");
    if (trials < 0)
        throw validation_error("trial count must be nonnegative");
    const int n = G.n;
    // The trial stream is drawn sequentially up front so the result does not
    // depend on worker scheduling.
    std::vector<std::vector<int>> maps(static_cast<size_t>(trials));
    std::mt19937_64 rng(seed);
    for (auto& map : maps) {
        map.resize(n);
        map[0] = 0;
        for (int i = 1; i < n; ++i) map[i] = i;
        for (int i = n - 1; i > 1; --i) {
            const int j = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(i));
            std::swap(map[i], map[j]);
        }
    }
    const CMatrix cd = dagger(character_table(G));
    const CMatrix cp = character_table(Gp);
    int workers = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = static_cast<int>(std::min<long long>(workers, std::max<long long>(trials, 1)));
    std::vector<char> nonlocal_flag(static_cast<size_t>(trials), 0);
    std::vector<SearchReport> reports(static_cast<size_t>(trials));
    std::atomic<long long> next{0};
    auto worker = [&]() {
        while (true) {
            const long long t = next.fetch_add(1);
            if (t >= trials) break;
            GroupBijection pihat = make_bijection(Gp, G, maps[static_cast<size_t>(t)]);
            CMatrix u = cd * perm_matrix(pihat) * cp;
            CorrelationMatrix q = make_correlation(schur(u, conjugate(u)), G, Gp, 1e-9);
            SearchReport r = has_full_clique(q);
            if (r.verdict == SearchReport::Verdict::strongly_nonlocal)
                nonlocal_flag[static_cast<size_t>(t)] = 1;
            reports[static_cast<size_t>(t)] = std::move(r);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    std::vector<RandomHit> hits;
    for (long long t = 0; t < trials; ++t)
        if (nonlocal_flag[static_cast<size_t>(t)]) {
            RandomHit h;
            h.trial = t;
            h.pihat = make_bijection(Gp, G, maps[static_cast<size_t>(t)]);
            h.report = std::move(reports[static_cast<size_t>(t)]);
            hits.push_back(std::move(h));
        }
    return hits;
}

} // namespace giqls
