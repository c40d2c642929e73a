#include "giqls/classical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "giqls/error.hpp"

namespace giqls {

bool is_correlation_matrix(const CMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    if (!is_doubly_stochastic(m, tol)) return false;
    return std::abs(m(0, 0) - cplx(1.0, 0.0)) <= tol;
}

CorrelationMatrix make_correlation(CMatrix m, const FiniteGroup& G, const FiniteGroup& Gp,
                                   double tol) {
    if (m.rows() != G.n || m.cols() != Gp.n)
        throw validation_error("correlation matrix shape does not match the group pair");
    if (!is_doubly_stochastic(m, tol))
        throw validation_error("matrix is not doubly stochastic within tolerance");
    if (std::abs(m(0, 0) - cplx(1.0, 0.0)) > tol)
        throw validation_error("identity-quotient entry (0,0) is not 1");
    return CorrelationMatrix{std::move(m), G, Gp};
}

CorrelationMatrix classical_corr_matrix(const GroupBijection& pi) {
    const FiniteGroup& G = pi.codomain;
    const FiniteGroup& Gp = pi.domain;
    const int n = G.n;
    CMatrix d(n, n);
    const double w = 1.0 / n;
    for (int y = 0; y < n; ++y) {
        const int py_inv = G.invert(pi.map[y]);
        for (int t = 0; t < n; ++t) {
            const int s = G.op(py_inv, pi.map[Gp.op(y, t)]);
            d(s, t) += w;
        }
    }
    return make_correlation(std::move(d), G, Gp, 1e-12);
}

CMatrix reduction_matrix(const FiniteGroup& g) {
    const int n = g.n;
    CMatrix r(n * n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            r(a * n + b, g.op(g.invert(b), a)) = 1.0;
    return r;
}

CorrelationMatrix classical_via_reduction(const GroupBijection& pi) {
    const FiniteGroup& G = pi.codomain;
    const FiniteGroup& Gp = pi.domain;
    const CMatrix p = perm_matrix(pi);
    CMatrix d = transpose(reduction_matrix(G)) * kron(p, p) * reduction_matrix(Gp);
    d = (1.0 / G.n) * d;
    return make_correlation(std::move(d), G, Gp, 1e-12);
}

CorrelationMatrix corr_by_average(const GroupBijection& pi) {
    const FiniteGroup& G = pi.codomain;
    const FiniteGroup& Gp = pi.domain;
    const CMatrix p = perm_matrix(pi);
    CMatrix acc(G.n, Gp.n);
    for (int g = 0; g < Gp.n; ++g) {
        const CMatrix left = perm_matrix(translation(G, G.invert(pi.map[g])));
        const CMatrix right = perm_matrix(translation(Gp, g));
        acc = acc + left * p * right;
    }
    acc = (1.0 / Gp.n) * acc;
    return make_correlation(std::move(acc), G, Gp, 1e-12);
}

CorrelationMatrix compose_corr(const CorrelationMatrix& d1, const CorrelationMatrix& d2) {
    if (!same_group(d1.Gp, d2.G))
        throw validation_error("composition requires the inner groups to coincide");
    return make_correlation(d1.mat * d2.mat, d1.G, d2.Gp, 1e-9);
}

std::optional<GroupBijection> classify_perm_corr(const CorrelationMatrix& d, double tol) {
    const int n = d.G.n;
    std::vector<int> map(n, -1);
    for (int y = 0; y < n; ++y) {
        int hit = -1;
        for (int x = 0; x < n; ++x) {
            const double v = std::abs(d.mat(x, y));
            if (v <= tol) continue;
            if (std::abs(d.mat(x, y) - cplx(1.0, 0.0)) > tol) return std::nullopt;
            if (hit >= 0) return std::nullopt;
            hit = x;
        }
        if (hit < 0) return std::nullopt;
        map[y] = hit;
    }
    GroupBijection sigma = make_bijection(d.Gp, d.G, map);
    if (!is_isomorphism(sigma))
        throw validation_error(
            "permutation correlation matrix whose bijection is not an isomorphism; input is "
            "not a correlation matrix of a bijection class");
    return sigma;
}

bool equivalent_bijections(const GroupBijection& pi1, const GroupBijection& pi2) {
    if (!same_group(pi1.domain, pi2.domain) || !same_group(pi1.codomain, pi2.codomain))
        throw validation_error("bijections compare only over the same group pair");
    const FiniteGroup& G = pi1.codomain;
    const FiniteGroup& Gp = pi1.domain;
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < Gp.n; ++b) {
            // tau_a o pi1 o tau_b, evaluated pointwise.
            bool all = true;
            for (int y = 0; y < Gp.n && all; ++y)
                all = G.op(a, pi1.map[Gp.op(b, y)]) == pi2.map[y];
            if (all) return true;
        }
    return false;
}

std::vector<long long> dedup_key(const CMatrix& m) {
    std::vector<long long> key;
    key.reserve(2 * m.entries().size() + 2);
    key.push_back(m.rows());
    key.push_back(m.cols());
    for (const cplx& z : m.entries()) {
        key.push_back(std::llround(z.real() * 1e9));
        key.push_back(std::llround(z.imag() * 1e9));
    }
    return key;
}

std::vector<CorrelationMatrix> enumerate_classical_vertices(const FiniteGroup& G,
                                                            const FiniteGroup& Gp) {
    if (G.n != Gp.n)
        throw validation_error("group pair must have equal order");
    const int n = G.n;
    if (n > 8)
        throw validation_error("vertex enumeration is capped at order 8");
    std::vector<CorrelationMatrix> out;
    std::map<std::vector<long long>, int> seen;
    std::vector<int> rest(std::max(0, n - 1));
    std::iota(rest.begin(), rest.end(), 1);
    // Every equivalence class contains an identity-fixing member, so the
    // (n-1)! maps with pi(e) = e cover all vertices.
    do {
        std::vector<int> map(n);
        map[0] = 0;
        for (int i = 1; i < n; ++i) map[i] = rest[i - 1];
        CorrelationMatrix d = classical_corr_matrix(make_bijection(Gp, G, map));
        auto key = dedup_key(d.mat);
        if (seen.emplace(std::move(key), 1).second) out.push_back(std::move(d));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

bool verify_convex_combination(const CorrelationMatrix& target,
                               const std::vector<std::pair<double, CorrelationMatrix>>& terms,
                               double tol) {
    double wsum = 0.0;
    for (const auto& [w, d] : terms) {
        if (w < -tol) throw validation_error("convex combination has a negative weight");
        if (d.mat.rows() != target.mat.rows() || d.mat.cols() != target.mat.cols())
            throw validation_error("convex combination term has mismatched shape");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > tol)
        throw validation_error("convex combination weights do not sum to 1");
    CMatrix acc(target.mat.rows(), target.mat.cols());
    for (const auto& [w, d] : terms) acc = acc + w * d.mat;
    return max_abs_diff(acc, target.mat) <= tol;
}

std::pair<double, GroupBijection> min_hyperplane(const FiniteGroup& G, const FiniteGroup& Gp,
                                                 const CMatrix& m) {
    if (G.n != Gp.n)
        throw validation_error("group pair must have equal order");
    const int n = G.n;
    if (n > 8)
        throw validation_error("hyperplane minimization is capped at order 8");
    if (m.rows() != n || m.cols() != n)
        throw validation_error("hyperplane matrix shape does not match the group pair");
    if (!is_real(m, 0.0))
        throw validation_error("hyperplane matrix must be real");
    std::vector<int> map(n);
    std::iota(map.begin(), map.end(), 0);
    double best = 0.0;
    std::vector<int> best_map;
    do {
        // Counting-form value of Tr(M^T D^pi), without materializing D.
        double val = 0.0;
        for (int y = 0; y < n; ++y) {
            const int py_inv = G.invert(map[y]);
            for (int t = 0; t < n; ++t)
                val += m(G.op(py_inv, map[Gp.op(y, t)]), t).real();
        }
        val /= n;
        if (best_map.empty() || val < best - 1e-15) {
            best = val;
            best_map = map;
        }
    } while (std::next_permutation(map.begin(), map.end()));
    return {best, make_bijection(Gp, G, best_map)};
}

} // namespace giqls
