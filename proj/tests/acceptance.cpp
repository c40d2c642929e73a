// Acceptance gate: seven end-to-end criteria, one PASS/FAIL line each.
// argv[1] is the path to the command line binary. Exit 0 iff every
// criterion passes inside its wall-clock budget.
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "giqls/io.hpp"
#include "giqls/nonlocal.hpp"

using namespace giqls;

namespace {

// Pinned tolerances.
constexpr double kTolEntry = 1e-9;    // matrix reproduction and landscape classification
constexpr double kTolExact = 1e-12;   // values that are exact small rationals
constexpr double kTolIdentity = 1e-10; // character/correlation conjugation identity

std::string g_bin;
std::string g_dir;

[[noreturn]] void fail(const std::string& why) { throw std::runtime_error(why); }

void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
}

struct Run {
    int code = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = "'" + g_bin + "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) fail("popen failed");
    Run r;
    char buf[4096];
    size_t k;
    while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- small matrix predicates -------------------------------------------

bool is_permutation_matrix(const CMatrix& m, double tol) {
    const int n = m.rows();
    if (m.cols() != n) return false;
    for (int r = 0; r < n; ++r) {
        int ones = 0;
        for (int c = 0; c < n; ++c) {
            const double v = m(r, c).real();
            if (std::abs(m(r, c).imag()) > tol) return false;
            if (std::abs(v - 1.0) <= tol)
                ++ones;
            else if (std::abs(v) > tol)
                return false;
        }
        if (ones != 1) return false;
    }
    for (int c = 0; c < n; ++c) {
        int ones = 0;
        for (int r = 0; r < n; ++r)
            if (std::abs(m(r, c).real() - 1.0) <= tol) ++ones;
        if (ones != 1) return false;
    }
    return true;
}

bool rows_compatible(const CMatrix& q, int qr, const CMatrix& m, int mr, double tol) {
    std::vector<double> a(q.cols()), b(m.cols());
    for (int c = 0; c < q.cols(); ++c) a[c] = q(qr, c).real();
    for (int c = 0; c < m.cols(); ++c) b[c] = m(mr, c).real();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

// Perfect matching of columns: column sigma(j) of q equals column j of m
// under the chosen row map rho.
bool column_matching(const CMatrix& q, const CMatrix& m, const std::vector<int>& rho,
                     double tol) {
    const int n = q.cols();
    std::vector<int> sigma(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(int)> place = [&](int j) -> bool {
        if (j == n) return true;
        for (int c = 0; c < n; ++c) {
            if (used[c]) continue;
            bool ok = true;
            for (int i = 0; i < n && ok; ++i)
                if (std::abs(q(rho[i], c).real() - m(i, j).real()) > tol) ok = false;
            if (!ok) continue;
            used[c] = true;
            sigma[j] = c;
            if (place(j + 1)) return true;
            used[c] = false;
        }
        return false;
    };
    return place(0);
}

// True iff q = P m P' for permutation matrices P, P' (rows and columns of m
// permuted independently).
bool perm_equivalent(const CMatrix& q, const CMatrix& m, double tol) {
    const int n = q.rows();
    if (m.rows() != n || q.cols() != m.cols()) return false;
    std::vector<int> rho(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(int)> place = [&](int i) -> bool {
        if (i == n) return column_matching(q, m, rho, tol);
        for (int j = 0; j < n; ++j) {
            if (used[j] || !rows_compatible(q, j, m, i, tol)) continue;
            used[j] = true;
            rho[i] = j;
            if (place(i + 1)) return true;
            used[j] = false;
        }
        return false;
    };
    return place(0);
}

// Gram matrix of the 16-vector family, rows/cols indexed by (a,b) -> 4a+b.
CMatrix gram16(const std::vector<std::vector<std::vector<cplx>>>& v) {
    CMatrix g(16, 16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    cplx s = 0;
                    for (size_t x = 0; x < v[a][b].size(); ++x)
                        s += std::conj(v[a][b][x]) * v[c][d][x];
                    g(4 * a + b, 4 * c + d) = s;
                }
    return g;
}

double frobenius_inner(const CMatrix& m, const CMatrix& q) {
    double s = 0.0;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) s += m(r, c).real() * q(r, c).real();
    return s;
}

bool oracle_has_clique(const CorrelationMatrix& q, double eps) {
    const int n = q.G.n;
    std::vector<int> tau(n);
    std::iota(tau.begin(), tau.end(), 0);
    do {
        bool ok = true;
        for (int y = 0; y < n && ok; ++y)
            for (int z = 0; z < n && ok; ++z) {
                const int row = q.G.op(q.G.invert(tau[y]), tau[z]);
                const int col = q.Gp.op(q.Gp.invert(y), z);
                if (std::abs(q.mat(row, col)) <= eps) ok = false;
            }
        if (ok) return true;
    } while (std::next_permutation(tau.begin() + 1, tau.end()));
    return false;
}

// ---- criteria -----------------------------------------------------------

// C1: the character construction on (Z4, Z2^2) reproduces the reference
// transformation matrix through the CLI, and the reconstructed square's
// 16 vectors match the reference family up to one global isometry
// (certified by Gram-matrix equality).
void c1_example_pair() {
    const std::string u = g_dir + "/u.json";
    require(run_cli("build-abelian --group Z4 --cogroup Z2^2 --out '" + u + "'").code == 0,
            "build-abelian failed");
    const MatrixFile mf = load_matrix_file(u);
    require(max_abs_diff(mf.mat, fixtures::z4z22_u()) <= kTolEntry,
            "constructed matrix differs from the reference");
    require(run_cli("reconstruct-qls --matrix '" + u + "'").code == 0,
            "reconstruct-qls failed");
    const FiniteGroup z4 = cyclic(4);
    const FiniteGroup k4 = direct_product(cyclic(2), cyclic(2));
    const TransformationMatrix tm = verify_transformation(mf.mat, z4, k4, kTolEntry);
    const QuantumLatinSquare qls = reconstruct_qls(tm);
    require(max_abs_diff(gram16(qls.vectors), gram16(fixtures::z4z22_qls())) <= kTolEntry,
            "reconstructed vectors are not isometric to the reference family");
}

// C2: all 120 order-5 matrices; every correlation is a permutation matrix or
// the golden-ratio matrix up to row/column permutations; the golden matrix
// times its transpose is the expected rational matrix and is not itself one
// of the 120 correlations.
void c2_order5_landscape() {
    const FiniteGroup z5 = cyclic(5);
    const auto tms = enumerate_abelian_transformations(z5, z5);
    require(tms.size() == 120, "expected 120 matrices");
    const CMatrix golden = fixtures::z5_golden();
    const CMatrix golden_sq = fixtures::z5_golden_sq();
    int perms = 0;
    for (const auto& tm : tms) {
        const CMatrix q = correlation_of(tm).mat;
        if (is_permutation_matrix(q, kTolEntry)) {
            ++perms;
        } else {
            require(perm_equivalent(q, golden, kTolEntry),
                    "correlation is neither a permutation matrix nor the golden matrix "
                    "up to permutations");
        }
        require(max_abs_diff(q, golden_sq) > kTolEntry,
                "the squared golden matrix appeared among the correlations");
    }
    require(perms > 0 && perms < 120, "degenerate landscape split");
    require(max_abs_diff(golden * transpose(golden), golden_sq) <= kTolExact,
            "golden matrix times its transpose is off");
}

// C3: the three reference order-6 correlations match exactly and the first
// is the stated convex combination of four classical correlations.
void c3_order6_convexity() {
    const FiniteGroup z6 = cyclic(6);
    auto corr = [&](const std::vector<int>& map) {
        return classical_corr_matrix(make_bijection(z6, z6, map));
    };
    const CorrelationMatrix d_pi = corr(parse_cycles("(1,3)", 6));
    const CorrelationMatrix d_pi1 = corr(parse_cycles("(0,1)(2,3)(4,5)", 6));
    const CorrelationMatrix d_pi2 = corr(parse_cycles("(1,3)(2,4)", 6));
    require(max_abs_diff(d_pi.mat, fixtures::z6_d_pi()) <= kTolExact, "block for (1,3) is off");
    require(max_abs_diff(d_pi1.mat, fixtures::z6_d_pi1()) <= kTolExact,
            "block for (0,1)(2,3)(4,5) is off");
    require(max_abs_diff(d_pi2.mat, fixtures::z6_d_pi2()) <= kTolExact,
            "block for (1,3)(2,4) is off");
    std::vector<int> inv_map(6);
    for (int y = 0; y < 6; ++y) inv_map[y] = z6.invert(y);
    const CorrelationMatrix d_id = corr({0, 1, 2, 3, 4, 5});
    const CorrelationMatrix d_inv = corr(inv_map);
    const std::vector<std::pair<double, CorrelationMatrix>> terms = {
        {1.0 / 6, d_id}, {1.0 / 6, d_inv}, {1.0 / 3, d_pi1}, {1.0 / 3, d_pi2}};
    require(verify_convex_combination(d_pi, terms, kTolExact),
            "convex combination does not reproduce the target");
}

// C4: the reference order-16 correlation is reproduced exactly, is strongly
// nonlocal (as is its m=2 tensor lift), each clique search finishes inside
// 1 s, and a 10000-candidate seeded sweep finds at least one hit.
void c4_order16_nonlocality() {
    FiniteGroup g = cyclic(2);
    for (int i = 1; i < 4; ++i) g = direct_product(g, cyclic(2));
    const GroupBijection pihat =
        make_bijection(g, g, parse_cycles(fixtures::z24_pihat_cycles(), 16));
    const CorrelationMatrix q = correlation_of(abelian_transformation(pihat));
    require(max_abs_diff(q.mat, fixtures::z24_q()) <= kTolExact,
            "order-16 correlation differs from the reference");

    auto t0 = std::chrono::steady_clock::now();
    const SearchReport rep = has_full_clique(q);
    const double t_search = seconds_since(t0);
    require(rep.verdict == SearchReport::Verdict::strongly_nonlocal,
            "clique search found a clique on the reference correlation");
    require(t_search < 1.0, "clique search exceeded 1 s");

    const CorrelationMatrix lifted = tensor_lift(q, 2);
    t0 = std::chrono::steady_clock::now();
    const SearchReport rep2 = has_full_clique(lifted);
    const double t_lift = seconds_since(t0);
    require(rep2.verdict == SearchReport::Verdict::strongly_nonlocal,
            "lifted correlation is not strongly nonlocal");
    require(t_lift < 1.0, "lifted clique search exceeded 1 s");

    const auto hits = random_search(g, g, 10000, 7, 0);
    require(!hits.empty(), "10000-candidate sweep found no strongly nonlocal matrix");
    // revalidate the first hit from scratch
    const CorrelationMatrix hq = correlation_of(abelian_transformation(hits.front().pihat));
    require(has_full_clique(hq).verdict == SearchReport::Verdict::strongly_nonlocal,
            "first sweep hit failed revalidation");
}

// C5: the order-6 symmetric group suite: the shipped block diagonalizer
// matches the reference and is unitary; the general construction with a
// normalized Hadamard on the degree-2 summand yields both reference matrices
// and correlations; both sit at -1 against the separating hyperplane while
// every classical correlation sits at >= 0.
void c5_symmetric_suite() {
    const BlockDiagonalizer bd = s3_block_diagonalizer();
    require(max_abs_diff(bd.V, fixtures::s3_v()) <= kTolExact,
            "block diagonalizer differs from the reference");
    require(max_abs_diff(dagger(bd.V) * bd.V, CMatrix::identity(6)) <= kTolExact,
            "block diagonalizer is not unitary");
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix h(2, 2);
    h(0, 0) = r;
    h(0, 1) = r;
    h(1, 0) = r;
    h(1, 1) = -r;
    const std::vector<CMatrix> ns = {CMatrix::identity(1), CMatrix::identity(1), h};
    const TransformationMatrix u1 = general_construct(bd, bd, {0, 1, 2}, ns);
    const TransformationMatrix u2 = general_construct(bd, bd, {1, 0, 2}, ns);
    require(max_abs_diff(u1.U, fixtures::s3_u1()) <= kTolEntry, "first constructed matrix is off");
    require(max_abs_diff(u2.U, fixtures::s3_u2()) <= kTolEntry,
            "second constructed matrix is off");
    const CMatrix q1 = correlation_of(u1).mat;
    const CMatrix q2 = correlation_of(u2).mat;
    require(max_abs_diff(q1, fixtures::s3_q1()) <= kTolEntry, "first correlation is off");
    require(max_abs_diff(q2, fixtures::s3_q2()) <= kTolEntry, "second correlation is off");
    const CMatrix m = fixtures::s3_hyperplane();
    require(std::abs(frobenius_inner(m, q1) + 1.0) <= kTolEntry,
            "hyperplane value of the first correlation is not -1");
    require(std::abs(frobenius_inner(m, q2) + 1.0) <= kTolEntry,
            "hyperplane value of the second correlation is not -1");
    const auto [mn, arg] = min_hyperplane(bd.G, bd.G, m);
    (void)arg;
    require(mn >= -kTolExact, "a classical correlation dips below the hyperplane");
}

// C6: the degree-multiset existence gate rejects (Z6, S3) and accepts
// (Z4, Z2^2).
void c6_existence_gate() {
    require(!same_degree_multiset(cyclic(6), symmetric(3)),
            "gate failed to reject the order-6 pair");
    require(same_degree_multiset(cyclic(4), direct_product(cyclic(2), cyclic(2))),
            "gate failed to accept the order-4 pair");
}

// C7: cross-module property battery on enumerable corpora.
void c7_property_battery() {
    const FiniteGroup z2 = cyclic(2), z3 = cyclic(3), z4 = cyclic(4), z5 = cyclic(5);
    const FiniteGroup k4 = direct_product(z2, z2);

    // (a) the two classical constructions agree on every bijection, order <= 5
    const std::vector<std::pair<FiniteGroup, FiniteGroup>> pairs = {
        {z2, z2}, {z3, z3}, {z4, z4}, {z4, k4}, {k4, z4}, {k4, k4}, {z5, z5}};
    for (const auto& [g, gp] : pairs) {
        std::vector<int> map(gp.n);
        std::iota(map.begin(), map.end(), 0);
        do {
            const GroupBijection pi = make_bijection(gp, g, map);
            require(max_abs_diff(classical_corr_matrix(pi).mat,
                                 classical_via_reduction(pi).mat) <= kTolExact,
                    "classical construction routes disagree");
        } while (std::next_permutation(map.begin(), map.end()));
    }

    // (b) closure of the enumerated order-4 matrices under product, adjoint,
    // and conjugation
    const auto tms4 = enumerate_abelian_transformations(z4, z4);
    for (const auto& a : tms4) {
        (void)verify_transformation(dagger_transformation(a).U, z4, z4, kTolEntry);
        (void)verify_transformation(conj_transformation(a).U, z4, z4, kTolEntry);
        for (const auto& b : tms4)
            (void)verify_transformation(compose_transformations(a, b).U, z4, z4, kTolEntry);
    }

    // (c) the character/correlation conjugation identity on all 24 order-4
    // bijections
    {
        std::vector<int> map(4);
        std::iota(map.begin(), map.end(), 0);
        do {
            require(char_correlation_relation(make_bijection(z4, z4, map)) <= kTolIdentity,
                    "conjugation identity deviation above tolerance");
        } while (std::next_permutation(map.begin(), map.end()));
    }

    // (d)-(f) decomposition reassembly, flow balance + strong connectivity,
    // and clique-search/oracle equivalence over the enumerated correlations
    const std::vector<std::pair<FiniteGroup, FiniteGroup>> corpora = {
        {z4, z4}, {k4, k4}, {z5, z5}};
    for (const auto& [g, gp] : corpora) {
        for (const auto& tm : enumerate_abelian_transformations(g, gp)) {
            const CorrelationMatrix q = correlation_of(tm);
            const Decomposition dec = decompose(q);
            CMatrix acc(g.n, gp.n);
            for (const CMatrix& p : dec.component_matrices) acc = acc + dec.s * p;
            require(max_abs_diff(acc, q.mat) <= kTolEntry, "decomposition does not reassemble");
            require(flow_check(q), "flow balance / strong connectivity failed");
            if (g.n == 5) {
                const bool found =
                    has_full_clique(q).verdict == SearchReport::Verdict::clique_found;
                require(found == oracle_has_clique(q, kTolEntry),
                        "clique search disagrees with the exhaustive oracle");
            }
        }
    }
}

struct Criterion {
    const char* id;
    const char* label;
    void (*fn)();
    double budget_seconds;
};

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli-binary>\n");
        return 2;
    }
    g_bin = argv[1];
    char tmpl[] = "/tmp/giqls_accept_XXXXXX";
    if (!mkdtemp(tmpl)) {
        std::perror("mkdtemp");
        return 2;
    }
    g_dir = tmpl;

    const Criterion criteria[] = {
        {"C1", "character construction on the order-4 pair", c1_example_pair, 1.0},
        {"C2", "order-5 correlation landscape", c2_order5_landscape, 5.0},
        {"C3", "order-6 convex decomposition", c3_order6_convexity, 1.0},
        {"C4", "order-16 strong nonlocality and seeded sweep", c4_order16_nonlocality, 300.0},
        {"C5", "symmetric-group construction suite", c5_symmetric_suite, 5.0},
        {"C6", "degree-multiset existence gate", c6_existence_gate, 1.0},
        {"C7", "cross-module property battery", c7_property_battery, 60.0},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string why;
        try {
            c.fn();
        } catch (const std::exception& e) {
            why = e.what();
        }
        const double dt = seconds_since(t0);
        if (why.empty() && dt > c.budget_seconds)
            why = "exceeded " + std::to_string(c.budget_seconds) + " s budget";
        if (why.empty()) {
            std::printf("%s PASS %s (%.2fs)\n", c.id, c.label, dt);
        } else {
            ++failed;
            std::printf("%s FAIL %s (%.2fs): %s\n", c.id, c.label, dt, why.c_str());
        }
        std::fflush(stdout);
    }
    if (failed == 0)
        std::printf("acceptance: all 7 criteria passed\n");
    else
        std::printf("acceptance: %d of 7 criteria FAILED\n", failed);
    return failed == 0 ? 0 : 1;
}
