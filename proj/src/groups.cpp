#include "giqls/groups.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

namespace giqls {

namespace {

std::vector<int> inverse_table(const std::vector<std::vector<int>>& mult) {
    const int n = static_cast<int>(mult.size());
    std::vector<int> inv(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (mult[a][b] == 0) {
                inv[a] = b;
                break;
            }
        if (inv[a] < 0) throw validation_error("missing inverse for element " + std::to_string(a));
    }
    return inv;
}

void check_associativity(const std::vector<std::vector<int>>& mult) {
    const int n = static_cast<int>(mult.size());
    if (n <= 64) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (mult[mult[a][b]][c] != mult[a][mult[b][c]])
                        throw validation_error("non-associative table at (" + std::to_string(a) + "," +
                                               std::to_string(b) + "," + std::to_string(c) + ")");
        return;
    }
    // Above the exhaustive bound, sample a fixed batch of random triples.
    std::mt19937_64 rng(0x5eedu);
    std::uniform_int_distribution<int> d(0, n - 1);
    for (int t = 0; t < 100000; ++t) {
        const int a = d(rng), b = d(rng), c = d(rng);
        if (mult[mult[a][b]][c] != mult[a][mult[b][c]])
            throw validation_error("non-associative table at (" + std::to_string(a) + "," + std::to_string(b) +
                                   "," + std::to_string(c) + ")");
    }
}

} // namespace

bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
    return a.n == b.n && a.mult == b.mult;
}

FiniteGroup cyclic(int n) {
    if (n < 1) throw validation_error("cyclic group order must be positive");
    FiniteGroup g;
    g.n = n;
    g.mult.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.mult[a][b] = (a + b) % n;
    g.inv = inverse_table(g.mult);
    g.abelian_factors = std::vector<int>{n};
    g.name = "Z" + std::to_string(n);
    return g;
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    FiniteGroup p;
    p.n = g.n * h.n;
    p.mult.assign(p.n, std::vector<int>(p.n));
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < h.n; ++b)
            for (int c = 0; c < g.n; ++c)
                for (int d = 0; d < h.n; ++d)
                    p.mult[a * h.n + b][c * h.n + d] = g.mult[a][c] * h.n + h.mult[b][d];
    p.inv.resize(p.n);
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < h.n; ++b) p.inv[a * h.n + b] = g.inv[a] * h.n + h.inv[b];
    if (g.abelian_factors && h.abelian_factors) {
        std::vector<int> f = *g.abelian_factors;
        f.insert(f.end(), h.abelian_factors->begin(), h.abelian_factors->end());
        p.abelian_factors = std::move(f);
    } else if (g.degrees_meta || h.degrees_meta || g.abelian_factors || h.abelian_factors) {
        // Degrees of a product are all pairwise products, when both are known.
        try {
            const std::vector<int> dg = irrep_degree_multiset(g);
            const std::vector<int> dh = irrep_degree_multiset(h);
            std::vector<int> d;
            for (int x : dg)
                for (int y : dh) d.push_back(x * y);
            std::sort(d.begin(), d.end());
            p.degrees_meta = std::move(d);
        } catch (const validation_error&) {
            // leave degrees unknown
        }
    }
    p.name = g.name + "x" + h.name;
    return p;
}

FiniteGroup symmetric(int n) {
    if (n < 1) throw validation_error("symmetric group order parameter must be positive");
    if (n > 6) throw validation_error("symmetric(n) supports n <= 6 (table size)");
    std::vector<std::vector<int>> perms;
    if (n == 3) {
        // Fixture order e, (123), (321), (12), (23), (13) over points {1,2,3},
        // stored 0-indexed.
        perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    } else {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);

    FiniteGroup g;
    g.n = static_cast<int>(perms.size());
    g.mult.assign(g.n, std::vector<int>(g.n));
    std::vector<int> comp(n);
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
            for (int i = 0; i < n; ++i) comp[i] = perms[a][perms[b][i]];
            g.mult[a][b] = index.at(comp);
        }
    g.inv = inverse_table(g.mult);
    if (n == 3) g.degrees_meta = std::vector<int>{1, 1, 2};
    if (n == 1) g.abelian_factors = std::vector<int>{1};
    if (n == 2) g.abelian_factors = std::vector<int>{2};
    g.name = "S" + std::to_string(n);
    return g;
}

FiniteGroup from_table(const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw validation_error("empty multiplication table");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw validation_error("multiplication table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw validation_error("table entry out of range (not closed)");
    }
    for (int x = 0; x < n; ++x)
        if (table[0][x] != x || table[x][0] != x)
            throw validation_error("no identity: row/column 0 is not the identity");
    FiniteGroup g;
    g.n = n;
    g.mult = table;
    g.inv = inverse_table(table); // throws "missing inverse"
    check_associativity(table);   // throws "non-associative"
    g.name = "table" + std::to_string(n);
    return g;
}

std::vector<int> mixed_radix_digits(int idx, const std::vector<int>& factors) {
    std::vector<int> digits(factors.size());
    for (size_t j = factors.size(); j-- > 0;) {
        digits[j] = idx % factors[j];
        idx /= factors[j];
    }
    return digits;
}

CMatrix character_table(const FiniteGroup& g) {
    if (!g.abelian_factors)
        throw validation_error("character table requires an abelian group built from cyclic factors");
    const std::vector<int>& f = *g.abelian_factors;
    const int n = g.n;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CMatrix c(n, n);
    // Phases are exact rationals num/den of a full turn (den = lcm of the
    // factor orders). Quarter turns are emitted exactly so that 2- and
    // 4-torsion tables contain no trigonometric round-off.
    long long den = 1;
    for (int fj : f) den = std::lcm(den, static_cast<long long>(fj));
    for (int a = 0; a < n; ++a) {
        const std::vector<int> ad = mixed_radix_digits(a, f);
        for (int x = 0; x < n; ++x) {
            const std::vector<int> xd = mixed_radix_digits(x, f);
            long long num = 0;
            for (size_t j = 0; j < f.size(); ++j)
                num += static_cast<long long>(ad[j]) * xd[j] * (den / f[j]);
            num %= den;
            cplx root;
            if (4 * num % den == 0) {
                static const cplx quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
                root = quarter[4 * num / den % 4];
            } else {
                const double angle =
                    2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
                root = cplx(std::cos(angle), std::sin(angle));
            }
            c(a, x) = scale * root;
        }
    }
    return c;
}

CMatrix regular_representation(const FiniteGroup& g, int elem) {
    if (elem < 0 || elem >= g.n) throw validation_error("element index out of range");
    CMatrix m(g.n, g.n);
    for (int y = 0; y < g.n; ++y) m(g.mult[elem][y], y) = 1.0;
    return m;
}

Subgroup subgroup_generated(const FiniteGroup& g, const std::vector<int>& gens) {
    for (int x : gens)
        if (x < 0 || x >= g.n) throw validation_error("generator index out of range");
    std::set<int> elems{0};
    for (int x : gens) {
        elems.insert(x);
        elems.insert(g.inv[x]);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<int> snapshot(elems.begin(), elems.end());
        for (int a : snapshot)
            for (int b : snapshot)
                if (elems.insert(g.mult[a][b]).second) grew = true;
    }
    return Subgroup{g, std::vector<int>(elems.begin(), elems.end())};
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& sorted_elements) {
    if (sorted_elements.empty() || sorted_elements.front() != 0) return false;
    std::set<int> s(sorted_elements.begin(), sorted_elements.end());
    for (int a : s) {
        if (a < 0 || a >= g.n) return false;
        if (!s.count(g.inv[a])) return false;
        for (int b : s)
            if (!s.count(g.mult[a][b])) return false;
    }
    return true;
}

bool is_normal(const Subgroup& h) {
    const FiniteGroup& g = h.parent;
    std::set<int> s(h.elements.begin(), h.elements.end());
    for (int x = 0; x < g.n; ++x)
        for (int a : h.elements)
            if (!s.count(g.mult[g.mult[x][a]][g.inv[x]])) return false;
    return true;
}

FiniteGroup subgroup_as_group(const Subgroup& h) {
    const FiniteGroup& g = h.parent;
    const int m = static_cast<int>(h.elements.size());
    std::vector<int> pos(g.n, -1);
    for (int i = 0; i < m; ++i) pos[h.elements[i]] = i;
    FiniteGroup s;
    s.n = m;
    s.mult.assign(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const int prod = g.mult[h.elements[i]][h.elements[j]];
            if (pos[prod] < 0) throw validation_error("element set is not closed under multiplication");
            s.mult[i][j] = pos[prod];
        }
    s.inv = inverse_table(s.mult);
    s.name = g.name + "-sub" + std::to_string(m);
    return s;
}

std::vector<int> irrep_degree_multiset(const FiniteGroup& g) {
    if (g.abelian_factors) return std::vector<int>(g.n, 1);
    if (g.degrees_meta) {
        std::vector<int> d = *g.degrees_meta;
        std::sort(d.begin(), d.end());
        long long sq = 0;
        for (int x : d) sq += static_cast<long long>(x) * x;
        if (sq != g.n) throw validation_error("irrep degrees inconsistent: sum of squares != group order");
        return d;
    }
    throw validation_error("irreducible representation degrees unavailable for group " + g.name);
}

bool same_degree_multiset(const FiniteGroup& g, const FiniteGroup& h) {
    return irrep_degree_multiset(g) == irrep_degree_multiset(h);
}

GroupBijection make_bijection(const FiniteGroup& domain, const FiniteGroup& codomain, std::vector<int> map) {
    if (domain.n != codomain.n) throw validation_error("bijection requires equal group orders");
    if (static_cast<int>(map.size()) != domain.n) throw validation_error("bijection map has wrong length");
    std::vector<bool> seen(domain.n, false);
    for (int v : map) {
        if (v < 0 || v >= domain.n || seen[v]) throw validation_error("map is not a bijection of indices");
        seen[v] = true;
    }
    return GroupBijection{domain, codomain, std::move(map)};
}

GroupBijection identity_bijection(const FiniteGroup& g) {
    std::vector<int> m(g.n);
    for (int i = 0; i < g.n; ++i) m[i] = i;
    return GroupBijection{g, g, std::move(m)};
}

GroupBijection translation(const FiniteGroup& g, int a) {
    if (a < 0 || a >= g.n) throw validation_error("element index out of range");
    std::vector<int> m(g.n);
    for (int x = 0; x < g.n; ++x) m[x] = g.mult[a][x];
    return GroupBijection{g, g, std::move(m)};
}

GroupBijection compose(const GroupBijection& f, const GroupBijection& g) {
    if (!same_group(f.domain, g.codomain)) throw validation_error("bijection composition: inner groups differ");
    std::vector<int> m(g.domain.n);
    for (int x = 0; x < g.domain.n; ++x) m[x] = f.map[g.map[x]];
    return GroupBijection{g.domain, f.codomain, std::move(m)};
}

GroupBijection inverse(const GroupBijection& f) {
    std::vector<int> m(f.domain.n);
    for (int x = 0; x < f.domain.n; ++x) m[f.map[x]] = x;
    return GroupBijection{f.codomain, f.domain, std::move(m)};
}

bool is_isomorphism(const GroupBijection& f) {
    if (f.domain.n != f.codomain.n) return false;
    for (int a = 0; a < f.domain.n; ++a)
        for (int b = 0; b < f.domain.n; ++b)
            if (f.map[f.domain.mult[a][b]] != f.codomain.mult[f.map[a]][f.map[b]]) return false;
    return true;
}

CMatrix perm_matrix(const GroupBijection& pi) {
    CMatrix p(pi.codomain.n, pi.domain.n);
    for (int y = 0; y < pi.domain.n; ++y) p(pi.map[y], y) = 1.0;
    return p;
}

std::vector<int> parse_cycles(const std::string& text, int n) {
    std::vector<int> map(n);
    for (int i = 0; i < n; ++i) map[i] = i;
    std::vector<bool> used(n, false);
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(') throw usage_error("cycle notation: expected '(' in \"" + text + "\"");
        ++i;
        std::vector<int> cyc;
        skip_ws();
        while (i < text.size() && text[i] != ')') {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j == i) throw usage_error("cycle notation: expected an index in \"" + text + "\"");
            const int v = std::stoi(text.substr(i, j - i));
            if (v < 0 || v >= n)
                throw usage_error("cycle notation: index " + std::to_string(v) + " out of range [0," +
                                  std::to_string(n) + ")");
            if (used[v]) throw usage_error("cycle notation: index " + std::to_string(v) + " repeated");
            used[v] = true;
            cyc.push_back(v);
            i = j;
            skip_ws();
            if (i < text.size() && text[i] == ',') {
                ++i;
                skip_ws();
            }
        }
        if (i == text.size()) throw usage_error("cycle notation: unterminated cycle in \"" + text + "\"");
        ++i; // ')'
        for (size_t k = 0; k < cyc.size(); ++k) map[cyc[k]] = cyc[(k + 1) % cyc.size()];
        skip_ws();
    }
    return map;
}

std::string format_cycles(const std::vector<int>& map) {
    const int n = static_cast<int>(map.size());
    std::vector<bool> seen(n, false);
    std::string out;
    for (int s = 0; s < n; ++s) {
        if (seen[s] || map[s] == s) continue;
        out += "(";
        int x = s;
        bool first = true;
        do {
            if (!first) out += ",";
            out += std::to_string(x);
            seen[x] = true;
            x = map[x];
            first = false;
        } while (x != s);
        out += ")";
    }
    return out.empty() ? "()" : out;
}

} // namespace giqls
