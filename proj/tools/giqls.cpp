// Command line front end for the group-invariant quantum Latin square toolkit.

#include <cstdint>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "giqls/cayleypairs.hpp"
#include "giqls/error.hpp"
#include "giqls/io.hpp"

using namespace giqls;

namespace {

struct Ctx {
    double tol = 1e-9;
    double supp_eps = 1e-9;
    int jobs = 0;
    std::string format = "json";
    bool timings = false;
};

std::string json_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty())
        std::cout << payload;
    else
        write_file(out_path, payload);
}

void require_json(const Ctx& ctx) {
    if (ctx.format != "json")
        throw usage_error("this subcommand only supports --format json");
}

std::string render_matrix(const Ctx& ctx, const CMatrix& m,
                          const std::function<std::string()>& json_form) {
    if (ctx.format == "csv") return matrix_to_csv(m, ctx.tol);
    if (ctx.format == "pretty") return matrix_to_pretty(m);
    return json_form() + "\n";
}

FiniteGroup pick_group(const std::string& flag, const std::optional<FiniteGroup>& header,
                       const char* what) {
    if (!flag.empty()) return parse_group_spec(flag);
    if (header) return *header;
    throw usage_error(std::string("no ") + what +
                      " given: pass the flag or use a file with group headers");
}

TransformationMatrix load_tm(const std::string& path, const std::string& gflag,
                             const std::string& hflag, double tol) {
    MatrixFile f = load_matrix_file(path);
    const FiniteGroup g = pick_group(gflag, f.group, "group");
    const FiniteGroup h = pick_group(hflag, f.cogroup, "cogroup");
    return verify_transformation(std::move(f.mat), g, h, tol);
}

CorrelationMatrix load_corr(const std::string& path, const std::string& gflag,
                            const std::string& hflag, double tol) {
    MatrixFile f = load_matrix_file(path);
    const FiniteGroup g = pick_group(gflag, f.group, "group");
    const FiniteGroup h = pick_group(hflag, f.cogroup, "cogroup");
    return make_correlation(std::move(f.mat), g, h, tol);
}

GroupBijection bijection_from_cycles(const FiniteGroup& domain, const FiniteGroup& codomain,
                                     const std::string& cycles) {
    return make_bijection(domain, codomain, parse_cycles(cycles, domain.n));
}

std::string int_list(const std::vector<int>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

std::string complex_list(const std::vector<cplx>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += "[" + format_double(v[i].real()) + "," + format_double(v[i].imag()) + "]";
    }
    return s + "]";
}

std::string digraph_json(const Digraph& d) {
    std::string s = "{\"n\":" + std::to_string(d.n) + ",\"arcs\":[";
    bool first = true;
    for (int v = 0; v < d.n; ++v)
        for (int w = 0; w < d.n; ++w)
            if (d.adj[v][w]) {
                if (!first) s += ",";
                first = false;
                s += "[" + std::to_string(v) + "," + std::to_string(w) + "]";
            }
    return s + "]}";
}

std::string tm_json(const TransformationMatrix& u) {
    return matrix_file_json(u.U, &u.G, &u.Gp);
}

std::string corr_json(const CorrelationMatrix& q) {
    return matrix_file_json(q.mat, &q.G, &q.Gp);
}

} // namespace

int main(int argc, char** argv) {
    Ctx ctx;
    CLI::App app{"group-invariant quantum Latin square toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--tol", ctx.tol, "comparison tolerance");
    app.add_option("--supp-eps", ctx.supp_eps, "support threshold");
    app.add_option("--jobs", ctx.jobs, "worker threads (0 = hardware)");
    app.add_option("--format", ctx.format, "output format: json|csv|pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_flag("--timings", ctx.timings, "include elapsed_seconds fields");

    std::function<int()> action;

    // char-table
    {
        auto sc = app.add_subcommand("char-table", "character table of an abelian group");
        auto group = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        sc->add_option("--group", *group, "group spec")->required();
        sc->add_option("--out", *out, "output path");
        sc->callback([&, group, out]() {
            action = [&, group, out]() {
                const FiniteGroup g = parse_group_spec(*group);
                const CMatrix c = character_table(g);
                emit(*out, render_matrix(ctx, c, [&]() { return matrix_to_json(c); }));
                return 0;
            };
        });
    }

    // build-abelian
    {
        auto sc = app.add_subcommand("build-abelian",
                                     "character construction U = C^dag P^pihat C'");
        auto group = std::make_shared<std::string>();
        auto cogroup = std::make_shared<std::string>();
        auto pihat = std::make_shared<std::string>("()");
        auto out = std::make_shared<std::string>();
        sc->add_option("--group", *group, "row group")->required();
        sc->add_option("--cogroup", *cogroup, "column group")->required();
        sc->add_option("--pihat", *pihat, "character bijection in cycle notation");
        sc->add_option("--out", *out, "output path");
        sc->callback([&, group, cogroup, pihat, out]() {
            action = [&, group, cogroup, pihat, out]() {
                const FiniteGroup g = parse_group_spec(*group);
                const FiniteGroup h = parse_group_spec(*cogroup);
                const TransformationMatrix u =
                    abelian_transformation(bijection_from_cycles(h, g, *pihat));
                emit(*out, render_matrix(ctx, u.U, [&]() { return tm_json(u); }));
                return 0;
            };
        });
    }

    // enumerate
    {
        auto sc = app.add_subcommand("enumerate",
                                     "enumerate abelian transformations or classical vertices");
        auto kind = std::make_shared<std::string>();
        auto group = std::make_shared<std::string>();
        auto cogroup = std::make_shared<std::string>();
        auto limit = std::make_shared<long long>(-1);
        auto out = std::make_shared<std::string>();
        sc->add_option("--kind", *kind, "abelian-transformations | classical-vertices")
            ->required()
            ->check(CLI::IsMember({"abelian-transformations", "classical-vertices"}));
        sc->add_option("--group", *group, "row group")->required();
        sc->add_option("--cogroup", *cogroup, "column group")->required();
        sc->add_option("--limit", *limit, "stop after this many items");
        sc->add_option("--out", *out, "output path");
        sc->callback([&, kind, group, cogroup, limit, out]() {
            action = [&, kind, group, cogroup, limit, out]() {
                require_json(ctx);
                const FiniteGroup g = parse_group_spec(*group);
                const FiniteGroup h = parse_group_spec(*cogroup);
                std::string s = "{\"kind\":" + json_escape(*kind);
                if (*kind == "abelian-transformations") {
                    std::optional<long long> lim;
                    if (*limit >= 0) lim = *limit;
                    const auto items = enumerate_abelian_transformations(g, h, lim);
                    s += ",\"count\":" + std::to_string(items.size()) + ",\"items\":[";
                    for (size_t i = 0; i < items.size(); ++i) {
                        if (i) s += ",";
                        s += tm_json(items[i]);
                    }
                } else {
                    auto items = enumerate_classical_vertices(g, h);
                    if (*limit >= 0 && static_cast<size_t>(*limit) < items.size())
                        items.resize(static_cast<size_t>(*limit));
                    s += ",\"count\":" + std::to_string(items.size()) + ",\"items\":[";
                    for (size_t i = 0; i < items.size(); ++i) {
                        if (i) s += ",";
                        s += corr_json(items[i]);
                    }
                }
                emit(*out, s + "]}\n");
                return 0;
            };
        });
    }

    // verify
    {
        auto sc = app.add_subcommand("verify", "check the transformation matrix conditions");
        auto matrix = std::make_shared<std::string>();
        auto group = std::make_shared<std::string>();
        auto cogroup = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        sc->add_option("--matrix", *matrix, "matrix file")->required();
        sc->add_option("--group", *group, "row group (overrides file header)");
        sc->add_option("--cogroup", *cogroup, "column group (overrides file header)");
        sc->add_option("--out", *out, "output path");
        sc->callback([&, matrix, group, cogroup, out]() {
            action = [&, matrix, group, cogroup, out]() {
                require_json(ctx);
                MatrixFile f = load_matrix_file(*matrix);
                const FiniteGroup g = pick_group(*group, f.group, "group");
                const FiniteGroup h = pick_group(*cogroup, f.cogroup, "cogroup");
                const TransformViolation v = check_transformation(f.mat, g, h);
                const bool valid = v.ok(ctx.tol);
                std::string s = std::string("{\"valid\":") + (valid ? "true" : "false");
                s += ",\"unitarity\":" + format_double(v.unitarity);
                s += ",\"conj_symmetry\":" + format_double(v.conj_symmetry);
                s += ",\"convolution\":" + format_double(v.convolution);
                s += ",\"dual_convolution\":" + format_double(v.dual_convolution);
                s += ",\"worst_conj\":[" + std::to_string(v.worst_conj[0]) + "," +
                     std::to_string(v.worst_conj[1]) + "]";
                s += ",\"worst_conv\":[" + std::to_string(v.worst_conv[0]) + "," +
                     std::to_string(v.worst_conv[1]) + "," + std::to_string(v.worst_conv[2]) +
                     "]";
                s += ",\"worst_dual\":[" + std::to_string(v.worst_dual[0]) + "," +
                     std::to_string(v.worst_dual[1]) + "," + std::to_string(v.worst_dual[2]) +
                     "]}";
                emit(*out, s + "\n");
                return valid ? 0 : 1;
            };
        });
    }

    // compose
    {
        auto sc = app.add_subcommand("compose", "compose two transformation or correlation files");
        auto left = std::make_shared<std::string>();
        auto right = std::make_shared<std::string>();
        auto kind = std::make_shared<std::string>("tm");
        auto out = std::make_shared<std::string>();
        sc->add_option("--left", *left, "left factor file")->required();
        sc->add_option("--right", *right, "right factor file")->required();
        sc->add_option("--kind", *kind, "tm | corr")->check(CLI::IsMember({"tm", "corr"}));
        sc->add_option("--out", *out, "output path");
        sc->callback([&, left, right, kind, out]() {
            action = [&, left, right, kind, out]() {
                if (*kind == "tm") {
                    const TransformationMatrix a = load_tm(*left, "", "", ctx.tol);
                    const TransformationMatrix b = load_tm(*right, "", "", ctx.tol);
                    const TransformationMatrix c = compose_transformations(a, b);
                    emit(*out, render_matrix(ctx, c.U, [&]() { return tm_json(c); }));
                } else {
                    const CorrelationMatrix a = load_corr(*left, "", "", ctx.tol);
                    const CorrelationMatrix b = load_corr(*right, "", "", ctx.tol);
                    const CorrelationMatrix c = compose_corr(a, b);
                    emit(*out, render_matrix(ctx, c.mat, [&]() { return corr_json(c); }));
                }
                return 0;
            };
        });
    }

    // correlation
    {
        auto sc = app.add_subcommand("correlation", "Q = U o conj(U) of a transformation file");
        auto matrix = std::make_shared<std::string>();
        auto group = std::make_shared<std::string>();
        auto cogroup = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        sc->add_option("--matrix", *matrix, "matrix file")->required();
        sc->add_option("--group", *group, "row group (overrides file header)");
        sc->add_option("--cogroup", *cogroup, "column group (overrides file header)");
        sc->add_option("--out", *out, "output path");
        sc->callback([&, matrix, group, cogroup, out]() {
            action = [&, matrix, group, cogroup, out]() {
                const TransformationMatrix u = load_tm(*matrix, *group, *cogroup, ctx.tol);
                const CorrelationMatrix q = correlation_of(u);
                emit(*out, render_matrix(ctx, q.mat, [&]() { return corr_json(q); }));
                return 0;
            };
        });
    }

    // reconstruct-qls
    {
        auto sc = app.add_subcommand("reconstruct-qls",
                                     "quantum Latin square of a transformation matrix");
        auto matrix = std::make_shared<std::string>();
        auto basis = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        sc->add_option("--matrix", *matrix, "matrix file")->required();
        sc->add_option("--basis", *basis, "orthonormal basis columns file");
        sc->add_option("--out", *out, "output path");
        sc->callback([&, matrix, basis, out]() {
            action = [&, matrix, basis, out]() {
                require_json(ctx);
                const TransformationMatrix u = load_tm(*matrix, "", "", ctx.tol);
                std::optional<CMatrix> b;
                if (!basis->empty()) b = load_matrix_file(*basis).mat;
                const QuantumLatinSquare q = reconstruct_qls(u, b, ctx.tol);
                const size_t dim = q.vectors[0][0].size();
                std::string s = "{\"group\":" + group_to_json(q.G) +
                                ",\"cogroup\":" + group_to_json(q.Gp) +
                                ",\"dimension\":" + std::to_string(dim) + ",\"vectors\":[";
                for (int a = 0; a < q.G.n; ++a) {
                    if (a) s += ",";
                    s += "[";
                    for (int bb = 0; bb < q.Gp.n; ++bb) {
                        if (bb) s += ",";
                        s += complex_list(q.vectors[a][bb]);
                    }
                    s += "]";
                }
                emit(*out, s + "]}\n");
                return 0;
            };
        });
    }

    // general-construct
    {
        auto sc = app.add_subcommand("general-construct",
                                     "transformation matrix from two block diagonalizers");
        auto vfile = std::make_shared<std::string>();
        auto wfile = std::make_shared<std::string>();
        auto perm = std::make_shared<std::string>("()");
        auto nfiles = std::make_shared<std::vector<std::string>>();
        auto out = std::make_shared<std::string>();
        sc->add_option("--v", *vfile, "diagonalizer file for the row group")->required();
        sc->add_option("--w", *wfile, "diagonalizer file for the column group")->required();
        sc->add_option("--perm", *perm, "summand permutation in cycle notation");
        sc->add_option("--n", *nfiles, "per-summand unitary N files (default identity)");
        sc->add_option("--out", *out, "output path");
        sc->callback([&, vfile, wfile, perm, nfiles, out]() {
            action = [&, vfile, wfile, perm, nfiles, out]() {
                MatrixFile vf = load_matrix_file(*vfile);
                MatrixFile wf = load_matrix_file(*wfile);
                if (!vf.group || !vf.degrees || !wf.group || !wf.degrees)
                    throw usage_error(
                        "diagonalizer files need \"group\" and \"degrees\" headers");
                const BlockDiagonalizer v =
                    make_block_diagonalizer(std::move(vf.mat), *vf.degrees, *vf.group, ctx.tol);
                const BlockDiagonalizer w =
                    make_block_diagonalizer(std::move(wf.mat), *wf.degrees, *wf.group, ctx.tol);
                const size_t r = w.degrees.size();
                std::vector<int> p = parse_cycles(*perm, static_cast<int>(r));
                std::vector<CMatrix> n_mats;
                if (nfiles->empty()) {
                    for (size_t i = 0; i < r; ++i)
                        n_mats.push_back(CMatrix::identity(w.degrees[i]));
                } else {
                    if (nfiles->size() != r)
                        throw usage_error("need one --n file per summand");
                    for (const auto& f : *nfiles) n_mats.push_back(load_matrix_file(f).mat);
                }
                const TransformationMatrix u = general_construct(v, w, p, n_mats, ctx.tol);
                emit(*out, render_matrix(ctx, u.U, [&]() { return tm_json(u); }));
                return 0;
            };
        });
    }

    // s3-demo
    {
        auto sc = app.add_subcommand("s3-demo",
                                     "order-6 nonabelian construction and hyperplane demo");
        auto out = std::make_shared<std::string>();
        sc->add_option("--out", *out, "output path");
        sc->callback([&, out]() {
            action = [&, out]() {
                require_json(ctx);
                const BlockDiagonalizer v = s3_block_diagonalizer();
                const double r2 = 1.0 / std::sqrt(2.0);
                CMatrix h(2, 2);
                h(0, 0) = r2; h(0, 1) = r2; h(1, 0) = r2; h(1, 1) = -r2;
                const std::vector<CMatrix> ns{CMatrix::identity(1), CMatrix::identity(1), h};
                const TransformationMatrix u1 =
                    general_construct(v, v, {0, 1, 2}, ns, ctx.tol);
                const TransformationMatrix u2 =
                    general_construct(v, v, {1, 0, 2}, ns, ctx.tol);
                const CorrelationMatrix q1 = correlation_of(u1);
                const CorrelationMatrix q2 = correlation_of(u2);
                const double mrows[6][6] = {{1, 0, 0, 0, 0, 0},  {0, 0, 0, -1, 1, 1},
                                            {0, 0, 0, -1, 1, 1}, {0, -1, -1, 1, 0, 0},
                                            {0, 1, 1, 0, -1, -1}, {0, 1, 1, 0, -1, -1}};
                CMatrix m(6, 6);
                for (int i = 0; i < 6; ++i)
                    for (int j = 0; j < 6; ++j) m(i, j) = mrows[i][j];
                auto pair_value = [&](const CorrelationMatrix& q) {
                    double acc = 0.0;
                    for (int i = 0; i < 6; ++i)
                        for (int j = 0; j < 6; ++j) acc += m(i, j).real() * q.mat(i, j).real();
                    return acc;
                };
                const auto [cmin, argmin] = min_hyperplane(v.G, v.G, m);
                std::string s = "{\"v\":" + matrix_file_json(v.V, &v.G, nullptr, &v.degrees);
                s += ",\"u1\":" + tm_json(u1);
                s += ",\"u2\":" + tm_json(u2);
                s += ",\"q1\":" + corr_json(q1);
                s += ",\"q2\":" + corr_json(q2);
                s += ",\"hyperplane\":" + matrix_to_json(m);
                s += ",\"value1\":" + format_double(pair_value(q1));
                s += ",\"value2\":" + format_double(pair_value(q2));
                s += ",\"classical_min\":" + format_double(cmin);
                s += ",\"argmin\":" + json_escape(format_cycles(argmin.map));
                emit(*out, s + "}\n");
                return 0;
            };
        });
    }

    // extract-iso
    {
        auto sc = app.add_subcommand("extract-iso",
                                     "subgroup isomorphism from single-support rows");
        auto matrix = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        sc->add_option("--matrix", *matrix, "transformation matrix file")->required();
        sc->add_option("--out", *out, "output path");
        sc->callback([&, matrix, out]() {
            action = [&, matrix, out]() {
                require_json(ctx);
                const TransformationMatrix u = load_tm(*matrix, "", "", ctx.tol);
                const IsoExtraction ext = extract_isomorphism(u, ctx.supp_eps, ctx.tol);
                std::string s = "{\"s\":" + int_list(ext.S.elements);
                s += ",\"sp\":" + int_list(ext.Sp.elements);
                s += ",\"sigma\":[";
                for (size_t i = 0; i < ext.sigma.size(); ++i) {
                    if (i) s += ",";
                    s += "[" + std::to_string(ext.S.elements[i]) + "," +
                         std::to_string(ext.sigma[i]) + "]";
                }
                s += "],\"chi\":" + complex_list(ext.chi);
                s += ",\"chip\":" + complex_list(ext.chip);
                emit(*out, s + "}\n");
                return 0;
            };
        });
    }

    // decompose
    {
        auto sc = app.add_subcommand("decompose",
                                     "component subgroup and block decomposition");
        auto corr = std::make_shared<std::string>();
        auto group = std::make_shared<std::string>();
        auto cogroup = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        sc->add_option("--corr", *corr, "correlation matrix file")->required();
        sc->add_option("--group", *group, "row group (overrides file header)");
        sc->add_option("--cogroup", *cogroup, "column group (overrides file header)");
        sc->add_option("--out", *out, "output path");
        sc->callback([&, corr, group, cogroup, out]() {
            action = [&, corr, group, cogroup, out]() {
                require_json(ctx);
                const CorrelationMatrix q = load_corr(*corr, *group, *cogroup, ctx.tol);
                const Decomposition dec = decompose(q, ctx.supp_eps, ctx.tol);
                std::string s = "{\"k\":" + int_list(dec.K.elements);
                s += ",\"h\":" + int_list(dec.H.elements);
                s += ",\"hp\":" + int_list(dec.Hp.elements);
                s += ",\"s\":" + format_double(dec.s);
                s += ",\"coset_reps\":" + int_list(dec.coset_reps);
                s += ",\"block_rows\":[";
                for (size_t i = 0; i < dec.block_rows.size(); ++i) {
                    if (i) s += ",";
                    s += int_list(dec.block_rows[i]);
                }
                s += "],\"block_cols\":[";
                for (size_t i = 0; i < dec.block_cols.size(); ++i) {
                    if (i) s += ",";
                    s += int_list(dec.block_cols[i]);
                }
                s += "],\"components\":[";
                for (size_t i = 0; i < dec.component_matrices.size(); ++i) {
                    if (i) s += ",";
                    s += matrix_to_json(dec.component_matrices[i]);
                }
                s += "],\"identity_block\":" + corr_json(*dec.identity_block);
                emit(*out, s + "}\n");
                return 0;
            };
        });
    }

    // search-nonlocal
    {
        auto sc = app.add_subcommand("search-nonlocal",
                                     "clique search for strong nonlocality");
        auto corr = std::make_shared<std::string>();
        auto group = std::make_shared<std::string>();
        auto cogroup = std::make_shared<std::string>();
        auto pihat = std::make_shared<std::string>();
        auto trials = std::make_shared<long long>(-1);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto out = std::make_shared<std::string>();
        sc->add_option("--corr", *corr, "correlation matrix file (single mode)");
        sc->add_option("--group", *group, "row group");
        sc->add_option("--cogroup", *cogroup, "column group");
        sc->add_option("--pihat", *pihat, "character bijection (single mode)");
        auto topt = sc->add_option("--trials", *trials, "sweep over random pihat draws");
        auto sopt = sc->add_option("--seed", *seed, "seed for the sweep (required with --trials)");
        topt->needs(sopt);
        sc->add_option("--out", *out, "output path");
        sc->callback([&, corr, group, cogroup, pihat, trials, seed, out]() {
            action = [&, corr, group, cogroup, pihat, trials, seed, out]() {
                require_json(ctx);
                const bool sweep = *trials >= 0;
                if (sweep) {
                    if (corr->size() || pihat->size())
                        throw usage_error("--trials excludes --corr and --pihat");
                    if (group->empty() || cogroup->empty())
                        throw usage_error("sweep mode needs --group and --cogroup");
                    const FiniteGroup g = parse_group_spec(*group);
                    const FiniteGroup h = parse_group_spec(*cogroup);
                    const auto t0 = std::chrono::steady_clock::now();
                    const auto hits = random_search(g, h, *trials, *seed, ctx.jobs);
                    std::string s = "{\"mode\":\"sweep\",\"trials\":" + std::to_string(*trials);
                    s += ",\"seed\":" + std::to_string(*seed);
                    s += ",\"hit_count\":" + std::to_string(hits.size());
                    s += ",\"hits\":[";
                    for (size_t i = 0; i < hits.size(); ++i) {
                        if (i) s += ",";
                        s += "{\"trial\":" + std::to_string(hits[i].trial);
                        s += ",\"pihat\":" + json_escape(format_cycles(hits[i].pihat.map));
                        s += ",\"nodes\":" + std::to_string(hits[i].report.nodes) + "}";
                    }
                    s += "]";
                    if (ctx.timings) {
                        const double el = std::chrono::duration<double>(
                                              std::chrono::steady_clock::now() - t0)
                                              .count();
                        s += ",\"elapsed_seconds\":" + format_double(el);
                    }
                    emit(*out, s + "}\n");
                    return 0;
                }
                CorrelationMatrix q{CMatrix(0, 0), FiniteGroup{}, FiniteGroup{}};
                std::string s = "{\"mode\":\"single\"";
                if (!corr->empty()) {
                    q = load_corr(*corr, *group, *cogroup, ctx.tol);
                } else {
                    if (group->empty() || cogroup->empty())
                        throw usage_error("single mode needs --corr or --group/--cogroup");
                    const FiniteGroup g = parse_group_spec(*group);
                    const FiniteGroup h = parse_group_spec(*cogroup);
                    const std::string cyc = pihat->empty() ? "()" : *pihat;
                    q = correlation_of(abelian_transformation(bijection_from_cycles(h, g, cyc)));
                    s += ",\"pihat\":" + json_escape(cyc);
                }
                const SearchReport rep = has_full_clique(q, ctx.supp_eps);
                const bool nl = rep.verdict == SearchReport::Verdict::strongly_nonlocal;
                s += std::string(",\"verdict\":") +
                     (nl ? "\"strongly-nonlocal\"" : "\"clique-found\"");
                s += ",\"witness\":" +
                     (rep.witness ? json_escape(format_cycles(rep.witness->map))
                                  : std::string("null"));
                s += ",\"nodes\":" + std::to_string(rep.nodes);
                if (ctx.timings)
                    s += ",\"elapsed_seconds\":" + format_double(rep.elapsed_seconds);
                emit(*out, s + "}\n");
                return 0;
            };
        });
    }

    // hyperplane-min
    {
        auto sc = app.add_subcommand("hyperplane-min",
                                     "minimize Tr(M^T D^pi) over all bijections");
        auto group = std::make_shared<std::string>();
        auto cogroup = std::make_shared<std::string>();
        auto matrix = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        sc->add_option("--group", *group, "row group")->required();
        sc->add_option("--cogroup", *cogroup, "column group")->required();
        sc->add_option("--matrix", *matrix, "hyperplane matrix file")->required();
        sc->add_option("--out", *out, "output path");
        sc->callback([&, group, cogroup, matrix, out]() {
            action = [&, group, cogroup, matrix, out]() {
                require_json(ctx);
                const FiniteGroup g = parse_group_spec(*group);
                const FiniteGroup h = parse_group_spec(*cogroup);
                const CMatrix m = load_matrix_file(*matrix).mat;
                const auto [mn, arg] = min_hyperplane(g, h, m);
                std::string s = "{\"min\":" + format_double(mn);
                s += ",\"argmin\":" + json_escape(format_cycles(arg.map));
                emit(*out, s + "}\n");
                return 0;
            };
        });
    }

    // cayley-pairs
    {
        auto sc = app.add_subcommand("cayley-pairs",
                                     "bipartite components and one Cayley digraph pair");
        auto corr = std::make_shared<std::string>();
        auto group = std::make_shared<std::string>();
        auto cogroup = std::make_shared<std::string>();
        auto subset = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        sc->add_option("--corr", *corr, "correlation matrix file")->required();
        sc->add_option("--group", *group, "row group (overrides file header)");
        sc->add_option("--cogroup", *cogroup, "column group (overrides file header)");
        sc->add_option("--subset", *subset, "comma separated component indices");
        sc->add_option("--out", *out, "output path");
        sc->callback([&, corr, group, cogroup, subset, out]() {
            action = [&, corr, group, cogroup, subset, out]() {
                require_json(ctx);
                const CorrelationMatrix q = load_corr(*corr, *group, *cogroup, ctx.tol);
                const BipartiteComponents bc = auxiliary_components(q, ctx.supp_eps);
                std::string s = "{\"k\":" + std::to_string(bc.k()) + ",\"components\":[";
                for (int i = 0; i < bc.k(); ++i) {
                    if (i) s += ",";
                    s += "{\"rows\":" + int_list(bc.comps[i].first) +
                         ",\"cols\":" + int_list(bc.comps[i].second) + "}";
                }
                s += "]";
                if (!subset->empty()) {
                    std::vector<int> I;
                    std::stringstream ss(*subset);
                    std::string tok;
                    while (std::getline(ss, tok, ',')) {
                        try {
                            I.push_back(std::stoi(tok));
                        } catch (...) {
                            throw usage_error("subset must be comma separated integers");
                        }
                    }
                    const CayleyPair cp = pairs_for(q, bc, I);
                    const bool ind = verify_indicator(q, cp.C, cp.Cp, ctx.tol);
                    const auto iso = digraph_isomorphic(cp.X, cp.Y);
                    s += ",\"subset\":" + int_list(cp.I);
                    s += ",\"c\":" + int_list(cp.C);
                    s += ",\"cp\":" + int_list(cp.Cp);
                    s += ",\"x\":" + digraph_json(cp.X);
                    s += ",\"y\":" + digraph_json(cp.Y);
                    s += std::string(",\"indicator\":") + (ind ? "true" : "false");
                    s += std::string(",\"isomorphic\":") + (iso ? "true" : "false");
                    s += ",\"map\":" + (iso ? int_list(*iso) : std::string("null"));
                }
                emit(*out, s + "}\n");
                return 0;
            };
        });
    }

    // hunt
    {
        auto sc = app.add_subcommand("hunt",
                                     "scan component subsets for non-isomorphic Cayley pairs");
        auto corr = std::make_shared<std::string>();
        auto group = std::make_shared<std::string>();
        auto cogroup = std::make_shared<std::string>();
        auto limit = std::make_shared<long long>(-1);
        auto out = std::make_shared<std::string>();
        sc->add_option("--corr", *corr, "correlation matrix file")->required();
        sc->add_option("--group", *group, "row group (overrides file header)");
        sc->add_option("--cogroup", *cogroup, "column group (overrides file header)");
        sc->add_option("--limit", *limit, "stop after this many subsets");
        sc->add_option("--out", *out, "output path");
        sc->callback([&, corr, group, cogroup, limit, out]() {
            action = [&, corr, group, cogroup, limit, out]() {
                require_json(ctx);
                const CorrelationMatrix q = load_corr(*corr, *group, *cogroup, ctx.tol);
                std::optional<long long> lim;
                if (*limit >= 0) lim = *limit;
                const HuntReport rep = hunt(q, ctx.supp_eps, lim);
                std::string s = "{\"k\":" + std::to_string(rep.k) + ",\"entries\":[";
                for (size_t i = 0; i < rep.entries.size(); ++i) {
                    if (i) s += ",";
                    s += "{\"i\":" + int_list(rep.entries[i].I);
                    s += ",\"csize\":" + std::to_string(rep.entries[i].csize);
                    s += std::string(",\"isomorphic\":") +
                         (rep.entries[i].isomorphic ? "true" : "false") + "}";
                }
                s += std::string("],\"found_nonisomorphic\":") +
                     (rep.found_nonisomorphic ? "true" : "false");
                emit(*out, s + "}\n");
                return 0;
            };
        });
    }

    // lift
    {
        auto sc = app.add_subcommand("lift", "tensor with an identity factor");
        auto matrix = std::make_shared<std::string>();
        auto m = std::make_shared<int>(2);
        auto kind = std::make_shared<std::string>("tm");
        auto out = std::make_shared<std::string>();
        sc->add_option("--matrix", *matrix, "transformation or correlation file")->required();
        sc->add_option("--m", *m, "identity factor size");
        sc->add_option("--kind", *kind, "tm | corr")->check(CLI::IsMember({"tm", "corr"}));
        sc->add_option("--out", *out, "output path");
        sc->callback([&, matrix, m, kind, out]() {
            action = [&, matrix, m, kind, out]() {
                if (*kind == "tm") {
                    const TransformationMatrix u = load_tm(*matrix, "", "", ctx.tol);
                    const TransformationMatrix lifted = tensor_lift(u, *m);
                    emit(*out, render_matrix(ctx, lifted.U, [&]() { return tm_json(lifted); }));
                } else {
                    const CorrelationMatrix q = load_corr(*matrix, "", "", ctx.tol);
                    const CorrelationMatrix lifted = tensor_lift(q, *m);
                    emit(*out,
                         render_matrix(ctx, lifted.mat, [&]() { return corr_json(lifted); }));
                }
                return 0;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "{\"error\":\"usage\",\"message\":" << json_escape(e.what()) << "}\n";
        return 2;
    }

    try {
        return action();
    } catch (const usage_error& e) {
        std::cerr << "{\"error\":\"usage\",\"message\":" << json_escape(e.what()) << "}\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "{\"error\":\"validation\",\"message\":" << json_escape(e.what()) << "}\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"internal\",\"message\":" << json_escape(e.what()) << "}\n";
        return 1;
    }
}
