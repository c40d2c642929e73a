#include "giqls/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "giqls/error.hpp"

namespace giqls {

using nlohmann::json;

std::string format_double(double v) {
    if (!std::isfinite(v))
        throw validation_error("non-finite value in output");
    if (v == 0.0) return "0";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw validation_error("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw validation_error("cannot write file: " + path);
    out << content;
    if (!out)
        throw validation_error("failed writing file: " + path);
}

namespace {

json parse_json(const std::string& text, const std::string& context) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw validation_error("invalid JSON in " + context + ": " + e.what());
    }
}

FiniteGroup group_from_json(const json& j);

FiniteGroup parse_shorthand_term(const std::string& term) {
    if (term.size() < 2)
        throw validation_error("unknown group shorthand: " + term);
    const char head = term[0];
    std::string rest = term.substr(1);
    int power = 1;
    const auto caret = rest.find('^');
    if (caret != std::string::npos) {
        if (head != 'Z' && head != 'z')
            throw validation_error("unknown group shorthand: " + term);
        try {
            power = std::stoi(rest.substr(caret + 1));
        } catch (...) {
            throw validation_error("unknown group shorthand: " + term);
        }
        rest = rest.substr(0, caret);
    }
    int n = 0;
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(),
                                     [](unsigned char c) { return std::isdigit(c); }))
        throw validation_error("unknown group shorthand: " + term);
    try {
        n = std::stoi(rest);
    } catch (...) {
        throw validation_error("unknown group shorthand: " + term);
    }
    if (head == 'Z' || head == 'z') {
        if (power < 1)
            throw validation_error("unknown group shorthand: " + term);
        FiniteGroup g = cyclic(n);
        for (int i = 1; i < power; ++i) g = direct_product(g, cyclic(n));
        return g;
    }
    if (head == 'S' || head == 's')
        return symmetric(n);
    throw validation_error("unknown group shorthand: " + term);
}

bool looks_like_shorthand(const std::string& s) {
    if (s.empty()) return false;
    if (s[0] != 'Z' && s[0] != 'z' && s[0] != 'S' && s[0] != 's') return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '^' || c == 'x';
    });
}

FiniteGroup parse_shorthand(const std::string& s) {
    std::vector<std::string> terms;
    std::string cur;
    for (char c : s) {
        if (c == 'x') {
            terms.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    terms.push_back(cur);
    FiniteGroup g = parse_shorthand_term(terms[0]);
    for (size_t i = 1; i < terms.size(); ++i)
        g = direct_product(g, parse_shorthand_term(terms[i]));
    return g;
}

FiniteGroup group_from_json(const json& j) {
    if (j.is_string())
        return parse_shorthand(j.get<std::string>());
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw validation_error("group spec must be an object with a \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "cyclic") {
        if (!j.contains("n") || !j["n"].is_number_integer())
            throw validation_error("cyclic group spec requires integer \"n\"");
        return cyclic(j["n"].get<int>());
    }
    if (kind == "symmetric") {
        if (!j.contains("n") || !j["n"].is_number_integer())
            throw validation_error("symmetric group spec requires integer \"n\"");
        return symmetric(j["n"].get<int>());
    }
    if (kind == "product") {
        if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].empty())
            throw validation_error("product group spec requires a nonempty \"factors\" array");
        FiniteGroup g = group_from_json(j["factors"][0]);
        for (size_t i = 1; i < j["factors"].size(); ++i)
            g = direct_product(g, group_from_json(j["factors"][i]));
        return g;
    }
    if (kind == "table") {
        if (!j.contains("mult") || !j["mult"].is_array())
            throw validation_error("table group spec requires a \"mult\" array");
        std::vector<std::vector<int>> mult;
        for (const auto& row : j["mult"]) {
            if (!row.is_array())
                throw validation_error("table rows must be arrays");
            std::vector<int> r;
            for (const auto& e : row) {
                if (!e.is_number_integer())
                    throw validation_error("table entries must be integers");
                r.push_back(e.get<int>());
            }
            mult.push_back(std::move(r));
        }
        FiniteGroup g = from_table(mult);
        if (j.contains("degrees")) {
            if (!j["degrees"].is_array())
                throw validation_error("degrees must be an array");
            std::vector<int> deg;
            int sq = 0;
            for (const auto& e : j["degrees"]) {
                if (!e.is_number_integer() || e.get<int>() < 1)
                    throw validation_error("degrees must be positive integers");
                deg.push_back(e.get<int>());
                sq += deg.back() * deg.back();
            }
            if (sq != g.n)
                throw validation_error("degree squares must sum to the group order");
            g.degrees_meta = std::move(deg);
        }
        return g;
    }
    throw validation_error("unknown group kind: " + kind);
}

} // namespace

FiniteGroup parse_group_spec(const std::string& spec) {
    if (spec.empty())
        throw validation_error("empty group spec");
    if (spec[0] == '{')
        return group_from_json(parse_json(spec, "group spec"));
    if (looks_like_shorthand(spec))
        return parse_shorthand(spec);
    return group_from_json(parse_json(read_file(spec), spec));
}

std::string group_to_json(const FiniteGroup& g) {
    if (g.abelian_factors) {
        const auto& f = *g.abelian_factors;
        if (f.size() == 1)
            return "{\"kind\":\"cyclic\",\"n\":" + std::to_string(f[0]) + "}";
        std::string s = "{\"kind\":\"product\",\"factors\":[";
        for (size_t i = 0; i < f.size(); ++i) {
            if (i) s += ",";
            s += "{\"kind\":\"cyclic\",\"n\":" + std::to_string(f[i]) + "}";
        }
        return s + "]}";
    }
    if (g.name.size() == 2 && g.name[0] == 'S') {
        const int k = g.name[1] - '0';
        if (k >= 3 && k <= 6) {
            const FiniteGroup ref = symmetric(k);
            if (ref.n == g.n && ref.mult == g.mult)
                return "{\"kind\":\"symmetric\",\"n\":" + std::to_string(k) + "}";
        }
    }
    std::string s = "{\"kind\":\"table\",\"mult\":[";
    for (int a = 0; a < g.n; ++a) {
        if (a) s += ",";
        s += "[";
        for (int b = 0; b < g.n; ++b) {
            if (b) s += ",";
            s += std::to_string(g.mult[a][b]);
        }
        s += "]";
    }
    s += "]";
    if (g.degrees_meta) {
        s += ",\"degrees\":[";
        for (size_t i = 0; i < g.degrees_meta->size(); ++i) {
            if (i) s += ",";
            s += std::to_string((*g.degrees_meta)[i]);
        }
        s += "]";
    }
    return s + "}";
}

std::string matrix_to_json(const CMatrix& m) {
    std::string s = "{\"rows\":" + std::to_string(m.rows()) +
                    ",\"cols\":" + std::to_string(m.cols()) + ",\"entries\":[";
    bool first = true;
    for (const cplx& z : m.entries()) {
        if (!first) s += ",";
        first = false;
        s += "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
    }
    return s + "]}";
}

std::string matrix_file_json(const CMatrix& m, const FiniteGroup* group,
                             const FiniteGroup* cogroup, const std::vector<int>* degrees) {
    std::string s = matrix_to_json(m);
    s.pop_back(); // reopen the object
    if (group) s += ",\"group\":" + group_to_json(*group);
    if (cogroup) s += ",\"cogroup\":" + group_to_json(*cogroup);
    if (degrees) {
        s += ",\"degrees\":[";
        for (size_t i = 0; i < degrees->size(); ++i) {
            if (i) s += ",";
            s += std::to_string((*degrees)[i]);
        }
        s += "]";
    }
    return s + "}";
}

std::string matrix_to_csv(const CMatrix& m, double tol) {
    if (!is_real(m, tol))
        throw validation_error("csv output requires a real matrix");
    std::string s;
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            if (c) s += ",";
            const double v = m(r, c).real();
            s += format_double(std::abs(v) <= tol ? 0.0 : v);
        }
        s += "\n";
    }
    return s;
}

std::string matrix_to_pretty(const CMatrix& m) {
    std::vector<std::string> cells(static_cast<size_t>(m.rows()) * m.cols());
    size_t width = 0;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            const cplx z = m(r, c);
            char buf[80];
            if (std::abs(z.imag()) < 5e-13)
                std::snprintf(buf, sizeof buf, "%.6g", std::abs(z.real()) < 5e-13 ? 0.0 : z.real());
            else
                std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
            cells[static_cast<size_t>(r) * m.cols() + c] = buf;
            width = std::max(width, cells[static_cast<size_t>(r) * m.cols() + c].size());
        }
    std::string s;
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            const std::string& cell = cells[static_cast<size_t>(r) * m.cols() + c];
            if (c) s += "  ";
            s.append(width - cell.size(), ' ');
            s += cell;
        }
        s += "\n";
    }
    return s;
}

MatrixFile parse_matrix_text(const std::string& text, const std::string& context) {
    const json j = parse_json(text, context);
    if (!j.is_object())
        throw validation_error("matrix file must be a JSON object: " + context);
    for (const char* key : {"rows", "cols"})
        if (!j.contains(key) || !j[key].is_number_integer())
            throw validation_error(std::string("matrix file requires integer \"") + key +
                                   "\": " + context);
    const int rows = j["rows"].get<int>();
    const int cols = j["cols"].get<int>();
    if (rows < 0 || cols < 0 || rows > 4096 || cols > 4096)
        throw validation_error("matrix shape out of range: " + context);
    if (!j.contains("entries") || !j["entries"].is_array())
        throw validation_error("matrix file requires an \"entries\" array: " + context);
    const auto& ent = j["entries"];
    if (ent.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols))
        throw validation_error("entry count does not match rows*cols: " + context);
    MatrixFile out;
    out.mat = CMatrix(rows, cols);
    size_t idx = 0;
    for (const auto& e : ent) {
        double re = 0.0, im = 0.0;
        if (e.is_number()) {
            re = e.get<double>();
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            re = e[0].get<double>();
            im = e[1].get<double>();
        } else {
            throw validation_error("entries must be numbers or [re,im] pairs: " + context);
        }
        out.mat(static_cast<int>(idx / cols), static_cast<int>(idx % cols)) = cplx(re, im);
        ++idx;
    }
    if (j.contains("group")) out.group = group_from_json(j["group"]);
    if (j.contains("cogroup")) out.cogroup = group_from_json(j["cogroup"]);
    if (j.contains("degrees")) {
        if (!j["degrees"].is_array())
            throw validation_error("degrees must be an array: " + context);
        std::vector<int> deg;
        for (const auto& e : j["degrees"]) {
            if (!e.is_number_integer() || e.get<int>() < 1)
                throw validation_error("degrees must be positive integers: " + context);
            deg.push_back(e.get<int>());
        }
        out.degrees = std::move(deg);
    }
    return out;
}

MatrixFile load_matrix_file(const std::string& path) {
    return parse_matrix_text(read_file(path), path);
}

} // namespace giqls
