#pragma once

#include <optional>
#include <string>

#include "giqls/qtransform.hpp"

namespace giqls {

// 12 significant digits, "-0" normalized to "0"; throws on non-finite values.
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Accepts the shorthand forms Zn, Zn^d, Sn and products joined with 'x'
// (e.g. Z2^4, Z4xZ2), an inline JSON object, or a path to a JSON file.
FiniteGroup parse_group_spec(const std::string& spec);

// Canonical JSON spec for a group, chosen so parse(serialize(g)) rebuilds the
// same multiplication table.
std::string group_to_json(const FiniteGroup& g);

// {"rows":r,"cols":c,"entries":[[re,im],...]} row-major; parsing also accepts
// bare numbers as real entries.
std::string matrix_to_json(const CMatrix& m);

// Matrix envelope with optional group/cogroup/degrees headers.
std::string matrix_file_json(const CMatrix& m, const FiniteGroup* group,
                             const FiniteGroup* cogroup,
                             const std::vector<int>* degrees = nullptr);

// Real part table; refuses matrices with imaginary content beyond tol.
// Entries with |value| <= tol are rendered as exact 0 so that golden files
// stay free of floating-point dust.
std::string matrix_to_csv(const CMatrix& m, double tol);
// Aligned human-readable complex table.
std::string matrix_to_pretty(const CMatrix& m);

struct MatrixFile {
    CMatrix mat{0, 0};
    std::optional<FiniteGroup> group;
    std::optional<FiniteGroup> cogroup;
    std::optional<std::vector<int>> degrees;
};

MatrixFile parse_matrix_text(const std::string& text, const std::string& context);
MatrixFile load_matrix_file(const std::string& path);

} // namespace giqls
