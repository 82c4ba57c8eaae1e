#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "darboux/surface_verify.hpp"

namespace darboux {

// All artifact writes go through a temp file + rename.
inline void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + path);
}

namespace detail {
inline void append_number(std::string& s, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    s += buf;
}
}  // namespace detail

// Wavefront OBJ: one `v` line per vertex (ambient coordinates as-is, no
// Euclideanization of Lorentz meshes), quad `f` lines over the grid,
// row-major with 1-based indices.
inline std::string mesh_to_obj(const SurfaceMesh& mesh) {
    if (mesh.positions.empty()) throw std::invalid_argument("mesh_to_obj: empty mesh");
    std::string out;
    out.reserve(mesh.positions.size() * 48);
    for (const Vec3& p : mesh.positions) {
        out += "v ";
        detail::append_number(out, p.x);
        out += ' ';
        detail::append_number(out, p.y);
        out += ' ';
        detail::append_number(out, p.z);
        out += '\n';
    }
    const int n2 = mesh.n2();
    for (int i = 0; i + 1 < mesh.n1(); ++i)
        for (int j = 0; j + 1 < n2; ++j) {
            const long a = static_cast<long>(i) * n2 + j + 1;
            out += "f " + std::to_string(a) + ' ' + std::to_string(a + n2) + ' ' +
                   std::to_string(a + n2 + 1) + ' ' + std::to_string(a + 1) + '\n';
        }
    return out;
}

// CSV: header names the two grid axes, then ambient coordinates and the
// residual channels (nan where unverified).
inline std::string mesh_to_csv(const SurfaceMesh& mesh) {
    if (mesh.positions.empty()) throw std::invalid_argument("mesh_to_csv: empty mesh");
    std::string out = mesh.axis1 + "," + mesh.axis2 + ",x1,x2,x3,res_isom,res_K\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < mesh.n1(); ++i)
        for (int j = 0; j < mesh.n2(); ++j) {
            const std::size_t idx = mesh.index(i, j);
            detail::append_number(out, mesh.axis1_values[static_cast<std::size_t>(i)]);
            out += ',';
            detail::append_number(out, mesh.axis2_values[static_cast<std::size_t>(j)]);
            out += ',';
            detail::append_number(out, mesh.positions[idx].x);
            out += ',';
            detail::append_number(out, mesh.positions[idx].y);
            out += ',';
            detail::append_number(out, mesh.positions[idx].z);
            out += ',';
            detail::append_number(out, idx < mesh.res_isom.size() ? mesh.res_isom[idx] : nan);
            out += ',';
            detail::append_number(out, idx < mesh.res_K.size() ? mesh.res_K[idx] : nan);
            out += '\n';
        }
    return out;
}

inline void export_mesh(const SurfaceMesh& mesh, const std::string& path) {
    const auto dot = path.find_last_of('.');
    const std::string ext = (dot == std::string::npos) ? "" : path.substr(dot + 1);
    if (ext == "obj")
        write_text_atomic(path, mesh_to_obj(mesh));
    else if (ext == "csv")
        write_text_atomic(path, mesh_to_csv(mesh));
    else
        throw std::invalid_argument("export_mesh: unsupported format '" + ext +
                                    "' (use .obj or .csv)");
}

}  // namespace darboux
