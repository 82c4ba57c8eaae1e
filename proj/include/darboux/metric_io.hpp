#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "darboux/initial_curve.hpp"
#include "darboux/metric.hpp"

namespace darboux {

// Coefficient functions in JSON are either ascending polynomial coefficient
// arrays or named catalog functions {"name": ..., "power": k, "scale": s}.
inline Smooth1D smooth1d_from_json(const nlohmann::json& j) {
    if (j.is_array()) {
        std::vector<double> c;
        for (const auto& v : j) c.push_back(v.get<double>());
        return Smooth1D::poly(std::move(c));
    }
    if (j.is_object()) {
        const std::string name = j.at("name").get<std::string>();
        const double power = j.value("power", 1.0);
        const double scale = j.value("scale", 1.0);
        return Smooth1D::named(name, power, scale);
    }
    if (j.is_number()) return Smooth1D::constant(j.get<double>());
    throw std::invalid_argument("coefficient must be an array, object or number");
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

// {Eu, Gv, sign_u, sign_v, domain: [umin, umax, vmin, vmax]}
inline OrthogonalMetric2D metric_from_json(const nlohmann::json& j) {
    const Smooth1D Eu = smooth1d_from_json(j.at("Eu"));
    const Smooth1D Gv = smooth1d_from_json(j.at("Gv"));
    const int su = j.at("sign_u").get<int>();
    const int sv = j.at("sign_v").get<int>();
    const auto& d = j.at("domain");
    if (!d.is_array() || d.size() != 4)
        throw std::invalid_argument("domain must be [umin, umax, vmin, vmax]");
    DomainRect dom{d[0].get<double>(), d[1].get<double>(), d[2].get<double>(),
                   d[3].get<double>()};
    return OrthogonalMetric2D(Smooth2D::of_u(Eu), Smooth2D::of_u(Gv), su, sv, dom, true);
}

inline OrthogonalMetric2D metric_from_file(const std::string& path) {
    return metric_from_json(load_json_file(path));
}

// {x1: [...], x2: [...], x3: [...], domain: [a, b], t0: optional}
inline InitialCurve curve_from_json(const nlohmann::json& j) {
    InitialCurve c;
    c.x1 = smooth1d_from_json(j.at("x1"));
    c.x2 = smooth1d_from_json(j.at("x2"));
    c.x3 = smooth1d_from_json(j.at("x3"));
    const auto& d = j.at("domain");
    if (!d.is_array() || d.size() != 2) throw std::invalid_argument("domain must be [a, b]");
    c.t_min = d[0].get<double>();
    c.t_max = d[1].get<double>();
    c.t0 = j.value("t0", 0.5 * (c.t_min + c.t_max));
    if (!(c.t_min < c.t_max)) throw std::invalid_argument("curve domain is empty");
    if (c.t0 < c.t_min || c.t0 > c.t_max)
        throw std::invalid_argument("t0 outside the curve domain");
    return c;
}

inline InitialCurve curve_from_file(const std::string& path) {
    return curve_from_json(load_json_file(path));
}

}  // namespace darboux
