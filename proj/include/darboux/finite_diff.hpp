#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace darboux {

inline double fd_default_step(double x) { return 1e-5 * std::max(1.0, std::abs(x)); }

// Central first difference.
inline double fd_derivative(const std::function<double(double)>& f, double x, double h = 0.0) {
    if (h <= 0.0) h = fd_default_step(x);
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Central second difference; step chosen larger than the first-difference
// default because roundoff scales like eps/h^2.
inline double fd_second_derivative(const std::function<double(double)>& f, double x,
                                   double h = 0.0) {
    if (h <= 0.0) h = 20.0 * fd_default_step(x);
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// Central-difference Jacobian of a vector map, error O(h^2).
inline std::vector<std::vector<double>> num_jacobian(
    const std::function<std::vector<double>(const std::vector<double>&)>& map,
    const std::vector<double>& at, double h = 1e-4) {
    if (h <= 0.0) throw std::invalid_argument("num_jacobian: step must be positive");
    std::vector<double> xp = at, xm = at;
    const std::vector<double> f0 = map(at);
    std::vector<std::vector<double>> jac(f0.size(), std::vector<double>(at.size()));
    for (std::size_t j = 0; j < at.size(); ++j) {
        const double hj = h * std::max(1.0, std::abs(at[j]));
        xp[j] = at[j] + hj;
        xm[j] = at[j] - hj;
        const std::vector<double> fp = map(xp);
        const std::vector<double> fm = map(xm);
        if (fp.size() != f0.size() || fm.size() != f0.size())
            throw std::runtime_error("num_jacobian: inconsistent map output size");
        for (std::size_t i = 0; i < f0.size(); ++i) {
            const double v = (fp[i] - fm[i]) / (2.0 * hj);
            if (!std::isfinite(v)) throw std::runtime_error("num_jacobian: non-finite sample");
            jac[i][j] = v;
        }
        xp[j] = at[j];
        xm[j] = at[j];
    }
    return jac;
}

}  // namespace darboux
