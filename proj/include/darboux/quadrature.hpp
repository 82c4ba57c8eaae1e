#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

namespace darboux {

struct QuadConfig {
    enum class Method { simpson_fixed, simpson_adaptive };
    Method method = Method::simpson_adaptive;
    int panels = 256;        // fixed mode
    double tol = 1e-10;      // adaptive mode
    int max_depth = 40;
};

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    if (!std::isfinite(flm) || !std::isfinite(frm))
        throw std::runtime_error("integrate: non-finite sample");
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        const QuadConfig& cfg = QuadConfig{}) {
    if (a == b) return 0.0;
    if (cfg.method == QuadConfig::Method::simpson_fixed) {
        const int n = std::max(1, cfg.panels);
        const double h = (b - a) / n;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x0 = a + i * h, x1 = x0 + h;
            const double f0 = f(x0), fm = f(0.5 * (x0 + x1)), f1 = f(x1);
            if (!std::isfinite(f0) || !std::isfinite(fm) || !std::isfinite(f1))
                throw std::runtime_error("integrate: non-finite sample");
            sum += detail::simpson(f, x0, x1, f0, fm, f1);
        }
        return sum;
    }
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw std::runtime_error("integrate: non-finite sample");
    const double whole = detail::simpson(f, a, b, fa, fm, fb);
    return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, cfg.tol, cfg.max_depth);
}

// Antiderivative F(t) = int_base^t f with previously requested points cached,
// so grid sweeps only integrate short increments.
class CumulativeIntegral {
  public:
    CumulativeIntegral(std::function<double(double)> f, double base_point,
                       QuadConfig cfg = QuadConfig{})
        : f_(std::move(f)), cfg_(cfg) {
        cache_[base_point] = 0.0;
    }

    double operator()(double t) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(t);
        if (it != cache_.end()) return it->second;
        // Integrate from the nearest cached point.
        auto ub = cache_.upper_bound(t);
        double t0, v0;
        if (ub == cache_.begin()) {
            t0 = ub->first;
            v0 = ub->second;
        } else if (ub == cache_.end()) {
            auto last = std::prev(ub);
            t0 = last->first;
            v0 = last->second;
        } else {
            auto lo = std::prev(ub);
            if (std::abs(t - lo->first) <= std::abs(ub->first - t)) {
                t0 = lo->first; v0 = lo->second;
            } else {
                t0 = ub->first; v0 = ub->second;
            }
        }
        const double v = v0 + integrate(f_, t0, t, cfg_);
        cache_[t] = v;
        return v;
    }

  private:
    std::function<double(double)> f_;
    QuadConfig cfg_;
    std::map<double, double> cache_;
    std::mutex mu_;
};

}  // namespace darboux
