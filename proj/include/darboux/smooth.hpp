#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "darboux/jet.hpp"
#include "darboux/poly.hpp"

namespace darboux {

// Scalar function of one variable with derivatives up to order 4 on a
// declared interval. Backed by a polynomial, an analytic closed form
// evaluated through jets, or a sampled table differentiated centrally.
class Smooth1D {
  public:
    struct Analytic {
        std::function<Jet6(const Jet6&)> f;
    };
    struct Table {
        double a = 0, b = 1;
        std::vector<double> values;  // uniform samples on [a,b], size >= 5

        double step() const { return (b - a) / (static_cast<double>(values.size()) - 1.0); }
    };

    Smooth1D() : impl_(Poly1D({0.0})) {}
    Smooth1D(Poly1D p, double a = -1e30, double b = 1e30)
        : impl_(std::move(p)), a_(a), b_(b) {}
    Smooth1D(Analytic f, double a = -1e30, double b = 1e30)
        : impl_(std::move(f)), a_(a), b_(b) {}
    Smooth1D(Table t) : a_(t.a), b_(t.b), impl_(std::move(t)) {}

    static Smooth1D constant(double c) { return Smooth1D(Poly1D({c})); }
    static Smooth1D poly(std::vector<double> coeffs) { return Smooth1D(Poly1D(std::move(coeffs))); }

    // scale * base(t)^power for a named base function.
    static Smooth1D named(const std::string& base, double power = 1.0, double scale = 1.0) {
        auto mk = [&](auto fn) {
            return Smooth1D(Analytic{[fn, power, scale](const Jet6& t) {
                Jet6 b = fn(t);
                if (power == 1.0) return scale * b;
                return scale * pow(b, power);
            }});
        };
        if (base == "sinh") return mk([](const Jet6& t) { return sinh(t); });
        if (base == "cosh") return mk([](const Jet6& t) { return cosh(t); });
        if (base == "tanh") return mk([](const Jet6& t) { return tanh(t); });
        if (base == "sin") return mk([](const Jet6& t) { return sin(t); });
        if (base == "cos") return mk([](const Jet6& t) { return cos(t); });
        if (base == "tan") return mk([](const Jet6& t) { return tan(t); });
        if (base == "exp") return mk([](const Jet6& t) { return exp(t); });
        if (base == "log") return mk([](const Jet6& t) { return log(t); });
        if (base == "id" || base == "identity" || base == "pow")
            return mk([](const Jet6& t) { return t; });
        throw std::invalid_argument("Smooth1D: unknown catalog function '" + base + "'");
    }

    static Smooth1D table(double a, double b, std::vector<double> values) {
        if (values.size() < 5) throw std::invalid_argument("Smooth1D table needs >= 5 samples");
        return Smooth1D(Table{a, b, std::move(values)});
    }

    double domain_min() const { return a_; }
    double domain_max() const { return b_; }

    double operator()(double t) const { return deriv(t, 0); }

    double deriv(double t, int order) const {
        if (const auto* p = std::get_if<Poly1D>(&impl_)) return p->deriv(t, order);
        if (const auto* f = std::get_if<Analytic>(&impl_)) return f->f(Jet6::variable(t)).derivative(order);
        return table_deriv(std::get<Table>(impl_), t, order);
    }

    // Full jet at t (table backend falls back to difference-built coefficients).
    Jet6 jet(double t) const {
        if (const auto* p = std::get_if<Poly1D>(&impl_)) return p->eval(Jet6::variable(t));
        if (const auto* f = std::get_if<Analytic>(&impl_)) return f->f(Jet6::variable(t));
        Jet6 j;
        double fact = 1.0;
        for (int k = 0; k <= 4; ++k) {
            if (k > 0) fact *= k;
            j.c[static_cast<std::size_t>(k)] = deriv(t, k) / fact;
        }
        return j;
    }

    bool is_poly() const { return std::holds_alternative<Poly1D>(impl_); }
    const Poly1D* as_poly() const { return std::get_if<Poly1D>(&impl_); }

  private:
    static double table_deriv(const Table& tb, double t, int order) {
        const double h = tb.step();
        const auto n = static_cast<long>(tb.values.size());
        auto at = [&](long i) {
            if (i < 0) i = 0;
            if (i >= n) i = n - 1;
            return tb.values[static_cast<std::size_t>(i)];
        };
        long i = std::lround((t - tb.a) / h);
        if (i < 2) i = 2;
        if (i > n - 3) i = n - 3;
        switch (order) {
            case 0: {
                // local quadratic through nodes i-1, i, i+1
                const double xi = tb.a + i * h, d = t - xi;
                const double f0 = at(i), fp = at(i + 1), fm = at(i - 1);
                return f0 + d * (fp - fm) / (2 * h) + 0.5 * d * d * (fp - 2 * f0 + fm) / (h * h);
            }
            case 1: return (at(i + 1) - at(i - 1)) / (2 * h);
            case 2: return (at(i + 1) - 2 * at(i) + at(i - 1)) / (h * h);
            case 3: return (at(i + 2) - 2 * at(i + 1) + 2 * at(i - 1) - at(i - 2)) / (2 * h * h * h);
            default: throw std::invalid_argument("Smooth1D table: derivative order > 3");
        }
    }

    double a_ = -1e30, b_ = 1e30;
    std::variant<Poly1D, Analytic, Table> impl_;
};

// Scalar function of two variables. Separable products carry exact partials
// of any needed order; general callables use declared first partials when
// given and central differences otherwise.
class Smooth2D {
  public:
    struct Separable {
        Smooth1D fu, gv;
    };
    struct General {
        std::function<double(double, double)> f;
        std::function<double(double, double)> du;  // optional
        std::function<double(double, double)> dv;  // optional
        double fd_step = 1e-5;
    };

    Smooth2D() : impl_(Separable{Smooth1D::constant(0.0), Smooth1D::constant(1.0)}) {}
    Smooth2D(Separable s) : impl_(std::move(s)) {}
    Smooth2D(General g) : impl_(std::move(g)) {}

    // f(u) * 1, the common coefficients-of-u-only case.
    static Smooth2D of_u(Smooth1D f) {
        return Smooth2D(Separable{std::move(f), Smooth1D::constant(1.0)});
    }
    static Smooth2D of_v(Smooth1D g) {
        return Smooth2D(Separable{Smooth1D::constant(1.0), std::move(g)});
    }
    static Smooth2D product(Smooth1D f, Smooth1D g) {
        return Smooth2D(Separable{std::move(f), std::move(g)});
    }

    double value(double u, double v) const {
        if (const auto* s = std::get_if<Separable>(&impl_)) return s->fu(u) * s->gv(v);
        return std::get<General>(impl_).f(u, v);
    }

    // d^(i+j) f / du^i dv^j
    double partial(int i, int j, double u, double v) const {
        if (const auto* s = std::get_if<Separable>(&impl_))
            return s->fu.deriv(u, i) * s->gv.deriv(v, j);
        const auto& g = std::get<General>(impl_);
        if (i == 0 && j == 0) return g.f(u, v);
        if (i == 1 && j == 0 && g.du) return g.du(u, v);
        if (i == 0 && j == 1 && g.dv) return g.dv(u, v);
        const double h = g.fd_step;
        if (i > 0) {
            return (partial(i - 1, j, u + h, v) - partial(i - 1, j, u - h, v)) / (2 * h);
        }
        return (partial(i, j - 1, u, v + h) - partial(i, j - 1, u, v - h)) / (2 * h);
    }

    bool separable() const { return std::holds_alternative<Separable>(impl_); }
    const Separable* as_separable() const { return std::get_if<Separable>(&impl_); }

    // Taylor series in u at fixed v (exact for separable backends).
    Jet6 jet_u(double u, double v) const {
        if (const auto* s = std::get_if<Separable>(&impl_)) return s->gv(v) * s->fu.jet(u);
        Jet6 j;
        double fact = 1.0;
        for (int k = 0; k <= 4; ++k) {
            if (k > 0) fact *= k;
            j.c[static_cast<std::size_t>(k)] = partial(k, 0, u, v) / fact;
        }
        return j;
    }

    Jet6 jet_v(double u, double v) const {
        if (const auto* s = std::get_if<Separable>(&impl_)) return s->fu(u) * s->gv.jet(v);
        Jet6 j;
        double fact = 1.0;
        for (int k = 0; k <= 4; ++k) {
            if (k > 0) fact *= k;
            j.c[static_cast<std::size_t>(k)] = partial(0, k, u, v) / fact;
        }
        return j;
    }

  private:
    std::variant<Separable, General> impl_;
};

}  // namespace darboux
