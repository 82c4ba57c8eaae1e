#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace darboux {

// Truncated Taylor scalar. c[k] stores f^(k)(t0)/k!, so arithmetic on jets
// propagates exact derivatives up to order N through any closed-form
// composition. Operations that lose top-order information (series of f')
// zero-fill the highest coefficient; callers must leave enough headroom.
template <int N>
struct Jet {
    std::array<double, N + 1> c{};

    Jet() = default;
    Jet(double v) { c[0] = v; }

    static Jet variable(double t0) {
        Jet j(t0);
        if constexpr (N >= 1) j.c[1] = 1.0;
        return j;
    }

    double value() const { return c[0]; }

    // f^(k)(t0)
    double derivative(int k) const {
        double fact = 1.0;
        for (int i = 2; i <= k; ++i) fact *= i;
        return c[static_cast<std::size_t>(k)] * fact;
    }

    // Series of f'; valid up to order N-1.
    Jet derivative_series() const {
        Jet d;
        for (int k = 0; k < N; ++k) d.c[k] = (k + 1) * c[k + 1];
        d.c[N] = 0.0;
        return d;
    }

    Jet operator-() const {
        Jet r;
        for (int k = 0; k <= N; ++k) r.c[k] = -c[k];
        return r;
    }

    Jet& operator+=(const Jet& o) {
        for (int k = 0; k <= N; ++k) c[k] += o.c[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int k = 0; k <= N; ++k) c[k] -= o.c[k];
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (int i = 0; i <= N; ++i)
            for (int j = 0; i + j <= N; ++j) r.c[i + j] += a.c[i] * b.c[j];
        return r;
    }

    friend Jet operator*(double s, Jet a) {
        for (int k = 0; k <= N; ++k) a.c[k] *= s;
        return a;
    }
    friend Jet operator*(Jet a, double s) { return s * a; }
    friend Jet operator/(Jet a, double s) { return (1.0 / s) * a; }

    friend Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }
    friend Jet operator+(double s, Jet a) { a.c[0] += s; return a; }
    friend Jet operator+(Jet a, double s) { a.c[0] += s; return a; }
    friend Jet operator-(double s, const Jet& a) { return Jet(s) - a; }
    friend Jet operator-(Jet a, double s) { a.c[0] -= s; return a; }
    friend Jet operator/(double s, const Jet& b) { return s * recip(b); }
};

namespace detail {

// f(u(t)) from the Taylor coefficients a[k] = f^(k)(u0)/k! of the outer
// function, by Horner composition in the nilpotent part of u.
template <int N>
Jet<N> compose(const std::array<double, N + 1>& a, const Jet<N>& u) {
    Jet<N> du = u;
    du.c[0] = 0.0;
    Jet<N> r(a[N]);
    for (int k = N - 1; k >= 0; --k) r = r * du + Jet<N>(a[k]);
    return r;
}

}  // namespace detail

template <int N>
Jet<N> recip(const Jet<N>& u) {
    std::array<double, N + 1> a{};
    const double u0 = u.c[0];
    double p = 1.0 / u0;
    for (int k = 0; k <= N; ++k) {
        a[k] = (k % 2 == 0 ? p : -p);
        p /= u0;
    }
    return detail::compose<N>(a, u);
}

template <int N>
Jet<N> exp(const Jet<N>& u) {
    std::array<double, N + 1> a{};
    const double e0 = std::exp(u.c[0]);
    double fact = 1.0;
    for (int k = 0; k <= N; ++k) {
        if (k > 0) fact *= k;
        a[k] = e0 / fact;
    }
    return detail::compose<N>(a, u);
}

template <int N>
Jet<N> log(const Jet<N>& u) {
    std::array<double, N + 1> a{};
    a[0] = std::log(u.c[0]);
    double p = 1.0 / u.c[0];
    for (int k = 1; k <= N; ++k) {
        a[k] = (k % 2 == 1 ? p : -p) / k;
        p /= u.c[0];
    }
    return detail::compose<N>(a, u);
}

// u0^e * binom(e, k) coefficients; u0 > 0 or integral exponent contexts only.
template <int N>
Jet<N> pow(const Jet<N>& u, double e) {
    std::array<double, N + 1> a{};
    double binom = 1.0;
    for (int k = 0; k <= N; ++k) {
        a[k] = binom * std::pow(u.c[0], e - k);
        binom *= (e - k) / (k + 1);
    }
    return detail::compose<N>(a, u);
}

template <int N>
Jet<N> sqrt(const Jet<N>& u) {
    return pow(u, 0.5);
}

template <int N>
Jet<N> sin(const Jet<N>& u) {
    std::array<double, N + 1> a{};
    const double s = std::sin(u.c[0]), co = std::cos(u.c[0]);
    const double cycle[4] = {s, co, -s, -co};
    double fact = 1.0;
    for (int k = 0; k <= N; ++k) {
        if (k > 0) fact *= k;
        a[k] = cycle[k % 4] / fact;
    }
    return detail::compose<N>(a, u);
}

template <int N>
Jet<N> cos(const Jet<N>& u) {
    std::array<double, N + 1> a{};
    const double s = std::sin(u.c[0]), co = std::cos(u.c[0]);
    const double cycle[4] = {co, -s, -co, s};
    double fact = 1.0;
    for (int k = 0; k <= N; ++k) {
        if (k > 0) fact *= k;
        a[k] = cycle[k % 4] / fact;
    }
    return detail::compose<N>(a, u);
}

template <int N>
Jet<N> sinh(const Jet<N>& u) {
    std::array<double, N + 1> a{};
    const double s = std::sinh(u.c[0]), co = std::cosh(u.c[0]);
    double fact = 1.0;
    for (int k = 0; k <= N; ++k) {
        if (k > 0) fact *= k;
        a[k] = (k % 2 == 0 ? s : co) / fact;
    }
    return detail::compose<N>(a, u);
}

template <int N>
Jet<N> cosh(const Jet<N>& u) {
    std::array<double, N + 1> a{};
    const double s = std::sinh(u.c[0]), co = std::cosh(u.c[0]);
    double fact = 1.0;
    for (int k = 0; k <= N; ++k) {
        if (k > 0) fact *= k;
        a[k] = (k % 2 == 0 ? co : s) / fact;
    }
    return detail::compose<N>(a, u);
}

template <int N>
Jet<N> tanh(const Jet<N>& u) {
    return sinh(u) / cosh(u);
}

template <int N>
Jet<N> tan(const Jet<N>& u) {
    return sin(u) / cos(u);
}

using Jet6 = Jet<6>;

}  // namespace darboux
