#pragma once

#include <cstddef>
#include <vector>

#include "darboux/jet.hpp"

namespace darboux {

// Real polynomial with ascending coefficients; evaluation and calculus
// are exact up to floating rounding.
class Poly1D {
  public:
    Poly1D() : c_{0.0} {}
    explicit Poly1D(std::vector<double> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(0.0);
    }

    const std::vector<double>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    double operator()(double t) const {
        double r = 0.0;
        for (std::size_t k = c_.size(); k-- > 0;) r = r * t + c_[k];
        return r;
    }

    Poly1D derivative() const {
        if (c_.size() <= 1) return Poly1D({0.0});
        std::vector<double> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = k * c_[k];
        return Poly1D(std::move(d));
    }

    Poly1D antiderivative(double c0 = 0.0) const {
        std::vector<double> a(c_.size() + 1);
        a[0] = c0;
        for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / (k + 1);
        return Poly1D(std::move(a));
    }

    // Value of the k-th derivative at t.
    double deriv(double t, int order) const {
        Poly1D p = *this;
        for (int i = 0; i < order; ++i) p = p.derivative();
        return p(t);
    }

    template <int N>
    Jet<N> eval(const Jet<N>& t) const {
        Jet<N> r(0.0);
        for (std::size_t k = c_.size(); k-- > 0;) r = r * t + Jet<N>(c_[k]);
        return r;
    }

  private:
    std::vector<double> c_;
};

}  // namespace darboux
