#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

#include "darboux/charts.hpp"
#include "darboux/quadrature.hpp"
#include "darboux/smooth.hpp"

namespace darboux {

enum class CurveSide { plus, minus };

// Sample of a characteristic curve of one singular system: the plus side
// carries (p, p0), the minus side (q, q0), and both carry fiber data.
struct SingularCurvePoint {
    CurveSide side = CurveSide::plus;
    double par = 0;    // p on the plus side, q on the minus side
    double scale = 1;  // p0 resp. q0
    double v = 0;
    Vec3 y;
};

// Closed-form characteristic curve generated by one function with positive
// third derivative; v comes from the one remaining quadrature.
class SingularCurve {
  public:
    SingularCurve(CurveSide side, Smooth1D gen, double dom_a, double dom_b)
        : side_(side), gen_(std::move(gen)), a_(dom_a), b_(dom_b) {
        if (!(dom_a < dom_b)) throw std::invalid_argument("SingularCurve: empty domain");
        auto positive_on = [&](double lo, double hi) {
            for (int i = 0; i <= 200; ++i)
                if (!(gen_.deriv(lo + (hi - lo) * i / 200.0, 3) > 0.0)) return false;
            return true;
        };
        if (!positive_on(a_, b_))
            throw std::invalid_argument(
                "SingularCurve: generator needs positive third derivative on its domain");
        // Base the v-antiderivative at 0 whenever the integrand extends
        // there; the closed forms are conventionally anchored at 0.
        double ref = a_;
        if (a_ <= 0.0 && b_ >= 0.0) ref = 0.0;
        else if (positive_on(std::min(0.0, a_), std::max(0.0, b_))) ref = 0.0;
        v_ref_ = ref;
        Smooth1D g = gen_;
        QuadConfig qc;
        qc.tol = 1e-12;
        quad_ = std::make_shared<CumulativeIntegral>(
            [g](double t) { return std::sqrt(2.0 * g.deriv(t, 3)); }, ref, qc);
    }

    CurveSide side() const { return side_; }
    double domain_min() const { return a_; }
    double domain_max() const { return b_; }
    const Smooth1D& generator() const { return gen_; }
    double v_reference() const { return v_ref_; }

    SingularCurvePoint at(double t) const {
        const double f0 = gen_(t);
        const double f1 = gen_.deriv(t, 1);
        const double f2 = gen_.deriv(t, 2);
        const double f3 = gen_.deriv(t, 3);
        SingularCurvePoint s;
        s.side = side_;
        s.par = t;
        s.scale = std::pow(8.0 * f3, 0.25);
        if (side_ == CurveSide::plus) {
            s.v = -(*quad_)(t);
            s.y.x = -(t * t + 1.0) * f2 + 2.0 * t * f1 - 2.0 * f0;
            s.y.y = -(t * t - 1.0) * f2 + 2.0 * t * f1 - 2.0 * f0;
            s.y.z = 2.0 * t * f2 - 2.0 * f1;
        } else {
            s.v = (*quad_)(t);
            s.y.x = (t * t + 1.0) * f2 - 2.0 * t * f1 + 2.0 * f0;
            s.y.y = (t * t - 1.0) * f2 - 2.0 * t * f1 + 2.0 * f0;
            s.y.z = -2.0 * t * f2 + 2.0 * f1;
        }
        return s;
    }

  private:
    CurveSide side_;
    Smooth1D gen_;
    double a_, b_;
    double v_ref_ = 0;
    std::shared_ptr<CumulativeIntegral> quad_;  // cached v-antiderivative
};

// Superposition: the plus sample carries (p, p0), the minus sample (q, q0),
// and the abelian fiber data adds componentwise.
inline N2Point superpose(const SingularCurvePoint& plus, const SingularCurvePoint& minus) {
    if (plus.side != CurveSide::plus || minus.side != CurveSide::minus)
        throw std::invalid_argument("superpose: expects one sample from each side");
    N2Point n;
    n.p = plus.par;
    n.p0 = plus.scale;
    n.q = minus.par;
    n.q0 = minus.scale;
    n.v = plus.v + minus.v;
    n.y = plus.y + minus.y;
    require_chart(n.p, n.q, n.p0, n.q0, "superpose");
    return n;
}

// The two arbitrary functions parametrizing every isometric embedding of
// u^2 (dv^2 - du^2); F''' > 0 and G''' > 0 are checked by dense sampling.
class GeneratorPair {
  public:
    GeneratorPair(Smooth1D F, Smooth1D G, double p_a, double p_b, double q_a, double q_b)
        : plus_(CurveSide::plus, std::move(F), p_a, p_b),
          minus_(CurveSide::minus, std::move(G), q_a, q_b) {}

    const SingularCurve& plus() const { return plus_; }
    const SingularCurve& minus() const { return minus_; }

    double p_min() const { return plus_.domain_min(); }
    double p_max() const { return plus_.domain_max(); }
    double q_min() const { return minus_.domain_min(); }
    double q_max() const { return minus_.domain_max(); }

  private:
    SingularCurve plus_, minus_;
};

}  // namespace darboux
