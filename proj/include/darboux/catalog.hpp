#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "darboux/jet.hpp"
#include "darboux/metric.hpp"
#include "darboux/smooth.hpp"

namespace darboux {

template <int N>
Jet<N> compose_series(const Jet<N>& outer_at_inner_value, const Jet<N>& inner) {
    return detail::compose<N>(outer_at_inner_value.c, inner);
}

// Profile q(s) of the Killing normal form g = ds^2 +- q'(s)^2 dt^2,
// satisfying q'' = 3 zeta q^{-1/3} with first integral
// (q'/3)^2 = zeta q^{2/3} - C. All quantities are closed forms in the
// chart variable u, with s(u) the strictly monotone arclength substitution.
struct QProfile {
    Smooth1D s_of_u, dsdu;
    Smooth1D q_of_u, qp_of_u, qpp_of_u, qppp_of_u;
    int ode_sign = 1;  // zeta
    double C = 0;
    double u_min = 0, u_max = 1;

    double s_min() const { return s_of_u(u_min); }
    double s_max() const { return s_of_u(u_max); }

    double u_from_s(double s) const {
        double lo = u_min, hi = u_max;
        double u = 0.5 * (lo + hi);
        for (int it = 0; it < 80; ++it) {
            const double f = s_of_u(u) - s;
            if (std::abs(f) < 1e-14 * std::max(1.0, std::abs(s))) break;
            const double d = dsdu(u);
            double step = f / d;
            double un = u - step;
            if (!(un > lo && un < hi)) {
                if (f > 0) hi = u; else lo = u;
                un = 0.5 * (lo + hi);
            } else {
                if (f > 0) hi = u; else lo = u;
            }
            u = un;
        }
        return u;
    }

    // Series of u(s) at s0 from du/ds = 1 / s'(u).
    Jet6 u_jet_of_s(double s0) const {
        const double u0 = u_from_s(s0);
        Jet6 uj(u0);
        for (int m = 0; m < 6; ++m) {
            const Jet6 w = recip(compose_series(dsdu.jet(uj.value()), uj));
            uj.c[static_cast<std::size_t>(m + 1)] = w.c[static_cast<std::size_t>(m)] / (m + 1);
        }
        return uj;
    }

    // q as a function of s (value and derivatives through the inversion).
    Smooth1D q_in_s() const {
        QProfile copy = *this;
        return Smooth1D(Smooth1D::Analytic{[copy](const Jet6& s) {
                            const Jet6 uj = copy.u_jet_of_s(s.value());
                            const Jet6 u_of_input = compose_series(uj, s);
                            return compose_series(copy.q_of_u.jet(uj.value()), u_of_input);
                        }},
                        s_min(), s_max());
    }

    double q_at_s(double s) const { return q_of_u(u_from_s(s)); }
    double qp_at_s(double s) const { return qp_of_u(u_from_s(s)); }
    double qpp_at_s(double s) const { return qpp_of_u(u_from_s(s)); }
    double qppp_at_s(double s) const { return qppp_of_u(u_from_s(s)); }
};

enum class MetricId { R1, R2, R3, R4, LE_S1, LE_S2, LE_S3, LE_T1, LH_S1, LH_T1, LH_T2, LH_T3 };

enum class KillingCausalType { not_applicable, spacelike, timelike };

// The canonical Killing field of a normal form: V = d/dt in the (s,t)
// chart, equal to st_chart_scale * d/dv in the printed (u,v) chart.
struct KillingField {
    KillingCausalType causal_type = KillingCausalType::not_applicable;
    double st_chart_scale = 3.0;
    std::function<double(double)> squared_length_uv;  // g(d/dv, d/dv) as a function of u
};

struct NormalFormCase {
    MetricId id;
    std::string name;
    OrthogonalMetric2D metric;
    Smooth1D curvature_closed;  // K(u)
    int epsilon;                // sign(K)
    KillingCausalType killing_type;
    QProfile profile;
};

inline const std::vector<NormalFormCase>& normal_form_catalog() {
    static const std::vector<NormalFormCase> cases = [] {
        std::vector<NormalFormCase> v;
        auto an = [](std::function<Jet6(const Jet6&)> f) {
            return Smooth1D(Smooth1D::Analytic{std::move(f)});
        };

        const double eps_guard = 1e-3;
        const double vmin = -3.2, vmax = 3.2;

        // Shared coefficient families.
        const Smooth1D cosh2 = an([](const Jet6& u) { return cosh(u) * cosh(u); });
        const Smooth1D sinh1 = an([](const Jet6& u) { return sinh(u); });
        const Smooth1D sinh2 = an([](const Jet6& u) { return sinh(u) * sinh(u); });
        const Smooth1D cosh1 = an([](const Jet6& u) { return cosh(u); });
        const Smooth1D lin = Smooth1D::poly({0.0, 1.0});
        const Smooth1D cos2 = an([](const Jet6& u) { return cos(u) * cos(u); });
        const Smooth1D sin1 = an([](const Jet6& u) { return sin(u); });

        auto cosh_profile = [&](double u_min, double u_max) {
            QProfile p;
            p.s_of_u = an([](const Jet6& u) { return 0.5 * (u + sinh(u) * cosh(u)); });
            p.dsdu = an([](const Jet6& u) { return cosh(u) * cosh(u); });
            p.q_of_u = an([](const Jet6& u) { return pow(cosh(u), 3.0); });
            p.qp_of_u = an([](const Jet6& u) { return 3.0 * sinh(u); });
            p.qpp_of_u = an([](const Jet6& u) { return 3.0 / cosh(u); });
            p.qppp_of_u = an([](const Jet6& u) { return -3.0 * sinh(u) / pow(cosh(u), 4.0); });
            p.ode_sign = 1;
            p.C = 1.0;
            p.u_min = u_min;
            p.u_max = u_max;
            return p;
        };
        auto sinh_profile = [&](double u_min, double u_max) {
            QProfile p;
            p.s_of_u = an([](const Jet6& u) { return 0.5 * (sinh(u) * cosh(u) - u); });
            p.dsdu = an([](const Jet6& u) { return sinh(u) * sinh(u); });
            p.q_of_u = an([](const Jet6& u) { return pow(sinh(u), 3.0); });
            p.qp_of_u = an([](const Jet6& u) { return 3.0 * cosh(u); });
            p.qpp_of_u = an([](const Jet6& u) { return 3.0 / sinh(u); });
            p.qppp_of_u = an([](const Jet6& u) { return -3.0 * cosh(u) / pow(sinh(u), 4.0); });
            p.ode_sign = 1;
            p.C = -1.0;
            p.u_min = u_min;
            p.u_max = u_max;
            return p;
        };
        auto power_profile = [&](double u_min, double u_max) {
            QProfile p;
            p.s_of_u = Smooth1D::poly({0.0, 0.0, 0.5});
            p.dsdu = Smooth1D::poly({0.0, 1.0});
            p.q_of_u = Smooth1D::poly({0.0, 0.0, 0.0, 1.0});
            p.qp_of_u = Smooth1D::poly({0.0, 3.0});
            p.qpp_of_u = an([](const Jet6& u) { return 3.0 / u; });
            p.qppp_of_u = an([](const Jet6& u) { return -3.0 / pow(u, 3.0); });
            p.ode_sign = 1;
            p.C = 0.0;
            p.u_min = u_min;
            p.u_max = u_max;
            return p;
        };
        auto cos_profile = [&](double u_min, double u_max) {
            QProfile p;
            p.s_of_u = an([](const Jet6& u) { return 0.5 * (u + sin(u) * cos(u)); });
            p.dsdu = an([](const Jet6& u) { return cos(u) * cos(u); });
            p.q_of_u = an([](const Jet6& u) { return pow(cos(u), 3.0); });
            p.qp_of_u = an([](const Jet6& u) { return -3.0 * sin(u); });
            p.qpp_of_u = an([](const Jet6& u) { return -3.0 / cos(u); });
            p.qppp_of_u = an([](const Jet6& u) { return -3.0 * sin(u) / pow(cos(u), 4.0); });
            p.ode_sign = -1;
            p.C = -1.0;
            p.u_min = u_min;
            p.u_max = u_max;
            return p;
        };

        auto metric = [&](const Smooth1D& E, const Smooth1D& G, int su, int sv, double a,
                          double b) {
            return OrthogonalMetric2D(Smooth2D::of_u(E), Smooth2D::of_u(G), su, sv,
                                      DomainRect{a, b, vmin, vmax}, true);
        };

        const Smooth1D K_sech4 = an([](const Jet6& u) { return pow(cosh(u), -4.0); });
        const Smooth1D K_csch4 = an([](const Jet6& u) { return pow(sinh(u), -4.0); });
        const Smooth1D K_upow4 = an([](const Jet6& u) { return pow(u, -4.0); });
        const Smooth1D K_sec4 = an([](const Jet6& u) { return pow(cos(u), -4.0); });

        const double hyp_max = 2.0;
        const double pow_max = 3.0;
        const double trig_max = M_PI / 2 - eps_guard;

        // Riemannian normal forms.
        v.push_back({MetricId::R1, "R1", metric(cosh2, sinh1, 1, 1, eps_guard, hyp_max), K_sech4,
                     1, KillingCausalType::not_applicable, cosh_profile(eps_guard, hyp_max)});
        v.push_back({MetricId::R2, "R2", metric(sinh2, cosh1, 1, 1, eps_guard, hyp_max), K_csch4,
                     1, KillingCausalType::not_applicable, sinh_profile(eps_guard, hyp_max)});
        v.push_back({MetricId::R3, "R3", metric(lin, lin, 1, 1, eps_guard, pow_max), K_upow4, 1,
                     KillingCausalType::not_applicable, power_profile(eps_guard, pow_max)});
        v.push_back({MetricId::R4, "R4", metric(cos2, sin1, 1, 1, eps_guard, trig_max),
                     an([](const Jet6& u) { return -1.0 * pow(cos(u), -4.0); }), -1,
                     KillingCausalType::not_applicable, cos_profile(eps_guard, trig_max)});

        // Lorentzian, elliptic (K > 0), spacelike Killing field.
        v.push_back({MetricId::LE_S1, "LE-S1", metric(cosh2, sinh1, 1, -1, eps_guard, hyp_max),
                     K_sech4, 1, KillingCausalType::spacelike, cosh_profile(eps_guard, hyp_max)});
        v.push_back({MetricId::LE_S2, "LE-S2", metric(sinh2, cosh1, 1, -1, eps_guard, hyp_max),
                     K_csch4, 1, KillingCausalType::spacelike, sinh_profile(eps_guard, hyp_max)});
        v.push_back({MetricId::LE_S3, "LE-S3", metric(lin, lin, 1, -1, eps_guard, pow_max),
                     K_upow4, 1, KillingCausalType::spacelike, power_profile(eps_guard, pow_max)});
        // Lorentzian, elliptic, timelike Killing field.
        {
            QProfile p = cos_profile(eps_guard, trig_max);
            p.ode_sign = -1;  // timelike variant: q'' = -3 eps q^{-1/3}
            p.C = -1.0;
            v.push_back({MetricId::LE_T1, "LE-T1", metric(cos2, sin1, -1, 1, eps_guard, trig_max),
                         K_sec4, 1, KillingCausalType::timelike, p});
        }
        // Lorentzian, hyperbolic (K < 0), spacelike Killing field.
        v.push_back({MetricId::LH_S1, "LH-S1", metric(cos2, sin1, 1, -1, eps_guard, trig_max),
                     an([](const Jet6& u) { return -1.0 * pow(cos(u), -4.0); }), -1,
                     KillingCausalType::spacelike, cos_profile(eps_guard, trig_max)});
        // Lorentzian, hyperbolic, timelike Killing field.
        {
            QProfile p = cosh_profile(eps_guard, hyp_max);
            v.push_back({MetricId::LH_T1, "LH-T1", metric(cosh2, sinh1, -1, 1, eps_guard, hyp_max),
                         an([](const Jet6& u) { return -1.0 * pow(cosh(u), -4.0); }), -1,
                         KillingCausalType::timelike, p});
        }
        {
            QProfile p = sinh_profile(eps_guard, hyp_max);
            v.push_back({MetricId::LH_T2, "LH-T2", metric(sinh2, cosh1, -1, 1, eps_guard, hyp_max),
                         an([](const Jet6& u) { return -1.0 * pow(sinh(u), -4.0); }), -1,
                         KillingCausalType::timelike, p});
        }
        {
            QProfile p = power_profile(eps_guard, pow_max);
            v.push_back({MetricId::LH_T3, "LH-T3", metric(lin, lin, -1, 1, eps_guard, pow_max),
                         an([](const Jet6& u) { return -1.0 * pow(u, -4.0); }), -1,
                         KillingCausalType::timelike, p});
        }
        return v;
    }();
    return cases;
}

inline const NormalFormCase& catalog(MetricId id) {
    for (const auto& c : normal_form_catalog())
        if (c.id == id) return c;
    throw std::invalid_argument("unknown catalog metric id");
}

inline const NormalFormCase& catalog(const std::string& name) {
    for (const auto& c : normal_form_catalog())
        if (c.name == name) return c;
    throw std::invalid_argument("unknown catalog metric id '" + name + "'");
}

inline bool is_catalog_id(const std::string& name) {
    for (const auto& c : normal_form_catalog())
        if (c.name == name) return true;
    return false;
}

inline KillingField killing_field(MetricId id) {
    const NormalFormCase& c = catalog(id);
    KillingField k;
    k.causal_type = c.killing_type;
    k.st_chart_scale = 3.0;
    const OrthogonalMetric2D m = c.metric;
    k.squared_length_uv = [m](double u) { return m.g_vv(u, m.domain().v_mid()); };
    return k;
}

// Built-in non-catalog test metrics.
inline OrthogonalMetric2D make_round_sphere() {
    auto sinu = Smooth1D(Smooth1D::Analytic{[](const Jet6& u) { return sin(u); }});
    return OrthogonalMetric2D(Smooth2D::of_u(Smooth1D::constant(1.0)), Smooth2D::of_u(sinu), 1, 1,
                              DomainRect{0.3, M_PI - 0.3, -3.2, 3.2}, true);
}

inline OrthogonalMetric2D make_hyperbolic_plane() {
    auto sinhu = Smooth1D(Smooth1D::Analytic{[](const Jet6& u) { return sinh(u); }});
    return OrthogonalMetric2D(Smooth2D::of_u(Smooth1D::constant(1.0)), Smooth2D::of_u(sinhu), 1, 1,
                              DomainRect{0.3, 2.0, -3.2, 3.2}, true);
}

inline OrthogonalMetric2D make_flat_plane() {
    return OrthogonalMetric2D(Smooth2D::of_u(Smooth1D::constant(1.0)),
                              Smooth2D::of_u(Smooth1D::constant(1.0)), 1, 1,
                              DomainRect{-1.0, 1.0, -1.0, 1.0}, true);
}

// R1 with the du^2 coefficient perturbed by a relative linear ramp.
inline OrthogonalMetric2D make_perturbed_r1(double amplitude = 0.1) {
    auto Eu = Smooth1D(Smooth1D::Analytic{[amplitude](const Jet6& u) {
        return cosh(u) * cosh(u) * (1.0 + amplitude * u);
    }});
    auto Gv = Smooth1D(Smooth1D::Analytic{[](const Jet6& u) { return sinh(u); }});
    return OrthogonalMetric2D(Smooth2D::of_u(Eu), Smooth2D::of_u(Gv), 1, 1,
                              DomainRect{1e-3, 2.0, -3.2, 3.2}, true);
}

}  // namespace darboux
