#include "frontspeed/reactions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace frontspeed {

namespace {

double smoothstep5(double w) {
    w = std::clamp(w, 0.0, 1.0);
    return w * w * w * (w * (6 * w - 15) + 10);
}

double chi_theta(double u, double theta) { return smoothstep5((2 * u - theta) / theta); }

double f_raw(const ReactionSpec& s, double u) {
    switch (s.kind) {
        case ReactionKind::KppQuadratic:
            return s.rate * u * (1 - u);
        case ReactionKind::Degenerate:
            return std::pow(u, s.degeneracy) * (1 - u);
        case ReactionKind::Arrhenius:
            return u > 0 ? std::exp(-s.activation / u) * (1 - u) : 0.0;
        case ReactionKind::IgnitionCutoff:
            return chi_theta(u, s.theta) * f_eval(*s.base, u);
    }
    return 0;
}

// Adaptive Simpson on [a,b]; the integrand has sqrt-type endpoints, so the
// recursion is allowed to go deep before giving up on an interval.
double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = g(lm), frm = g(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol)
        return left + right + (left + right - whole) / 15;
    return adaptive_simpson(g, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(g, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& g, double a, double b, double tol) {
    const double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return adaptive_simpson(g, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

ReactionSpec ReactionSpec::kpp_quadratic(double r) {
    if (r < 0) throw ParameterError("ReactionSpec: rate must be nonnegative");
    ReactionSpec s;
    s.kind = ReactionKind::KppQuadratic;
    s.rate = r;
    return s;
}

ReactionSpec ReactionSpec::degenerate(int m) {
    if (m < 2) throw ParameterError("ReactionSpec: degeneracy exponent must be >= 2");
    ReactionSpec s;
    s.kind = ReactionKind::Degenerate;
    s.degeneracy = m;
    return s;
}

ReactionSpec ReactionSpec::arrhenius(double E) {
    if (E <= 0) throw ParameterError("ReactionSpec: activation energy must be positive");
    ReactionSpec s;
    s.kind = ReactionKind::Arrhenius;
    s.activation = E;
    return s;
}

double f_eval(const ReactionSpec& spec, double u) { return f_raw(spec, std::clamp(u, 0.0, 1.0)); }

ReactionSpec ignition_cutoff(const ReactionSpec& base, double theta) {
    if (!(theta > 0 && theta < 1))
        throw ParameterError("ignition_cutoff: theta must lie in (0,1)");
    if (!base.is_positive())
        throw ParameterError("ignition_cutoff: base must be a positive nonlinearity");
    ReactionSpec s;
    s.kind = ReactionKind::IgnitionCutoff;
    s.theta = theta;
    s.base = std::make_shared<ReactionSpec>(base);
    return s;
}

KppBoundReport kpp_bound_check(const std::function<double(double)>& f, double fprime0,
                               int n_samples) {
    if (fprime0 <= 0)
        throw ClassificationError("kpp_bound_check: needs f'(0) > 0");
    KppBoundReport rep;
    rep.worst_violation = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_samples; ++i) {
        const double u = static_cast<double>(i) / (n_samples - 1);
        const double v = f(u) - u * fprime0;
        if (v > rep.worst_violation) {
            rep.worst_violation = v;
            rep.worst_u = u;
        }
    }
    rep.ok = rep.worst_violation <= 1e-12;
    return rep;
}

KppBoundReport kpp_bound_check(const ReactionSpec& spec, int n_samples) {
    if (spec.fprime0() <= 0)
        throw ClassificationError("kpp_bound_check: reaction has f'(0) = 0, bound inapplicable");
    return kpp_bound_check([&](double u) { return f_eval(spec, u); }, spec.fprime0(), n_samples);
}

double heinze_lower_bound(const ReactionSpec& spec) {
    auto g = [&](double u) { return std::sqrt(std::max(0.0, 2 * f_eval(spec, u))); };
    return integrate(g, 0.0, 1.0, 1e-8);
}

}  // namespace frontspeed
