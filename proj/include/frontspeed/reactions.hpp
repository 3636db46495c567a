#ifndef FRONTSPEED_REACTIONS_HPP
#define FRONTSPEED_REACTIONS_HPP

#include <functional>
#include <memory>

#include "frontspeed/errors.hpp"

namespace frontspeed {

enum class ReactionKind { KppQuadratic, Degenerate, Arrhenius, IgnitionCutoff };

/// Nonlinearity f on [0,1] with f(0) = f(1) = 0.
///
///   KppQuadratic{r}:  f(u) = r u (1-u),        f'(0) = r
///   Degenerate{m}:    f(u) = u^m (1-u), m >= 2, f'(0) = 0
///   Arrhenius{E}:     f(u) = e^{-E/u} (1-u),    f'(0) = 0
///   IgnitionCutoff:   f(u) = chi_theta(u) f_base(u), f'(0) = 0
///
/// chi_theta is the quintic smoothstep ramp from 0 at theta/2 to 1 at theta,
/// so the cutoff family is pointwise nondecreasing as theta decreases.
struct ReactionSpec {
    ReactionKind kind = ReactionKind::KppQuadratic;
    double rate = 1.0;        // r
    int degeneracy = 2;       // m
    double activation = 1.0;  // E
    double theta = 0.5;       // ignition threshold
    std::shared_ptr<const ReactionSpec> base;  // IgnitionCutoff only

    double fprime0() const { return kind == ReactionKind::KppQuadratic ? rate : 0.0; }
    bool is_kpp() const { return kind == ReactionKind::KppQuadratic && rate > 0; }
    bool is_ignition() const { return kind == ReactionKind::IgnitionCutoff; }
    bool is_positive() const { return kind != ReactionKind::IgnitionCutoff; }

    static ReactionSpec kpp_quadratic(double r);
    static ReactionSpec degenerate(int m);
    static ReactionSpec arrhenius(double E);
};

/// f(u); u is clamped to [0,1] first.
double f_eval(const ReactionSpec& spec, double u);

/// Wraps base in the smooth ignition cutoff at threshold theta in (0,1).
ReactionSpec ignition_cutoff(const ReactionSpec& base, double theta);

struct KppBoundReport {
    bool ok = true;
    double worst_violation = 0;  // max of f(u) - u f'(0) over the samples
    double worst_u = 0;
};

/// Checks f(u) <= u f'(0) + 1e-12 at n_samples uniform points.
KppBoundReport kpp_bound_check(const ReactionSpec& spec, int n_samples = 1001);

/// Same check against an arbitrary sampled/tabulated f with a declared f'(0).
KppBoundReport kpp_bound_check(const std::function<double(double)>& f, double fprime0,
                               int n_samples = 1001);

/// Integral of sqrt(2 f) over [0,1] by adaptive quadrature (abs tol 1e-8);
/// a flow-independent lower bound on front speeds.
double heinze_lower_bound(const ReactionSpec& spec);

}  // namespace frontspeed

#endif
