#ifndef FRONTSPEED_DISPERSION_HPP
#define FRONTSPEED_DISPERSION_HPP

#include <vector>

#include <Eigen/Dense>

#include "frontspeed/eigensolver.hpp"

namespace frontspeed {

struct DispersionPoint {
    double lambda = 0;
    double mu = 0;
    bool converged = false;
    int iterations = 0;
    double residual = 0;
};

/// Sampled map lambda -> mu(lambda) for one direction, with provenance.
struct DispersionCurve {
    Eigen::Vector2d direction{1.0, 0.0};
    CellGrid grid;
    double tol = 1e-9;
    std::vector<DispersionPoint> points;

    bool all_converged() const {
        for (const auto& p : points)
            if (!p.converged) return false;
        return true;
    }
};

/// One principal_eigenvalue call per lambda (independent problems; fanned
/// out over `threads` when > 1).  Non-convergence at a point is recorded in
/// its converged flag rather than aborting the sweep.
DispersionCurve sample_curve(const FieldSpec& field, double r, const Eigen::Vector2d& k,
                             const std::vector<double>& lambdas, const CellGrid& grid,
                             double tol = 1e-9, int threads = 1, int time_order = 4);

struct ConvexityReport {
    double worst_violation = 0;  // max over midpoint triples of mu_mid - (mu_l + mu_r)/2
    double lambda_at = 0;
    int triples = 0;

    bool pass(double tol) const { return worst_violation <= tol; }
};

/// Midpoint convexity audit over every consecutive triple with
/// lambda_{i+1} = (lambda_i + lambda_{i+2})/2.
ConvexityReport convexity_check(const DispersionCurve& curve);

struct SpeedResult {
    double c_star = 0;       // c*_eps when epsilon > 0
    double lambda_star = 0;
    double bracket_lo = 0;
    double bracket_hi = 0;
    int iterations = 0;      // number of mu evaluations spent
    double epsilon = 0;
};

struct SpeedOptions {
    double tol_c = 5e-4;   // relative lambda tolerance of the search
    double eigen_tol = 0;  // 0: auto, min(1e-9, 0.01 * tol_c * sqrt(r))
    int max_iter = 500;
    double delta = 0;      // mu shift; must stay below r for the bracket structure
    int time_order = 4;
};

/// c* = inf_{lambda>0} mu(lambda)/lambda via bracketing plus golden-section
/// search; mu(lambda)/lambda is strictly decreasing then increasing, so the
/// minimum is unimodal.
SpeedResult minimal_speed(const FieldSpec& field, double r, const Eigen::Vector2d& k,
                          const CellGrid& grid, const SpeedOptions& opts = {});

/// Minimizes mu(lambda)/lambda + eps*lambda; coincides with minimal_speed at
/// eps = 0 and decreases to it as eps -> 0.
SpeedResult regularized_minimal_speed(const FieldSpec& field, double r,
                                      const Eigen::Vector2d& k, const CellGrid& grid, double eps,
                                      const SpeedOptions& opts = {});

/// For c > c*, the unique root lambda_c in (0, lambda*) of mu(lambda) = c
/// lambda, found by bisection to |dlambda| <= 1e-8.  c within the tangency
/// window of c* returns lambda* itself; c below it is an ordering error.
double lambda_for_speed(const FieldSpec& field, double r, const Eigen::Vector2d& k,
                        const CellGrid& grid, double c, const SpeedResult& speed,
                        const SpeedOptions& opts = {});

}  // namespace frontspeed

#endif
