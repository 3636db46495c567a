#ifndef FRONTSPEED_EIGENSOLVER_HPP
#define FRONTSPEED_EIGENSOLVER_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "frontspeed/fields.hpp"
#include "frontspeed/grids.hpp"

namespace frontspeed {

/// Periodic-parabolic eigenproblem for propagation in direction k:
///
///   L_lambda phi = Delta phi + (b - 2 lambda k) . grad phi
///                  + ((1+epsilon) lambda^2 - lambda (b.k) + r - delta) phi
///                  - phi_t  =  mu phi
///
/// on the periodic cell, with r = f'(0).  epsilon regularizes (adds
/// epsilon lambda^2 to mu), delta shifts (subtracts delta from mu).
struct EigenProblem {
    FieldSpec field;
    double growth_rate = 1.0;               // r = f'(0)
    Eigen::Vector2d direction{1.0, 0.0};    // k, |k| = 1
    double lambda = 0;                      // decay rate, >= 0
    double epsilon = 0;                     // regularization, >= 0
    double delta = 0;                       // shift, >= 0
    CellGrid grid;
    int time_order = 4;                     // Lawson stage order: 2 or 4

    /// Constant part of the zeroth-order coefficient; handled exactly by the
    /// integrating factor, so shifts commute with everything at the discrete
    /// level too.
    double constant_coefficient() const {
        return (1 + epsilon) * lambda * lambda + growth_rate - delta;
    }
    void validate() const;
};

struct EigenResult {
    double mu = 0;
    Eigen::ArrayXXd phi;  // positive eigenfunction at t = 0, max = 1
    int iterations = 0;
    double residual = 0;  // |mu change| between the final two periods
    bool converged = false;
};

/// Advances the cell equation w_t = L_lambda w (mu term absent) over one
/// period from w(.,0) = v0, returning w(.,1).  Integrating-factor spectral
/// treatment of all constant-coefficient terms; the variable advection and
/// reaction terms are stepped explicitly (Lawson, order per problem).
Eigen::ArrayXXd propagate_period(const EigenProblem& problem, const Eigen::ArrayXXd& v0);

/// Principal eigenvalue and eigenfunction by power iteration on the
/// one-period monodromy map; the dominant eigenvalue of that positive
/// compact map is simple (Krein-Rutman), so any positive start converges.
/// Log-growth is renormalized every period.  Throws NonConvergenceError
/// with the last two iterates when max_iter periods are not enough.
EigenResult principal_eigenvalue(const EigenProblem& problem, double tol = 1e-9,
                                 int max_iter = 500, const Eigen::ArrayXXd* start = nullptr);

/// | mu - lambda^2 - r - lambda <(b.k) phi> / <phi> | with <.> the
/// space-time average over the period cell; exact in the continuum.
/// Requires a converged result and epsilon = delta = 0.
double integral_identity_residual(const EigenProblem& problem, const EigenResult& result);

/// max over grid nodes of (L_lambda psi)/psi for a positive space-time
/// periodic trial psi given at the grid's nt time slices; an upper bound
/// for mu by the min-max characterization.
double rayleigh_upper_bound(const EigenProblem& problem,
                            const std::vector<Eigen::ArrayXXd>& psi);

/// Residuals (|mu_delta - (mu - delta)|, |mu_eps - (mu + eps lambda^2)|)
/// from three principal_eigenvalue calls at identical grids and tolerances.
std::pair<double, double> shift_identities_check(const EigenProblem& problem, double delta,
                                                 double eps, double tol = 1e-9,
                                                 int max_iter = 500);

}  // namespace frontspeed

#endif
