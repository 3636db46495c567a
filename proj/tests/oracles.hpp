// Test-only reference computations, deliberately on independent code paths:
// dense spectral differentiation matrices, frozen-coefficient matrix
// exponential products for the cell monodromy, a self-adjoint reduction for
// steady shear flows, and a high-resolution quadrature rule.
#ifndef FRONTSPEED_TESTS_ORACLES_HPP
#define FRONTSPEED_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "frontspeed/eigensolver.hpp"
#include "frontspeed/fields.hpp"

namespace oracle {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Dense spectral differentiation matrix on n periodic points, assembled from
// the DFT definition (frequencies with the Nyquist mode zeroed for d/dx).
inline Eigen::MatrixXd spectral_d1(int n) {
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::complex<double> acc(0, 0);
            for (int m = 0; m < n; ++m) {
                double f = m <= n / 2 ? m : m - n;
                if (n % 2 == 0 && m == n / 2) f = 0;
                const double ang = kTwoPi * f * (i - j) / n;
                acc += std::complex<double>(0, kTwoPi * f) * std::polar(1.0, ang);
            }
            d(i, j) = acc.real() / n;
        }
    return d;
}

inline Eigen::MatrixXd spectral_lap1(int n) {
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0;
            for (int m = 0; m < n; ++m) {
                const double f = m <= n / 2 ? m : m - n;
                acc += -kTwoPi * kTwoPi * f * f * std::cos(kTwoPi * f * (i - j) / n);
            }
            d(i, j) = acc / n;
        }
    return d;
}

// Full cell generator at frozen time t on the nx*nx lattice, column-major
// flattening idx = i + nx*j  (i along x1, j along x2).
inline Eigen::MatrixXd generator(const frontspeed::EigenProblem& p, double t) {
    const int n = p.grid.nx;
    const int nn = n * n;
    const Eigen::MatrixXd d1 = spectral_d1(n);
    const Eigen::MatrixXd lap1 = spectral_lap1(n);
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);

    Eigen::ArrayXXd b1, b2;
    frontspeed::sample_field(p.field, n, t, b1, b2);
    const double k1 = p.direction[0], k2 = p.direction[1];
    const double lam = p.lambda;

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nn, nn);
    auto idx = [n](int i, int j) { return i + n * j; };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int row = idx(i, j);
            // Laplacian + advection in x1 (acts on i), then x2 (acts on j).
            for (int i2 = 0; i2 < n; ++i2) {
                a(row, idx(i2, j)) += lap1(i, i2) + (b1(i, j) - 2 * lam * k1) * d1(i, i2);
            }
            for (int j2 = 0; j2 < n; ++j2) {
                a(row, idx(i, j2)) += lap1(j, j2) + (b2(i, j) - 2 * lam * k2) * d1(j, j2);
            }
            const double bk = b1(i, j) * k1 + b2(i, j) * k2;
            a(row, row) += (1 + p.epsilon) * lam * lam - lam * bk + p.growth_rate - p.delta;
        }
    (void)eye;
    return a;
}

// Monodromy as the product of exact exponentials of midpoint-frozen
// generators; exact in time for steady fields.
inline Eigen::MatrixXd monodromy_product(const frontspeed::EigenProblem& p, int n_freeze) {
    const double dt = 1.0 / n_freeze;
    const int nn = p.grid.nx * p.grid.nx;
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(nn, nn);
    if (!p.field.time_dependent()) {
        const Eigen::MatrixXd e = (dt * generator(p, 0.0)).exp();
        for (int j = 0; j < n_freeze; ++j) m = e * m;
        return m;
    }
    for (int j = 0; j < n_freeze; ++j) {
        const Eigen::MatrixXd e = (dt * generator(p, (j + 0.5) * dt)).exp();
        m = e * m;
    }
    return m;
}

inline double dominant_mu(const Eigen::MatrixXd& monodromy) {
    const Eigen::EigenSolver<Eigen::MatrixXd> es(monodromy);
    double rho = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        rho = std::max(rho, std::abs(es.eigenvalues()[i]));
    return std::log(rho);
}

// Steady shear with k = (1,0) reduces to the self-adjoint 1-D problem
//   phi'' + (lambda^2 - lambda A sin(2 pi m2 y) + r) phi = mu phi,
// solved densely to high accuracy.
inline double shear_mu(double amplitude, int m2, double lambda, double r, int n) {
    Eigen::MatrixXd a = spectral_lap1(n);
    for (int j = 0; j < n; ++j)
        a(j, j) += lambda * lambda + r - lambda * amplitude * std::sin(kTwoPi * m2 * j / double(n));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    return es.eigenvalues().maxCoeff();
}

// Composite Simpson with a fixed fine mesh; independent of the adaptive rule.
template <class F>
double simpson(F f, double a, double b, int intervals) {
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; ++i)
        s += f(a + (b - a) * i / intervals) * (i % 2 ? 4.0 : 2.0);
    return s * (b - a) / (3.0 * intervals);
}

}  // namespace oracle

#endif
