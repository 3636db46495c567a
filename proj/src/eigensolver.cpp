#include "frontspeed/eigensolver.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "frontspeed/spectral.hpp"

namespace frontspeed {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
using Cplx = std::complex<double>;

// One-period propagator for the reduced cell equation (constant part of the
// zeroth-order coefficient factored out analytically):
//
//   w_t = Delta w - 2 lambda (k . grad) w  +  b . grad w - lambda (b.k) w
//         \-------- integrating factor --/   \----- explicit stages -----/
//
// State lives in Fourier coefficients; the iterate is rescaled whenever its
// magnitude leaves a safe window, with the log of the scale accumulated so
// extreme lambdas cannot overflow a period.
class CellPropagator {
public:
    explicit CellPropagator(const EigenProblem& p)
        : prob_(p),
          nx_(p.grid.nx),
          ny_(p.grid.dim == 2 ? p.grid.nx : 1),
          nt_(p.grid.nt),
          dt_(1.0 / p.grid.nt),
          fft_(nx_, ny_),
          advective_(p.field.kind != FieldKind::Zero) {
        const Eigen::VectorXd f1 = fft_frequencies(nx_);
        const Eigen::VectorXd f1d = fft_frequencies_deriv(nx_);
        const Eigen::VectorXd f2 = fft_frequencies(ny_);
        const Eigen::VectorXd f2d = fft_frequencies_deriv(ny_);
        e_half_.resize(nx_, ny_);
        dx_.resize(nx_, ny_);
        dy_.resize(nx_, ny_);
        for (int j = 0; j < ny_; ++j)
            for (int i = 0; i < nx_; ++i) {
                const double lap = -kTwoPi * kTwoPi * (f1[i] * f1[i] + f2[j] * f2[j]);
                const double drift = -2 * prob_.lambda * kTwoPi *
                                     (prob_.direction[0] * f1d[i] + prob_.direction[1] * f2d[j]);
                e_half_(i, j) = std::exp(Cplx(0.5 * dt_ * lap, 0.5 * dt_ * drift));
                dx_(i, j) = Cplx(0, kTwoPi * f1d[i]);
                dy_(i, j) = Cplx(0, kTwoPi * f2d[j]);
            }
        e_full_ = e_half_.cwiseProduct(e_half_);
        if (advective_ && !prob_.field.time_dependent()) cache_steady();
        w_.resize(nx_, ny_);
        wx_.resize(nx_, ny_);
        wy_.resize(nx_, ny_);
        nl_.resize(nx_, ny_);
        b1_.resize(nx_, ny_);
        b2_.resize(nx_, ny_);
        bk_.resize(nx_, ny_);
        s1_.resize(nx_, ny_);
        s2_.resize(nx_, ny_);
        s3_.resize(nx_, ny_);
        s4_.resize(nx_, ny_);
        a_.resize(nx_, ny_);
        scr_.resize(nx_, ny_);
    }

    int nx() const { return nx_; }
    int ny() const { return ny_; }

    Eigen::MatrixXcd to_spectral(const Eigen::ArrayXXd& v) {
        Eigen::MatrixXcd a = v.matrix().cast<Cplx>();
        fft_.fwd(a);
        return a;
    }

    Eigen::ArrayXXd to_physical(const Eigen::MatrixXcd& a) {
        Eigen::MatrixXcd t = a;
        fft_.inv(t);
        return t.real().array();
    }

    /// Advances one period in place; returns the accumulated log rescale.
    /// When capture_* are given, stores the physical slice and its log scale
    /// at every step start (j = 0..nt-1).
    double period(Eigen::MatrixXcd& what, std::vector<Eigen::ArrayXXd>* capture_slices = nullptr,
                  std::vector<double>* capture_logs = nullptr) {
        double logscale = 0;
        for (int n = 0; n < nt_; ++n) {
            const double t = n * dt_;
            if (capture_slices) {
                capture_slices->push_back(to_physical(what));
                capture_logs->push_back(logscale);
            }
            if (!advective_) {
                what = e_full_.cwiseProduct(what);
            } else if (prob_.time_order == 2) {
                step_lawson2(what, t);
            } else {
                step_lawson4(what, t);
            }
            const double norm = what.norm();
            if (!std::isfinite(norm)) {
                std::ostringstream os;
                os << "propagate_period: state became non-finite at t = " << t
                   << "; increase n_t (suggested " << 2 * nt_ << ")";
                throw StepSizeError(os.str(), dt_ / 2);
            }
            if (norm > 1e100 || (norm > 0 && norm < 1e-100)) {
                what /= norm;
                logscale += std::log(norm);
            }
        }
        return logscale;
    }

private:
    void cache_steady() {
        sample_field(prob_.field, nx_, 0.0, b1_, b2_);
        if (ny_ == 1) {
            b1_ = b1_.leftCols(1).eval();
            b2_ = b2_.leftCols(1).eval();
        }
        bk_ = prob_.direction[0] * b1_ + prob_.direction[1] * b2_;
        steady_cached_ = true;
    }

    // b arrays at time t; parametric time dependence is a scalar factor on
    // the steady pattern, so only Tabulated fields resample per stage.
    double field_at(double t) {
        if (!steady_cached_ && prob_.field.kind == FieldKind::Tabulated) {
            if (prob_.field.time_dependent()) {
                sample_field(prob_.field, nx_, t, b1_, b2_);
                bk_ = prob_.direction[0] * b1_ + prob_.direction[1] * b2_;
                return 1.0;
            }
            cache_steady();
        }
        if (!steady_cached_) cache_steady();
        if (!prob_.field.time_dependent()) return 1.0;
        return 1.0 + prob_.field.eps_t * std::sin(kTwoPi * prob_.field.mt * t);
    }

    // n = b . grad w - lambda (b.k) w, all in physical space.
    void nonlinearity(const Eigen::MatrixXcd& what, double t, Eigen::MatrixXcd& nhat) {
        const double g = field_at(t);
        scr_ = what;
        fft_.inv(scr_);
        w_ = scr_.real().array();
        scr_ = dx_.cwiseProduct(what);
        fft_.inv(scr_);
        wx_ = scr_.real().array();
        scr_ = dy_.cwiseProduct(what);
        fft_.inv(scr_);
        wy_ = scr_.real().array();
        nl_ = g * (b1_ * wx_ + b2_ * wy_ - prob_.lambda * bk_ * w_);
        nhat = nl_.matrix().cast<Cplx>();
        fft_.fwd(nhat);
    }

    void step_lawson2(Eigen::MatrixXcd& what, double t) {
        nonlinearity(what, t, s1_);                                    // N1
        s2_ = e_full_.cwiseProduct(what + dt_ * s1_);                  // predictor
        nonlinearity(s2_, t + dt_, s3_);                               // N2
        what = e_full_.cwiseProduct(what + (0.5 * dt_) * s1_) + (0.5 * dt_) * s3_;
    }

    void step_lawson4(Eigen::MatrixXcd& what, double t) {
        const double th = t + 0.5 * dt_;
        nonlinearity(what, t, s1_);                                    // N1
        a_ = e_half_.cwiseProduct(what);                               // E2 w
        s2_ = a_ + (0.5 * dt_) * e_half_.cwiseProduct(s1_);
        nonlinearity(s2_, th, s2_);                                    // N2
        s3_ = a_ + (0.5 * dt_) * s2_;
        nonlinearity(s3_, th, s3_);                                    // N3
        s4_ = e_half_.cwiseProduct(a_ + dt_ * s3_);
        nonlinearity(s4_, t + dt_, s4_);                               // N4
        what = e_half_.cwiseProduct(a_ + (dt_ / 6.0) * (e_half_.cwiseProduct(s1_) + 2.0 * (s2_ + s3_))) +
               (dt_ / 6.0) * s4_;
    }

    const EigenProblem& prob_;
    int nx_, ny_, nt_;
    double dt_;
    Fft2 fft_;
    bool advective_;
    bool steady_cached_ = false;
    Eigen::MatrixXcd e_half_, e_full_, dx_, dy_;
    Eigen::MatrixXcd s1_, s2_, s3_, s4_, a_, scr_;
    Eigen::ArrayXXd w_, wx_, wy_, nl_, b1_, b2_, bk_;
};

void check_positive_result(const Eigen::ArrayXXd& w, int nt, double dt) {
    if (w.minCoeff() <= 0) {
        std::ostringstream os;
        os << "propagate_period: positivity lost (min " << w.minCoeff()
           << "); increase n_t (suggested " << 2 * nt << ")";
        throw StepSizeError(os.str(), dt / 2);
    }
}

}  // namespace

void EigenProblem::validate() const {
    grid.validate();
    if (std::abs(direction.norm() - 1.0) > 1e-12)
        throw ParameterError("EigenProblem: direction must be a unit vector");
    if (!(lambda >= 0) || !std::isfinite(lambda))
        throw ParameterError("EigenProblem: lambda must be finite and >= 0");
    if (!(epsilon >= 0) || !std::isfinite(epsilon))
        throw ParameterError("EigenProblem: epsilon must be finite and >= 0");
    if (!(delta >= 0) || !std::isfinite(delta))
        throw ParameterError("EigenProblem: delta must be finite and >= 0");
    if (time_order != 2 && time_order != 4)
        throw ParameterError("EigenProblem: time_order must be 2 or 4");
    if (grid.dim == 1 && field.kind != FieldKind::Zero)
        throw ParameterError("EigenProblem: only the zero field is admissible in 1-D");
    if (grid.dim == 1 && std::abs(std::abs(direction[0]) - 1.0) > 1e-12)
        throw ParameterError("EigenProblem: 1-D direction must be +-e1");
}

Eigen::ArrayXXd propagate_period(const EigenProblem& problem, const Eigen::ArrayXXd& v0) {
    problem.validate();
    CellPropagator prop(problem);
    if (v0.rows() != prop.nx() || v0.cols() != prop.ny())
        throw ShapeError("propagate_period: v0 shape does not match the grid");
    if (v0.minCoeff() <= 0)
        throw ParameterError("propagate_period: v0 must be strictly positive");
    Eigen::MatrixXcd what = prop.to_spectral(v0);
    const double logscale = prop.period(what);
    Eigen::ArrayXXd w = prop.to_physical(what);
    check_positive_result(w, problem.grid.nt, 1.0 / problem.grid.nt);
    return w * std::exp(logscale + problem.constant_coefficient());
}

EigenResult principal_eigenvalue(const EigenProblem& problem, double tol, int max_iter,
                                 const Eigen::ArrayXXd* start) {
    problem.validate();
    if (!(tol > 0)) throw ParameterError("principal_eigenvalue: tol must be positive");
    CellPropagator prop(problem);
    Eigen::ArrayXXd v = start ? *start : Eigen::ArrayXXd::Ones(prop.nx(), prop.ny());
    if (v.rows() != prop.nx() || v.cols() != prop.ny())
        throw ShapeError("principal_eigenvalue: start shape does not match the grid");
    if (v.minCoeff() <= 0)
        throw ParameterError("principal_eigenvalue: start must be strictly positive");
    v /= v.maxCoeff();

    const double c0 = problem.constant_coefficient();
    Eigen::MatrixXcd what = prop.to_spectral(v);
    double mu_prev = 0;
    for (int n = 1; n <= max_iter; ++n) {
        const double logscale = prop.period(what);
        Eigen::ArrayXXd w = prop.to_physical(what);
        check_positive_result(w, problem.grid.nt, 1.0 / problem.grid.nt);
        const double s = w.maxCoeff();
        const double mu = logscale + std::log(s) + c0;
        what /= s;  // keep the iterate at sup norm 1
        if (n >= 2 && std::abs(mu - mu_prev) <= tol) {
            EigenResult res;
            res.mu = mu;
            res.phi = w / s;
            res.iterations = n;
            res.residual = std::abs(mu - mu_prev);
            res.converged = true;
            return res;
        }
        mu_prev = mu;
    }
    std::ostringstream os;
    os << "principal_eigenvalue: no convergence in " << max_iter << " periods (last mu "
       << mu_prev << ")";
    // One more period so the error can carry two iterates.
    const double logscale = prop.period(what);
    Eigen::ArrayXXd w = prop.to_physical(what);
    const double mu_last = logscale + std::log(w.maxCoeff()) + c0;
    throw NonConvergenceError(os.str(), mu_prev, mu_last);
}

double integral_identity_residual(const EigenProblem& problem, const EigenResult& result) {
    problem.validate();
    if (!result.converged)
        throw ParameterError("integral_identity_residual: needs a converged result");
    if (problem.epsilon != 0 || problem.delta != 0)
        throw ParameterError("integral_identity_residual: identity requires epsilon = delta = 0");
    CellPropagator prop(problem);
    Eigen::MatrixXcd what = prop.to_spectral(result.phi);
    std::vector<Eigen::ArrayXXd> slices;
    std::vector<double> logs;
    slices.reserve(problem.grid.nt);
    prop.period(what, &slices, &logs);

    // Periodic eigenfunction Phi(x,t) = w(x,t) e^{-mu t}; the reduced growth
    // rate replaces mu because the constant coefficient was factored out.
    const double mu_reduced = result.mu - problem.constant_coefficient();
    const double dt = 1.0 / problem.grid.nt;
    Eigen::ArrayXXd b1, b2;
    double num = 0, den = 0;
    for (int n = 0; n < problem.grid.nt; ++n) {
        const double t = n * dt;
        const double scale = std::exp(logs[n] - mu_reduced * t);
        Eigen::ArrayXXd bk;
        if (problem.grid.dim == 2) {
            sample_field(problem.field, problem.grid.nx, t, b1, b2);
            bk = problem.direction[0] * b1 + problem.direction[1] * b2;
        } else {
            bk = Eigen::ArrayXXd::Zero(slices[n].rows(), 1);
        }
        num += (bk * slices[n]).sum() * scale;
        den += slices[n].sum() * scale;
    }
    const double lam = problem.lambda;
    return std::abs(result.mu - lam * lam - problem.growth_rate - lam * num / den);
}

double rayleigh_upper_bound(const EigenProblem& problem,
                            const std::vector<Eigen::ArrayXXd>& psi) {
    problem.validate();
    const int nt = problem.grid.nt;
    const int nx = problem.grid.nx;
    const int ny = problem.grid.dim == 2 ? nx : 1;
    if (static_cast<int>(psi.size()) != nt)
        throw ShapeError("rayleigh_upper_bound: psi must have grid.nt time slices");
    for (const auto& s : psi) {
        if (s.rows() != nx || s.cols() != ny)
            throw ShapeError("rayleigh_upper_bound: slice shape does not match the grid");
        if (s.minCoeff() <= 0)
            throw ParameterError("rayleigh_upper_bound: psi must be strictly positive");
    }

    Fft2 fft(nx, ny);
    const Eigen::VectorXd f1 = fft_frequencies(nx);
    const Eigen::VectorXd f1d = fft_frequencies_deriv(nx);
    const Eigen::VectorXd f2 = fft_frequencies(ny);
    const Eigen::VectorXd f2d = fft_frequencies_deriv(ny);
    const double lam = problem.lambda;
    const double c0 = problem.constant_coefficient();

    // psi_t by a spectral transform along the (periodic) time axis.
    std::vector<Eigen::ArrayXXd> psi_t(nt, Eigen::ArrayXXd(nx, ny));
    {
        Fft1 tfft(nt);
        const Eigen::VectorXd ft = fft_frequencies_deriv(nt);
        Eigen::VectorXcd col(nt);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                for (int n = 0; n < nt; ++n) col[n] = psi[n](i, j);
                tfft.fwd(col);
                for (int n = 0; n < nt; ++n) col[n] *= Cplx(0, kTwoPi * ft[n]);
                tfft.inv(col);
                for (int n = 0; n < nt; ++n) psi_t[n](i, j) = col[n].real();
            }
    }

    double worst = -std::numeric_limits<double>::infinity();
    Eigen::MatrixXcd a(nx, ny), lap(nx, ny), gx(nx, ny), gy(nx, ny);
    Eigen::ArrayXXd b1, b2;
    for (int n = 0; n < nt; ++n) {
        const double t = static_cast<double>(n) / nt;
        a = psi[n].matrix().cast<Cplx>();
        fft.fwd(a);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const double l2 = -kTwoPi * kTwoPi * (f1[i] * f1[i] + f2[j] * f2[j]);
                lap(i, j) = a(i, j) * l2;
                gx(i, j) = a(i, j) * Cplx(0, kTwoPi * f1d[i]);
                gy(i, j) = a(i, j) * Cplx(0, kTwoPi * f2d[j]);
            }
        fft.inv(lap);
        fft.inv(gx);
        fft.inv(gy);
        Eigen::ArrayXXd bk;
        if (problem.grid.dim == 2) {
            sample_field(problem.field, nx, t, b1, b2);
            bk = problem.direction[0] * b1 + problem.direction[1] * b2;
        } else {
            b1 = Eigen::ArrayXXd::Zero(nx, 1);
            b2 = b1;
            bk = b1;
        }
        const Eigen::ArrayXXd lpsi =
            lap.real().array() + (b1 - 2 * lam * problem.direction[0]) * gx.real().array() +
            (b2 - 2 * lam * problem.direction[1]) * gy.real().array() +
            (c0 - lam * bk) * psi[n] - psi_t[n];
        worst = std::max(worst, (lpsi / psi[n]).maxCoeff());
    }
    return worst;
}

std::pair<double, double> shift_identities_check(const EigenProblem& problem, double delta,
                                                 double eps, double tol, int max_iter) {
    if (delta < 0 || eps < 0)
        throw ParameterError("shift_identities_check: delta and eps must be >= 0");
    EigenProblem base = problem;
    base.delta = 0;
    base.epsilon = 0;
    EigenProblem shifted = base;
    shifted.delta = delta;
    EigenProblem regularized = base;
    regularized.epsilon = eps;
    const double mu = principal_eigenvalue(base, tol, max_iter).mu;
    const double mu_d = principal_eigenvalue(shifted, tol, max_iter).mu;
    const double mu_e = principal_eigenvalue(regularized, tol, max_iter).mu;
    const double lam = problem.lambda;
    return {std::abs(mu_d - (mu - delta)), std::abs(mu_e - (mu + eps * lam * lam))};
}

}  // namespace frontspeed
