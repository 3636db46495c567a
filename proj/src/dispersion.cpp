#include "frontspeed/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

namespace frontspeed {

namespace {

EigenProblem make_problem(const FieldSpec& field, double r, const Eigen::Vector2d& k,
                          const CellGrid& grid, double lambda, double delta, int time_order) {
    EigenProblem p;
    p.field = field;
    p.growth_rate = r;
    p.direction = k;
    p.grid = grid;
    p.lambda = lambda;
    p.delta = delta;
    p.time_order = time_order;
    return p;
}

// mu(lambda) evaluator with a warm start carried between calls.
class MuEvaluator {
public:
    MuEvaluator(const FieldSpec& field, double r, const Eigen::Vector2d& k, const CellGrid& grid,
                const SpeedOptions& opts)
        : field_(field), r_(r), k_(k), grid_(grid), opts_(opts) {
        eigen_tol_ = opts.eigen_tol > 0
                         ? opts.eigen_tol
                         : std::min(1e-9, 0.01 * opts.tol_c * std::sqrt(std::max(r, 1e-12)));
    }

    double mu(double lambda) {
        EigenProblem p = make_problem(field_, r_, k_, grid_, lambda, opts_.delta, opts_.time_order);
        const Eigen::ArrayXXd* start = have_warm_ ? &warm_ : nullptr;
        EigenResult res = principal_eigenvalue(p, eigen_tol_, opts_.max_iter, start);
        warm_ = res.phi;
        have_warm_ = true;
        ++evaluations_;
        return res.mu;
    }

    int evaluations() const { return evaluations_; }

private:
    FieldSpec field_;
    double r_;
    Eigen::Vector2d k_;
    CellGrid grid_;
    SpeedOptions opts_;
    double eigen_tol_;
    Eigen::ArrayXXd warm_;
    bool have_warm_ = false;
    int evaluations_ = 0;
};

SpeedResult minimize_speed_objective(const FieldSpec& field, double r, const Eigen::Vector2d& k,
                                     const CellGrid& grid, double eps, const SpeedOptions& opts) {
    if (!(r > 0)) throw ParameterError("minimal_speed: needs the KPP rate r > 0");
    if (eps < 0) throw ParameterError("minimal_speed: eps must be >= 0");
    if (opts.delta < 0 || opts.delta >= r)
        throw ParameterError("minimal_speed: delta must lie in [0, r)");
    grid.validate();

    MuEvaluator ev(field, r, k, grid, opts);
    auto g = [&](double lam) { return ev.mu(lam) / lam + eps * lam; };

    const double sr = std::sqrt(r);
    const double lo_floor = 0.05 * sr, hi_cap = 1e3 * sr;

    // Geometric probe ladder over the seed bracket [0.1, 10] sqrt(r),
    // expanded until the descent/ascent pattern around the minimum shows.
    std::vector<double> lams;
    std::vector<double> vals;
    const int seed_points = 9;
    for (int i = 0; i < seed_points; ++i) {
        const double lam = 0.1 * sr * std::pow(100.0, i / double(seed_points - 1));
        lams.push_back(lam);
        vals.push_back(g(lam));
    }
    auto argmin = [&] {
        return static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    };
    while (argmin() == 0) {
        if (lams.front() <= lo_floor * (1 + 1e-12)) {
            std::ostringstream os;
            os << "minimal_speed: mu(lambda)/lambda keeps descending toward the left edge "
               << lams.front() << "; non-monotone probe pattern near lambda -> 0";
            throw StructureError(os.str());
        }
        const double lam = std::max(lo_floor, lams.front() / 2);
        lams.insert(lams.begin(), lam);
        vals.insert(vals.begin(), g(lam));
    }
    while (argmin() == static_cast<int>(lams.size()) - 1) {
        const double lam = lams.back() * 2;
        if (lam > hi_cap) {
            std::ostringstream os;
            os << "minimal_speed: no ascent of mu(lambda)/lambda up to lambda = " << lams.back()
               << "; quadratic growth pattern not confirmed (non-convex numerics?)";
            throw StructureError(os.str());
        }
        lams.push_back(lam);
        vals.push_back(g(lam));
    }

    const int i0 = argmin();
    double a = lams[i0 - 1], b = lams[i0 + 1];
    SpeedResult out;
    out.bracket_lo = a;
    out.bracket_hi = b;
    out.epsilon = eps;

    // Golden-section: one new evaluation per iteration.
    const double invphi = (std::sqrt(5.0) - 1) / 2;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = g(c), fd = g(d);
    while (b - a > opts.tol_c * 0.5 * (a + b)) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = g(d);
        }
    }
    out.lambda_star = fc < fd ? c : d;
    out.c_star = std::min(fc, fd);
    out.iterations = ev.evaluations();
    return out;
}

}  // namespace

DispersionCurve sample_curve(const FieldSpec& field, double r, const Eigen::Vector2d& k,
                             const std::vector<double>& lambdas, const CellGrid& grid, double tol,
                             int threads, int time_order) {
    for (size_t i = 0; i + 1 < lambdas.size(); ++i)
        if (!(lambdas[i] < lambdas[i + 1]))
            throw ParameterError("sample_curve: lambda list must be strictly increasing");
    if (!lambdas.empty() && lambdas.front() < 0)
        throw ParameterError("sample_curve: lambdas must be nonnegative");

    DispersionCurve curve;
    curve.direction = k;
    curve.grid = grid;
    curve.tol = tol;
    curve.points.resize(lambdas.size());

    auto solve_one = [&](size_t i) {
        DispersionPoint pt;
        pt.lambda = lambdas[i];
        EigenProblem p = make_problem(field, r, k, grid, lambdas[i], 0.0, time_order);
        try {
            const EigenResult res = principal_eigenvalue(p, tol, 500);
            pt.mu = res.mu;
            pt.converged = res.converged;
            pt.iterations = res.iterations;
            pt.residual = res.residual;
        } catch (const NonConvergenceError& e) {
            pt.mu = e.mu_last;
            pt.residual = std::abs(e.mu_last - e.mu_prev);
            pt.converged = false;
        }
        curve.points[i] = pt;
    };

    const int nthreads = std::max(1, threads);
    if (nthreads == 1 || lambdas.size() < 2) {
        for (size_t i = 0; i < lambdas.size(); ++i) solve_one(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (size_t i = next++; i < lambdas.size(); i = next++) solve_one(i);
            });
        for (auto& th : pool) th.join();
    }
    return curve;
}

ConvexityReport convexity_check(const DispersionCurve& curve) {
    if (curve.points.size() < 3)
        throw ParameterError("convexity_check: needs at least 3 samples");
    ConvexityReport rep;
    rep.worst_violation = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 2 < curve.points.size(); ++i) {
        const auto& l = curve.points[i];
        const auto& m = curve.points[i + 1];
        const auto& rr = curve.points[i + 2];
        const double span = rr.lambda - l.lambda;
        if (std::abs(m.lambda - 0.5 * (l.lambda + rr.lambda)) > 1e-9 * std::max(1.0, span))
            continue;  // not a midpoint triple
        const double viol = m.mu - 0.5 * (l.mu + rr.mu);
        ++rep.triples;
        if (viol > rep.worst_violation) {
            rep.worst_violation = viol;
            rep.lambda_at = m.lambda;
        }
    }
    if (rep.triples == 0) rep.worst_violation = 0;
    return rep;
}

SpeedResult minimal_speed(const FieldSpec& field, double r, const Eigen::Vector2d& k,
                          const CellGrid& grid, const SpeedOptions& opts) {
    return minimize_speed_objective(field, r, k, grid, 0.0, opts);
}

SpeedResult regularized_minimal_speed(const FieldSpec& field, double r, const Eigen::Vector2d& k,
                                      const CellGrid& grid, double eps, const SpeedOptions& opts) {
    return minimize_speed_objective(field, r, k, grid, eps, opts);
}

double lambda_for_speed(const FieldSpec& field, double r, const Eigen::Vector2d& k,
                        const CellGrid& grid, double c, const SpeedResult& speed,
                        const SpeedOptions& opts) {
    const double c_star = speed.c_star, lam_star = speed.lambda_star;
    if (std::abs(c - c_star) <= 10 * opts.tol_c * c_star) return lam_star;  // tangency
    if (c < c_star) {
        std::ostringstream os;
        os << "lambda_for_speed: c = " << c << " is below the minimal speed c* = " << c_star;
        throw OrderingError(os.str());
    }

    MuEvaluator ev(field, r, k, grid, opts);
    auto h = [&](double lam) { return ev.mu(lam) - c * lam; };  // >0 left of lambda_c

    // h(0+) = mu(0) = r > 0 and h(lambda*) < 0; walk left until positive.
    double hi = lam_star;
    double lo = std::min(0.05 * std::sqrt(r), 0.25 * lam_star);
    while (h(lo) <= 0) {
        hi = lo;
        lo *= 0.25;
        if (lo < 1e-12)
            throw StructureError("lambda_for_speed: no sign change found above lambda = 0");
    }
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace frontspeed
