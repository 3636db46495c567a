// Scratch driver: measures time-stepper accuracy of propagate_period /
// principal_eigenvalue against the dense oracle. Not part of the suite.
#include <chrono>
#include <cstdio>

#include "frontspeed/eigensolver.hpp"
#include "oracles.hpp"

using namespace frontspeed;

static double now() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

int main() {
    setvbuf(stdout, nullptr, _IONBF, 0);
    // Case A: steady cellular A=1, lambda=0.5, 16^2 and 32^2 state match.
    for (int nx : {16, 32}) {
        for (int nt : {128, 256, 512}) {
            EigenProblem p;
            p.field = FieldSpec::cellular(1.0);
            p.growth_rate = 1.0;
            p.lambda = 0.5;
            p.grid.nx = nx;
            p.grid.nt = nt;
            const int nn = nx * nx;
            double t0 = now();
            const Eigen::MatrixXd M = oracle::monodromy_product(p, nt);
            double t1 = now();
            Eigen::VectorXd w_or = M * Eigen::VectorXd::Ones(nn);
            for (int order : {2, 4}) {
                p.time_order = order;
                double t2 = now();
                Eigen::ArrayXXd w = propagate_period(p, Eigen::ArrayXXd::Ones(nx, nx));
                double t3 = now();
                Eigen::Map<Eigen::VectorXd> wv(w.data(), nn);
                const double rel = (wv - w_or).cwiseAbs().maxCoeff() / w_or.cwiseAbs().maxCoeff();
                std::printf("state nx=%2d nt=%3d order=%d rel=%.3e (oracle %.1fs, step %.3fs)\n",
                            nx, nt, order, rel, t1 - t0, t3 - t2);
            }
        }
    }

    // Case B: mu for steady cellular at 16^2 x 128, lambda in {0.5, 1}.
    for (double lam : {0.5, 1.0}) {
        EigenProblem p;
        p.field = FieldSpec::cellular(1.0);
        p.growth_rate = 1.0;
        p.lambda = lam;
        p.grid.nx = 16;
        p.grid.nt = 128;
        const Eigen::MatrixXd M = oracle::monodromy_product(p, 128);
        const double mu_or = oracle::dominant_mu(M);
        for (int order : {2, 4}) {
            p.time_order = order;
            const EigenResult r = principal_eigenvalue(p);
            std::printf("mu nx=16 nt=128 lam=%.1f order=%d mu=%.9f oracle=%.9f diff=%.3e iters=%d\n",
                        lam, order, r.mu, mu_or, std::abs(r.mu - mu_or), r.iterations);
        }
    }

    // Case C: time-dependent cellular (eps_t = 0.5) at 16^2, oracle with
    // several freeze counts to see the oracle's own convergence.
    {
        EigenProblem p;
        p.field = FieldSpec::cellular(1.0, 1, 1, 0.5, 1);
        p.growth_rate = 1.0;
        p.lambda = 1.0;
        p.grid.nx = 16;
        p.grid.nt = 512;
        for (int nf : {128, 256, 512}) {
            double t0 = now();
            const double mu_or = oracle::dominant_mu(oracle::monodromy_product(p, nf));
            std::printf("oracle td nf=%3d mu=%.10f (%.1fs)\n", nf, mu_or, now() - t0);
        }
        for (int order : {2, 4})
            for (int nt : {128, 256, 512}) {
                p.grid.nt = nt;
                p.time_order = order;
                const EigenResult r = principal_eigenvalue(p);
                std::printf("impl td order=%d nt=%3d mu=%.10f iters=%d\n", order, nt, r.mu,
                            r.iterations);
            }
    }

    // Case D: mu temporal self-convergence at 64^2 (doubling n_t), cellular.
    {
        EigenProblem p;
        p.field = FieldSpec::cellular(1.0);
        p.growth_rate = 1.0;
        p.lambda = 1.0;
        p.grid.nx = 64;
        for (int order : {2, 4}) {
            p.time_order = order;
            double prev = 0;
            for (int nt : {256, 512, 1024}) {
                p.grid.nt = nt;
                double t0 = now();
                const EigenResult r = principal_eigenvalue(p);
                std::printf("conv order=%d nt=%4d mu=%.12f diff=%.3e iters=%d (%.2fs)\n", order,
                            nt, r.mu, std::abs(r.mu - prev), r.iterations, now() - t0);
                prev = r.mu;
            }
        }
    }
    return 0;
}
