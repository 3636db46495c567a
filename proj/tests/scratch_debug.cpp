#include <cstdio>

#include "frontspeed/eigensolver.hpp"
#include "oracles.hpp"

using namespace frontspeed;

int main() {
    setvbuf(stdout, nullptr, _IONBF, 0);
    {  // zero field exactness
        EigenProblem p;
        p.growth_rate = 1.0;
        p.lambda = 1.0;
        p.grid.nx = 16;
        p.grid.nt = 64;
        Eigen::ArrayXXd w = propagate_period(p, Eigen::ArrayXXd::Ones(16, 16));
        std::printf("zero field: min %.15f max %.15f expect e^2 = %.15f\n", w.minCoeff(),
                    w.maxCoeff(), std::exp(2.0));
    }
    {  // cellular, inspect the raw state without the positivity check
        EigenProblem p;
        p.field = FieldSpec::cellular(1.0);
        p.growth_rate = 1.0;
        p.lambda = 0.5;
        p.grid.nx = 16;
        p.grid.nt = 128;
        for (int order : {2, 4}) {
            p.time_order = order;
            try {
                Eigen::ArrayXXd w = propagate_period(p, Eigen::ArrayXXd::Ones(16, 16));
                std::printf("cellular order=%d: min %.6e max %.6e\n", order, w.minCoeff(),
                            w.maxCoeff());
            } catch (const StepSizeError& e) {
                std::printf("cellular order=%d: %s\n", order, e.what());
            }
        }
        // shear against the self-adjoint reduction
        EigenProblem q;
        q.field = FieldSpec::shear(1.0);
        q.growth_rate = 1.0;
        q.lambda = 1.0;
        q.grid.nx = 16;
        q.grid.nt = 256;
        for (int order : {2, 4}) {
            q.time_order = order;
            const EigenResult r = principal_eigenvalue(q);
            std::printf("shear order=%d mu=%.10f oracle=%.10f iters=%d\n", order, r.mu,
                        oracle::shear_mu(1.0, 1, 1.0, 1.0, 64), r.iterations);
        }
    }
    return 0;
}
