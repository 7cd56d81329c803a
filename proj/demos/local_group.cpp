// Local group structure on 3x3 matrices: product, associativity and inverse.

#include "qbch/bch_eval.hpp"
#include "qbch/bounds.hpp"
#include "qbch/sampler.hpp"

#include <cstdio>

int main() {
    using namespace qbch;
    const auto spec = QuasiNormSpec::operator_norm();
    const ConstantSet c = *theoretical_constants(spec);
    const RadiusReport r = radii(c);
    const BchEvaluator ev = BchEvaluator::up_to(12);
    Rng rng(7);

    const DenseMatrix x = random_in_ball(rng, 3, MatrixFamily::dense, spec, r.rho / 4);
    const DenseMatrix y = random_in_ball(rng, 3, MatrixFamily::dense, spec, r.rho / 4);
    const DenseMatrix z = random_in_ball(rng, 3, MatrixFamily::dense, spec, r.rho / 4);

    const auto law = group_law_check(x, y, 12, spec, ev, c);
    std::printf("r_bch = %.4f, rho = %.4f, rho_inv = %.6f\n", r.r_bch, r.rho, r.rho_inv);
    std::printf("|exp(Z(x,y)) - exp(x)exp(y)| = %.3e\n", law.residual);
    for (int n : {4, 6, 8, 10})
        std::printf("N = %2d  associativity residual %.3e\n", n, associativity_residual_extended(x, y, z, n, spec, ev));

    const DenseMatrix small = random_in_ball(rng, 3, MatrixFamily::dense, spec, r.rho_inv / 2);
    const auto inv = bch_inverse_solver(small, c, ev);
    std::printf("inverse: %d iterations, |w + x| = %.3e, predicted ratio %.3e\n", inv.iterations,
                inv.distance_to_minus_x, inv.predicted_ratio);
}
