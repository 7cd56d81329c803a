// Compares the three quasi-norms on one matrix and the constants they imply.

#include "qbch/bounds.hpp"
#include "qbch/quasinorm.hpp"
#include "qbch/sampler.hpp"

#include <cstdio>

int main() {
    using namespace qbch;
    Rng rng(11);
    const DenseMatrix m = random_matrix(rng, 4, MatrixFamily::dense);
    for (const auto& spec : {QuasiNormSpec::operator_norm(), QuasiNormSpec::entrywise(1.0),
                             QuasiNormSpec::entrywise(0.5), QuasiNormSpec::weak_schatten(0.5)})
        std::printf("%-28s %.6f\n", spec.name().c_str(), quasi_norm(m, spec));

    std::printf("\np     C_tri     C_b       r_bch\n");
    for (double p : {1.0, 0.8, 0.5, 0.3}) {
        const ConstantSet c = *theoretical_constants(QuasiNormSpec::entrywise(p));
        std::printf("%.1f   %-8.4f  %-8.4f  %.6f\n", p, c.c_tri, c.c_bracket, radii(c).r_bch);
    }

    const auto mc = measure_constants(MatrixFamily::dense, QuasiNormSpec::entrywise(0.5), 2000, 3, 2);
    std::printf("\nmeasured on 2x2, p = 0.5: C_tri >= %.4f, C_m >= %.4f, C_b >= %.4f\n", mc.c_tri_hat, mc.c_mult_hat,
                mc.c_bracket_hat);
}
