// Prints Z_1 .. Z_4 in the Lyndon basis and the coefficient sums through degree 8.

#include "qbch/bch.hpp"

#include <iostream>

int main() {
    using namespace qbch;
    const BchData d = compute_bch_data(8);
    for (int n = 1; n <= 4; ++n) {
        std::cout << "Z_" << n << " =";
        bool first = true;
        for (const auto& [w, c] : d.lie[static_cast<std::size_t>(n - 1)].coords) {
            std::cout << (sgn(c) < 0 ? " - " : first ? " " : " + ") << to_string(abs(c)) << ' '
                      << lyndon_bracketing(w).str();
            first = false;
        }
        std::cout << '\n';
    }
    std::cout << "\nn   A_n            B_n            4^(n-1)/n\n";
    for (const auto& r : d.rows)
        std::cout << r.degree << "   " << to_fixed(r.a_n, 4) << "         " << render_decimal(*r.b_n) << "         "
                  << to_fixed(r.catalan_bound, 4) << '\n';
}
