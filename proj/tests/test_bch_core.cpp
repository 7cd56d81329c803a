#include "qbch/bch.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <string>
#include <vector>

using namespace qbch;

namespace {

using WordMap = std::map<std::string, Rational>;

// Right-nested bracket [a1,[a2,...[a_{n-1},a_n]]] expanded into words.
WordMap right_nested(const std::string& letters) {
    WordMap acc{{std::string(1, letters.back()), Rational(1)}};
    for (int i = static_cast<int>(letters.size()) - 2; i >= 0; --i) {
        WordMap next;
        const char a = letters[static_cast<std::size_t>(i)];
        for (const auto& [w, c] : acc) {
            next[a + w] += c;
            next[w + a] -= c;
        }
        acc = std::move(next);
    }
    std::erase_if(acc, [](const auto& kv) { return sgn(kv.second) == 0; });
    return acc;
}

Rational inv_factorial(int k) {
    BigInt f(1);
    for (int i = 2; i <= k; ++i) f *= i;
    return Rational(BigInt(1), f);
}

// Dynkin's bracketed formula for the degree-n part of log(e^X e^Y):
// sum over k and (r_i, s_i) with r_i + s_i >= 1 of
// (-1)^{k-1}/k * [X^{r1} Y^{s1} ... ] / (n prod r_i! s_i!).
WordMap dynkin_component(int n) {
    WordMap out;
    std::vector<std::pair<int, int>> blocks;
    auto recurse = [&](auto& self, int remaining) -> void {
        if (remaining == 0) {
            const int k = static_cast<int>(blocks.size());
            Rational coef(k % 2 == 1 ? 1 : -1, k);
            coef /= n;
            std::string letters;
            for (auto [r, s] : blocks) {
                coef *= inv_factorial(r) * inv_factorial(s);
                letters += std::string(static_cast<std::size_t>(r), 'X') + std::string(static_cast<std::size_t>(s), 'Y');
            }
            // A right-nested bracket ending in a repeated letter vanishes.
            for (const auto& [w, c] : right_nested(letters)) out[w] += coef * c;
            return;
        }
        for (int r = 0; r <= remaining; ++r)
            for (int s = 0; r + s <= remaining; ++s) {
                if (r + s == 0) continue;
                blocks.emplace_back(r, s);
                self(self, remaining - r - s);
                blocks.pop_back();
            }
    };
    recurse(recurse, n);
    std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
}

WordMap to_map(const FreeSeries& s) {
    WordMap out;
    for (const auto& [w, c] : s.terms()) out[w.str()] = c;
    return out;
}

const std::vector<Rational>& expected_a() {
    static const std::vector<Rational> v = [] {
        const char* s[] = {"2",
                           "1",
                           "2/3",
                           "1/4",
                           "11/45",
                           "41/360",
                           "31/315",
                           "199/4032",
                           "1253/32400",
                           "11899/604800",
                           "520517/29937600",
                           "429791/47900160",
                           "622810543/81729648000",
                           "34851689/8717829120",
                           "1610350543/490377888000",
                           "2020005419/1162377216000",
                           "89519571299/60628538880000",
                           "501500711293/640237370572800",
                           "709724922450353/1064394628577280000",
                           "275359473838663/774105184419840000"};
        std::vector<Rational> out;
        for (const char* t : s) out.push_back(parse_rational(t));
        return out;
    }();
    return v;
}

const std::vector<Rational>& expected_b() {
    static const std::vector<Rational> v = [] {
        const char* s[] = {"2",     "1/2",    "1/6",    "1/24",      "1/40",         "7/720",
                           "193/30240", "349/120960", "773/302400", "239/172800", "148483/79833600",
                           "487189/479001600"};
        std::vector<Rational> out;
        for (const char* t : s) out.push_back(parse_rational(t));
        return out;
    }();
    return v;
}

const BchData& data12() {
    static const BchData d = compute_bch_data(12);
    return d;
}

}  // namespace

TEST(BchSeries, LowDegreeComponents) {
    const FreeSeries z = bch_series(3);
    EXPECT_EQ(homogeneous_component(z, 1), FreeSeries::parse("X + Y", 3));
    EXPECT_EQ(homogeneous_component(z, 2), FreeSeries::parse("1/2 XY - 1/2 YX", 3));
    const FreeSeries x = FreeSeries::letter(Letter::X, 3);
    const FreeSeries y = FreeSeries::letter(Letter::Y, 3);
    const FreeSeries xy = commutator(x, y);
    const FreeSeries z3 = series_scale(commutator(x, xy), Rational(1, 12)) - series_scale(commutator(y, xy), Rational(1, 12));
    EXPECT_EQ(homogeneous_component(z, 3), z3);
    EXPECT_EQ(homogeneous_component(z, 0).is_zero(), true);
}

TEST(BchSeries, MatchesDynkinFormulaThroughDegree7) {
    const FreeSeries z = bch_series(7);
    for (int n = 1; n <= 7; ++n) EXPECT_EQ(to_map(homogeneous_component(z, n)), dynkin_component(n)) << "n = " << n;
}

TEST(BchSeries, DegreeCap) {
    EXPECT_THROW(bch_series(21), std::out_of_range);
    EXPECT_THROW(bch_series(0), std::out_of_range);
}

TEST(BchSeries, AssociativeSumsThroughDegree20) {
    const FreeSeries z = bch_series(20);
    for (int n = 1; n <= 20; ++n)
        EXPECT_EQ(associative_sum(homogeneous_component(z, n)), expected_a()[static_cast<std::size_t>(n - 1)])
            << "n = " << n;
}

TEST(LieProject, Z3InLyndonBasis) {
    const auto& lie = data12().lie[2];
    EXPECT_EQ(lie.degree, 3);
    ASSERT_EQ(lie.coords.size(), 2u);
    EXPECT_EQ(lie.coeff(Word::parse("XXY")), Rational(1, 12));  // [X,[X,Y]]
    EXPECT_EQ(lie.coeff(Word::parse("XYY")), Rational(1, 12));  // [[X,Y],Y] = -[Y,[X,Y]]
    EXPECT_EQ(data12().lie[1].coeff(Word::parse("XY")), Rational(1, 2));
}

TEST(LieProject, LieSumsThroughDegree12) {
    for (const auto& row : data12().rows) {
        ASSERT_TRUE(row.b_n.has_value());
        EXPECT_EQ(*row.b_n, expected_b()[static_cast<std::size_t>(row.degree - 1)]) << "n = " << row.degree;
        EXPECT_TRUE(row.primitivity_checked);
        EXPECT_TRUE(row.reexpansion_checked);
    }
}

TEST(LieProject, CoordinatesLiveOnLyndonWords) {
    for (const auto& lie : data12().lie) {
        EXPECT_LE(lie.coords.size(), witt_dimension(lie.degree));
        for (const auto& [w, c] : lie.coords) {
            EXPECT_TRUE(is_lyndon(w));
            EXPECT_EQ(w.length(), lie.degree);
        }
    }
}

TEST(LieProject, ReexpansionRecoversComponent) {
    for (int n = 1; n <= 12; ++n)
        EXPECT_EQ(expand_lie(data12().lie[static_cast<std::size_t>(n - 1)], 12),
                  data12().components[static_cast<std::size_t>(n - 1)]);
}

TEST(LieProject, RoundTripOnRandomLieElements) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    for (int n = 2; n <= 9; ++n) {
        const auto words = lyndon_words(n);
        for (int trial = 0; trial < 5; ++trial) {
            FreeSeries s(n);
            for (Word w : words)
                if (rng() % 2) s = s + series_scale(expand_tree(lyndon_bracketing(w), n), make_rational(num(rng), den(rng)));
            if (s.is_zero()) continue;
            EXPECT_EQ(expand_lie(lie_project(s), n), s);
        }
    }
}

TEST(LieProject, RejectsNonLieInput) {
    const int d = 4;
    const FreeSeries xy = FreeSeries::parse("XY", d);
    EXPECT_THROW(lie_project(xy), NotALieElementError);
    LieProjectOptions skip;
    skip.primitivity_check_limit = 0;  // elimination alone must still catch it
    EXPECT_THROW(lie_project(xy, skip), NotALieElementError);
    EXPECT_THROW(lie_project(FreeSeries::parse("XY + YX", d), skip), NotALieElementError);
    EXPECT_THROW(lie_project(FreeSeries::parse("X + XY", d)), std::invalid_argument);
}

TEST(Catalan, ValuesAndConvolution) {
    const std::vector<long> known{1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
    for (std::size_t i = 0; i < known.size(); ++i) EXPECT_EQ(catalan(static_cast<long>(i)), known[i]);
    for (int n = 2; n <= 64; ++n) EXPECT_TRUE(catalan_convolution_check(n)) << n;
    EXPECT_THROW(catalan(-1), std::out_of_range);
}

TEST(Catalan, BoundColumn) {
    EXPECT_EQ(catalan_bound(1), 1);
    EXPECT_EQ(catalan_bound(3), Rational(16, 3));
    EXPECT_EQ(to_fixed(catalan_bound(10), 4), "26214.4000");
    EXPECT_EQ(to_fixed(catalan_bound(20), 4), "13743895347.2000");
}

TEST(Catalan, GeneratingFunction) {
    const Rational t(1, 8);
    const double partial = catalan_gf_partial_sum(60, t).get_d();
    EXPECT_NEAR(partial, catalan_gf_closed_form(0.125), 1e-15);
}

TEST(Dynkin, MajorantHoldsThroughDegree12) {
    for (const auto& lie : data12().lie) {
        if (lie.degree < 2) continue;
        const auto r = dynkin_bound_check(lie);
        EXPECT_TRUE(r.holds) << "n = " << lie.degree;
        EXPECT_LE(r.lhs, Rational(r.rhs));
    }
}

TEST(Dynkin, DisplayedRecursionSumVanishes) {
    // [a,b] - [b,a] summed symmetrically over k and n-k cancels term by term.
    for (int n = 2; n <= 8; ++n) {
        const auto r = dynkin_recursion_check(data12().components, n);
        EXPECT_EQ(r.recursion_l1, 0);
        EXPECT_FALSE(r.agrees);
        EXPECT_EQ(r.actual_l1, expected_a()[static_cast<std::size_t>(n - 1)]);
    }
}

TEST(Symmetry, ZOfNegatedSwapIsNegation) {
    EXPECT_TRUE(bch_symmetry_holds(data12().series));
    EXPECT_FALSE(bch_symmetry_holds(FreeSeries::parse("X + XY", 3)));
}

TEST(CoefficientTable, ProjectionLimitLeavesBEmpty) {
    TableOptions opts;
    opts.lie_max_degree = 4;
    opts.certify_max_degree = 2;
    const auto rows = coefficient_table(6, opts);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_TRUE(rows[3].b_n.has_value());
    EXPECT_FALSE(rows[4].b_n.has_value());
    EXPECT_TRUE(rows[1].reexpansion_checked);
    EXPECT_FALSE(rows[2].reexpansion_checked);
}
