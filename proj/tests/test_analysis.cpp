#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "citeflow/analysis.hpp"
#include "citeflow/errors.hpp"
#include "citeflow/rng.hpp"

using namespace citeflow;

namespace {

double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(rng::bounded(gen, 1u << 30)) / static_cast<double>(1u << 30);
}

// Normal-equation solution from raw sums, a formulation independent of the
// centered two-pass fit it checks.
FitResult normal_equations(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    FitResult f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    const double num = n * sxy - sx * sy;
    f.r_squared = (num * num) / ((n * sxx - sx * sx) * (n * syy - sy * sy));
    f.n_points = x.size();
    return f;
}

PairRecord rec(std::string citing, std::string cited, std::int64_t citations) {
    PairRecord r;
    r.citing = std::move(citing);
    r.cited = std::move(cited);
    r.counts.n_citations = citations;
    return r;
}

} // namespace

// ============================================================================
// Least squares
// ============================================================================

TEST_CASE("a perfect line is recovered exactly") {
    std::vector<double> x, y;
    for (int i = 0; i < 10; ++i) {
        x.push_back(static_cast<double>(i));
        y.push_back(2.0 * static_cast<double>(i) + 1.0);
    }
    const auto f = ols_fit(x, y);
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.r_squared == 1.0);
    CHECK(f.n_points == 10);
}

TEST_CASE("a constant response has zero slope and zero r squared") {
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{5, 5, 5, 5};
    const auto f = ols_fit(x, y);
    CHECK(f.slope == 0.0);
    CHECK(f.intercept == 5.0);
    CHECK(f.r_squared == 0.0);
}

TEST_CASE("degenerate regression inputs are rejected") {
    const std::vector<double> x{1, 1, 1};
    const std::vector<double> y{1, 2, 3};
    CHECK_THROWS_AS(ols_fit(x, y), SemanticError);                       // constant x
    CHECK_THROWS_AS(ols_fit(y, std::vector<double>{1, 2}), SemanticError); // size mismatch
    CHECK_THROWS_AS(ols_fit(std::vector<double>{1}, std::vector<double>{2}),
                    SemanticError); // fewer than two points
    CHECK_THROWS_AS(pearson(x, y), SemanticError);
    CHECK_THROWS_AS(pearson(y, x), SemanticError);
}

TEST_CASE("the fit agrees with normal equations on random data") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = 3 + rng::bounded(gen, 48);
        std::vector<double> x, y;
        for (std::uint64_t i = 0; i < n; ++i) {
            x.push_back(uniform01(gen) * 10.0 - 5.0);
            y.push_back(uniform01(gen) * 4.0 + 0.3 * x.back());
        }
        const auto f = ols_fit(x, y);
        const auto g = normal_equations(x, y);
        CHECK(f.slope == doctest::Approx(g.slope).epsilon(1e-10));
        CHECK(f.intercept == doctest::Approx(g.intercept).epsilon(1e-10));
        CHECK(f.r_squared == doctest::Approx(g.r_squared).epsilon(1e-10));
        // r squared of a simple regression is the squared correlation.
        const double r = pearson(x, y);
        CHECK(f.r_squared == doctest::Approx(r * r).epsilon(1e-10));
        CHECK(f.r_squared >= 0.0);
        CHECK(f.r_squared <= 1.0);
    }
}

TEST_CASE("correlation hits both endpoints exactly") {
    std::vector<double> x, up, down;
    for (int i = 0; i < 7; ++i) {
        x.push_back(static_cast<double>(i));
        up.push_back(3.0 * static_cast<double>(i) + 2.0);
        down.push_back(-0.5 * static_cast<double>(i) + 9.0);
    }
    CHECK(pearson(x, up) == 1.0);
    CHECK(pearson(x, down) == -1.0);
}

// ============================================================================
// Top-percentile filter
// ============================================================================

TEST_CASE("top percentile keeps a ceiling share per citing entity") {
    std::vector<PairRecord> records;
    for (int i = 0; i < 73; ++i)
        records.push_back(rec("X", "T" + std::to_string(i), 100 - i));
    const auto kept = top_percentile_pairs(records, 0.1);
    // ceil(0.1 * 73) = 8, and the eight highest counts are 100 .. 93.
    REQUIRE(kept.size() == 8);
    for (std::size_t i = 0; i < kept.size(); ++i)
        CHECK(kept[i].counts.n_citations == 100 - static_cast<std::int64_t>(i));
}

TEST_CASE("top percentile breaks ties deterministically") {
    std::vector<PairRecord> records;
    for (int i = 72; i >= 0; --i)
        records.push_back(rec("X", "T" + std::string(1, static_cast<char>('A' + i % 26)) +
                                       std::to_string(i), 7));
    const auto once = top_percentile_pairs(records, 0.1);
    std::reverse(records.begin(), records.end());
    const auto twice = top_percentile_pairs(records, 0.1);
    REQUIRE(once.size() == 8);
    REQUIRE(twice.size() == 8);
    for (std::size_t i = 0; i < once.size(); ++i) CHECK(once[i].cited == twice[i].cited);
    // With equal counts the filter keeps the lexicographically first targets.
    CHECK(std::is_sorted(once.begin(), once.end(),
                         [](const auto& a, const auto& b) { return a.cited < b.cited; }));
}

TEST_CASE("top percentile groups by citing entity") {
    std::vector<PairRecord> records;
    for (int i = 0; i < 73; ++i) records.push_back(rec("B", "T" + std::to_string(i), i));
    for (int i = 0; i < 10; ++i) records.push_back(rec("A", "T" + std::to_string(i), i));
    const auto kept = top_percentile_pairs(records, 0.1);
    REQUIRE(kept.size() == 9); // ceil(7.3) + ceil(1.0)
    CHECK(kept.front().citing == "A");
    CHECK(kept.front().counts.n_citations == 9);
    std::size_t b_rows = 0;
    for (const auto& r : kept) b_rows += r.citing == "B";
    CHECK(b_rows == 8);
}

TEST_CASE("percentile one keeps everything and each group keeps at least one row") {
    std::vector<PairRecord> records;
    records.push_back(rec("A", "T1", 5));
    records.push_back(rec("A", "T2", 3));
    records.push_back(rec("B", "T1", 0));
    CHECK(top_percentile_pairs(records, 1.0).size() == 3);
    const auto kept = top_percentile_pairs(records, 0.01);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].citing == "A");
    CHECK(kept[0].counts.n_citations == 5);
    CHECK(kept[1].citing == "B");
}

TEST_CASE("kept rows dominate dropped rows within each group") {
    std::mt19937_64 gen(4);
    std::vector<PairRecord> records;
    for (int g = 0; g < 5; ++g)
        for (int i = 0; i < 40; ++i)
            records.push_back(rec("G" + std::to_string(g), "T" + std::to_string(i),
                                  static_cast<std::int64_t>(rng::bounded(gen, 12))));
    const auto kept = top_percentile_pairs(records, 0.25);
    for (int g = 0; g < 5; ++g) {
        const std::string citing = "G" + std::to_string(g);
        std::int64_t kept_min = std::numeric_limits<std::int64_t>::max();
        std::size_t kept_count = 0;
        for (const auto& r : kept)
            if (r.citing == citing) {
                kept_min = std::min(kept_min, r.counts.n_citations);
                ++kept_count;
            }
        CHECK(kept_count == 10); // ceil(0.25 * 40)
        for (const auto& r : records)
            if (r.citing == citing) {
                bool in_kept = false;
                for (const auto& k : kept)
                    in_kept |= k.citing == r.citing && k.cited == r.cited;
                if (!in_kept) CHECK(r.counts.n_citations <= kept_min);
            }
    }
}

TEST_CASE("invalid percentiles are rejected") {
    const std::vector<PairRecord> records{rec("A", "T", 1), rec("A", "U", 2)};
    CHECK_THROWS_AS(top_percentile_pairs(records, 0.0), SemanticError);
    CHECK_THROWS_AS(top_percentile_pairs(records, -0.2), SemanticError);
    CHECK_THROWS_AS(top_percentile_pairs(records, 1.5), SemanticError);
}

// ============================================================================
// Empirical distribution
// ============================================================================

TEST_CASE("the empirical cdf steps through tied observations") {
    const std::vector<double> v{0.4, 0.2, 0.8, 0.4};
    const auto cdf = cdf_table(v);
    REQUIRE(cdf.size() == 4);
    CHECK(cdf[0].value == 0.2);
    CHECK(cdf[0].fraction == 0.25);
    CHECK(cdf[1].value == 0.4);
    CHECK(cdf[1].fraction == 0.75);
    CHECK(cdf[2].value == 0.4);
    CHECK(cdf[2].fraction == 0.75);
    CHECK(cdf[3].value == 0.8);
    CHECK(cdf[3].fraction == 1.0);
}

TEST_CASE("a single observation jumps straight to one") {
    const auto cdf = cdf_table(std::vector<double>{0.37});
    REQUIRE(cdf.size() == 1);
    CHECK(cdf[0].value == 0.37);
    CHECK(cdf[0].fraction == 1.0);
}

TEST_CASE("the cdf is monotone and ends at one") {
    std::mt19937_64 gen(8);
    std::vector<double> v;
    for (int i = 0; i < 200; ++i) v.push_back(uniform01(gen));
    for (std::size_t grid : {std::size_t{0}, std::size_t{17}}) {
        const auto cdf = cdf_table(v, grid);
        REQUIRE(!cdf.empty());
        for (std::size_t i = 1; i < cdf.size(); ++i) {
            CHECK(cdf[i].fraction >= cdf[i - 1].fraction);
            CHECK(cdf[i].value >= cdf[i - 1].value);
        }
        CHECK(cdf.back().fraction == 1.0);
    }
}

TEST_CASE("grid mode spans the observed range evenly") {
    const std::vector<double> v{0.0, 0.25, 0.5, 0.75, 1.0};
    const auto cdf = cdf_table(v, 5);
    REQUIRE(cdf.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(cdf[i].value == doctest::Approx(0.25 * static_cast<double>(i)).epsilon(1e-15));
        CHECK(cdf[i].fraction == doctest::Approx(0.2 * static_cast<double>(i + 1)).epsilon(1e-15));
    }
}

TEST_CASE("larger samples track the uniform law more closely") {
    auto sup_deviation = [](std::size_t n, std::uint64_t seed) {
        std::mt19937_64 gen(seed);
        std::vector<double> v;
        for (std::size_t i = 0; i < n; ++i) v.push_back(uniform01(gen));
        double sup = 0.0;
        for (const auto& pt : cdf_table(v))
            sup = std::max(sup, std::abs(pt.fraction - pt.value));
        return sup;
    };
    CHECK(sup_deviation(100, 3) > sup_deviation(10000, 3));
    CHECK(sup_deviation(10000, 3) < 0.03);
}

TEST_CASE("an empty sample has no distribution") {
    CHECK_THROWS_AS(cdf_table(std::vector<double>{}), SemanticError);
}
