#include "citeflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "citeflow/errors.hpp"

namespace citeflow {

// ============================================================================
// Regression and correlation
// ============================================================================

namespace {

struct CenteredSums {
    double mean_x = 0.0, mean_y = 0.0;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
};

CenteredSums centered_sums(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw SemanticError("fit inputs differ in length (" + std::to_string(x.size()) +
                            " vs " + std::to_string(y.size()) + ")");
    if (x.size() < 2) throw SemanticError("fit requires at least two points");
    CenteredSums s;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        s.mean_x += x[i];
        s.mean_y += y[i];
    }
    s.mean_x /= n;
    s.mean_y /= n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - s.mean_x;
        const double dy = y[i] - s.mean_y;
        s.sxx += dx * dx;
        s.sxy += dx * dy;
        s.syy += dy * dy;
    }
    return s;
}

} // namespace

FitResult ols_fit(std::span<const double> x, std::span<const double> y) {
    const auto s = centered_sums(x, y);
    if (s.sxx == 0.0) throw SemanticError("fit is undefined for constant x");

    FitResult fit;
    fit.n_points = x.size();
    fit.slope = s.sxy / s.sxx;
    fit.intercept = s.mean_y - fit.slope * s.mean_x;
    if (s.syy == 0.0) {
        fit.r_squared = 0.0;
        return fit;
    }
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += e * e;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / s.syy, 0.0, 1.0);
    return fit;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    const auto s = centered_sums(x, y);
    if (s.sxx == 0.0 || s.syy == 0.0)
        throw SemanticError("correlation is undefined for constant input");
    return std::clamp(s.sxy / std::sqrt(s.sxx * s.syy), -1.0, 1.0);
}

// ============================================================================
// Pair filtering
// ============================================================================

std::vector<PairRecord> top_percentile_pairs(std::span<const PairRecord> records,
                                             double percentile) {
    if (!(percentile > 0.0) || percentile > 1.0)
        throw SemanticError("percentile must be in (0, 1], got " +
                            std::to_string(percentile));

    std::map<std::string_view, std::vector<const PairRecord*>> groups;
    for (const auto& rec : records) groups[rec.citing].push_back(&rec);

    auto rank = [](const PairRecord* a, const PairRecord* b) {
        if (a->counts.n_citations != b->counts.n_citations)
            return a->counts.n_citations > b->counts.n_citations;
        return a->cited < b->cited;
    };

    std::vector<PairRecord> out;
    for (auto& [citing, rows] : groups) {
        std::sort(rows.begin(), rows.end(), rank);
        // Small slack keeps p * n just above an integer from rounding up.
        const auto keep = static_cast<std::size_t>(
            std::ceil(percentile * static_cast<double>(rows.size()) - 1e-9));
        const auto limit = std::min(rows.size(), std::max<std::size_t>(keep, 1));
        for (std::size_t i = 0; i < limit; ++i) out.push_back(*rows[i]);
    }
    return out;
}

// ============================================================================
// Empirical distribution
// ============================================================================

std::vector<CdfPoint> cdf_table(std::span<const double> values, std::size_t grid_points) {
    if (values.empty()) throw SemanticError("empirical distribution of an empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());

    std::vector<CdfPoint> out;
    if (grid_points == 0) {
        out.reserve(sorted.size());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            const auto upper = std::upper_bound(sorted.begin(), sorted.end(), sorted[i]);
            out.push_back({sorted[i],
                           static_cast<double>(upper - sorted.begin()) / n});
        }
        return out;
    }

    const double lo = sorted.front();
    const double hi = sorted.back();
    out.reserve(grid_points);
    for (std::size_t k = 0; k < grid_points; ++k) {
        const double v = grid_points == 1
                             ? hi
                             : lo + (hi - lo) * static_cast<double>(k) /
                                   static_cast<double>(grid_points - 1);
        const auto upper = std::upper_bound(sorted.begin(), sorted.end(), v);
        out.push_back({v, static_cast<double>(upper - sorted.begin()) / n});
    }
    return out;
}

} // namespace citeflow
