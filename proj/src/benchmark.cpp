#include "citeflow/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "citeflow/errors.hpp"

namespace citeflow {

RelativeProfile relative_profile(const IkfProfile& focal, const IkfProfile& benchmark) {
    if (focal.rows.size() != benchmark.rows.size())
        throw SemanticError("relative profile: target sets differ in size (" +
                            std::to_string(focal.rows.size()) + " vs " +
                            std::to_string(benchmark.rows.size()) + ")");
    std::unordered_map<std::string_view, const IkfTriple*> bench;
    bench.reserve(benchmark.rows.size());
    for (const auto& [target, triple] : benchmark.rows) bench.emplace(target, &triple);

    RelativeProfile rel;
    rel.focal = focal.citing;
    rel.benchmark = benchmark.citing;
    rel.rows.reserve(focal.rows.size());
    for (const auto& [target, triple] : focal.rows) {
        auto it = bench.find(target);
        if (it == bench.end())
            throw SemanticError("relative profile: target '" + target +
                                "' missing from the benchmark profile");
        const IkfTriple& b = *it->second;
        rel.rows.emplace_back(target, RelativeRow{
                                          triple.broadness() - b.broadness(),
                                          triple.intensity() - b.intensity(),
                                          triple.homogeneity() - b.homogeneity(),
                                      });
    }
    return rel;
}

namespace {

double std_dev(const std::vector<double>& v, StdDevMode mode) {
    const auto n = v.size();
    if (n < 2) throw SemanticError("scattering requires at least two targets");
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (*lo == *hi) return 0.0; // constant data scatters exactly zero
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double den = mode == StdDevMode::Population ? static_cast<double>(n)
                                                      : static_cast<double>(n - 1);
    return std::sqrt(ss / den);
}

} // namespace

double scattering(const IkfProfile& profile, StdDevMode mode) {
    std::vector<double> b, i, h;
    b.reserve(profile.rows.size());
    i.reserve(profile.rows.size());
    h.reserve(profile.rows.size());
    for (const auto& [target, triple] : profile.rows) {
        b.push_back(triple.broadness());
        i.push_back(triple.intensity());
        h.push_back(triple.homogeneity());
    }
    return std_dev(b, mode) + std_dev(i, mode) + std_dev(h, mode);
}

double scattering(const RelativeProfile& profile, StdDevMode mode) {
    std::vector<double> b, i, h;
    b.reserve(profile.rows.size());
    i.reserve(profile.rows.size());
    h.reserve(profile.rows.size());
    for (const auto& [target, row] : profile.rows) {
        b.push_back(row.d_broadness);
        i.push_back(row.d_intensity);
        h.push_back(row.d_homogeneity);
    }
    return std_dev(b, mode) + std_dev(i, mode) + std_dev(h, mode);
}

} // namespace citeflow
