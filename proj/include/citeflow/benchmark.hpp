#pragma once

#include <string>
#include <utility>
#include <vector>

#include "citeflow/indicators.hpp"

namespace citeflow {

// Per-target indicator differences of a focal entity against a benchmark
// entity, both profiled over the same target list.
struct RelativeRow {
    double d_broadness = 0.0;
    double d_intensity = 0.0;
    double d_homogeneity = 0.0;
};

struct RelativeProfile {
    std::string focal;
    std::string benchmark;
    std::vector<std::pair<std::string, RelativeRow>> rows;
};

// focal minus benchmark, target by target. Throws SemanticError when the two
// profiles do not cover the same target set.
RelativeProfile relative_profile(const IkfProfile& focal, const IkfProfile& benchmark);

enum class StdDevMode { Population, Sample };

// Sum over the three indicators of the standard deviation of the per-target
// values. Requires at least two targets.
double scattering(const IkfProfile& profile, StdDevMode mode = StdDevMode::Population);
double scattering(const RelativeProfile& profile, StdDevMode mode = StdDevMode::Population);

} // namespace citeflow
