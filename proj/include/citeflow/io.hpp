#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "citeflow/analysis.hpp"
#include "citeflow/benchmark.hpp"
#include "citeflow/diversity.hpp"
#include "citeflow/indicators.hpp"
#include "citeflow/validate.hpp"

namespace citeflow {

// ============================================================================
// Low-level delimited reading
// ============================================================================

// Field views are valid until the next call to next().
struct DelimitedRecord {
    std::vector<std::string_view> fields;
    std::size_t line = 0;
};

// Splits on a single-character delimiter, skips blank lines and lines whose
// first character is '#', tolerates trailing CR. No quoting: fields cannot
// contain the delimiter.
class DelimitedReader {
public:
    DelimitedReader(std::istream& in, char delimiter);
    bool next(DelimitedRecord& rec);
    std::size_t line() const noexcept { return line_; }

private:
    std::istream* in_;
    char delim_;
    std::string buf_;
    std::size_t line_ = 0;
};

// Ratio formatting used by every table writer: 12 significant digits.
std::string format_ratio(double v);

// ============================================================================
// Pair tables
// ============================================================================

// Long-format table, one row per (citing, target) pair:
//   citing,cited,n_pubs_citing,n_citing_pubs,n_citations,out_citations_all,
//   out_citations_citing_subset,co_cited_refs,broadness,intensity,
//   homogeneity,pctc
void write_pair_table(std::ostream& out, std::span<const IkfProfile> profiles,
                      char delimiter = ',');
std::vector<PairRecord> read_pair_table(std::istream& in, char delimiter = ',');

// JSON document with one object per citing entity holding parallel arrays
// (targets plus the four indicators and citation counts).
void write_profiles_json(std::ostream& out, std::span<const IkfProfile> profiles);

// ============================================================================
// Relative profiles
// ============================================================================

void write_relative_csv(std::ostream& out, const RelativeProfile& rel,
                        double scattering_value, char delimiter = ',');
void write_relative_json(std::ostream& out, const RelativeProfile& rel,
                         double scattering_value);

// ============================================================================
// Analysis outputs
// ============================================================================

struct FitRow {
    std::string x;
    std::string y;
    double top_percentile = 1.0;
    FitResult fit;
};

void write_fit_table(std::ostream& out, std::span<const FitRow> rows,
                     char delimiter = ',');

struct CdfRow {
    std::string citing;
    std::string indicator;
    double value = 0.0;
    double fraction = 0.0;
};

void write_cdf_table(std::ostream& out, std::span<const CdfRow> rows,
                     char delimiter = ',');

// ============================================================================
// Validation outputs
// ============================================================================

// entity,indicator,fraction,trial_mean,trial_sd,top_decile_only
void write_sampling_reports(std::ostream& out, std::span<const SamplingReport> reports,
                            char delimiter = ',');
void write_monotonicity_report(std::ostream& out, const MonotonicityReport& report,
                               char delimiter = ',');

// ============================================================================
// Diversity outputs
// ============================================================================

// Square matrix with a label header row and a leading label column.
void write_disparity(std::ostream& out, const DisparityMatrix& d, char delimiter = ',');
// Validates symmetry, zero diagonal, and the [0, 1] range.
DisparityMatrix read_disparity(std::istream& in, char delimiter = ',');

struct DiversityRow {
    std::string entity;
    double rao_stirling = 0.0;
    double publication_median = 0.0;
    double true_diversity = 0.0;
    bool has_publication_median = false;
    bool has_true_diversity = false;
};

void write_diversity_table(std::ostream& out, std::span<const DiversityRow> rows,
                           char delimiter = ',');

// ============================================================================
// Generator spec and plant reports
// ============================================================================

// JSON object: n_entities, pubs_per_entity, refs_per_pub (number or [lo, hi]),
// seed, planted: [{citing, cited, broadness, intensity}].
GeneratorSpec read_generator_spec(std::istream& in);
GeneratorSpec read_generator_spec_file(const std::string& path);

void write_plant_report(std::ostream& out, std::span<const RealizedPlant> plants,
                        char delimiter = ',');

} // namespace citeflow
