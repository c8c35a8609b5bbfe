#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "citeflow/corpus.hpp"
#include "citeflow/indicators.hpp"

namespace citeflow {

// ============================================================================
// Synthetic corpus generator
// ============================================================================

// Inclusive integer range; lo == hi pins the value.
struct CountRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

// Plants a citation pattern from one entity into another: round(b * |X|)
// designated publications cite the target, each with clamp(round(i * refs), 1,
// refs) distinct citations. All other references from the citing entity avoid
// the target entirely, so the realized values are exact by construction.
struct PlantSpec {
    std::string citing;
    std::string cited;
    double broadness = 0.0;
    double intensity = 0.0;
};

struct GeneratorSpec {
    std::int64_t n_entities = 2;
    CountRange pubs_per_entity{10, 10};
    CountRange refs_per_pub{5, 5};
    std::vector<PlantSpec> planted;
    std::uint64_t seed = 0;
};

struct RealizedPlant {
    std::string citing;
    std::string cited;
    double target_broadness = 0.0;
    double target_intensity = 0.0;
    double realized_broadness = 0.0;
    double realized_intensity = 0.0;
    double realized_homogeneity = 0.0; // measured on the finished graph
    std::int64_t citing_pubs = 0;
    std::int64_t citations = 0;
};

struct GeneratedCorpus {
    Corpus corpus;
    std::vector<RealizedPlant> plants;
};

// Deterministic in the spec (same spec, same corpus, bit for bit). Entities
// are disjoint; filler references are uniform over publications of other,
// non-planted entities. Throws SemanticError when a plant or reference count
// cannot be realized.
GeneratedCorpus generate_corpus(const GeneratorSpec& spec);

// ============================================================================
// Dense reference oracle
// ============================================================================

// Explicit 0/1 citation matrix for desk-scale cross-checks.
class DenseMatrix {
public:
    static constexpr PubId kMaxPubs = 2048;

    explicit DenseMatrix(PubId n_pubs);
    explicit DenseMatrix(const CitationGraph& graph); // SemanticError when too large

    PubId size() const noexcept { return n_; }
    bool at(PubId i, PubId j) const noexcept { return m_[std::size_t(i) * n_ + j] != 0; }
    void set(PubId i, PubId j) noexcept { m_[std::size_t(i) * n_ + j] = 1; }

private:
    PubId n_ = 0;
    std::vector<std::uint8_t> m_;
};

// Literal-definition counts from the dense matrix: row and column scans only,
// no shared code with the sparse path.
IkfTriple brute_force_triple(const EntityDef& citing, const EntityDef& target,
                             const DenseMatrix& m);

// ============================================================================
// Size-independence sampling harness
// ============================================================================

struct SizeIndependenceOptions {
    std::vector<double> fractions{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::int64_t trials = 10;
    std::uint64_t seed = 0;
    double top_percentile = 0.10; // target share for the restricted variant
    bool include_self = false;    // keep the X == X target
    unsigned jobs = 1;
};

// One aggregate per (entity, indicator, fraction, restriction flag).
struct SamplingReport {
    std::string entity;
    std::string indicator; // broadness | intensity | homogeneity
    double fraction = 0.0;
    std::int64_t trials = 0;
    double trial_mean = 0.0; // mean over trials of the per-trial mean signed deviation
    double trial_sd = 0.0;   // population sd over trials of those means
    double abs_mean = 0.0;   // mean over trials of the per-trial mean |deviation|
    bool top_decile_only = false;
};

// For every entity and fraction: draw `trials` member subsets, recompute the
// indicator profile, and aggregate signed deviations from the full-entity
// profile across targets. The restricted variant keeps only the top targets
// by full-profile citation volume. Deterministic in the seed; cells may run
// in parallel.
std::vector<SamplingReport> size_independence_run(const CitationGraph& graph,
                                                  std::span<const EntityDef* const> entities,
                                                  const SizeIndependenceOptions& opt);

// ============================================================================
// Monotonicity suite
// ============================================================================

struct MonotonicityOptions {
    std::int64_t edits_per_property = 1000;
    std::uint64_t seed = 0;
};

struct MonotonicityCheck {
    std::string property;
    std::int64_t checks = 0;
    std::int64_t violations = 0;
};

struct MonotonicityReport {
    std::vector<MonotonicityCheck> checks;

    std::int64_t total_checks() const noexcept;
    std::int64_t total_violations() const noexcept;
    bool passed() const noexcept { return total_violations() == 0; }
};

// Randomized single-edit perturbations with a known indicator response:
//   broadness-add-citing     adding to X a publication citing Y raises B
//   broadness-add-nonciting  adding one that does not cite Y lowers B (B > 0)
//   intensity-redirect       redirecting a non-Y reference of a Y-citing
//                            publication onto an uncited Y member raises I
//   homogeneity-redirect     redirecting a reference onto a publication the
//                            target co-cites raises H
// Each edit rebuilds the graph and compares exact integer ratios.
MonotonicityReport monotonicity_suite(const CitationGraph& graph,
                                      std::span<const EntityDef* const> entities,
                                      const MonotonicityOptions& opt);

} // namespace citeflow
