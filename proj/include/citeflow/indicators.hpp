#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citeflow/corpus.hpp"

namespace citeflow {

// ============================================================================
// Pairwise citation-flow counts
// ============================================================================

// Exact integer counts for one (citing X, target Y) pair. Every indicator is
// a ratio of two of these counts; ratios with zero denominator are defined as
// zero so profile rows always exist. Counts, not doubles, are the unit of
// comparison in tests.
struct IkfTriple {
    std::int64_t n_pubs_citing = 0;       // |X|
    std::int64_t n_citing_pubs = 0;       // publications of X citing Y at least once
    std::int64_t n_citations = 0;         // distinct citation pairs from X into Y
    std::int64_t out_citations_all = 0;   // distinct outward citations of all of X
    std::int64_t out_citations_citing_subset = 0; // same, restricted to the citing subset
    std::int64_t co_cited_refs = 0;       // X references whose target Y also cites

    // Share of X publications citing Y.
    double broadness() const noexcept {
        return ratio(n_citing_pubs, n_pubs_citing);
    }
    // Citations into Y per outward citation of the X publications citing Y.
    double intensity() const noexcept {
        return ratio(n_citations, out_citations_citing_subset);
    }
    // Citations into Y per outward citation of all of X.
    double pctc() const noexcept {
        return ratio(n_citations, out_citations_all);
    }
    // Share of X references that Y also cites.
    double homogeneity() const noexcept {
        return ratio(co_cited_refs, out_citations_all);
    }

    friend bool operator==(const IkfTriple&, const IkfTriple&) = default;

private:
    static double ratio(std::int64_t num, std::int64_t den) noexcept {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    }
};

struct IkfOptions {
    // Skip the X == X row when computing profiles.
    bool exclude_self = true;
    // Remove citations that stay inside the citing entity from the
    // denominator counts (out_citations_* and the co-citation scan). The
    // plain definitions keep them; this is a sensitivity-analysis knob.
    bool drop_intra_entity_refs = false;
};

// ============================================================================
// Target context
// ============================================================================

// Membership and cited-by-target lookups for one target entity, built once
// per target and reused across any number of citing entities.
class TargetContext {
public:
    TargetContext(const CitationGraph& graph, const EntityDef& target);

    const EntityDef& target() const noexcept { return *target_; }
    bool is_member(PubId p) const noexcept { return member_[p] != 0; }
    bool is_cited_by_target(PubId p) const noexcept { return cited_by_[p] != 0; }

private:
    const EntityDef* target_;
    std::vector<std::uint8_t> member_;
    std::vector<std::uint8_t> cited_by_;
};

// ============================================================================
// Pair counts and profiles
// ============================================================================

IkfTriple pair_counts(const CitationGraph& graph, const EntityDef& citing,
                      const TargetContext& target, const IkfOptions& opt = {});
IkfTriple pair_counts(const CitationGraph& graph, const EntityDef& citing,
                      const EntityDef& target, const IkfOptions& opt = {});

double broadness(const EntityDef& citing, const EntityDef& target, const CitationGraph& graph);
double intensity(const EntityDef& citing, const EntityDef& target, const CitationGraph& graph);
double pctc(const EntityDef& citing, const EntityDef& target, const CitationGraph& graph);
double homogeneity(const EntityDef& citing, const EntityDef& target, const CitationGraph& graph);

// One citing entity against an ordered target list.
struct IkfProfile {
    std::string citing;
    bool self_excluded = true;
    std::vector<std::pair<std::string, IkfTriple>> rows;

    const IkfTriple* find(std::string_view target) const noexcept;
};

IkfProfile profile(const CitationGraph& graph, const EntityDef& citing,
                   std::span<const EntityDef* const> targets,
                   const IkfOptions& opt = {});

// Full citing x target matrix. Target contexts are shared; citing entities
// are processed in parallel with deterministic output slots, so the result
// is identical for every jobs value.
std::vector<IkfProfile> profile_matrix(const CitationGraph& graph,
                                       std::span<const EntityDef* const> citings,
                                       std::span<const EntityDef* const> targets,
                                       const IkfOptions& opt = {},
                                       unsigned jobs = 1);

} // namespace citeflow
