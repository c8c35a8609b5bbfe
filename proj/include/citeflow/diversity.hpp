#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citeflow/corpus.hpp"
#include "citeflow/indicators.hpp"

namespace citeflow {

// ============================================================================
// Proportions and disparity
// ============================================================================

// Citation proportions of one entity over a set of labelled categories.
// Entries are non-negative; the vector need not sum to one (self-citations
// may be excluded upstream).
struct ProportionVector {
    std::string entity;
    std::vector<std::string> labels;
    std::vector<double> p;

    double sum() const noexcept;
};

// p_i taken from the pctc column of the profile, labels from its targets.
ProportionVector proportions_from_profile(const IkfProfile& profile);

// Symmetric category-distance matrix with zero diagonal, entries in [0, 1].
struct DisparityMatrix {
    std::vector<std::string> labels;
    std::vector<double> values; // row-major, labels.size()^2
    std::vector<std::string> warnings;

    std::size_t index_of(std::string_view label) const; // SemanticError if absent
    double at(std::size_t i, std::size_t j) const noexcept {
        return values[i * labels.size() + j];
    }
    void set(std::size_t i, std::size_t j, double v) noexcept {
        values[i * labels.size() + j] = v;
    }
};

enum class DisparityMethod {
    // 1 - cosine similarity of citation-count row vectors over the category
    // set. A category with no outward citations gets distance 1 to every
    // other category and a warning.
    CosineCrossCitation,
    // 1 - (H(i,j) + H(j,i)) / 2 from the pairwise co-citation overlap.
    Coupling,
};

DisparityMatrix disparity_from_graph(const CitationGraph& graph,
                                     std::span<const EntityDef* const> categories,
                                     DisparityMethod method = DisparityMethod::CosineCrossCitation);

// Element-wise 1 - d; the diagonal becomes 1.
DisparityMatrix similarity_from_disparity(const DisparityMatrix& d);

// ============================================================================
// Diversity scores
// ============================================================================

// Sum of d_ij * p_i * p_j over ordered pairs i != j. Proportion labels must
// all exist in the disparity matrix; extra matrix labels are ignored.
double rao_stirling(const ProportionVector& p, const DisparityMatrix& d);

// 1 / sum of s_ij * q_i * q_j with q the proportions renormalized to sum 1
// and s a similarity matrix (unit diagonal). Throws on a zero vector.
double true_diversity(const ProportionVector& p, const DisparityMatrix& similarity);

// Each member treated as a one-publication citing set over the categories;
// returns the median Rao-Stirling score. Members without references score 0.
double median_publication_rao_stirling(const CitationGraph& graph,
                                       const EntityDef& entity,
                                       std::span<const EntityDef* const> categories,
                                       const DisparityMatrix& d);

} // namespace citeflow
