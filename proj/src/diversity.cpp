#include "citeflow/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "citeflow/errors.hpp"

namespace citeflow {

// ============================================================================
// Proportions
// ============================================================================

double ProportionVector::sum() const noexcept {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
}

ProportionVector proportions_from_profile(const IkfProfile& profile) {
    ProportionVector out;
    out.entity = profile.citing;
    out.labels.reserve(profile.rows.size());
    out.p.reserve(profile.rows.size());
    for (const auto& [target, triple] : profile.rows) {
        out.labels.push_back(target);
        out.p.push_back(triple.pctc());
    }
    return out;
}

// ============================================================================
// Disparity
// ============================================================================

std::size_t DisparityMatrix::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    throw SemanticError("label not present in disparity matrix: " + std::string(label));
}

namespace {

double clamp01(double v) noexcept { return std::min(1.0, std::max(0.0, v)); }

} // namespace

DisparityMatrix disparity_from_graph(const CitationGraph& graph,
                                     std::span<const EntityDef* const> categories,
                                     DisparityMethod method) {
    if (categories.size() < 2)
        throw SemanticError("disparity requires at least two categories");
    const std::size_t k = categories.size();

    DisparityMatrix d;
    d.labels.reserve(k);
    for (const auto* c : categories) d.labels.push_back(c->id);
    d.values.assign(k * k, 0.0);

    std::vector<TargetContext> contexts;
    contexts.reserve(k);
    for (const auto* c : categories) contexts.emplace_back(graph, *c);

    if (method == DisparityMethod::CosineCrossCitation) {
        // Row vector per category: citation counts into every category.
        std::vector<std::vector<double>> rows(k, std::vector<double>(k, 0.0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                rows[i][j] = static_cast<double>(
                    pair_counts(graph, *categories[i], contexts[j]).n_citations);

        std::vector<double> norm(k, 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            double s = 0.0;
            for (double v : rows[i]) s += v * v;
            norm[i] = std::sqrt(s);
            if (norm[i] == 0.0)
                d.warnings.push_back("category '" + d.labels[i] +
                                     "' has no citations into the category set; "
                                     "its disparities default to 1");
        }
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                double dist = 1.0;
                if (norm[i] > 0.0 && norm[j] > 0.0) {
                    double dot = 0.0;
                    for (std::size_t t = 0; t < k; ++t) dot += rows[i][t] * rows[j][t];
                    dist = clamp01(1.0 - dot / (norm[i] * norm[j]));
                }
                d.set(i, j, dist);
                d.set(j, i, dist);
            }
        }
        return d;
    }

    // Coupling: symmetrized co-citation overlap.
    std::vector<std::vector<double>> h(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j)
                h[i][j] = pair_counts(graph, *categories[i], contexts[j]).homogeneity();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double dist = clamp01(1.0 - 0.5 * (h[i][j] + h[j][i]));
            d.set(i, j, dist);
            d.set(j, i, dist);
        }
    }
    return d;
}

DisparityMatrix similarity_from_disparity(const DisparityMatrix& d) {
    DisparityMatrix s;
    s.labels = d.labels;
    s.values.resize(d.values.size());
    for (std::size_t i = 0; i < d.values.size(); ++i) s.values[i] = 1.0 - d.values[i];
    return s;
}

// ============================================================================
// Diversity scores
// ============================================================================

namespace {

std::vector<std::size_t> map_labels(const ProportionVector& p, const DisparityMatrix& d) {
    std::unordered_map<std::string_view, std::size_t> index;
    index.reserve(d.labels.size());
    for (std::size_t i = 0; i < d.labels.size(); ++i) index.emplace(d.labels[i], i);
    std::vector<std::size_t> out;
    out.reserve(p.labels.size());
    for (const auto& label : p.labels) {
        auto it = index.find(label);
        if (it == index.end())
            throw SemanticError("label not present in disparity matrix: " + label);
        out.push_back(it->second);
    }
    return out;
}

} // namespace

double rao_stirling(const ProportionVector& p, const DisparityMatrix& d) {
    const auto idx = map_labels(p, d);
    double s = 0.0;
    for (std::size_t a = 0; a < p.p.size(); ++a)
        for (std::size_t b = 0; b < p.p.size(); ++b)
            if (a != b) s += d.at(idx[a], idx[b]) * p.p[a] * p.p[b];
    return s;
}

double true_diversity(const ProportionVector& p, const DisparityMatrix& similarity) {
    const auto idx = map_labels(p, similarity);
    const double total = p.sum();
    if (total <= 0.0)
        throw SemanticError("true diversity of a zero proportion vector is undefined");
    double s = 0.0;
    for (std::size_t a = 0; a < p.p.size(); ++a)
        for (std::size_t b = 0; b < p.p.size(); ++b)
            s += similarity.at(idx[a], idx[b]) * (p.p[a] / total) * (p.p[b] / total);
    return 1.0 / s;
}

double median_publication_rao_stirling(const CitationGraph& graph,
                                       const EntityDef& entity,
                                       std::span<const EntityDef* const> categories,
                                       const DisparityMatrix& d) {
    if (entity.members.empty())
        throw SemanticError("entity without members: " + entity.id);
    std::vector<TargetContext> contexts;
    contexts.reserve(categories.size());
    for (const auto* c : categories) contexts.emplace_back(graph, *c);
    std::vector<std::size_t> idx;
    idx.reserve(categories.size());
    {
        ProportionVector probe;
        for (const auto* c : categories) probe.labels.push_back(c->id);
        probe.p.assign(categories.size(), 0.0);
        idx = map_labels(probe, d);
    }

    std::vector<double> scores;
    scores.reserve(entity.members.size());
    std::vector<double> p(categories.size());
    for (PubId pub : entity.members) {
        const auto refs = graph.references(pub);
        const double deg = static_cast<double>(refs.size());
        for (std::size_t c = 0; c < categories.size(); ++c) {
            std::int64_t hits = 0;
            for (PubId ref : refs) hits += contexts[c].is_member(ref);
            p[c] = deg == 0.0 ? 0.0 : static_cast<double>(hits) / deg;
        }
        double s = 0.0;
        for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = 0; b < p.size(); ++b)
                if (a != b) s += d.at(idx[a], idx[b]) * p[a] * p[b];
        scores.push_back(s);
    }
    std::sort(scores.begin(), scores.end());
    const std::size_t n = scores.size();
    return n % 2 == 1 ? scores[n / 2] : 0.5 * (scores[n / 2 - 1] + scores[n / 2]);
}

} // namespace citeflow
