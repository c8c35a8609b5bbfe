#include "citeflow/indicators.hpp"

#include <algorithm>
#include <memory>

#include "citeflow/errors.hpp"
#include "citeflow/parallel.hpp"

namespace citeflow {

// ============================================================================
// Target context
// ============================================================================

TargetContext::TargetContext(const CitationGraph& graph, const EntityDef& target)
    : target_(&target), member_(graph.n_pubs(), 0), cited_by_(graph.n_pubs(), 0) {
    for (PubId m : target.members) {
        member_[m] = 1;
        for (PubId ref : graph.references(m)) cited_by_[ref] = 1;
    }
}

// ============================================================================
// Pair counts
// ============================================================================

IkfTriple pair_counts(const CitationGraph& graph, const EntityDef& citing,
                      const TargetContext& target, const IkfOptions& opt) {
    IkfTriple t;
    t.n_pubs_citing = static_cast<std::int64_t>(citing.members.size());
    for (PubId i : citing.members) {
        std::int64_t hits = 0, deg = 0, co = 0;
        for (PubId ref : graph.references(i)) {
            hits += target.is_member(ref);
            if (opt.drop_intra_entity_refs && citing.contains(ref)) continue;
            ++deg;
            co += target.is_cited_by_target(ref);
        }
        t.out_citations_all += deg;
        t.co_cited_refs += co;
        if (hits > 0) {
            ++t.n_citing_pubs;
            t.n_citations += hits;
            t.out_citations_citing_subset += deg;
        }
    }
    return t;
}

IkfTriple pair_counts(const CitationGraph& graph, const EntityDef& citing,
                      const EntityDef& target, const IkfOptions& opt) {
    return pair_counts(graph, citing, TargetContext(graph, target), opt);
}

double broadness(const EntityDef& citing, const EntityDef& target, const CitationGraph& graph) {
    return pair_counts(graph, citing, target).broadness();
}

double intensity(const EntityDef& citing, const EntityDef& target, const CitationGraph& graph) {
    return pair_counts(graph, citing, target).intensity();
}

double pctc(const EntityDef& citing, const EntityDef& target, const CitationGraph& graph) {
    return pair_counts(graph, citing, target).pctc();
}

double homogeneity(const EntityDef& citing, const EntityDef& target, const CitationGraph& graph) {
    return pair_counts(graph, citing, target).homogeneity();
}

// ============================================================================
// Profiles
// ============================================================================

const IkfTriple* IkfProfile::find(std::string_view target) const noexcept {
    for (const auto& [id, triple] : rows)
        if (id == target) return &triple;
    return nullptr;
}

namespace {

IkfProfile profile_with_contexts(const CitationGraph& graph, const EntityDef& citing,
                                 std::span<const TargetContext> contexts,
                                 const IkfOptions& opt) {
    IkfProfile p{citing.id, opt.exclude_self, {}};
    p.rows.reserve(contexts.size());
    for (const auto& ctx : contexts) {
        if (opt.exclude_self && ctx.target().id == citing.id) continue;
        p.rows.emplace_back(ctx.target().id, pair_counts(graph, citing, ctx, opt));
    }
    return p;
}

} // namespace

IkfProfile profile(const CitationGraph& graph, const EntityDef& citing,
                   std::span<const EntityDef* const> targets, const IkfOptions& opt) {
    if (targets.empty()) throw SemanticError("profile requires at least one target");
    std::vector<TargetContext> contexts;
    contexts.reserve(targets.size());
    for (const auto* t : targets) contexts.emplace_back(graph, *t);
    return profile_with_contexts(graph, citing, contexts, opt);
}

std::vector<IkfProfile> profile_matrix(const CitationGraph& graph,
                                       std::span<const EntityDef* const> citings,
                                       std::span<const EntityDef* const> targets,
                                       const IkfOptions& opt, unsigned jobs) {
    if (targets.empty()) throw SemanticError("profile requires at least one target");
    std::vector<TargetContext> contexts;
    contexts.reserve(targets.size());
    for (const auto* t : targets) contexts.emplace_back(graph, *t);

    std::vector<IkfProfile> out(citings.size());
    parallel_for_index(citings.size(), jobs, [&](std::size_t i) {
        out[i] = profile_with_contexts(graph, *citings[i], contexts, opt);
    });
    return out;
}

} // namespace citeflow
