#include "citeflow/validate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <unordered_map>

#include "citeflow/errors.hpp"
#include "citeflow/parallel.hpp"
#include "citeflow/rng.hpp"

namespace citeflow {

// ============================================================================
// Synthetic corpus generator
// ============================================================================

namespace {

std::string padded(std::int64_t value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

int digits(std::int64_t v) {
    int d = 1;
    while (v >= 10) {
        v /= 10;
        ++d;
    }
    return d;
}

std::int64_t draw_range(std::mt19937_64& gen, const CountRange& r) {
    return r.lo + static_cast<std::int64_t>(
                      rng::bounded(gen, static_cast<std::uint64_t>(r.hi - r.lo + 1)));
}

} // namespace

GeneratedCorpus generate_corpus(const GeneratorSpec& spec) {
    if (spec.n_entities < 1)
        throw SemanticError("generator requires at least one entity");
    if (spec.pubs_per_entity.lo < 1 || spec.pubs_per_entity.lo > spec.pubs_per_entity.hi)
        throw SemanticError("generator: pubs_per_entity range is invalid");
    if (spec.refs_per_pub.lo < 0 || spec.refs_per_pub.lo > spec.refs_per_pub.hi)
        throw SemanticError("generator: refs_per_pub range is invalid");

    const auto k = static_cast<std::size_t>(spec.n_entities);
    const int id_width = std::max(2, digits(spec.n_entities - 1));
    std::vector<std::string> entity_ids(k);
    std::unordered_map<std::string, std::size_t> entity_index;
    for (std::size_t e = 0; e < k; ++e) {
        entity_ids[e] = "E" + padded(static_cast<std::int64_t>(e), id_width);
        entity_index.emplace(entity_ids[e], e);
    }

    // Entity sizes and per-publication reference counts come from their own
    // sub-streams so later spec changes cannot shift unrelated draws.
    std::mt19937_64 gen_sizes(rng::derive_seed(spec.seed, 1));
    std::vector<std::int64_t> pubs(k), start(k + 1, 0);
    for (std::size_t e = 0; e < k; ++e) {
        pubs[e] = draw_range(gen_sizes, spec.pubs_per_entity);
        start[e + 1] = start[e] + pubs[e];
    }
    const std::int64_t n = start[k];
    if (n > static_cast<std::int64_t>(std::numeric_limits<PubId>::max()))
        throw SemanticError("generator: corpus too large");

    std::vector<std::uint32_t> entity_of(static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < k; ++e)
        for (std::int64_t p = start[e]; p < start[e + 1]; ++p)
            entity_of[static_cast<std::size_t>(p)] = static_cast<std::uint32_t>(e);

    std::mt19937_64 gen_refs(rng::derive_seed(spec.seed, 2));
    std::vector<std::int64_t> refs(static_cast<std::size_t>(n));
    for (auto& r : refs) r = draw_range(gen_refs, spec.refs_per_pub);

    // Plants: designate citing publications and emit their target-entity
    // citations; record how many references each designated publication has
    // already committed.
    std::vector<std::pair<PubId, PubId>> edges;
    edges.reserve(static_cast<std::size_t>(
        std::accumulate(refs.begin(), refs.end(), std::int64_t{0})));
    std::vector<std::int64_t> committed(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<std::uint8_t>> excluded(k, std::vector<std::uint8_t>(k, 0));
    for (std::size_t e = 0; e < k; ++e) excluded[e][e] = 1;

    std::vector<RealizedPlant> plants;
    plants.reserve(spec.planted.size());
    for (std::size_t pi = 0; pi < spec.planted.size(); ++pi) {
        const PlantSpec& plant = spec.planted[pi];
        auto xit = entity_index.find(plant.citing);
        auto yit = entity_index.find(plant.cited);
        if (xit == entity_index.end())
            throw SemanticError("plant references unknown entity: " + plant.citing);
        if (yit == entity_index.end())
            throw SemanticError("plant references unknown entity: " + plant.cited);
        const std::size_t xe = xit->second, ye = yit->second;
        if (xe == ye) throw SemanticError("plant citing and cited entities must differ");
        if (!(plant.broadness >= 0.0 && plant.broadness <= 1.0) ||
            !(plant.intensity >= 0.0 && plant.intensity <= 1.0))
            throw SemanticError("plant broadness/intensity must lie in [0, 1]");
        if (excluded[xe][ye])
            throw SemanticError("duplicate plant for " + plant.citing + " -> " + plant.cited);
        excluded[xe][ye] = 1;

        const auto n_cite = static_cast<std::int64_t>(
            std::llround(plant.broadness * static_cast<double>(pubs[xe])));

        std::mt19937_64 gen_plant(rng::derive_seed(spec.seed, 3, pi));
        auto local = rng::sample_distinct(gen_plant, static_cast<std::uint32_t>(pubs[xe]),
                                          static_cast<std::uint32_t>(n_cite));
        std::sort(local.begin(), local.end());

        RealizedPlant realized;
        realized.citing = plant.citing;
        realized.cited = plant.cited;
        realized.target_broadness = plant.broadness;
        realized.target_intensity = plant.intensity;
        realized.citing_pubs = n_cite;

        std::int64_t out_designated = 0;
        for (auto lp : local) {
            const auto p = static_cast<std::size_t>(start[xe] + lp);
            const std::int64_t r = refs[p];
            if (r < 1)
                throw SemanticError("plant " + plant.citing + " -> " + plant.cited +
                                    " designates a publication with no references");
            auto c = static_cast<std::int64_t>(
                std::llround(plant.intensity * static_cast<double>(r)));
            c = std::clamp<std::int64_t>(c, 1, r);
            if (c > pubs[ye])
                throw SemanticError("plant " + plant.citing + " -> " + plant.cited +
                                    " needs " + std::to_string(c) +
                                    " distinct targets but the cited entity has only " +
                                    std::to_string(pubs[ye]));
            committed[p] += c;
            if (committed[p] > r)
                throw SemanticError("plants overcommit publication references in entity " +
                                    plant.citing);
            auto targets = rng::sample_distinct(gen_plant,
                                                static_cast<std::uint32_t>(pubs[ye]),
                                                static_cast<std::uint32_t>(c));
            for (auto t : targets)
                edges.emplace_back(static_cast<PubId>(p),
                                   static_cast<PubId>(start[ye] + t));
            realized.citations += c;
            out_designated += r;
        }
        realized.realized_broadness =
            pubs[xe] == 0 ? 0.0
                          : static_cast<double>(n_cite) / static_cast<double>(pubs[xe]);
        realized.realized_intensity =
            out_designated == 0 ? 0.0
                                : static_cast<double>(realized.citations) /
                                      static_cast<double>(out_designated);
        plants.push_back(std::move(realized));
    }

    // Filler references: uniform over publications of non-excluded entities.
    std::vector<std::int64_t> eligible_count(k, 0);
    for (std::size_t e = 0; e < k; ++e) {
        std::int64_t total = 0;
        for (std::size_t o = 0; o < k; ++o)
            if (!excluded[e][o]) total += pubs[o];
        eligible_count[e] = total;
    }
    std::vector<std::vector<PubId>> pool(k); // built on demand for dense draws

    std::mt19937_64 gen_fill(rng::derive_seed(spec.seed, 4));
    std::vector<PubId> chosen;
    for (std::int64_t p = 0; p < n; ++p) {
        const auto sp = static_cast<std::size_t>(p);
        const std::size_t e = entity_of[sp];
        const std::int64_t need = refs[sp] - committed[sp];
        if (need == 0) continue;
        if (need > eligible_count[e])
            throw SemanticError("entity " + entity_ids[e] + " needs " +
                                std::to_string(need) +
                                " filler references but only " +
                                std::to_string(eligible_count[e]) +
                                " eligible targets exist");
        if (need * 3 >= eligible_count[e] * 2) {
            // Dense draw: sample positions from the explicit eligible pool.
            if (pool[e].empty()) {
                pool[e].reserve(static_cast<std::size_t>(eligible_count[e]));
                for (std::int64_t q = 0; q < n; ++q)
                    if (!excluded[e][entity_of[static_cast<std::size_t>(q)]])
                        pool[e].push_back(static_cast<PubId>(q));
            }
            auto picks = rng::sample_distinct(gen_fill,
                                              static_cast<std::uint32_t>(pool[e].size()),
                                              static_cast<std::uint32_t>(need));
            for (auto idx : picks)
                edges.emplace_back(static_cast<PubId>(p), pool[e][idx]);
            continue;
        }
        chosen.clear();
        while (static_cast<std::int64_t>(chosen.size()) < need) {
            const auto q = static_cast<PubId>(rng::bounded(gen_fill,
                                                           static_cast<std::uint64_t>(n)));
            if (excluded[e][entity_of[q]]) continue;
            if (std::find(chosen.begin(), chosen.end(), q) != chosen.end()) continue;
            chosen.push_back(q);
            edges.emplace_back(static_cast<PubId>(p), q);
        }
    }

    GeneratedCorpus out;
    out.corpus.graph = CitationGraph::from_edges(static_cast<PubId>(n), std::move(edges));

    const int pub_width = std::max(4, digits(*std::max_element(pubs.begin(), pubs.end()) - 1));
    for (std::size_t e = 0; e < k; ++e) {
        EntityDef& def = out.corpus.registry.ensure(entity_ids[e], EntityKind::Discipline);
        def.members.reserve(static_cast<std::size_t>(pubs[e]));
        for (std::int64_t p = start[e]; p < start[e + 1]; ++p) {
            const PubId id = out.corpus.pubs.intern(entity_ids[e] + "-P" +
                                                    padded(p - start[e], pub_width));
            def.members.push_back(id);
        }
    }
    out.corpus.registry.finalize();

    // Realized homogeneity is a property of the finished graph.
    for (auto& plant : plants) {
        const EntityDef& x = out.corpus.registry.at(plant.citing);
        const EntityDef& y = out.corpus.registry.at(plant.cited);
        plant.realized_homogeneity = pair_counts(out.corpus.graph, x, y).homogeneity();
    }
    out.plants = std::move(plants);
    return out;
}

// ============================================================================
// Dense reference oracle
// ============================================================================

DenseMatrix::DenseMatrix(PubId n_pubs) : n_(n_pubs) {
    if (n_ > kMaxPubs)
        throw SemanticError("dense matrix limited to " + std::to_string(kMaxPubs) +
                            " publications, got " + std::to_string(n_));
    m_.assign(std::size_t(n_) * n_, 0);
}

DenseMatrix::DenseMatrix(const CitationGraph& graph) : DenseMatrix(graph.n_pubs()) {
    for (PubId i = 0; i < n_; ++i)
        for (PubId j : graph.references(i)) set(i, j);
}

IkfTriple brute_force_triple(const EntityDef& citing, const EntityDef& target,
                             const DenseMatrix& m) {
    const PubId n = m.size();
    std::vector<std::uint8_t> in_x(n, 0), in_y(n, 0);
    for (PubId p : citing.members) in_x[p] = 1;
    for (PubId p : target.members) in_y[p] = 1;

    // phi[g]: some member of the target cites g. Column scan, by definition.
    std::vector<std::uint8_t> phi(n, 0);
    for (PubId g = 0; g < n; ++g)
        for (PubId j = 0; j < n; ++j)
            if (in_y[j] && m.at(j, g)) {
                phi[g] = 1;
                break;
            }

    IkfTriple t;
    t.n_pubs_citing = static_cast<std::int64_t>(citing.members.size());
    for (PubId i = 0; i < n; ++i) {
        if (!in_x[i]) continue;
        std::int64_t row_total = 0, row_y = 0, row_co = 0;
        for (PubId j = 0; j < n; ++j) {
            if (!m.at(i, j)) continue;
            ++row_total;
            if (in_y[j]) ++row_y;
            if (phi[j]) ++row_co;
        }
        t.out_citations_all += row_total;
        t.co_cited_refs += row_co;
        if (row_y > 0) {
            ++t.n_citing_pubs;
            t.n_citations += row_y;
            t.out_citations_citing_subset += row_total;
        }
    }
    return t;
}

// ============================================================================
// Size-independence sampling harness
// ============================================================================

std::vector<SamplingReport> size_independence_run(const CitationGraph& graph,
                                                  std::span<const EntityDef* const> entities,
                                                  const SizeIndependenceOptions& opt) {
    const std::size_t k = entities.size();
    if (k < (opt.include_self ? 1u : 2u))
        throw SemanticError("size-independence run needs at least two entities");
    if (opt.trials < 1) throw SemanticError("size-independence run needs at least one trial");
    if (opt.fractions.empty()) throw SemanticError("size-independence run needs fractions");
    for (double f : opt.fractions)
        if (!(f > 0.0) || f > 1.0)
            throw SemanticError("subset fraction must be in (0, 1], got " +
                                std::to_string(f));
    if (!(opt.top_percentile > 0.0) || opt.top_percentile > 1.0)
        throw SemanticError("top percentile must be in (0, 1]");
    for (const auto* e : entities)
        for (double f : opt.fractions)
            if (std::llround(f * static_cast<double>(e->size())) < 1)
                throw SemanticError("entity '" + e->id + "' is too small for fraction " +
                                    std::to_string(f));

    std::vector<TargetContext> contexts;
    contexts.reserve(k);
    for (const auto* e : entities) contexts.emplace_back(graph, *e);

    // Full-entity baselines and the restricted target masks.
    struct Baseline {
        std::vector<std::size_t> targets;    // indices into contexts
        std::vector<double> b, i, h;
        std::vector<std::uint8_t> top;       // parallel to targets
    };
    std::vector<Baseline> base(k);
    for (std::size_t x = 0; x < k; ++x) {
        Baseline& bl = base[x];
        for (std::size_t t = 0; t < k; ++t)
            if (opt.include_self || t != x) bl.targets.push_back(t);
        std::vector<std::int64_t> volume(bl.targets.size());
        for (std::size_t pos = 0; pos < bl.targets.size(); ++pos) {
            const IkfTriple triple = pair_counts(graph, *entities[x],
                                                 contexts[bl.targets[pos]]);
            bl.b.push_back(triple.broadness());
            bl.i.push_back(triple.intensity());
            bl.h.push_back(triple.homogeneity());
            volume[pos] = triple.n_citations;
        }
        std::vector<std::size_t> order(bl.targets.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
            if (volume[a] != volume[c]) return volume[a] > volume[c];
            return entities[bl.targets[a]]->id < entities[bl.targets[c]]->id;
        });
        auto keep = static_cast<std::size_t>(std::ceil(
            opt.top_percentile * static_cast<double>(order.size()) - 1e-9));
        keep = std::min(order.size(), std::max<std::size_t>(keep, 1));
        bl.top.assign(bl.targets.size(), 0);
        for (std::size_t i = 0; i < keep; ++i) bl.top[order[i]] = 1;
    }

    static constexpr const char* kIndicator[3] = {"broadness", "intensity", "homogeneity"};
    const std::size_t nf = opt.fractions.size();
    std::vector<SamplingReport> out(k * nf * 3 * 2);

    parallel_for_index(k * nf, opt.jobs, [&](std::size_t cell) {
        const std::size_t x = cell / nf;
        const std::size_t fi = cell % nf;
        const Baseline& bl = base[x];
        const double n_targets = static_cast<double>(bl.targets.size());
        const double n_top = static_cast<double>(
            std::count(bl.top.begin(), bl.top.end(), std::uint8_t{1}));

        // Per-trial mean signed deviation, [indicator][restricted].
        std::vector<std::array<std::array<double, 2>, 3>> trial_means(
            static_cast<std::size_t>(opt.trials));
        for (std::int64_t trial = 0; trial < opt.trials; ++trial) {
            const EntityDef sub = entity_subset(
                *entities[x], opt.fractions[fi],
                rng::derive_seed(opt.seed, x, fi, static_cast<std::uint64_t>(trial)));
            double sum[3][2] = {};
            for (std::size_t pos = 0; pos < bl.targets.size(); ++pos) {
                const IkfTriple triple = pair_counts(graph, sub, contexts[bl.targets[pos]]);
                const double dev[3] = {triple.broadness() - bl.b[pos],
                                       triple.intensity() - bl.i[pos],
                                       triple.homogeneity() - bl.h[pos]};
                for (int ind = 0; ind < 3; ++ind) {
                    sum[ind][0] += dev[ind];
                    if (bl.top[pos]) sum[ind][1] += dev[ind];
                }
            }
            for (int ind = 0; ind < 3; ++ind) {
                trial_means[static_cast<std::size_t>(trial)][ind][0] = sum[ind][0] / n_targets;
                trial_means[static_cast<std::size_t>(trial)][ind][1] = sum[ind][1] / n_top;
            }
        }

        for (int ind = 0; ind < 3; ++ind) {
            for (int restricted = 0; restricted < 2; ++restricted) {
                double mean = 0.0, abs_mean = 0.0;
                for (const auto& tm : trial_means) {
                    mean += tm[ind][restricted];
                    abs_mean += std::abs(tm[ind][restricted]);
                }
                mean /= static_cast<double>(opt.trials);
                abs_mean /= static_cast<double>(opt.trials);
                double ss = 0.0;
                for (const auto& tm : trial_means) {
                    const double d = tm[ind][restricted] - mean;
                    ss += d * d;
                }
                SamplingReport rep;
                rep.entity = entities[x]->id;
                rep.indicator = kIndicator[ind];
                rep.fraction = opt.fractions[fi];
                rep.trials = opt.trials;
                rep.trial_mean = mean;
                rep.trial_sd = std::sqrt(ss / static_cast<double>(opt.trials));
                rep.abs_mean = abs_mean;
                rep.top_decile_only = restricted == 1;
                out[((x * nf + fi) * 3 + static_cast<std::size_t>(ind)) * 2 +
                    static_cast<std::size_t>(restricted)] = std::move(rep);
            }
        }
    });
    return out;
}

// ============================================================================
// Monotonicity suite
// ============================================================================

std::int64_t MonotonicityReport::total_checks() const noexcept {
    std::int64_t s = 0;
    for (const auto& c : checks) s += c.checks;
    return s;
}

std::int64_t MonotonicityReport::total_violations() const noexcept {
    std::int64_t s = 0;
    for (const auto& c : checks) s += c.violations;
    return s;
}

namespace {

// Shared state for edit-based checks on one base graph.
struct EditHarness {
    const CitationGraph& g;
    std::span<const EntityDef* const> entities;
    std::vector<std::pair<PubId, PubId>> base_edges;
    std::mt19937_64 gen;
    std::vector<std::unique_ptr<TargetContext>> contexts;
    std::vector<std::vector<PubId>> cocited; // per entity: pubs it cites

    EditHarness(const CitationGraph& graph, std::span<const EntityDef* const> ents,
                std::uint64_t seed)
        : g(graph), entities(ents), base_edges(edges_of(graph)),
          gen(rng::derive_seed(seed, 7)), contexts(ents.size()),
          cocited(ents.size()) {}

    const TargetContext& context(std::size_t e) {
        if (!contexts[e]) contexts[e] = std::make_unique<TargetContext>(g, *entities[e]);
        return *contexts[e];
    }

    const std::vector<PubId>& cited_by(std::size_t e) {
        if (cocited[e].empty()) {
            const TargetContext& ctx = context(e);
            for (PubId p = 0; p < g.n_pubs(); ++p)
                if (ctx.is_cited_by_target(p)) cocited[e].push_back(p);
        }
        return cocited[e];
    }

    std::pair<std::size_t, std::size_t> pick_pair() {
        const auto k = entities.size();
        const auto x = static_cast<std::size_t>(rng::bounded(gen, k));
        auto y = static_cast<std::size_t>(rng::bounded(gen, k - 1));
        if (y >= x) ++y;
        return {x, y};
    }
};

bool edit_broadness_add_citing(EditHarness& h, bool& violated) {
    auto [xi, yi] = h.pick_pair();
    const EntityDef& x = *h.entities[xi];
    const EntityDef& y = *h.entities[yi];
    const IkfTriple t0 = pair_counts(h.g, x, h.context(yi));
    if (t0.n_citing_pubs == t0.n_pubs_citing) return false; // already saturated

    const PubId added = h.g.n_pubs();
    auto edges = h.base_edges;
    edges.emplace_back(added, y.members[rng::bounded(h.gen, y.members.size())]);
    const auto extras = rng::bounded(h.gen, 4);
    for (std::uint64_t i = 0; i < extras; ++i)
        edges.emplace_back(added, static_cast<PubId>(rng::bounded(h.gen, h.g.n_pubs())));

    const CitationGraph g2 = CitationGraph::from_edges(h.g.n_pubs() + 1, std::move(edges));
    EntityDef x2{x.id, x.kind, x.members};
    x2.members.push_back(added);
    const IkfTriple t1 = pair_counts(g2, x2, TargetContext(g2, y));
    violated = !(t1.n_citing_pubs * t0.n_pubs_citing > t0.n_citing_pubs * t1.n_pubs_citing);
    return true;
}

bool edit_broadness_add_nonciting(EditHarness& h, bool& violated) {
    auto [xi, yi] = h.pick_pair();
    const EntityDef& x = *h.entities[xi];
    const EntityDef& y = *h.entities[yi];
    const TargetContext& ctx = h.context(yi);
    const IkfTriple t0 = pair_counts(h.g, x, ctx);
    if (t0.n_citing_pubs == 0) return false;

    const PubId added = h.g.n_pubs();
    auto edges = h.base_edges;
    const auto extras = rng::bounded(h.gen, 4);
    for (std::uint64_t i = 0; i < extras; ++i) {
        PubId q = 0;
        bool found = false;
        for (int tries = 0; tries < 64; ++tries) {
            q = static_cast<PubId>(rng::bounded(h.gen, h.g.n_pubs()));
            if (!ctx.is_member(q)) {
                found = true;
                break;
            }
        }
        if (found) edges.emplace_back(added, q);
    }

    const CitationGraph g2 = CitationGraph::from_edges(h.g.n_pubs() + 1, std::move(edges));
    EntityDef x2{x.id, x.kind, x.members};
    x2.members.push_back(added);
    const IkfTriple t1 = pair_counts(g2, x2, TargetContext(g2, y));
    violated = !(t1.n_citing_pubs * t0.n_pubs_citing < t0.n_citing_pubs * t1.n_pubs_citing);
    return true;
}

bool edit_intensity_redirect(EditHarness& h, bool& violated) {
    auto [xi, yi] = h.pick_pair();
    const EntityDef& x = *h.entities[xi];
    const EntityDef& y = *h.entities[yi];
    const TargetContext& ctx = h.context(yi);

    std::vector<PubId> candidates;
    for (PubId i : x.members) {
        const auto refs = h.g.references(i);
        std::int64_t hits = 0;
        for (PubId r : refs) hits += ctx.is_member(r);
        if (hits > 0 && hits < static_cast<std::int64_t>(y.size()) &&
            static_cast<std::int64_t>(refs.size()) > hits)
            candidates.push_back(i);
    }
    if (candidates.empty()) return false;
    const PubId i = candidates[rng::bounded(h.gen, candidates.size())];
    const auto refs = h.g.references(i);

    std::vector<PubId> outside;
    for (PubId r : refs)
        if (!ctx.is_member(r)) outside.push_back(r);
    std::vector<PubId> uncited;
    for (PubId j : y.members)
        if (!std::binary_search(refs.begin(), refs.end(), j)) uncited.push_back(j);
    const PubId removed = outside[rng::bounded(h.gen, outside.size())];
    const PubId inserted = uncited[rng::bounded(h.gen, uncited.size())];

    auto edges = h.base_edges;
    auto it = std::find(edges.begin(), edges.end(), std::make_pair(i, removed));
    *it = {i, inserted};
    const CitationGraph g2 = CitationGraph::from_edges(h.g.n_pubs(), std::move(edges));
    const IkfTriple t0 = pair_counts(h.g, x, ctx);
    const IkfTriple t1 = pair_counts(g2, x, TargetContext(g2, y));
    violated = !(t1.n_citations * t0.out_citations_citing_subset >
                 t0.n_citations * t1.out_citations_citing_subset);
    return true;
}

bool edit_homogeneity_redirect(EditHarness& h, bool& violated) {
    auto [xi, yi] = h.pick_pair();
    const EntityDef& x = *h.entities[xi];
    const EntityDef& y = *h.entities[yi];
    const TargetContext& ctx = h.context(yi);
    const auto& pool = h.cited_by(yi);
    if (pool.empty()) return false;

    // A member of X (outside Y) holding a reference the target does not
    // co-cite, plus a co-cited publication it does not reference yet.
    std::vector<PubId> candidates;
    for (PubId i : x.members) {
        if (ctx.is_member(i)) continue;
        for (PubId r : h.g.references(i))
            if (!ctx.is_cited_by_target(r)) {
                candidates.push_back(i);
                break;
            }
    }
    if (candidates.empty()) return false;
    const PubId i = candidates[rng::bounded(h.gen, candidates.size())];
    const auto refs = h.g.references(i);

    std::vector<PubId> stale;
    for (PubId r : refs)
        if (!ctx.is_cited_by_target(r)) stale.push_back(r);
    std::vector<PubId> fresh;
    for (PubId q : pool)
        if (q != i && !std::binary_search(refs.begin(), refs.end(), q)) fresh.push_back(q);
    if (fresh.empty()) return false;

    const PubId removed = stale[rng::bounded(h.gen, stale.size())];
    const PubId inserted = fresh[rng::bounded(h.gen, fresh.size())];

    auto edges = h.base_edges;
    auto it = std::find(edges.begin(), edges.end(), std::make_pair(i, removed));
    *it = {i, inserted};
    const CitationGraph g2 = CitationGraph::from_edges(h.g.n_pubs(), std::move(edges));
    const IkfTriple t0 = pair_counts(h.g, x, ctx);
    const IkfTriple t1 = pair_counts(g2, x, TargetContext(g2, y));
    violated = !(t1.co_cited_refs * t0.out_citations_all >
                 t0.co_cited_refs * t1.out_citations_all);
    return true;
}

} // namespace

MonotonicityReport monotonicity_suite(const CitationGraph& graph,
                                      std::span<const EntityDef* const> entities,
                                      const MonotonicityOptions& opt) {
    if (entities.size() < 2)
        throw SemanticError("monotonicity suite needs at least two entities");
    if (opt.edits_per_property < 1)
        throw SemanticError("monotonicity suite needs at least one edit per property");

    EditHarness harness(graph, entities, opt.seed);
    using EditFn = bool (*)(EditHarness&, bool&);
    static constexpr std::pair<const char*, EditFn> kProperties[] = {
        {"broadness-add-citing", edit_broadness_add_citing},
        {"broadness-add-nonciting", edit_broadness_add_nonciting},
        {"intensity-redirect", edit_intensity_redirect},
        {"homogeneity-redirect", edit_homogeneity_redirect},
    };

    MonotonicityReport report;
    for (const auto& [name, fn] : kProperties) {
        MonotonicityCheck check;
        check.property = name;
        std::int64_t attempts = 0;
        const std::int64_t max_attempts = opt.edits_per_property * 200;
        while (check.checks < opt.edits_per_property && attempts < max_attempts) {
            ++attempts;
            bool violated = false;
            if (!fn(harness, violated)) continue;
            ++check.checks;
            check.violations += violated ? 1 : 0;
        }
        if (check.checks < opt.edits_per_property)
            throw SemanticError(std::string("monotonicity suite could not realize enough '") +
                                name + "' edits on this corpus");
        report.checks.push_back(std::move(check));
    }
    return report;
}

} // namespace citeflow
