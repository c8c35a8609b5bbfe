#include "citeflow/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>

#include "citeflow/errors.hpp"
#include "citeflow/io.hpp"
#include "citeflow/rng.hpp"

namespace citeflow {

// ============================================================================
// Entities
// ============================================================================

const char* to_string(EntityKind kind) noexcept {
    switch (kind) {
        case EntityKind::Discipline: return "discipline";
        case EntityKind::Journal: return "journal";
        case EntityKind::Custom: return "custom";
    }
    return "custom";
}

std::optional<EntityKind> entity_kind_from_string(std::string_view text) noexcept {
    if (text == "discipline") return EntityKind::Discipline;
    if (text == "journal") return EntityKind::Journal;
    if (text == "custom") return EntityKind::Custom;
    return std::nullopt;
}

bool EntityDef::contains(PubId p) const noexcept {
    return std::binary_search(members.begin(), members.end(), p);
}

EntityDef& EntityRegistry::ensure(std::string_view id, EntityKind kind) {
    auto it = index_.find(std::string(id));
    if (it != index_.end()) return defs_[it->second];
    index_.emplace(std::string(id), defs_.size());
    defs_.push_back(EntityDef{std::string(id), kind, {}});
    return defs_.back();
}

const EntityDef* EntityRegistry::find(std::string_view id) const noexcept {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &defs_[it->second];
}

const EntityDef& EntityRegistry::at(std::string_view id) const {
    const EntityDef* e = find(id);
    if (!e) throw SemanticError("unknown entity: " + std::string(id));
    return *e;
}

std::vector<const EntityDef*> EntityRegistry::of_kind(EntityKind kind) const {
    std::vector<const EntityDef*> out;
    for (const auto& e : defs_)
        if (e.kind == kind) out.push_back(&e);
    return out;
}

void EntityRegistry::finalize() {
    for (auto& e : defs_) {
        std::sort(e.members.begin(), e.members.end());
        e.members.erase(std::unique(e.members.begin(), e.members.end()), e.members.end());
        if (e.members.empty())
            throw SemanticError("entity without members: " + e.id);
    }
}

AssignmentMode EntityRegistry::assignment_mode(EntityKind kind, PubId n_pubs) const {
    std::vector<std::uint8_t> seen(n_pubs, 0);
    for (const auto& e : defs_) {
        if (e.kind != kind) continue;
        for (PubId p : e.members) {
            if (seen[p]) return AssignmentMode::Multiple;
            seen[p] = 1;
        }
    }
    return AssignmentMode::Single;
}

// ============================================================================
// Citation graph
// ============================================================================

CitationGraph CitationGraph::from_edges(PubId n_pubs,
                                        std::vector<std::pair<PubId, PubId>> edges) {
    CitationGraph g;
    g.n_ = n_pubs;

    std::int64_t self_loops = 0;
    auto keep = edges.begin();
    for (auto it = edges.begin(); it != edges.end(); ++it) {
        if (it->first >= n_pubs || it->second >= n_pubs)
            throw SemanticError("edge references publication id outside the corpus");
        if (it->first == it->second) {
            ++self_loops;
            continue;
        }
        *keep++ = *it;
    }
    edges.erase(keep, edges.end());

    std::sort(edges.begin(), edges.end());
    const auto before = edges.size();
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.self_loops_ = self_loops;
    g.duplicates_ = static_cast<std::int64_t>(before - edges.size());

    g.fwd_off_.assign(std::size_t(n_pubs) + 1, 0);
    for (const auto& e : edges) g.fwd_off_[e.first + 1]++;
    for (PubId i = 0; i < n_pubs; ++i) g.fwd_off_[i + 1] += g.fwd_off_[i];
    g.fwd_.resize(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) g.fwd_[k] = edges[k].second;

    // Transpose: iterating sorted edges keeps the reverse rows ascending.
    g.rev_off_.assign(std::size_t(n_pubs) + 1, 0);
    for (const auto& e : edges) g.rev_off_[e.second + 1]++;
    for (PubId i = 0; i < n_pubs; ++i) g.rev_off_[i + 1] += g.rev_off_[i];
    g.rev_.resize(edges.size());
    std::vector<std::int64_t> cursor(g.rev_off_.begin(), g.rev_off_.end() - 1);
    for (const auto& e : edges) g.rev_[cursor[e.second]++] = e.first;

    return g;
}

std::vector<std::pair<PubId, PubId>> edges_of(const CitationGraph& g) {
    std::vector<std::pair<PubId, PubId>> out;
    out.reserve(static_cast<std::size_t>(g.n_edges()));
    for (PubId i = 0; i < g.n_pubs(); ++i)
        for (PubId j : g.references(i)) out.emplace_back(i, j);
    return out;
}

// ============================================================================
// Publication key table
// ============================================================================

PubId PubTable::intern(std::string_view key) {
    auto it = index_.find(std::string(key));
    if (it != index_.end()) return it->second;
    const PubId id = static_cast<PubId>(keys_.size());
    keys_.emplace_back(key);
    index_.emplace(keys_.back(), id);
    return id;
}

std::optional<PubId> PubTable::find(std::string_view key) const noexcept {
    auto it = index_.find(std::string(key));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

// ============================================================================
// Ingest
// ============================================================================

double Corpus::coverage() const noexcept {
    const double stored = static_cast<double>(graph.n_edges() + graph.duplicate_edges() +
                                              graph.dropped_self_loops());
    const double total = stored + static_cast<double>(dropped_refs);
    return total == 0.0 ? 1.0 : stored / total;
}

namespace {

void expect_header(const DelimitedRecord& rec, std::span<const std::string_view> required,
                   std::size_t max_fields, const char* what) {
    if (rec.fields.size() < required.size() || rec.fields.size() > max_fields)
        throw ParseError(std::string("bad ") + what + " header: wrong field count", rec.line);
    for (std::size_t i = 0; i < required.size(); ++i)
        if (rec.fields[i] != required[i])
            throw ParseError(std::string("bad ") + what + " header: expected field '" +
                                 std::string(required[i]) + "', got '" +
                                 std::string(rec.fields[i]) + "'",
                             rec.line);
}

} // namespace

Corpus ingest_corpus(std::istream& edges, std::istream& membership,
                     const IngestOptions& opt) {
    Corpus c;

    // Membership defines the publication universe.
    DelimitedReader mr(membership, opt.delimiter);
    DelimitedRecord rec;
    if (!mr.next(rec)) throw ParseError("membership input is empty");
    static constexpr std::string_view kMemberHeader[] = {"pub_id", "entity_id"};
    expect_header(rec, kMemberHeader, 3, "membership");
    const bool has_kind = rec.fields.size() == 3;
    if (has_kind && rec.fields[2] != "kind")
        throw ParseError("bad membership header: expected field 'kind', got '" +
                             std::string(rec.fields[2]) + "'",
                         rec.line);
    const std::size_t member_fields = rec.fields.size();

    std::int64_t member_rows = 0;
    while (mr.next(rec)) {
        if (rec.fields.size() != member_fields)
            throw ParseError("membership record has " + std::to_string(rec.fields.size()) +
                                 " fields, expected " + std::to_string(member_fields),
                             rec.line);
        if (rec.fields[0].empty() || rec.fields[1].empty())
            throw ParseError("membership record with empty id", rec.line);
        EntityKind kind = EntityKind::Discipline;
        if (has_kind && !rec.fields[2].empty()) {
            auto parsed = entity_kind_from_string(rec.fields[2]);
            if (!parsed)
                throw ParseError("unknown entity kind '" + std::string(rec.fields[2]) + "'",
                                 rec.line);
            kind = *parsed;
        }
        const PubId p = c.pubs.intern(rec.fields[0]);
        const EntityDef* existing = c.registry.find(rec.fields[1]);
        if (existing && existing->kind != kind)
            throw ParseError("entity '" + std::string(rec.fields[1]) +
                                 "' re-declared with kind '" + to_string(kind) + "', was '" +
                                 to_string(existing->kind) + "'",
                             rec.line);
        c.registry.ensure(rec.fields[1], kind).members.push_back(p);
        ++member_rows;
    }
    if (member_rows == 0) throw SemanticError("empty corpus: no membership records");
    c.registry.finalize();

    // Edge list against the fixed universe.
    DelimitedReader er(edges, opt.delimiter);
    if (!er.next(rec)) throw ParseError("edge input is empty");
    static constexpr std::string_view kEdgeHeader[] = {"citing_id", "cited_id"};
    expect_header(rec, kEdgeHeader, 2, "edge");

    std::vector<std::pair<PubId, PubId>> pairs;
    while (er.next(rec)) {
        if (rec.fields.size() != 2)
            throw ParseError("edge record has " + std::to_string(rec.fields.size()) +
                                 " fields, expected 2",
                             rec.line);
        if (rec.fields[0].empty() || rec.fields[1].empty())
            throw ParseError("edge record with empty id", rec.line);
        const auto citing = c.pubs.find(rec.fields[0]);
        if (!citing) {
            ++c.dropped_citing;
            continue;
        }
        const auto cited = c.pubs.find(rec.fields[1]);
        if (!cited) {
            ++c.dropped_refs;
            continue;
        }
        pairs.emplace_back(*citing, *cited);
    }
    c.graph = CitationGraph::from_edges(c.pubs.size(), std::move(pairs));
    return c;
}

Corpus ingest_corpus_files(const std::string& edges_path,
                           const std::string& membership_path,
                           const IngestOptions& opt) {
    std::ifstream edges(edges_path);
    if (!edges) throw ParseError("cannot open edge file: " + edges_path);
    std::ifstream membership(membership_path);
    if (!membership) throw ParseError("cannot open membership file: " + membership_path);
    return ingest_corpus(edges, membership, opt);
}

// ============================================================================
// Export
// ============================================================================

void export_corpus(const Corpus& corpus, std::ostream& edges,
                   std::ostream& membership, char delimiter) {
    membership << "pub_id" << delimiter << "entity_id" << delimiter << "kind\n";
    for (const auto& e : corpus.registry.entities())
        for (PubId p : e.members)
            membership << corpus.pubs.key(p) << delimiter << e.id << delimiter
                       << to_string(e.kind) << '\n';

    edges << "citing_id" << delimiter << "cited_id\n";
    for (PubId i = 0; i < corpus.graph.n_pubs(); ++i)
        for (PubId j : corpus.graph.references(i))
            edges << corpus.pubs.key(i) << delimiter << corpus.pubs.key(j) << '\n';
}

void export_corpus_files(const Corpus& corpus, const std::string& edges_path,
                         const std::string& membership_path, char delimiter) {
    std::ofstream edges(edges_path);
    if (!edges) throw ParseError("cannot open edge file for writing: " + edges_path);
    std::ofstream membership(membership_path);
    if (!membership)
        throw ParseError("cannot open membership file for writing: " + membership_path);
    export_corpus(corpus, edges, membership, delimiter);
}

// ============================================================================
// Subsets
// ============================================================================

EntityDef entity_subset(const EntityDef& entity, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw SemanticError("subset fraction must be in (0, 1], got " +
                            std::to_string(fraction));
    const auto n = static_cast<std::uint32_t>(entity.members.size());
    auto m = static_cast<std::int64_t>(std::llround(fraction * static_cast<double>(n)));
    if (m < 1)
        throw SemanticError("subset of entity '" + entity.id + "' at fraction " +
                            std::to_string(fraction) + " rounds to zero members");
    if (m > n) m = n;

    std::mt19937_64 gen(rng::mix(seed));
    auto picks = rng::sample_distinct(gen, n, static_cast<std::uint32_t>(m));
    EntityDef out{entity.id, EntityKind::Custom, {}};
    out.members.reserve(picks.size());
    for (auto idx : picks) out.members.push_back(entity.members[idx]);
    std::sort(out.members.begin(), out.members.end());
    return out;
}

} // namespace citeflow
