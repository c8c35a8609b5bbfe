#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace citeflow {

// Dense surrogate id assigned in first-appearance order of the membership
// file. External string keys live in PubTable.
using PubId = std::uint32_t;

// ============================================================================
// Entities
// ============================================================================

enum class EntityKind { Discipline, Journal, Custom };

const char* to_string(EntityKind kind) noexcept;
std::optional<EntityKind> entity_kind_from_string(std::string_view text) noexcept;

// A named publication set. Members are sorted and distinct.
struct EntityDef {
    std::string id;
    EntityKind kind = EntityKind::Custom;
    std::vector<PubId> members;

    std::size_t size() const noexcept { return members.size(); }
    bool contains(PubId p) const noexcept;
};

// Whether publications of a kind map to exactly one entity or may map to
// several (disciplines are often overlapping, journals usually are not).
enum class AssignmentMode { Single, Multiple };

class EntityRegistry {
public:
    // Returns the entity named `id`, creating it when new. Re-declaring an
    // existing entity with a different kind is rejected by the caller side
    // (find_kind lets ingest detect the conflict with a line number).
    EntityDef& ensure(std::string_view id, EntityKind kind);

    const EntityDef* find(std::string_view id) const noexcept;
    // Lookup that throws SemanticError when the entity does not exist.
    const EntityDef& at(std::string_view id) const;

    std::span<const EntityDef> entities() const noexcept { return defs_; }
    std::span<EntityDef> entities() noexcept { return defs_; }
    std::vector<const EntityDef*> of_kind(EntityKind kind) const;

    // Sorts and dedups member lists; call once after population.
    void finalize();

    // Over publications holding at least one membership of this kind.
    AssignmentMode assignment_mode(EntityKind kind, PubId n_pubs) const;

private:
    std::vector<EntityDef> defs_;
    std::unordered_map<std::string, std::size_t> index_;
};

// ============================================================================
// Citation graph
// ============================================================================

// Immutable binary citation graph in CSR form, forward and reverse. Edges are
// deduplicated (the matrix is 0/1) and self-loops are dropped; both events
// are counted. The reverse adjacency is the exact transpose of the forward.
class CitationGraph {
public:
    CitationGraph() = default;

    // Builds from (citing, cited) pairs; ids must be < n_pubs.
    static CitationGraph from_edges(PubId n_pubs,
                                    std::vector<std::pair<PubId, PubId>> edges);

    PubId n_pubs() const noexcept { return n_; }
    std::int64_t n_edges() const noexcept {
        return static_cast<std::int64_t>(fwd_.size());
    }

    // Distinct publications cited by i, ascending.
    std::span<const PubId> references(PubId i) const noexcept {
        return {fwd_.data() + fwd_off_[i], fwd_.data() + fwd_off_[i + 1]};
    }
    // Distinct publications citing i, ascending.
    std::span<const PubId> citers(PubId i) const noexcept {
        return {rev_.data() + rev_off_[i], rev_.data() + rev_off_[i + 1]};
    }
    std::int64_t out_degree(PubId i) const noexcept {
        return fwd_off_[i + 1] - fwd_off_[i];
    }
    std::int64_t in_degree(PubId i) const noexcept {
        return rev_off_[i + 1] - rev_off_[i];
    }

    std::int64_t dropped_self_loops() const noexcept { return self_loops_; }
    std::int64_t duplicate_edges() const noexcept { return duplicates_; }

    friend bool operator==(const CitationGraph& a, const CitationGraph& b) {
        return a.n_ == b.n_ && a.fwd_off_ == b.fwd_off_ && a.fwd_ == b.fwd_;
    }

private:
    PubId n_ = 0;
    std::vector<std::int64_t> fwd_off_{0};
    std::vector<std::int64_t> rev_off_{0};
    std::vector<PubId> fwd_;
    std::vector<PubId> rev_;
    std::int64_t self_loops_ = 0;
    std::int64_t duplicates_ = 0;
};

// All stored edges as (citing, cited) pairs, sorted. Inverse of from_edges.
std::vector<std::pair<PubId, PubId>> edges_of(const CitationGraph& g);

// ============================================================================
// Publication key table
// ============================================================================

class PubTable {
public:
    PubId intern(std::string_view key);
    std::optional<PubId> find(std::string_view key) const noexcept;
    const std::string& key(PubId p) const { return keys_[p]; }
    PubId size() const noexcept { return static_cast<PubId>(keys_.size()); }

private:
    std::vector<std::string> keys_;
    std::unordered_map<std::string, PubId> index_;
};

// ============================================================================
// Corpus ingest / export
// ============================================================================

struct IngestOptions {
    char delimiter = ',';
};

struct Corpus {
    CitationGraph graph;
    EntityRegistry registry;
    PubTable pubs;

    // Edge records pointing outside the membership-defined universe.
    std::int64_t dropped_refs = 0;    // cited id unknown
    std::int64_t dropped_citing = 0;  // citing id unknown

    // Share of reference records whose target is inside the corpus.
    double coverage() const noexcept;
};

// Reads the membership table first (it defines the publication universe and
// the entities), then the edge list. Records referencing publications outside
// the universe are dropped and counted, never invented.
//
// Formats: delimited text, one record per line, `#` starts a comment line.
//   membership header: pub_id<delim>entity_id[<delim>kind]
//   edge header:       citing_id<delim>cited_id
// kind is one of discipline|journal|custom and defaults to discipline.
Corpus ingest_corpus(std::istream& edges, std::istream& membership,
                     const IngestOptions& opt = {});
Corpus ingest_corpus_files(const std::string& edges_path,
                           const std::string& membership_path,
                           const IngestOptions& opt = {});

// Writes the corpus back out in the ingest format; re-ingesting the result
// reproduces the graph and registry exactly.
void export_corpus(const Corpus& corpus, std::ostream& edges,
                   std::ostream& membership, char delimiter = ',');
void export_corpus_files(const Corpus& corpus, const std::string& edges_path,
                         const std::string& membership_path, char delimiter = ',');

// Uniform random subset with round(fraction * size) members, kind Custom,
// same id. Deterministic in (entity, fraction, seed). Throws SemanticError
// when the rounded size is zero or the fraction is outside (0, 1].
EntityDef entity_subset(const EntityDef& entity, double fraction, std::uint64_t seed);

} // namespace citeflow
