#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "citeflow/errors.hpp"
#include "citeflow/indicators.hpp"
#include "citeflow/validate.hpp"

#include "test_util.hpp"

using namespace citeflow;
using testutil::load_fixture;

namespace {

GeneratorSpec base_spec(std::int64_t entities, std::int64_t pubs, std::int64_t refs,
                        std::uint64_t seed) {
    GeneratorSpec spec;
    spec.n_entities = entities;
    spec.pubs_per_entity = {pubs, pubs};
    spec.refs_per_pub = {refs, refs};
    spec.seed = seed;
    return spec;
}

std::vector<const EntityDef*> all_entities(const Corpus& corpus) {
    std::vector<const EntityDef*> out;
    for (const auto& e : corpus.registry.entities()) out.push_back(&e);
    return out;
}

bool registries_equal(const EntityRegistry& a, const EntityRegistry& b) {
    const auto ea = a.entities(), eb = b.entities();
    if (ea.size() != eb.size()) return false;
    for (std::size_t i = 0; i < ea.size(); ++i)
        if (ea[i].id != eb[i].id || ea[i].kind != eb[i].kind ||
            ea[i].members != eb[i].members)
            return false;
    return true;
}

} // namespace

// ============================================================================
// Generator
// ============================================================================

TEST_CASE("the generator is deterministic in its spec") {
    auto spec = base_spec(4, 30, 6, 99);
    spec.planted.push_back({"E00", "E01", 0.5, 0.3});
    const auto a = generate_corpus(spec);
    const auto b = generate_corpus(spec);
    CHECK(a.corpus.graph == b.corpus.graph);
    CHECK(registries_equal(a.corpus.registry, b.corpus.registry));
    REQUIRE(a.corpus.pubs.size() == b.corpus.pubs.size());
    for (PubId p = 0; p < a.corpus.pubs.size(); ++p)
        CHECK(a.corpus.pubs.key(p) == b.corpus.pubs.key(p));
    REQUIRE(a.plants.size() == 1);
    CHECK(a.plants[0].realized_broadness == b.plants[0].realized_broadness);
    CHECK(a.plants[0].realized_homogeneity == b.plants[0].realized_homogeneity);
}

TEST_CASE("different seeds give different graphs") {
    auto spec = base_spec(3, 25, 5, 1);
    const auto a = generate_corpus(spec);
    spec.seed = 2;
    const auto b = generate_corpus(spec);
    CHECK_FALSE(a.corpus.graph == b.corpus.graph);
}

TEST_CASE("a planted pattern is realized exactly") {
    auto spec = base_spec(5, 20, 10, 7);
    spec.planted.push_back({"E00", "E01", 0.8, 0.3});
    const auto gen = generate_corpus(spec);

    REQUIRE(gen.plants.size() == 1);
    const auto& plant = gen.plants[0];
    CHECK(plant.citing_pubs == 16);  // round(0.8 * 20)
    CHECK(plant.citations == 48);    // 16 pubs x round(0.3 * 10)
    CHECK(plant.realized_broadness == 0.8);
    CHECK(plant.realized_intensity == 0.3);

    // The finished graph agrees: filler never touches the planted target, so
    // the pairwise counts reproduce the plant exactly.
    const auto t = pair_counts(gen.corpus.graph, gen.corpus.registry.at("E00"),
                               gen.corpus.registry.at("E01"));
    CHECK(t.n_pubs_citing == 20);
    CHECK(t.n_citing_pubs == plant.citing_pubs);
    CHECK(t.n_citations == plant.citations);
    CHECK(t.broadness() == plant.realized_broadness);
    CHECK(t.intensity() == plant.realized_intensity);
    CHECK(t.homogeneity() == plant.realized_homogeneity);
}

TEST_CASE("a narrow but deep flow pattern comes out as planted") {
    auto spec = base_spec(4, 5, 4, 13);
    spec.planted.push_back({"E00", "E02", 0.2, 0.5});
    const auto gen = generate_corpus(spec);
    const auto t = pair_counts(gen.corpus.graph, gen.corpus.registry.at("E00"),
                               gen.corpus.registry.at("E02"));
    CHECK(t.n_citing_pubs == 1);
    CHECK(t.n_citations == 2);
    CHECK(t.broadness() == 0.2);
    CHECK(t.intensity() == 0.5);
}

TEST_CASE("several plants from one entity stay independent") {
    auto spec = base_spec(4, 40, 10, 31);
    spec.planted.push_back({"E00", "E01", 0.5, 0.2});
    spec.planted.push_back({"E00", "E02", 0.25, 0.3});
    const auto gen = generate_corpus(spec);

    REQUIRE(gen.plants.size() == 2);
    for (const auto& plant : gen.plants) {
        const auto t = pair_counts(gen.corpus.graph, gen.corpus.registry.at(plant.citing),
                                   gen.corpus.registry.at(plant.cited));
        CHECK(t.broadness() == plant.realized_broadness);
        CHECK(t.intensity() == plant.realized_intensity);
        CHECK(t.n_citations == plant.citations);
        CHECK(plant.realized_broadness == plant.target_broadness);
        CHECK(plant.realized_intensity == plant.target_intensity);
    }
}

TEST_CASE("reference counts respect the configured range") {
    GeneratorSpec spec = base_spec(4, 30, 0, 5);
    spec.refs_per_pub = {2, 8};
    const auto gen = generate_corpus(spec);
    const auto& g = gen.corpus.graph;
    for (PubId p = 0; p < g.n_pubs(); ++p) {
        CHECK(g.out_degree(p) >= 2);
        CHECK(g.out_degree(p) <= 8);
        for (PubId r : g.references(p)) CHECK(r != p);
    }
    CHECK(g.dropped_self_loops() == 0);
    CHECK(g.duplicate_edges() == 0);
}

TEST_CASE("entities never cite themselves in generated corpora") {
    const auto gen = generate_corpus(base_spec(3, 20, 5, 8));
    for (const auto& e : gen.corpus.registry.entities())
        for (PubId p : e.members)
            for (PubId r : gen.corpus.graph.references(p)) CHECK_FALSE(e.contains(r));
}

TEST_CASE("unrealizable specs are rejected") {
    SUBCASE("plant needs more distinct targets than the cited entity holds") {
        auto spec = base_spec(2, 3, 10, 1);
        spec.planted.push_back({"E00", "E01", 1.0, 1.0});
        CHECK_THROWS_WITH_AS(generate_corpus(spec), doctest::Contains("distinct targets"),
                             SemanticError);
    }
    SUBCASE("two plants overcommit the reference budget") {
        auto spec = base_spec(3, 20, 10, 1);
        spec.planted.push_back({"E00", "E01", 1.0, 1.0});
        spec.planted.push_back({"E00", "E02", 1.0, 1.0});
        CHECK_THROWS_WITH_AS(generate_corpus(spec), doctest::Contains("overcommit"),
                             SemanticError);
    }
    SUBCASE("filler pool smaller than the reference count") {
        CHECK_THROWS_WITH_AS(generate_corpus(base_spec(2, 5, 20, 1)),
                             doctest::Contains("filler"), SemanticError);
    }
    SUBCASE("plant on a publication without references") {
        auto spec = base_spec(2, 5, 0, 1);
        spec.planted.push_back({"E00", "E01", 1.0, 0.5});
        CHECK_THROWS_WITH_AS(generate_corpus(spec), doctest::Contains("no references"),
                             SemanticError);
    }
    SUBCASE("unknown plant entity") {
        auto spec = base_spec(2, 5, 2, 1);
        spec.planted.push_back({"E00", "E99", 0.5, 0.5});
        CHECK_THROWS_WITH_AS(generate_corpus(spec), doctest::Contains("unknown entity"),
                             SemanticError);
    }
    SUBCASE("plant onto itself") {
        auto spec = base_spec(2, 5, 2, 1);
        spec.planted.push_back({"E00", "E00", 0.5, 0.5});
        CHECK_THROWS_WITH_AS(generate_corpus(spec), doctest::Contains("must differ"),
                             SemanticError);
    }
    SUBCASE("duplicate plant") {
        auto spec = base_spec(3, 20, 10, 1);
        spec.planted.push_back({"E00", "E01", 0.2, 0.2});
        spec.planted.push_back({"E00", "E01", 0.4, 0.2});
        CHECK_THROWS_WITH_AS(generate_corpus(spec), doctest::Contains("duplicate plant"),
                             SemanticError);
    }
    SUBCASE("plant levels outside the unit interval") {
        auto spec = base_spec(2, 5, 2, 1);
        spec.planted.push_back({"E00", "E01", 1.5, 0.5});
        CHECK_THROWS_WITH_AS(generate_corpus(spec), doctest::Contains("[0, 1]"),
                             SemanticError);
    }
    SUBCASE("invalid ranges") {
        auto spec = base_spec(2, 5, 2, 1);
        spec.pubs_per_entity = {0, 5};
        CHECK_THROWS_AS(generate_corpus(spec), SemanticError);
        spec = base_spec(2, 5, 2, 1);
        spec.refs_per_pub = {6, 2};
        CHECK_THROWS_AS(generate_corpus(spec), SemanticError);
        spec = base_spec(0, 5, 2, 1);
        CHECK_THROWS_AS(generate_corpus(spec), SemanticError);
    }
}

// ============================================================================
// Dense oracle
// ============================================================================

TEST_CASE("the dense oracle reproduces the fixture counts") {
    const auto corpus = load_fixture("flow_two_fields");
    const DenseMatrix m(corpus.graph);
    const auto t = brute_force_triple(corpus.registry.at("A"), corpus.registry.at("B"), m);
    CHECK(t.n_pubs_citing == 5);
    CHECK(t.n_citing_pubs == 4);
    CHECK(t.n_citations == 5);
    CHECK(t.out_citations_all == 50);
    CHECK(t.out_citations_citing_subset == 40);
    CHECK(t.co_cited_refs == 0);
    CHECK(t == pair_counts(corpus.graph, corpus.registry.at("A"), corpus.registry.at("B")));
}

TEST_CASE("the dense oracle sees a fully shared knowledge base") {
    const auto corpus = load_fixture("identical_bases");
    const DenseMatrix m(corpus.graph);
    const auto t = brute_force_triple(corpus.registry.at("A"), corpus.registry.at("B"), m);
    CHECK(t.co_cited_refs == t.out_citations_all);
    CHECK(t.homogeneity() == 1.0);
}

TEST_CASE("the dense oracle agrees with the sparse path on a planted corpus") {
    auto spec = base_spec(4, 25, 6, 44);
    spec.planted.push_back({"E01", "E03", 0.4, 0.5});
    const auto gen = generate_corpus(spec);
    const DenseMatrix m(gen.corpus.graph);
    for (const auto& x : gen.corpus.registry.entities())
        for (const auto& y : gen.corpus.registry.entities())
            CHECK(brute_force_triple(x, y, m) == pair_counts(gen.corpus.graph, x, y));
}

TEST_CASE("the dense oracle refuses oversized graphs") {
    const auto g = CitationGraph::from_edges(DenseMatrix::kMaxPubs + 1, {});
    CHECK_THROWS_AS(DenseMatrix{g}, SemanticError);
}

// ============================================================================
// Size-independence harness
// ============================================================================

TEST_CASE("full-entity subsets deviate by exactly zero") {
    const auto gen = generate_corpus(base_spec(6, 40, 6, 17));
    const auto entities = all_entities(gen.corpus);
    SizeIndependenceOptions opt;
    opt.fractions = {0.5, 1.0};
    opt.trials = 4;
    opt.seed = 9;
    const auto reports = size_independence_run(gen.corpus.graph, entities, opt);
    REQUIRE(reports.size() == 6 * 2 * 3 * 2);

    // Entity-major ordering with fraction, indicator, restriction inside.
    CHECK(reports[0].entity == "E00");
    CHECK(reports[0].fraction == 0.5);
    CHECK(reports[0].indicator == "broadness");
    CHECK_FALSE(reports[0].top_decile_only);
    CHECK(reports[1].top_decile_only);
    CHECK(reports[2].indicator == "intensity");
    CHECK(reports[4].indicator == "homogeneity");
    CHECK(reports[6].fraction == 1.0);
    CHECK(reports[12].entity == "E01");

    for (const auto& r : reports) {
        CHECK(r.trials == 4);
        if (r.fraction == 1.0) {
            CHECK(r.trial_mean == 0.0);
            CHECK(r.trial_sd == 0.0);
            CHECK(r.abs_mean == 0.0);
        }
    }
}

TEST_CASE("the harness is deterministic and jobs-invariant") {
    const auto gen = generate_corpus(base_spec(5, 30, 5, 12));
    const auto entities = all_entities(gen.corpus);
    SizeIndependenceOptions opt;
    opt.fractions = {0.3, 0.7};
    opt.trials = 3;
    opt.seed = 21;
    const auto a = size_independence_run(gen.corpus.graph, entities, opt);
    opt.jobs = 3;
    const auto b = size_independence_run(gen.corpus.graph, entities, opt);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].entity == b[i].entity);
        CHECK(a[i].indicator == b[i].indicator);
        CHECK(a[i].fraction == b[i].fraction);
        CHECK(a[i].trial_mean == b[i].trial_mean);
        CHECK(a[i].trial_sd == b[i].trial_sd);
        CHECK(a[i].abs_mean == b[i].abs_mean);
        CHECK(a[i].top_decile_only == b[i].top_decile_only);
    }
}

TEST_CASE("small subsets scatter more than large ones") {
    const auto gen = generate_corpus(base_spec(8, 100, 8, 3));
    const auto entities = all_entities(gen.corpus);
    SizeIndependenceOptions opt;
    opt.fractions = {0.1, 0.9};
    opt.trials = 6;
    opt.seed = 2;
    const auto reports = size_independence_run(gen.corpus.graph, entities, opt);

    double sd_small = 0, sd_large = 0, abs_small = 0, abs_large = 0;
    for (const auto& r : reports) {
        if (r.top_decile_only) continue;
        (r.fraction == 0.1 ? sd_small : sd_large) += r.trial_sd;
        (r.fraction == 0.1 ? abs_small : abs_large) += r.abs_mean;
    }
    CHECK(sd_small > sd_large);
    CHECK(abs_small > abs_large);
}

TEST_CASE("a single entity works only when it may target itself") {
    const auto gen = generate_corpus(base_spec(2, 20, 4, 5));
    const std::vector<const EntityDef*> one{&gen.corpus.registry.at("E00")};
    SizeIndependenceOptions opt;
    opt.fractions = {0.5};
    opt.trials = 2;
    CHECK_THROWS_AS(size_independence_run(gen.corpus.graph, one, opt), SemanticError);
    opt.include_self = true;
    const auto reports = size_independence_run(gen.corpus.graph, one, opt);
    CHECK(reports.size() == 6);
}

TEST_CASE("invalid sampling options are rejected") {
    const auto gen = generate_corpus(base_spec(3, 4, 2, 5));
    const auto entities = all_entities(gen.corpus);
    SizeIndependenceOptions opt;
    opt.trials = 2;
    SUBCASE("entity too small for the fraction") {
        opt.fractions = {0.1}; // round(0.4) members
        CHECK_THROWS_AS(size_independence_run(gen.corpus.graph, entities, opt),
                        SemanticError);
    }
    SUBCASE("fraction outside the unit interval") {
        opt.fractions = {1.5};
        CHECK_THROWS_AS(size_independence_run(gen.corpus.graph, entities, opt),
                        SemanticError);
        opt.fractions = {0.0};
        CHECK_THROWS_AS(size_independence_run(gen.corpus.graph, entities, opt),
                        SemanticError);
    }
    SUBCASE("no trials or no fractions") {
        opt.fractions = {0.5};
        opt.trials = 0;
        CHECK_THROWS_AS(size_independence_run(gen.corpus.graph, entities, opt),
                        SemanticError);
        opt.trials = 2;
        opt.fractions.clear();
        CHECK_THROWS_AS(size_independence_run(gen.corpus.graph, entities, opt),
                        SemanticError);
    }
    SUBCASE("bad top percentile") {
        opt.fractions = {0.5};
        opt.top_percentile = 0.0;
        CHECK_THROWS_AS(size_independence_run(gen.corpus.graph, entities, opt),
                        SemanticError);
    }
}

// ============================================================================
// Monotonicity suite
// ============================================================================

TEST_CASE("single edits move the indicators the way they must") {
    GeneratorSpec spec = base_spec(5, 40, 0, 21);
    spec.refs_per_pub = {2, 8};
    const auto gen = generate_corpus(spec);
    const auto entities = all_entities(gen.corpus);

    MonotonicityOptions opt;
    opt.edits_per_property = 50;
    opt.seed = 2;
    const auto report = monotonicity_suite(gen.corpus.graph, entities, opt);

    REQUIRE(report.checks.size() == 4);
    CHECK(report.checks[0].property == "broadness-add-citing");
    CHECK(report.checks[1].property == "broadness-add-nonciting");
    CHECK(report.checks[2].property == "intensity-redirect");
    CHECK(report.checks[3].property == "homogeneity-redirect");
    for (const auto& c : report.checks) {
        CHECK(c.checks == 50);
        CHECK(c.violations == 0);
    }
    CHECK(report.total_checks() == 200);
    CHECK(report.total_violations() == 0);
    CHECK(report.passed());
}

TEST_CASE("the monotonicity suite validates its inputs") {
    const auto gen = generate_corpus(base_spec(2, 10, 3, 1));
    const std::vector<const EntityDef*> one{&gen.corpus.registry.at("E00")};
    MonotonicityOptions opt;
    CHECK_THROWS_AS(monotonicity_suite(gen.corpus.graph, one, opt), SemanticError);
    const auto entities = all_entities(gen.corpus);
    opt.edits_per_property = 0;
    CHECK_THROWS_AS(monotonicity_suite(gen.corpus.graph, entities, opt), SemanticError);
}
