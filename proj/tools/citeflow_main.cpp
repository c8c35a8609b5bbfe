// Command-line front end: six subcommands over the citeflow library.
// Exit codes: 0 success, 2 parse/input errors, 3 semantic errors.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "citeflow/analysis.hpp"
#include "citeflow/benchmark.hpp"
#include "citeflow/corpus.hpp"
#include "citeflow/diversity.hpp"
#include "citeflow/errors.hpp"
#include "citeflow/indicators.hpp"
#include "citeflow/io.hpp"
#include "citeflow/validate.hpp"

namespace {

using namespace citeflow;

char parse_delimiter(const std::string& s) {
    if (s.size() == 1) return s[0];
    if (s == "\\t" || s == "tab") return '\t';
    throw ParseError("delimiter must be a single character (or '\\t' / 'tab')");
}

std::vector<const EntityDef*> filter_entities(const EntityRegistry& registry,
                                              const std::string& kind) {
    std::vector<const EntityDef*> out;
    if (kind == "any") {
        for (const auto& e : registry.entities()) out.push_back(&e);
    } else {
        const auto parsed = entity_kind_from_string(kind);
        if (!parsed) throw SemanticError("unknown entity kind filter: " + kind);
        out = registry.of_kind(*parsed);
    }
    std::sort(out.begin(), out.end(),
              [](const EntityDef* a, const EntityDef* b) { return a->id < b->id; });
    return out;
}

void write_to(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream f(path);
    if (!f) throw ParseError("cannot open output file: " + path);
    fn(f);
    f.flush();
    if (!f) throw ParseError("failed while writing output file: " + path);
}

std::vector<double> parse_fraction_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto next = text.find(',', pos);
        const auto token = text.substr(pos, next == std::string::npos ? std::string::npos
                                                                      : next - pos);
        if (token.empty()) throw ParseError("empty entry in fraction list");
        try {
            std::size_t used = 0;
            out.push_back(std::stod(token, &used));
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw ParseError("bad fraction '" + token + "'");
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (out.empty()) throw ParseError("fraction list is empty");
    return out;
}

// ============================================================================
// compute
// ============================================================================

struct ComputeOpts {
    std::string edges, membership;
    std::string delimiter = ",";
    std::string out = "-";
    std::string format = "csv";
    std::string target_kind = "any";
    std::string profiles_path;
    bool include_self = false;
    unsigned jobs = 1;
};

void run_compute(const ComputeOpts& o) {
    const char delim = parse_delimiter(o.delimiter);
    const Corpus corpus = ingest_corpus_files(o.edges, o.membership, {delim});
    const auto citings = filter_entities(corpus.registry, "any");
    const auto targets = filter_entities(corpus.registry, o.target_kind);
    if (targets.empty()) {
        std::cerr << "warning: no entities of kind '" << o.target_kind
                  << "'; writing an empty table\n";
        write_to(o.out, [&](std::ostream& os) { write_pair_table(os, {}, delim); });
        return;
    }
    const IkfOptions opt{!o.include_self, false};
    const auto profiles = profile_matrix(corpus.graph, citings, targets, opt, o.jobs);
    if (o.format == "json")
        write_to(o.out, [&](std::ostream& os) { write_profiles_json(os, profiles); });
    else
        write_to(o.out, [&](std::ostream& os) { write_pair_table(os, profiles, delim); });
    if (!o.profiles_path.empty())
        write_to(o.profiles_path,
                 [&](std::ostream& os) { write_profiles_json(os, profiles); });
}

// ============================================================================
// relative
// ============================================================================

struct RelativeOpts {
    std::string edges, membership;
    std::string delimiter = ",";
    std::string out = "-";
    std::string format = "csv";
    std::string target_kind = "any";
    std::string focal, benchmark;
    std::string stddev = "population";
};

void run_relative(const RelativeOpts& o) {
    const char delim = parse_delimiter(o.delimiter);
    const Corpus corpus = ingest_corpus_files(o.edges, o.membership, {delim});
    const EntityDef& focal = corpus.registry.at(o.focal);
    const EntityDef& benchmark = corpus.registry.at(o.benchmark);

    auto targets = filter_entities(corpus.registry, o.target_kind);
    std::erase_if(targets, [&](const EntityDef* e) {
        return e->id == focal.id || e->id == benchmark.id;
    });
    RelativeProfile rel;
    rel.focal = focal.id;
    rel.benchmark = benchmark.id;
    double scat = std::nan("");
    if (targets.empty()) {
        std::cerr << "warning: no targets left after removing focal and benchmark; "
                     "writing an empty table\n";
    } else {
        const IkfOptions opt{false, false};
        rel = relative_profile(profile(corpus.graph, focal, targets, opt),
                               profile(corpus.graph, benchmark, targets, opt));
        if (rel.rows.size() >= 2)
            scat = scattering(rel, o.stddev == "sample" ? StdDevMode::Sample
                                                        : StdDevMode::Population);
    }
    if (o.format == "json")
        write_to(o.out, [&](std::ostream& os) { write_relative_json(os, rel, scat); });
    else
        write_to(o.out, [&](std::ostream& os) { write_relative_csv(os, rel, scat, delim); });
}

// ============================================================================
// analyze
// ============================================================================

struct AnalyzeOpts {
    std::string pairs;
    std::string delimiter = ",";
    std::string out = "-";
    std::string cdf_out;
    std::size_t cdf_grid = 0;
    double top_percentile = 1.0;
    std::vector<std::string> fits;
};

double axis_value(const PairRecord& rec, const std::string& axis) {
    if (axis == "broadness") return rec.counts.broadness();
    if (axis == "intensity") return rec.counts.intensity();
    if (axis == "homogeneity") return rec.counts.homogeneity();
    if (axis == "pctc") return rec.counts.pctc();
    if (axis == "citations") return static_cast<double>(rec.counts.n_citations);
    throw ParseError("unknown fit axis '" + axis +
                     "' (use broadness|intensity|homogeneity|pctc|citations)");
}

void run_analyze(const AnalyzeOpts& o) {
    const char delim = parse_delimiter(o.delimiter);
    std::ifstream in(o.pairs);
    if (!in) throw ParseError("cannot open pair table: " + o.pairs);
    const auto records = read_pair_table(in, delim);

    std::vector<std::pair<std::string, std::string>> fit_axes;
    const std::vector<std::string> requested =
        o.fits.empty() ? std::vector<std::string>{"broadness:intensity",
                                                  "broadness:homogeneity",
                                                  "intensity:homogeneity",
                                                  "broadness:citations",
                                                  "intensity:citations",
                                                  "homogeneity:citations"}
                       : o.fits;
    for (const auto& token : requested) {
        const auto colon = token.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == token.size())
            throw ParseError("fit must look like x:y, got '" + token + "'");
        fit_axes.emplace_back(token.substr(0, colon), token.substr(colon + 1));
    }

    if (records.empty()) {
        std::cerr << "warning: pair table has no rows; writing empty outputs\n";
        write_to(o.out, [&](std::ostream& os) { write_fit_table(os, {}, delim); });
        if (!o.cdf_out.empty())
            write_to(o.cdf_out, [&](std::ostream& os) { write_cdf_table(os, {}, delim); });
        return;
    }

    auto fit_on = [&](std::span<const PairRecord> recs, double share,
                      std::vector<FitRow>& rows) {
        for (const auto& [ax, ay] : fit_axes) {
            std::vector<double> x, y;
            x.reserve(recs.size());
            y.reserve(recs.size());
            for (const auto& rec : recs) {
                x.push_back(axis_value(rec, ax));
                y.push_back(axis_value(rec, ay));
            }
            rows.push_back({ax, ay, share, ols_fit(x, y)});
        }
    };

    std::vector<FitRow> rows;
    fit_on(records, 1.0, rows);
    if (o.top_percentile < 1.0) {
        const auto restricted = top_percentile_pairs(records, o.top_percentile);
        fit_on(restricted, o.top_percentile, rows);
    }
    write_to(o.out, [&](std::ostream& os) { write_fit_table(os, rows, delim); });

    if (o.cdf_out.empty()) return;
    std::map<std::string, std::vector<const PairRecord*>> groups;
    for (const auto& rec : records) groups[rec.citing].push_back(&rec);
    static constexpr const char* kAxes[] = {"broadness", "intensity", "homogeneity",
                                            "pctc"};
    std::vector<CdfRow> cdf_rows;
    for (const auto& [citing, recs] : groups) {
        for (const auto* axis : kAxes) {
            std::vector<double> values;
            values.reserve(recs.size());
            for (const auto* rec : recs) values.push_back(axis_value(*rec, axis));
            for (const auto& point : cdf_table(values, o.cdf_grid))
                cdf_rows.push_back({citing, axis, point.value, point.fraction});
        }
    }
    write_to(o.cdf_out, [&](std::ostream& os) { write_cdf_table(os, cdf_rows, delim); });
}

// ============================================================================
// validate
// ============================================================================

struct ValidateOpts {
    std::string edges, membership;
    std::string delimiter = ",";
    std::string out = "-";
    std::string entity_kind = "any";
    std::string fractions = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
    std::int64_t trials = 10;
    double top_percentile = 0.10;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string mono_out;
    std::int64_t mono_edits = 200;
};

void run_validate(const ValidateOpts& o) {
    const char delim = parse_delimiter(o.delimiter);
    const Corpus corpus = ingest_corpus_files(o.edges, o.membership, {delim});
    const auto entities = filter_entities(corpus.registry, o.entity_kind);

    SizeIndependenceOptions si;
    si.fractions = parse_fraction_list(o.fractions);
    si.trials = o.trials;
    si.seed = o.seed;
    si.top_percentile = o.top_percentile;
    si.jobs = o.jobs;
    const auto reports = size_independence_run(corpus.graph, entities, si);
    write_to(o.out, [&](std::ostream& os) { write_sampling_reports(os, reports, delim); });

    if (o.mono_out.empty()) return;
    const MonotonicityReport mono =
        monotonicity_suite(corpus.graph, entities, {o.mono_edits, o.seed});
    write_to(o.mono_out,
             [&](std::ostream& os) { write_monotonicity_report(os, mono, delim); });
    if (!mono.passed())
        std::cerr << "warning: " << mono.total_violations()
                  << " monotonicity violations detected\n";
}

// ============================================================================
// generate
// ============================================================================

struct GenerateOpts {
    std::string spec;
    std::string out = "corpus";
    std::string delimiter = ",";
    std::uint64_t seed = 0;
    bool seed_given = false;
};

void run_generate(const GenerateOpts& o) {
    const char delim = parse_delimiter(o.delimiter);
    GeneratorSpec spec = read_generator_spec_file(o.spec);
    if (o.seed_given) spec.seed = o.seed;
    const GeneratedCorpus gen = generate_corpus(spec);
    export_corpus_files(gen.corpus, o.out + "-edges.csv", o.out + "-membership.csv", delim);
    write_to(o.out + "-plants.csv",
             [&](std::ostream& os) { write_plant_report(os, gen.plants, delim); });
    std::cout << "generated " << gen.corpus.graph.n_pubs() << " publications, "
              << gen.corpus.graph.n_edges() << " citations, "
              << gen.corpus.registry.entities().size() << " entities\n";
}

// ============================================================================
// diversity
// ============================================================================

struct DiversityOpts {
    std::string edges, membership;
    std::string delimiter = ",";
    std::string out = "-";
    std::string method = "cosine-crosscitation";
    std::string category_kind = "discipline";
    std::string disparity_in;
    std::string disparity_out;
    bool true_div = false;
    bool per_pub = false;
    unsigned jobs = 1;
};

void run_diversity(const DiversityOpts& o) {
    const char delim = parse_delimiter(o.delimiter);
    const Corpus corpus = ingest_corpus_files(o.edges, o.membership, {delim});
    const auto categories = filter_entities(corpus.registry, o.category_kind);
    if (categories.size() < 2)
        throw SemanticError("diversity needs at least two categories of kind '" +
                            o.category_kind + "'");

    DisparityMatrix d;
    if (!o.disparity_in.empty()) {
        std::ifstream in(o.disparity_in);
        if (!in) throw ParseError("cannot open disparity matrix: " + o.disparity_in);
        d = read_disparity(in, delim);
    } else {
        d = disparity_from_graph(corpus.graph, categories,
                                 o.method == "coupling"
                                     ? DisparityMethod::Coupling
                                     : DisparityMethod::CosineCrossCitation);
    }
    for (const auto& w : d.warnings) std::cerr << "warning: " << w << '\n';
    if (!o.disparity_out.empty())
        write_to(o.disparity_out, [&](std::ostream& os) { write_disparity(os, d, delim); });

    const DisparityMatrix similarity = similarity_from_disparity(d);
    const auto citings = filter_entities(corpus.registry, "any");
    const auto profiles =
        profile_matrix(corpus.graph, citings, categories, IkfOptions{}, o.jobs);

    std::vector<DiversityRow> rows;
    rows.reserve(citings.size());
    for (std::size_t i = 0; i < citings.size(); ++i) {
        DiversityRow row;
        row.entity = citings[i]->id;
        const ProportionVector p = proportions_from_profile(profiles[i]);
        row.rao_stirling = rao_stirling(p, d);
        if (o.per_pub) {
            row.has_publication_median = true;
            row.publication_median = median_publication_rao_stirling(
                corpus.graph, *citings[i], categories, d);
        }
        if (o.true_div) {
            row.has_true_diversity = true;
            if (p.sum() > 0.0) {
                row.true_diversity = true_diversity(p, similarity);
            } else {
                std::cerr << "warning: entity '" << row.entity
                          << "' has no citations into the category set; "
                             "true diversity reported as 0\n";
                row.true_diversity = 0.0;
            }
        }
        rows.push_back(std::move(row));
    }
    write_to(o.out, [&](std::ostream& os) { write_diversity_table(os, rows, delim); });
}

} // namespace

// ============================================================================
// Wiring
// ============================================================================

int main(int argc, char** argv) {
    CLI::App app{"citation-flow indicators over publication corpora"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "citeflow 1.0.0");

    ComputeOpts compute_opts;
    auto* compute = app.add_subcommand("compute", "pairwise indicator table");
    compute->add_option("--edges", compute_opts.edges, "edge list file")->required();
    compute->add_option("--membership", compute_opts.membership, "membership file")
        ->required();
    compute->add_option("--delimiter", compute_opts.delimiter, "field delimiter");
    compute->add_option("--out", compute_opts.out, "output path or '-'");
    compute->add_option("--format", compute_opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    compute->add_option("--target-kind", compute_opts.target_kind,
                        "any|discipline|journal|custom");
    compute->add_option("--profiles", compute_opts.profiles_path,
                        "also write profiles as JSON to this path");
    compute->add_flag("--include-self,!--exclude-self", compute_opts.include_self,
                      "keep the citing entity among its own targets");
    compute->add_option("--jobs", compute_opts.jobs, "worker threads");
    compute->callback([&] { run_compute(compute_opts); });

    RelativeOpts relative_opts;
    auto* relative = app.add_subcommand("relative",
                                        "indicator differences against a benchmark");
    relative->add_option("--edges", relative_opts.edges, "edge list file")->required();
    relative->add_option("--membership", relative_opts.membership, "membership file")
        ->required();
    relative->add_option("--focal", relative_opts.focal, "focal entity id")->required();
    relative->add_option("--benchmark", relative_opts.benchmark, "benchmark entity id")
        ->required();
    relative->add_option("--delimiter", relative_opts.delimiter, "field delimiter");
    relative->add_option("--out", relative_opts.out, "output path or '-'");
    relative->add_option("--format", relative_opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    relative->add_option("--target-kind", relative_opts.target_kind,
                         "any|discipline|journal|custom");
    relative->add_option("--stddev", relative_opts.stddev, "scattering mode")
        ->check(CLI::IsMember({"population", "sample"}));
    relative->callback([&] { run_relative(relative_opts); });

    AnalyzeOpts analyze_opts;
    auto* analyze = app.add_subcommand("analyze", "fits and distributions over a pair table");
    analyze->add_option("--pairs", analyze_opts.pairs, "pair table file")->required();
    analyze->add_option("--delimiter", analyze_opts.delimiter, "field delimiter");
    analyze->add_option("--out", analyze_opts.out, "fit table path or '-'");
    analyze->add_option("--cdf-out", analyze_opts.cdf_out, "empirical CDF table path");
    analyze->add_option("--cdf-grid", analyze_opts.cdf_grid,
                        "CDF grid points (0 = one row per observation)");
    analyze->add_option("--top-percentile", analyze_opts.top_percentile,
                        "also fit on the top share of pairs by citation volume");
    analyze->add_option("--fit", analyze_opts.fits,
                        "fit specification x:y (repeatable)");
    analyze->callback([&] { run_analyze(analyze_opts); });

    ValidateOpts validate_opts;
    auto* validate = app.add_subcommand("validate", "subsampling and edit-response checks");
    validate->add_option("--edges", validate_opts.edges, "edge list file")->required();
    validate->add_option("--membership", validate_opts.membership, "membership file")
        ->required();
    validate->add_option("--delimiter", validate_opts.delimiter, "field delimiter");
    validate->add_option("--out", validate_opts.out, "sampling report path or '-'");
    validate->add_option("--entity-kind", validate_opts.entity_kind,
                         "any|discipline|journal|custom");
    validate->add_option("--fractions", validate_opts.fractions,
                         "comma-separated subsample fractions");
    validate->add_option("--trials", validate_opts.trials, "trials per fraction");
    validate->add_option("--top-percentile", validate_opts.top_percentile,
                         "share of targets in the restricted variant");
    validate->add_option("--seed", validate_opts.seed, "random seed");
    validate->add_option("--jobs", validate_opts.jobs, "worker threads");
    validate->add_option("--mono-out", validate_opts.mono_out,
                         "also run the monotonicity suite and write its report here");
    validate->add_option("--mono-edits", validate_opts.mono_edits,
                         "edits per monotonicity property");
    validate->callback([&] { run_validate(validate_opts); });

    GenerateOpts generate_opts;
    auto* generate = app.add_subcommand("generate", "synthetic corpus from a JSON spec");
    generate->add_option("--spec", generate_opts.spec, "generator spec (JSON)")->required();
    generate->add_option("--out", generate_opts.out, "output prefix");
    generate->add_option("--delimiter", generate_opts.delimiter, "field delimiter");
    auto* seed_opt = generate->add_option("--seed", generate_opts.seed,
                                          "override the spec seed");
    generate->callback([&] {
        generate_opts.seed_given = seed_opt->count() > 0;
        run_generate(generate_opts);
    });

    DiversityOpts diversity_opts;
    auto* diversity = app.add_subcommand("diversity", "citation diversity scores");
    diversity->add_option("--edges", diversity_opts.edges, "edge list file")->required();
    diversity->add_option("--membership", diversity_opts.membership, "membership file")
        ->required();
    diversity->add_option("--delimiter", diversity_opts.delimiter, "field delimiter");
    diversity->add_option("--out", diversity_opts.out, "output path or '-'");
    diversity->add_option("--method", diversity_opts.method, "disparity method")
        ->check(CLI::IsMember({"cosine-crosscitation", "coupling"}));
    diversity->add_option("--category-kind", diversity_opts.category_kind,
                          "entity kind acting as categories");
    diversity->add_option("--disparity", diversity_opts.disparity_in,
                          "import a disparity matrix instead of deriving one");
    diversity->add_option("--export-disparity", diversity_opts.disparity_out,
                          "write the disparity matrix used");
    diversity->add_flag("--true-diversity", diversity_opts.true_div,
                        "add the true-diversity column");
    diversity->add_flag("--per-publication", diversity_opts.per_pub,
                        "add the per-publication median column");
    diversity->add_option("--jobs", diversity_opts.jobs, "worker threads");
    diversity->callback([&] { run_diversity(diversity_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const SemanticError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
