#include "citeflow/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "citeflow/errors.hpp"

namespace citeflow {

// ============================================================================
// Low-level delimited reading
// ============================================================================

DelimitedReader::DelimitedReader(std::istream& in, char delimiter)
    : in_(&in), delim_(delimiter) {}

bool DelimitedReader::next(DelimitedRecord& rec) {
    while (std::getline(*in_, buf_)) {
        ++line_;
        if (!buf_.empty() && buf_.back() == '\r') buf_.pop_back();
        if (buf_.empty() || buf_.front() == '#') continue;
        rec.fields.clear();
        rec.line = line_;
        std::string_view view(buf_);
        for (;;) {
            const auto pos = view.find(delim_);
            if (pos == std::string_view::npos) {
                rec.fields.push_back(view);
                break;
            }
            rec.fields.push_back(view.substr(0, pos));
            view.remove_prefix(pos + 1);
        }
        return true;
    }
    return false;
}

std::string format_ratio(double v) {
    if (v == 0.0) v = 0.0; // normalize negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::int64_t parse_int(std::string_view field, std::size_t line) {
    std::int64_t value = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError("expected integer, got '" + std::string(field) + "'", line);
    return value;
}

double parse_double(std::string_view field, std::size_t line) {
    double value = 0.0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError("expected number, got '" + std::string(field) + "'", line);
    return value;
}

void expect_fields(const DelimitedRecord& rec, std::size_t n, const char* what) {
    if (rec.fields.size() != n)
        throw ParseError(std::string(what) + " record has " +
                             std::to_string(rec.fields.size()) + " fields, expected " +
                             std::to_string(n),
                         rec.line);
}

} // namespace

// ============================================================================
// Pair tables
// ============================================================================

static constexpr std::string_view kPairColumns[] = {
    "citing", "cited", "n_pubs_citing", "n_citing_pubs", "n_citations",
    "out_citations_all", "out_citations_citing_subset", "co_cited_refs",
    "broadness", "intensity", "homogeneity", "pctc",
};

void write_pair_table(std::ostream& out, std::span<const IkfProfile> profiles,
                      char delimiter) {
    for (std::size_t i = 0; i < std::size(kPairColumns); ++i)
        out << (i ? std::string(1, delimiter) : "") << kPairColumns[i];
    out << '\n';
    for (const auto& profile : profiles) {
        for (const auto& [target, t] : profile.rows) {
            out << profile.citing << delimiter << target << delimiter
                << t.n_pubs_citing << delimiter << t.n_citing_pubs << delimiter
                << t.n_citations << delimiter << t.out_citations_all << delimiter
                << t.out_citations_citing_subset << delimiter << t.co_cited_refs
                << delimiter << format_ratio(t.broadness()) << delimiter
                << format_ratio(t.intensity()) << delimiter
                << format_ratio(t.homogeneity()) << delimiter
                << format_ratio(t.pctc()) << '\n';
        }
    }
}

std::vector<PairRecord> read_pair_table(std::istream& in, char delimiter) {
    DelimitedReader reader(in, delimiter);
    DelimitedRecord rec;
    if (!reader.next(rec)) throw ParseError("pair table is empty");
    expect_fields(rec, std::size(kPairColumns), "pair table header");
    for (std::size_t i = 0; i < std::size(kPairColumns); ++i)
        if (rec.fields[i] != kPairColumns[i])
            throw ParseError("pair table header: expected '" + std::string(kPairColumns[i]) +
                                 "', got '" + std::string(rec.fields[i]) + "'",
                             rec.line);

    std::vector<PairRecord> out;
    while (reader.next(rec)) {
        expect_fields(rec, std::size(kPairColumns), "pair table");
        PairRecord r;
        r.citing = std::string(rec.fields[0]);
        r.cited = std::string(rec.fields[1]);
        r.counts.n_pubs_citing = parse_int(rec.fields[2], rec.line);
        r.counts.n_citing_pubs = parse_int(rec.fields[3], rec.line);
        r.counts.n_citations = parse_int(rec.fields[4], rec.line);
        r.counts.out_citations_all = parse_int(rec.fields[5], rec.line);
        r.counts.out_citations_citing_subset = parse_int(rec.fields[6], rec.line);
        r.counts.co_cited_refs = parse_int(rec.fields[7], rec.line);
        for (std::size_t i = 8; i < 12; ++i) parse_double(rec.fields[i], rec.line);
        out.push_back(std::move(r));
    }
    return out;
}

void write_profiles_json(std::ostream& out, std::span<const IkfProfile> profiles) {
    nlohmann::json doc;
    doc["profiles"] = nlohmann::json::array();
    for (const auto& profile : profiles) {
        nlohmann::json p;
        p["citing"] = profile.citing;
        p["self_excluded"] = profile.self_excluded;
        auto targets = nlohmann::json::array();
        auto broadness = nlohmann::json::array();
        auto intensity = nlohmann::json::array();
        auto homogeneity = nlohmann::json::array();
        auto pctc = nlohmann::json::array();
        auto citations = nlohmann::json::array();
        for (const auto& [target, t] : profile.rows) {
            targets.push_back(target);
            broadness.push_back(t.broadness());
            intensity.push_back(t.intensity());
            homogeneity.push_back(t.homogeneity());
            pctc.push_back(t.pctc());
            citations.push_back(t.n_citations);
        }
        p["targets"] = std::move(targets);
        p["broadness"] = std::move(broadness);
        p["intensity"] = std::move(intensity);
        p["homogeneity"] = std::move(homogeneity);
        p["pctc"] = std::move(pctc);
        p["n_citations"] = std::move(citations);
        doc["profiles"].push_back(std::move(p));
    }
    out << doc.dump(2) << '\n';
}

// ============================================================================
// Relative profiles
// ============================================================================

void write_relative_csv(std::ostream& out, const RelativeProfile& rel,
                        double scattering_value, char delimiter) {
    out << "target" << delimiter << "d_broadness" << delimiter << "d_intensity"
        << delimiter << "d_homogeneity" << '\n';
    for (const auto& [target, row] : rel.rows)
        out << target << delimiter << format_ratio(row.d_broadness) << delimiter
            << format_ratio(row.d_intensity) << delimiter
            << format_ratio(row.d_homogeneity) << '\n';
    if (!std::isnan(scattering_value))
        out << "# scattering" << delimiter << format_ratio(scattering_value) << '\n';
}

void write_relative_json(std::ostream& out, const RelativeProfile& rel,
                         double scattering_value) {
    nlohmann::json doc;
    doc["focal"] = rel.focal;
    doc["benchmark"] = rel.benchmark;
    auto targets = nlohmann::json::array();
    auto db = nlohmann::json::array();
    auto di = nlohmann::json::array();
    auto dh = nlohmann::json::array();
    for (const auto& [target, row] : rel.rows) {
        targets.push_back(target);
        db.push_back(row.d_broadness);
        di.push_back(row.d_intensity);
        dh.push_back(row.d_homogeneity);
    }
    doc["targets"] = std::move(targets);
    doc["d_broadness"] = std::move(db);
    doc["d_intensity"] = std::move(di);
    doc["d_homogeneity"] = std::move(dh);
    if (std::isnan(scattering_value))
        doc["scattering"] = nullptr;
    else
        doc["scattering"] = scattering_value;
    out << doc.dump(2) << '\n';
}

// ============================================================================
// Analysis outputs
// ============================================================================

void write_fit_table(std::ostream& out, std::span<const FitRow> rows, char delimiter) {
    out << "x" << delimiter << "y" << delimiter << "top_percentile" << delimiter
        << "slope" << delimiter << "intercept" << delimiter << "r_squared" << delimiter
        << "n_points" << '\n';
    for (const auto& row : rows)
        out << row.x << delimiter << row.y << delimiter
            << format_ratio(row.top_percentile) << delimiter
            << format_ratio(row.fit.slope) << delimiter
            << format_ratio(row.fit.intercept) << delimiter
            << format_ratio(row.fit.r_squared) << delimiter << row.fit.n_points << '\n';
}

void write_cdf_table(std::ostream& out, std::span<const CdfRow> rows, char delimiter) {
    out << "citing" << delimiter << "indicator" << delimiter << "value" << delimiter
        << "cum_fraction" << '\n';
    for (const auto& row : rows)
        out << row.citing << delimiter << row.indicator << delimiter
            << format_ratio(row.value) << delimiter << format_ratio(row.fraction) << '\n';
}

// ============================================================================
// Validation outputs
// ============================================================================

void write_sampling_reports(std::ostream& out, std::span<const SamplingReport> reports,
                            char delimiter) {
    out << "entity" << delimiter << "indicator" << delimiter << "fraction" << delimiter
        << "trial_mean" << delimiter << "trial_sd" << delimiter << "top_decile_only"
        << '\n';
    for (const auto& r : reports)
        out << r.entity << delimiter << r.indicator << delimiter
            << format_ratio(r.fraction) << delimiter << format_ratio(r.trial_mean)
            << delimiter << format_ratio(r.trial_sd) << delimiter
            << (r.top_decile_only ? 1 : 0) << '\n';
}

void write_monotonicity_report(std::ostream& out, const MonotonicityReport& report,
                               char delimiter) {
    out << "property" << delimiter << "checks" << delimiter << "violations" << '\n';
    for (const auto& c : report.checks)
        out << c.property << delimiter << c.checks << delimiter << c.violations << '\n';
}

// ============================================================================
// Diversity outputs
// ============================================================================

void write_disparity(std::ostream& out, const DisparityMatrix& d, char delimiter) {
    out << "label";
    for (const auto& label : d.labels) out << delimiter << label;
    out << '\n';
    for (std::size_t i = 0; i < d.labels.size(); ++i) {
        out << d.labels[i];
        for (std::size_t j = 0; j < d.labels.size(); ++j)
            out << delimiter << format_ratio(d.at(i, j));
        out << '\n';
    }
}

DisparityMatrix read_disparity(std::istream& in, char delimiter) {
    DelimitedReader reader(in, delimiter);
    DelimitedRecord rec;
    if (!reader.next(rec)) throw ParseError("disparity matrix is empty");
    if (rec.fields.size() < 3 || rec.fields[0] != "label")
        throw ParseError("disparity header must be 'label' followed by category labels",
                         rec.line);
    DisparityMatrix d;
    for (std::size_t i = 1; i < rec.fields.size(); ++i)
        d.labels.emplace_back(rec.fields[i]);
    const std::size_t k = d.labels.size();
    d.values.assign(k * k, 0.0);

    std::size_t row = 0;
    while (reader.next(rec)) {
        if (row >= k) throw ParseError("disparity matrix has more rows than labels", rec.line);
        expect_fields(rec, k + 1, "disparity");
        if (rec.fields[0] != d.labels[row])
            throw ParseError("disparity row label '" + std::string(rec.fields[0]) +
                                 "' does not match header order",
                             rec.line);
        for (std::size_t j = 0; j < k; ++j) {
            const double v = parse_double(rec.fields[j + 1], rec.line);
            if (v < -1e-12 || v > 1.0 + 1e-12)
                throw ParseError("disparity value outside [0, 1]", rec.line);
            d.values[row * k + j] = std::min(1.0, std::max(0.0, v));
        }
        ++row;
    }
    if (row != k) throw ParseError("disparity matrix has fewer rows than labels");
    for (std::size_t i = 0; i < k; ++i) {
        if (d.at(i, i) != 0.0) throw ParseError("disparity diagonal must be zero");
        for (std::size_t j = i + 1; j < k; ++j)
            if (std::abs(d.at(i, j) - d.at(j, i)) > 1e-9)
                throw ParseError("disparity matrix is not symmetric");
    }
    return d;
}

void write_diversity_table(std::ostream& out, std::span<const DiversityRow> rows,
                           char delimiter) {
    const bool pub = !rows.empty() && rows.front().has_publication_median;
    const bool td = !rows.empty() && rows.front().has_true_diversity;
    out << "entity" << delimiter << "rao_stirling";
    if (pub) out << delimiter << "rs_publication_median";
    if (td) out << delimiter << "true_diversity";
    out << '\n';
    for (const auto& row : rows) {
        out << row.entity << delimiter << format_ratio(row.rao_stirling);
        if (pub) out << delimiter << format_ratio(row.publication_median);
        if (td) out << delimiter << format_ratio(row.true_diversity);
        out << '\n';
    }
}

// ============================================================================
// Generator spec
// ============================================================================

GeneratorSpec read_generator_spec(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("generator spec: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("generator spec must be a JSON object");

    auto read_range = [&](const char* key, CountRange fallback) -> CountRange {
        if (!j.contains(key)) return fallback;
        const auto& v = j.at(key);
        if (v.is_number_integer()) {
            const auto x = v.get<std::int64_t>();
            return {x, x};
        }
        if (v.is_array() && v.size() == 2 && v[0].is_number_integer() &&
            v[1].is_number_integer())
            return {v[0].get<std::int64_t>(), v[1].get<std::int64_t>()};
        throw ParseError(std::string("generator spec: ") + key +
                         " must be an integer or [lo, hi]");
    };

    GeneratorSpec spec;
    try {
        if (j.contains("n_entities")) {
            if (!j["n_entities"].is_number_integer())
                throw ParseError("generator spec: n_entities must be an integer");
            spec.n_entities = j["n_entities"].get<std::int64_t>();
        }
        spec.pubs_per_entity = read_range("pubs_per_entity", spec.pubs_per_entity);
        spec.refs_per_pub = read_range("refs_per_pub", spec.refs_per_pub);
        if (j.contains("seed")) {
            if (!j["seed"].is_number_integer())
                throw ParseError("generator spec: seed must be an integer");
            spec.seed = j["seed"].get<std::uint64_t>();
        }
        if (j.contains("planted")) {
            if (!j["planted"].is_array())
                throw ParseError("generator spec: planted must be an array");
            for (const auto& p : j["planted"]) {
                if (!p.is_object() || !p.contains("citing") || !p.contains("cited") ||
                    !p.contains("broadness") || !p.contains("intensity"))
                    throw ParseError("generator spec: each plant needs citing, cited, "
                                     "broadness, intensity");
                PlantSpec plant;
                plant.citing = p["citing"].get<std::string>();
                plant.cited = p["cited"].get<std::string>();
                plant.broadness = p["broadness"].get<double>();
                plant.intensity = p["intensity"].get<double>();
                spec.planted.push_back(std::move(plant));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("generator spec: ") + e.what());
    }
    return spec;
}

GeneratorSpec read_generator_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open generator spec: " + path);
    return read_generator_spec(in);
}

void write_plant_report(std::ostream& out, std::span<const RealizedPlant> plants,
                        char delimiter) {
    out << "citing" << delimiter << "cited" << delimiter << "target_broadness"
        << delimiter << "target_intensity" << delimiter << "realized_broadness"
        << delimiter << "realized_intensity" << delimiter << "realized_homogeneity"
        << delimiter << "citing_pubs" << delimiter << "citations" << '\n';
    for (const auto& p : plants)
        out << p.citing << delimiter << p.cited << delimiter
            << format_ratio(p.target_broadness) << delimiter
            << format_ratio(p.target_intensity) << delimiter
            << format_ratio(p.realized_broadness) << delimiter
            << format_ratio(p.realized_intensity) << delimiter
            << format_ratio(p.realized_homogeneity) << delimiter << p.citing_pubs
            << delimiter << p.citations << '\n';
}

} // namespace citeflow
