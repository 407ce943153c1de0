#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecn/appraise.hpp"
#include "ecn/corpus_io.hpp"
#include "ecn/errors.hpp"
#include "ecn/eutils.hpp"
#include "ecn/graph.hpp"
#include "ecn/report.hpp"
#include "ecn/timeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 64;

struct CommonPaths {
    std::string corpus;
    std::string annotations;
    std::string lexicon;
    std::string taxonomy;
    std::string guidelines;
    std::string grade_map;
    std::string out_dir = ".";
    bool lenient = false;
    bool include_non_english = false;
};

void add_common(CLI::App* cmd, CommonPaths& paths, bool need_annotations) {
    cmd->add_option("--corpus", paths.corpus, "corpus JSONL file")->required();
    auto* ann = cmd->add_option("--annotations", paths.annotations, "annotation file");
    if (need_annotations) ann->required();
    cmd->add_option("--lexicon", paths.lexicon, "drug lexicon JSON (default: built-in)");
    cmd->add_option("--taxonomy", paths.taxonomy, "topic taxonomy JSON (default: built-in)");
    cmd->add_option("--out", paths.out_dir, "output directory")->required();
    cmd->add_flag("--lenient", paths.lenient, "collect annotation problems instead of aborting");
    cmd->add_flag("--include-non-english", paths.include_non_english,
                  "keep non-English records in network analysis");
}

ecn::DrugLexicon lexicon_from(const CommonPaths& paths) {
    return paths.lexicon.empty() ? ecn::DrugLexicon::defaults()
                                 : ecn::DrugLexicon::load(paths.lexicon);
}

ecn::Taxonomy taxonomy_from(const CommonPaths& paths) {
    return paths.taxonomy.empty() ? ecn::Taxonomy::defaults()
                                  : ecn::Taxonomy::load(paths.taxonomy);
}

ecn::GradeMap grade_map_from(const CommonPaths& paths) {
    return paths.grade_map.empty() ? ecn::GradeMap::defaults()
                                   : ecn::GradeMap::load(paths.grade_map);
}

ecn::AnnotationSet annotations_from(const CommonPaths& paths, const ecn::Corpus& corpus) {
    ecn::AnnotationLoadOptions options;
    options.strict = !paths.lenient;
    ecn::AnnotationLoadReport report;
    auto set = ecn::load_annotations(paths.annotations, corpus, taxonomy_from(paths), options,
                                     &report);
    for (const auto& problem : report.errors) std::cerr << "warning: " << problem << "\n";
    if (report.skipped_unresolved) {
        std::cerr << "warning: skipped " << report.skipped_unresolved
                  << " rows touching unresolved records\n";
    }
    return set;
}

void write_file(const fs::path& path, const std::string& body) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path);
    if (!out) throw ecn::IoError("cannot write " + path.string());
    out << body;
    if (!out) throw ecn::IoError("write failed: " + path.string());
}

std::string safe_name(const std::string& name) {
    std::string out;
    for (char c : name) {
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' ? c : '_');
    }
    return out;
}

int run_fetch(const std::string& query, const std::string& out_file, std::size_t max_records,
              std::optional<double> rate, std::size_t page_size,
              const std::string& fetched_at) {
    ecn::EutilsOptions options = ecn::EutilsOptions::from_env();
    if (rate) options.rate = rate;
    ecn::EutilsClient client(options);
    ecn::Corpus corpus = client.fetch_corpus(query, max_records, page_size);
    if (!fetched_at.empty()) corpus.provenance.fetched_at = fetched_at;
    ecn::save_corpus(corpus, out_file);
    std::cout << "records: " << corpus.records.size() << "  links: " << corpus.links.size()
              << " (raw " << client.last_raw_link_count() << ")"
              << "  unresolved: " << corpus.unresolved.size()
              << "  network requests: " << client.network_requests() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evidence-comment network toolkit"};
    app.require_subcommand(1);

    // fetch
    std::string fetch_query;
    std::string fetch_out;
    std::size_t fetch_max = 0;
    std::optional<double> fetch_rate;
    std::size_t fetch_page_size = 500;
    std::string fetch_stamp;
    auto* fetch = app.add_subcommand("fetch", "query PubMed and store a corpus");
    fetch->add_option("--query", fetch_query, "PubMed query string")->required();
    fetch->add_option("--out", fetch_out, "corpus output file")->required();
    fetch->add_option("--max", fetch_max, "stop after this many records (0 = all)");
    fetch->add_option("--rate", fetch_rate, "requests per second");
    fetch->add_option("--page-size", fetch_page_size, "esearch page size");
    fetch->add_option("--fetched-at", fetch_stamp,
                      "override the provenance timestamp (for reproducible runs)");

    // components
    CommonPaths comp_paths;
    std::string comp_drug;
    std::size_t comp_top = 1;
    auto* components = app.add_subcommand("components", "extract connected components");
    add_common(components, comp_paths, false);
    components->add_option("--drug", comp_drug, "restrict to one lexicon group");
    components->add_option("--top", comp_top, "which component (1 = biggest)");

    // sentiment
    CommonPaths sent_paths;
    std::string sent_drug;
    auto* sentiment = app.add_subcommand("sentiment", "per-drug sentiment distribution");
    add_common(sentiment, sent_paths, true);
    sentiment->add_option("--drug", sent_drug, "lexicon group")->required();

    // grade
    CommonPaths grade_paths;
    ecn::Pmid grade_pmid = 0;
    auto* grade = app.add_subcommand("grade", "grade one evidence article");
    add_common(grade, grade_paths, true);
    grade->add_option("--evidence", grade_pmid, "PMID of the article to grade")->required();
    grade->add_option("--grade-map", grade_paths.grade_map, "level-2 tag to grading topic map");

    // timeline
    CommonPaths time_paths;
    std::string time_drug;
    auto* timeline = app.add_subcommand("timeline", "sentiment series and guideline lead times");
    add_common(timeline, time_paths, true);
    timeline->add_option("--drug", time_drug, "lexicon group")->required();
    timeline->add_option("--guidelines", time_paths.guidelines, "guideline config JSON")
        ->required();

    // report
    CommonPaths report_paths;
    auto* report = app.add_subcommand("report", "descriptive table and per-drug summaries");
    add_common(report, report_paths, false);
    report->add_option("--guidelines", report_paths.guidelines, "guideline config JSON");
    report->add_option("--grade-map", report_paths.grade_map, "level-2 tag to grading topic map");

    // export
    CommonPaths export_paths;
    std::string export_drug;
    std::string export_format = "both";
    auto* exporter = app.add_subcommand("export", "write GraphML/DOT network files");
    add_common(exporter, export_paths, false);
    exporter->add_option("--drug", export_drug, "restrict to one lexicon group");
    exporter->add_option("--format", export_format, "graphml, dot or both")
        ->check(CLI::IsMember({"graphml", "dot", "both"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (fetch->parsed()) {
            return run_fetch(fetch_query, fetch_out, fetch_max, fetch_rate, fetch_page_size,
                             fetch_stamp);
        }

        if (components->parsed()) {
            ecn::Corpus corpus = ecn::load_corpus(comp_paths.corpus);
            ecn::DrugLexicon lexicon = lexicon_from(comp_paths);
            if (!comp_drug.empty()) corpus = ecn::filter_by_drug(corpus, lexicon, comp_drug);
            ecn::BuildEcnOptions options{comp_paths.include_non_english};
            ecn::Ecn ecn_graph = ecn::build_ecn(corpus, options);
            ecn::Ecn sub = ecn::top_subgraph(ecn_graph, comp_top);
            std::string stem = comp_drug.empty() ? "all" : safe_name(comp_drug);
            fs::path base = fs::path(comp_paths.out_dir);
            write_file(base / ("component_" + stem + "_" + std::to_string(comp_top) + ".graphml"),
                       ecn::export_graphml(sub));
            write_file(base / ("component_" + stem + "_" + std::to_string(comp_top) + ".dot"),
                       ecn::export_dot(sub));
            std::cout << "component " << comp_top << ": " << sub.nodes.size() << " nodes, "
                      << sub.edges.size() << " edges\n";
            return kExitOk;
        }

        if (sentiment->parsed()) {
            ecn::Corpus corpus = ecn::load_corpus(sent_paths.corpus);
            ecn::DrugLexicon lexicon = lexicon_from(sent_paths);
            ecn::AnnotationSet annotations = annotations_from(sent_paths, corpus);
            auto scope = ecn::scope_for_drug(corpus, lexicon, sent_drug);
            ecn::SentimentCounts counts = ecn::sentiment_distribution(annotations, scope);
            write_file(fs::path(sent_paths.out_dir) / ("sentiment_" + safe_name(sent_drug) + ".csv"),
                       ecn::sentiment_csv(sent_drug, counts));
            std::cout << sent_drug << ": supportive " << counts.supportive << ", critical "
                      << counts.critical << ", neutral " << counts.neutral << " -> "
                      << ecn::to_string(ecn::derive_assertion(counts)) << "\n";
            return kExitOk;
        }

        if (grade->parsed()) {
            ecn::Corpus corpus = ecn::load_corpus(grade_paths.corpus);
            ecn::AnnotationSet annotations = annotations_from(grade_paths, corpus);
            ecn::GradingScore score =
                ecn::grade_evidence(grade_pmid, annotations, corpus, grade_map_from(grade_paths));
            json doc;
            doc["pmid"] = grade_pmid;
            doc["total"] = score.total;
            doc["level"] = ecn::to_string(score.level);
            doc["ungraded_basis"] = score.ungraded_basis;
            doc["topic_scores"] = json::object();
            for (const auto& [topic, value] : score.topic_scores) {
                doc["topic_scores"][ecn::to_string(topic)] = value;
            }
            write_file(fs::path(grade_paths.out_dir) /
                           ("grade_" + std::to_string(grade_pmid) + ".json"),
                       doc.dump(2) + "\n");
            std::cout << "total " << score.total << " (" << ecn::to_string(score.level) << ")\n";
            return kExitOk;
        }

        if (timeline->parsed()) {
            ecn::Corpus corpus = ecn::load_corpus(time_paths.corpus);
            ecn::DrugLexicon lexicon = lexicon_from(time_paths);
            ecn::AnnotationSet annotations = annotations_from(time_paths, corpus);
            auto guidelines = ecn::load_guidelines(time_paths.guidelines);
            ecn::SentimentSeries series =
                ecn::sentiment_series(annotations, corpus, lexicon, time_drug);
            fs::path base = fs::path(time_paths.out_dir);
            write_file(base / ("timeline_" + safe_name(time_drug) + ".csv"),
                       ecn::series_csv(series));

            json milestones;
            milestones["drug"] = time_drug;
            milestones["events"] = series.events.size();
            milestones["undated_excluded"] = series.undated_excluded;
            auto first = ecn::first_critical(series);
            auto half = ecn::half_critical_date(series);
            milestones["first_critical"] = first ? json(first->to_string()) : json(nullptr);
            milestones["half_critical"] = half ? json(half->to_string()) : json(nullptr);
            if (auto guideline = ecn::guideline_for(guidelines, time_drug)) {
                milestones["guideline_date"] = guideline->release_date.to_string();
                milestones["guideline_polarity"] = ecn::to_string(guideline->polarity);
                if (first) milestones["first_critical_lead_months"] =
                    ecn::lead_months(*first, *guideline);
                if (half) milestones["half_critical_lead_months"] =
                    ecn::lead_months(*half, *guideline);
            }
            write_file(base / ("milestones_" + safe_name(time_drug) + ".json"),
                       milestones.dump(2) + "\n");
            std::cout << milestones.dump(2) << "\n";
            return kExitOk;
        }

        if (report->parsed()) {
            ecn::Corpus corpus = ecn::load_corpus(report_paths.corpus);
            ecn::DrugLexicon lexicon = lexicon_from(report_paths);
            auto rows = ecn::descriptive_table(corpus, lexicon);
            fs::path base = fs::path(report_paths.out_dir);
            write_file(base / "descriptive.csv", ecn::descriptive_csv(rows));
            if (!report_paths.annotations.empty() && !report_paths.guidelines.empty()) {
                ecn::AnnotationSet annotations = annotations_from(report_paths, corpus);
                auto guidelines = ecn::load_guidelines(report_paths.guidelines);
                for (const auto& [group, synonyms] : lexicon.groups) {
                    write_file(base / ("summary_" + safe_name(group) + ".md"),
                               ecn::render_summary(group, corpus, annotations, guidelines, lexicon,
                                                   grade_map_from(report_paths)));
                }
            }
            std::cout << "rows: " << rows.size() << "\n";
            return kExitOk;
        }

        if (exporter->parsed()) {
            ecn::Corpus corpus = ecn::load_corpus(export_paths.corpus);
            ecn::DrugLexicon lexicon = lexicon_from(export_paths);
            if (!export_drug.empty()) corpus = ecn::filter_by_drug(corpus, lexicon, export_drug);
            ecn::BuildEcnOptions options{export_paths.include_non_english};
            ecn::Ecn ecn_graph = ecn::build_ecn(corpus, options);
            std::optional<ecn::AnnotationSet> annotations;
            if (!export_paths.annotations.empty()) {
                annotations = annotations_from(export_paths, corpus);
            }
            const ecn::AnnotationSet* ann = annotations ? &*annotations : nullptr;
            std::string stem = export_drug.empty() ? "ecn" : "ecn_" + safe_name(export_drug);
            fs::path base = fs::path(export_paths.out_dir);
            if (export_format != "dot") {
                write_file(base / (stem + ".graphml"), ecn::export_graphml(ecn_graph, ann));
            }
            if (export_format != "graphml") {
                write_file(base / (stem + ".dot"), ecn::export_dot(ecn_graph, ann));
            }
            std::cout << ecn_graph.nodes.size() << " nodes, " << ecn_graph.edges.size()
                      << " edges\n";
            return kExitOk;
        }
    } catch (const ecn::TransportError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ecn::RemoteError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ecn::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ecn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitOk;
}
