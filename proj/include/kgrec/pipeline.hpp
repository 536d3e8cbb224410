#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "kgrec/config.hpp"
#include "kgrec/corpus.hpp"
#include "kgrec/embed.hpp"
#include "kgrec/errors.hpp"
#include "kgrec/eval.hpp"
#include "kgrec/kg.hpp"
#include "kgrec/ranker.hpp"
#include "kgrec/sentiment.hpp"
#include "kgrec/textprep.hpp"

// End-to-end orchestration behind the CLI subcommands: ingest the corpus,
// assemble the graphs, run the recommendation pass, evaluate report files.

namespace kgrec {

inline constexpr std::string_view kRecommendationFormat = "kgrec-recommendation";
inline constexpr std::string_view kEvaluationFormat = "kgrec-evaluation";
inline constexpr int kReportFormatVersion = 1;

struct CorpusSummary {
    std::size_t total = 0;
    std::array<std::size_t, 4> by_source{};  // indexed by SourceDb
    std::size_t with_relevance_label = 0;
};

inline CorpusSummary run_ingest(const PipelineConfig& config) {
    validate_for_ingest(config);
    CorpusSummary summary;
    for (const auto& paper : load_papers(config.corpus_path)) {
        ++summary.total;
        ++summary.by_source[static_cast<std::size_t>(paper.source_db)];
        if (paper.relevant) ++summary.with_relevance_label;
    }
    return summary;
}

struct GraphCounts {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::array<std::size_t, kNodeLabelCount> nodes_by_label{};
    std::array<std::size_t, kRelationCount> edges_by_relation{};
};

struct KgSummary {
    GraphCounts master;
    GraphCounts slave;
};

namespace detail {

inline GraphCounts count_graph(const Graph& graph) {
    GraphCounts counts;
    counts.nodes = graph.node_count();
    counts.edges = graph.edge_count();
    for (const auto& node : graph.nodes())
        ++counts.nodes_by_label[static_cast<std::size_t>(node.label)];
    for (const auto& edge : graph.edges())
        ++counts.edges_by_relation[static_cast<std::size_t>(edge.relation)];
    return counts;
}

inline Graph load_graph(const PipelineConfig& config, GraphRole role) {
    const bool master = role == GraphRole::master;
    Graph graph = import_graph(master ? config.master_nodes_path : config.slave_nodes_path,
                               master ? config.master_edges_path : config.slave_edges_path,
                               role);
    AliasMap aliases;
    if (config.alias_path) aliases = load_alias_file(*config.alias_path);
    Graph aligned = align_entities(graph, aliases);
    aligned.freeze();
    return aligned;
}

}  // namespace detail

inline KgSummary run_kg(const PipelineConfig& config) {
    validate_for_kg(config);
    KgSummary summary;
    summary.master = detail::count_graph(detail::load_graph(config, GraphRole::master));
    summary.slave = detail::count_graph(detail::load_graph(config, GraphRole::slave));
    return summary;
}

struct RecommendationReport {
    std::uint64_t seed = 0;
    int k = 0;
    int n = 0;
    CompositionResult target_text;
    CompositionResult exclude_text;
    std::vector<SimilarityScore> scores;  // corpus order
    RankedList ranking;
    std::unordered_map<std::string, std::string> titles;
};

inline nlohmann::ordered_json report_to_json(const RecommendationReport& report) {
    nlohmann::ordered_json j;
    j["format"] = kRecommendationFormat;
    j["format_version"] = kReportFormatVersion;
    j["seed"] = report.seed;
    j["k"] = report.k;
    j["n"] = report.n;
    j["target_text"] = {{"text", report.target_text.text},
                        {"source_node_ids", report.target_text.source_node_ids}};
    j["exclude_text"] = {{"text", report.exclude_text.text},
                         {"source_node_ids", report.exclude_text.source_node_ids}};
    nlohmann::ordered_json scores = nlohmann::ordered_json::array();
    for (const auto& s : report.scores) {
        scores.push_back({{"paper_id", s.paper_id},
                          {"cos_p1_target", s.cos_p1_target},
                          {"cos_p2_target", s.cos_p2_target},
                          {"cos_p1_exclude", s.cos_p1_exclude},
                          {"cos_p2_exclude", s.cos_p2_exclude},
                          {"emo_p1", s.emo_p1},
                          {"sim_target", s.sim_target},
                          {"sim_exclude", s.sim_exclude}});
    }
    j["scores"] = std::move(scores);
    j["round1"] = report.ranking.round1;
    j["round2"] = report.ranking.round2;
    j["top5"] = report.ranking.top5;
    return j;
}

namespace detail {

inline void write_text_file(const std::filesystem::path& path, const std::string& text,
                            const std::string& module) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(module, ErrorCategory::io, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(module, ErrorCategory::io, "write failed for " + path.string());
}

}  // namespace detail

// The full recommendation pass. Writes <out>/recommendation.json and returns
// the in-memory report. Deterministic for a fixed seed.
inline RecommendationReport run_recommend(const PipelineConfig& config) {
    validate_for_recommend(config);

    const std::vector<PaperRecord> papers = load_papers(config.corpus_path);
    if (papers.empty())
        throw Error("pipeline", ErrorCategory::empty_input,
                    config.corpus_path.string() + " contains no papers");

    const Graph master = detail::load_graph(config, GraphRole::master);
    const Graph slave = detail::load_graph(config, GraphRole::slave);
    const Graph composition = merged_view(master, slave);

    const Stoplist stoplist = config.stopword_path
                                  ? Stoplist::from_file(*config.stopword_path)
                                  : Stoplist::builtin();

    std::vector<SplitAbstract> splits;
    splits.reserve(papers.size());
    std::vector<ProcessedDoc> docs;
    docs.reserve(papers.size() * 2);
    for (const auto& paper : papers) {
        SplitAbstract split = split_abstract(paper);
        docs.push_back(preprocess(paper.id, DocPart::p1, split.p1_text, stoplist));
        docs.push_back(preprocess(paper.id, DocPart::p2, split.p2_text, stoplist));
        splits.push_back(std::move(split));
    }

    const EmbeddingModel model = train_pvdm(docs, config.embed);

    RecommendationReport report;
    report.seed = config.embed.seed;
    report.k = config.k;
    report.n = config.n;
    report.target_text =
        compose_target_text(composition, config.challenge_id, config.target_tech_ids);
    report.exclude_text = compose_exclude_text(composition, config.exclude_tech_ids);

    const ProcessedDoc target_doc = preprocess("t_target", DocPart::target_text,
                                               report.target_text.text, stoplist);
    const ProcessedDoc exclude_doc = preprocess("t_exclude", DocPart::exclude_text,
                                                report.exclude_text.text, stoplist);
    const DocVector t_target = infer_vector(model, target_doc.tokens(), config.infer_epochs);
    const DocVector t_exclude = infer_vector(model, exclude_doc.tokens(), config.infer_epochs);

    const SentimentModel sentiment =
        train_nb(load_sentiment_corpus(config.sentiment_corpus_path, stoplist));

    report.scores.reserve(splits.size());
    for (std::size_t i = 0; i < splits.size(); ++i) {
        report.scores.push_back(score_paper(model, sentiment, splits[i], t_target,
                                            t_exclude, stoplist, config.infer_epochs));
        report.titles.emplace(papers[i].id, papers[i].title);
    }
    report.ranking = rank(report.scores, config.k, config.n);

    std::filesystem::create_directories(config.output_dir);
    detail::write_text_file(config.output_dir / "recommendation.json",
                            report_to_json(report).dump(2) + "\n", "pipeline");
    return report;
}

// Evaluate one or more recommendation reports against the corpus labels.
// Writes <out>/evaluation.json and returns the aggregate.
inline EvalReport run_evaluate(const PipelineConfig& config,
                               std::span<const std::filesystem::path> report_paths) {
    const std::string module = "pipeline";
    validate_for_ingest(config);
    if (report_paths.empty())
        throw Error(module, ErrorCategory::empty_input, "no report files given");

    std::set<std::string> relevant;
    for (const auto& paper : load_papers(config.corpus_path))
        if (paper.relevant.value_or(false)) relevant.insert(paper.id);

    std::vector<RunResult> runs;
    runs.reserve(report_paths.size());
    for (const auto& path : report_paths) {
        std::ifstream in(path);
        if (!in) throw Error(module, ErrorCategory::io, "cannot open " + path.string());
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw Error(module, ErrorCategory::parse, path.string() + ": " + e.what());
        }
        if (j.value("format", "") != kRecommendationFormat)
            throw Error(module, ErrorCategory::schema,
                        path.string() + " is not a recommendation report");
        if (j.value("format_version", 0) != kReportFormatVersion)
            throw Error(module, ErrorCategory::version,
                        path.string() + " has unsupported format_version");
        RunResult run;
        run.run_id = path.string();
        run.top_list = j.at("top5").get<std::vector<std::string>>();
        run.relevant = relevant;
        runs.push_back(std::move(run));
    }

    EvalReport report = aggregate(runs);

    nlohmann::ordered_json j;
    j["format"] = kEvaluationFormat;
    j["format_version"] = kReportFormatVersion;
    j["n"] = report.n;
    nlohmann::ordered_json per_run = nlohmann::ordered_json::array();
    for (const auto& run : report.per_run) {
        per_run.push_back({{"run_id", run.run_id},
                           {"find_n", run.find_n},
                           {"top_n", run.top_n},
                           {"reciprocal_rank", run.reciprocal_rank}});
    }
    j["runs"] = std::move(per_run);
    j["avg_find_n"] = report.avg_find_n;
    j["avg_top_n"] = report.avg_top_n;
    j["avg_mrr"] = report.avg_mrr;

    std::filesystem::create_directories(config.output_dir);
    detail::write_text_file(config.output_dir / "evaluation.json", j.dump(2) + "\n", module);
    return report;
}

// --- human-readable tables -------------------------------------------------

inline void print_corpus_summary(std::ostream& out, const CorpusSummary& summary) {
    out << "papers: " << summary.total << "\n";
    for (std::size_t i = 0; i < summary.by_source.size(); ++i)
        out << "  " << std::left << std::setw(15)
            << source_db_name(static_cast<SourceDb>(i)) << summary.by_source[i] << "\n";
    out << "with relevance label: " << summary.with_relevance_label << "\n";
}

inline void print_graph_counts(std::ostream& out, std::string_view title,
                               const GraphCounts& counts) {
    out << title << ": " << counts.nodes << " nodes, " << counts.edges << " edges\n";
    for (std::size_t i = 0; i < counts.nodes_by_label.size(); ++i)
        if (counts.nodes_by_label[i])
            out << "  " << std::left << std::setw(22)
                << node_label_name(static_cast<NodeLabel>(i)) << counts.nodes_by_label[i]
                << "\n";
    for (std::size_t i = 0; i < counts.edges_by_relation.size(); ++i)
        if (counts.edges_by_relation[i])
            out << "  " << std::left << std::setw(22)
                << relation_name(static_cast<Relation>(i)) << counts.edges_by_relation[i]
                << "\n";
}

inline void print_recommendation_table(std::ostream& out,
                                       const RecommendationReport& report) {
    out << "rank  " << std::left << std::setw(12) << "paper" << std::right
        << std::setw(12) << "sim_target" << std::setw(13) << "sim_exclude"
        << "  title\n";
    out << std::fixed << std::setprecision(6);
    std::unordered_map<std::string, const SimilarityScore*> by_id;
    for (const auto& s : report.scores) by_id.emplace(s.paper_id, &s);
    for (std::size_t i = 0; i < report.ranking.top5.size(); ++i) {
        const std::string& id = report.ranking.top5[i];
        const SimilarityScore* score = by_id.at(id);
        std::string title;
        if (auto it = report.titles.find(id); it != report.titles.end()) title = it->second;
        if (title.size() > 48) title = title.substr(0, 45) + "...";
        out << std::left << std::setw(6) << i + 1 << std::setw(12) << id << std::right
            << std::setw(12) << score->sim_target << std::setw(13) << score->sim_exclude
            << "  " << title << "\n";
    }
    out.unsetf(std::ios::floatfield);
    out << std::setprecision(6);
}

inline void print_eval_table(std::ostream& out, const EvalReport& report) {
    out << std::left << std::setw(40) << "run" << std::right << std::setw(8) << "FindN"
        << std::setw(8) << "TopN" << std::setw(8) << "RR" << "\n";
    out << std::fixed << std::setprecision(4);
    for (const auto& run : report.per_run) {
        std::string id = run.run_id;
        if (id.size() > 38) id = "..." + id.substr(id.size() - 35);
        out << std::left << std::setw(40) << id << std::right << std::setw(8)
            << run.find_n << std::setw(8) << run.top_n << std::setw(8)
            << run.reciprocal_rank << "\n";
    }
    out << std::left << std::setw(40) << "average" << std::right << std::setw(8)
        << report.avg_find_n << std::setw(8) << report.avg_top_n << std::setw(8)
        << report.avg_mrr << "\n";
    out.unsetf(std::ios::floatfield);
    out << std::setprecision(6);
}

}  // namespace kgrec
