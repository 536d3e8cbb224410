#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kgrec/config.hpp"
#include "kgrec/errors.hpp"
#include "kgrec/pipeline.hpp"

// kgrec: knowledge-graph-empowered paper recommendation.
//
// Subcommands mirror the pipeline stages: `ingest` validates the candidate
// corpus, `kg` assembles the master/slave graphs, `recommend` runs the full
// scoring and two-round ranking pass, `evaluate` scores report files against
// the corpus relevance labels.

namespace {

struct CliOverrides {
    std::optional<std::string> corpus, master_nodes, master_edges, slave_nodes,
        slave_edges, aliases, stopwords, sentiment_corpus, challenge_id, out;
    std::vector<std::string> target_tech_ids, exclude_tech_ids;
    std::optional<int> dim, window, negative, epochs, min_count, infer_epochs, k, n;
    std::optional<double> lr_start, lr_end;
    std::optional<std::int64_t> seed;
};

void add_override_flags(CLI::App& cmd, CliOverrides& o) {
    cmd.add_option("--corpus", o.corpus, "Paper corpus CSV");
    cmd.add_option("--master-nodes", o.master_nodes, "Master KG nodes CSV");
    cmd.add_option("--master-edges", o.master_edges, "Master KG edges CSV");
    cmd.add_option("--slave-nodes", o.slave_nodes, "Slave KG nodes CSV");
    cmd.add_option("--slave-edges", o.slave_edges, "Slave KG edges CSV");
    cmd.add_option("--aliases", o.aliases, "Entity alias CSV (alias,canonical)");
    cmd.add_option("--stopwords", o.stopwords, "Stopword file (one token per line)");
    cmd.add_option("--sentiment-corpus", o.sentiment_corpus, "Labeled sentiment CSV");
    cmd.add_option("--challenge", o.challenge_id, "Target challenge node id");
    cmd.add_option("--target-tech", o.target_tech_ids, "Target technology node id (repeatable)");
    cmd.add_option("--exclude-tech", o.exclude_tech_ids, "Excluded technology node id (repeatable)");
    cmd.add_option("--dim", o.dim, "Embedding dimension");
    cmd.add_option("--window", o.window, "Context window radius");
    cmd.add_option("--negative", o.negative, "Negative samples per position");
    cmd.add_option("--epochs", o.epochs, "Training epochs");
    cmd.add_option("--lr-start", o.lr_start, "Initial learning rate");
    cmd.add_option("--lr-end", o.lr_end, "Final learning rate");
    cmd.add_option("--min-count", o.min_count, "Vocabulary frequency threshold");
    cmd.add_option("--infer-epochs", o.infer_epochs, "Inference epochs per document");
    cmd.add_option("-k,--round1-cutoff", o.k, "Round-1 cutoff");
    cmd.add_option("-n,--top-size", o.n, "Final list size");
}

void apply_overrides(kgrec::PipelineConfig& config, const CliOverrides& o,
                     const std::optional<std::int64_t>& seed,
                     const std::optional<std::string>& out) {
    if (o.corpus) config.corpus_path = *o.corpus;
    if (o.master_nodes) config.master_nodes_path = *o.master_nodes;
    if (o.master_edges) config.master_edges_path = *o.master_edges;
    if (o.slave_nodes) config.slave_nodes_path = *o.slave_nodes;
    if (o.slave_edges) config.slave_edges_path = *o.slave_edges;
    if (o.aliases) config.alias_path = *o.aliases;
    if (o.stopwords) config.stopword_path = *o.stopwords;
    if (o.sentiment_corpus) config.sentiment_corpus_path = *o.sentiment_corpus;
    if (o.challenge_id) config.challenge_id = *o.challenge_id;
    if (!o.target_tech_ids.empty()) config.target_tech_ids = o.target_tech_ids;
    if (!o.exclude_tech_ids.empty()) config.exclude_tech_ids = o.exclude_tech_ids;
    if (o.dim) config.embed.dim = *o.dim;
    if (o.window) config.embed.window = *o.window;
    if (o.negative) config.embed.negative = *o.negative;
    if (o.epochs) config.embed.epochs = *o.epochs;
    if (o.lr_start) config.embed.lr_start = *o.lr_start;
    if (o.lr_end) config.embed.lr_end = *o.lr_end;
    if (o.min_count) config.embed.min_count = *o.min_count;
    if (o.infer_epochs) config.infer_epochs = *o.infer_epochs;
    if (o.k) config.k = *o.k;
    if (o.n) config.n = *o.n;
    if (seed) config.embed.seed = static_cast<std::uint64_t>(*seed);
    if (out) config.output_dir = *out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"knowledge-graph-empowered paper recommendation"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::optional<std::int64_t> seed;
    std::optional<std::string> out_dir;
    app.add_option("--config", config_path, "Flat key = value configuration file")
        ->expected(1);
    app.add_option("--seed", seed, "Override the run seed");
    app.add_option("--out", out_dir, "Override the output directory");

    CliOverrides overrides;
    CLI::App* cmd_ingest = app.add_subcommand("ingest", "Load and validate the paper corpus");
    CLI::App* cmd_kg = app.add_subcommand("kg", "Import, align and summarize the knowledge graphs");
    CLI::App* cmd_recommend = app.add_subcommand("recommend", "Run the recommendation pipeline");
    CLI::App* cmd_evaluate = app.add_subcommand("evaluate", "Evaluate recommendation reports");
    for (CLI::App* cmd : {cmd_ingest, cmd_kg, cmd_recommend, cmd_evaluate}) {
        add_override_flags(*cmd, overrides);
        cmd->fallthrough();  // global --config/--seed/--out may follow the subcommand
    }

    std::vector<std::string> report_files;
    cmd_evaluate->add_option("reports", report_files, "recommendation.json files")
        ->expected(-1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        kgrec::PipelineConfig config;
        if (config_path) config = kgrec::load_config(*config_path);
        apply_overrides(config, overrides, seed, out_dir);

        if (cmd_ingest->parsed()) {
            kgrec::CorpusSummary summary = kgrec::run_ingest(config);
            kgrec::print_corpus_summary(std::cout, summary);
        } else if (cmd_kg->parsed()) {
            kgrec::KgSummary summary = kgrec::run_kg(config);
            kgrec::print_graph_counts(std::cout, "master", summary.master);
            kgrec::print_graph_counts(std::cout, "slave", summary.slave);
        } else if (cmd_recommend->parsed()) {
            kgrec::RecommendationReport report = kgrec::run_recommend(config);
            kgrec::print_recommendation_table(std::cout, report);
            std::cout << "report: "
                      << (config.output_dir / "recommendation.json").string() << "\n";
        } else if (cmd_evaluate->parsed()) {
            if (report_files.empty())
                throw kgrec::Error("cli", kgrec::ErrorCategory::config,
                                   "evaluate needs at least one report file");
            std::vector<std::filesystem::path> paths(report_files.begin(),
                                                     report_files.end());
            kgrec::EvalReport report = kgrec::run_evaluate(config, paths);
            kgrec::print_eval_table(std::cout, report);
            std::cout << "report: " << (config.output_dir / "evaluation.json").string()
                      << "\n";
        }
        return 0;
    } catch (const kgrec::Error& e) {
        std::cerr << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
