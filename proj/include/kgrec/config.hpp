#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "kgrec/embed.hpp"
#include "kgrec/errors.hpp"
#include "kgrec/strutil.hpp"

// Flat key = value run configuration. Command-line flags override file values.

namespace kgrec {

struct PipelineConfig {
    std::filesystem::path corpus_path;
    std::filesystem::path master_nodes_path;
    std::filesystem::path master_edges_path;
    std::filesystem::path slave_nodes_path;
    std::filesystem::path slave_edges_path;
    std::optional<std::filesystem::path> alias_path;
    std::optional<std::filesystem::path> stopword_path;
    std::filesystem::path sentiment_corpus_path;
    std::string challenge_id;
    std::vector<std::string> target_tech_ids;
    std::vector<std::string> exclude_tech_ids;
    EmbedParams embed;
    int infer_epochs = 50;
    int k = 20;  // round-1 cutoff
    int n = 5;   // final list size
    std::filesystem::path output_dir = "out";
};

namespace detail {

constexpr const char* kConfigModule = "config";

inline long long parse_int(const std::string& value, const std::string& key) {
    long long out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw Error(kConfigModule, ErrorCategory::config,
                    "key \"" + key + "\" expects an integer, got \"" + value + "\"");
    return out;
}

inline double parse_real(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        double out = std::stod(value, &used);
        if (used == value.size()) return out;
    } catch (const std::exception&) {
    }
    throw Error(kConfigModule, ErrorCategory::config,
                "key \"" + key + "\" expects a number, got \"" + value + "\"");
}

}  // namespace detail

inline void apply_config_key(PipelineConfig& config, const std::string& key,
                             const std::string& value) {
    using detail::parse_int;
    using detail::parse_real;
    if (key == "corpus") config.corpus_path = value;
    else if (key == "master_nodes") config.master_nodes_path = value;
    else if (key == "master_edges") config.master_edges_path = value;
    else if (key == "slave_nodes") config.slave_nodes_path = value;
    else if (key == "slave_edges") config.slave_edges_path = value;
    else if (key == "aliases") config.alias_path = value;
    else if (key == "stopwords") config.stopword_path = value;
    else if (key == "sentiment_corpus") config.sentiment_corpus_path = value;
    else if (key == "challenge_id") config.challenge_id = value;
    else if (key == "target_tech_ids") config.target_tech_ids = detail::split_list(value, ',');
    else if (key == "exclude_tech_ids") config.exclude_tech_ids = detail::split_list(value, ',');
    else if (key == "dim") config.embed.dim = static_cast<int>(parse_int(value, key));
    else if (key == "window") config.embed.window = static_cast<int>(parse_int(value, key));
    else if (key == "negative") config.embed.negative = static_cast<int>(parse_int(value, key));
    else if (key == "epochs") config.embed.epochs = static_cast<int>(parse_int(value, key));
    else if (key == "lr_start") config.embed.lr_start = parse_real(value, key);
    else if (key == "lr_end") config.embed.lr_end = parse_real(value, key);
    else if (key == "min_count") config.embed.min_count = static_cast<int>(parse_int(value, key));
    else if (key == "seed") config.embed.seed = static_cast<std::uint64_t>(parse_int(value, key));
    else if (key == "infer_epochs") config.infer_epochs = static_cast<int>(parse_int(value, key));
    else if (key == "k") config.k = static_cast<int>(parse_int(value, key));
    else if (key == "n") config.n = static_cast<int>(parse_int(value, key));
    else if (key == "out") config.output_dir = value;
    else
        throw Error(detail::kConfigModule, ErrorCategory::config,
                    "unknown key \"" + key + "\"");
}

inline PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(detail::kConfigModule, ErrorCategory::config,
                    "cannot open " + path.string());
    PipelineConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = detail::trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::size_t eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw Error(detail::kConfigModule, ErrorCategory::config,
                        path.filename().string() + ":" + std::to_string(line_no) +
                            ": expected key = value");
        std::string key = detail::trim(trimmed.substr(0, eq));
        std::string value = detail::trim(trimmed.substr(eq + 1));
        try {
            apply_config_key(config, key, value);
        } catch (const Error& e) {
            throw Error(detail::kConfigModule, ErrorCategory::config,
                        path.filename().string() + ":" + std::to_string(line_no) + ": " +
                            e.what());
        }
    }
    return config;
}

namespace detail {

inline void require_file(const std::filesystem::path& path, const std::string& key) {
    if (path.empty())
        throw Error(kConfigModule, ErrorCategory::config, "missing required key \"" + key + "\"");
    if (!std::filesystem::exists(path))
        throw Error(kConfigModule, ErrorCategory::config,
                    "key \"" + key + "\": file not found: " + path.string());
}

}  // namespace detail

inline void validate_for_ingest(const PipelineConfig& config) {
    detail::require_file(config.corpus_path, "corpus");
}

inline void validate_for_kg(const PipelineConfig& config) {
    detail::require_file(config.master_nodes_path, "master_nodes");
    detail::require_file(config.master_edges_path, "master_edges");
    detail::require_file(config.slave_nodes_path, "slave_nodes");
    detail::require_file(config.slave_edges_path, "slave_edges");
    if (config.alias_path) detail::require_file(*config.alias_path, "aliases");
}

inline void validate_for_recommend(const PipelineConfig& config) {
    validate_for_ingest(config);
    validate_for_kg(config);
    detail::require_file(config.sentiment_corpus_path, "sentiment_corpus");
    if (config.stopword_path) detail::require_file(*config.stopword_path, "stopwords");
    if (config.challenge_id.empty())
        throw Error(detail::kConfigModule, ErrorCategory::config,
                    "missing required key \"challenge_id\"");
    if (config.target_tech_ids.empty())
        throw Error(detail::kConfigModule, ErrorCategory::config,
                    "missing required key \"target_tech_ids\"");
    if (config.exclude_tech_ids.empty())
        throw Error(detail::kConfigModule, ErrorCategory::config,
                    "missing required key \"exclude_tech_ids\"");
    if (config.n < 1)
        throw Error(detail::kConfigModule, ErrorCategory::parameter, "n must be at least 1");
    if (config.k < config.n)
        throw Error(detail::kConfigModule, ErrorCategory::parameter,
                    "k must be >= n (got k=" + std::to_string(config.k) +
                        ", n=" + std::to_string(config.n) + ")");
    if (config.infer_epochs < 1)
        throw Error(detail::kConfigModule, ErrorCategory::parameter,
                    "infer_epochs must be positive");
    config.embed.validate();
}

}  // namespace kgrec
