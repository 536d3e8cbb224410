#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgrec/csv.hpp"
#include "kgrec/errors.hpp"
#include "kgrec/textprep.hpp"

// Multinomial Naive Bayes over {positive, negative} with Laplace smoothing.
// It supplies the emo(p1) weight that lets a negatively phrased first half
// of an abstract push the similarity score down instead of up.

namespace kgrec {

enum class Polarity { positive, negative };

struct LabeledDoc {
    std::vector<std::string> tokens;
    Polarity label = Polarity::positive;
};

struct SentimentModel {
    double log_prior_positive = 0.0;
    double log_prior_negative = 0.0;
    // token -> (log P(token|pos), log P(token|neg)); unseen tokens share UNK.
    std::unordered_map<std::string, std::pair<double, double>> token_log_likelihoods;
    double unk_log_likelihood_positive = 0.0;
    double unk_log_likelihood_negative = 0.0;
    double alpha = 1.0;
    std::size_t vocab_size = 0;
};

inline SentimentModel train_nb(std::span<const LabeledDoc> docs, double alpha = 1.0) {
    const char* module = "sentiment";
    if (!(alpha > 0.0))
        throw Error(module, ErrorCategory::parameter, "alpha must be positive");

    std::size_t doc_count[2] = {0, 0};
    std::int64_t token_total[2] = {0, 0};
    std::unordered_map<std::string, std::array<std::int64_t, 2>> counts;
    for (const auto& doc : docs) {
        const std::size_t cls = doc.label == Polarity::positive ? 0 : 1;
        ++doc_count[cls];
        for (const auto& token : doc.tokens) {
            ++counts[token][cls];
            ++token_total[cls];
        }
    }
    if (doc_count[0] == 0 || doc_count[1] == 0)
        throw Error(module, ErrorCategory::missing_class,
                    std::string("no ") + (doc_count[0] == 0 ? "positive" : "negative") +
                        " documents in the training corpus");

    SentimentModel model;
    model.alpha = alpha;
    model.vocab_size = counts.size();
    const double total_docs = static_cast<double>(doc_count[0] + doc_count[1]);
    model.log_prior_positive = std::log(doc_count[0] / total_docs);
    model.log_prior_negative = std::log(doc_count[1] / total_docs);

    // One shared UNK pseudo-token per class joins the vocabulary mass.
    const double denom_pos = static_cast<double>(token_total[0]) +
                             alpha * static_cast<double>(model.vocab_size + 1);
    const double denom_neg = static_cast<double>(token_total[1]) +
                             alpha * static_cast<double>(model.vocab_size + 1);
    for (const auto& [token, by_class] : counts) {
        model.token_log_likelihoods.emplace(
            token, std::make_pair(std::log((by_class[0] + alpha) / denom_pos),
                                  std::log((by_class[1] + alpha) / denom_neg)));
    }
    model.unk_log_likelihood_positive = std::log(alpha / denom_pos);
    model.unk_log_likelihood_negative = std::log(alpha / denom_neg);
    return model;
}

struct PosteriorDist {
    double positive = 0.0;
    double negative = 0.0;
};

inline PosteriorDist prob_classify(const SentimentModel& model,
                                   std::span<const std::string> tokens) {
    double log_pos = model.log_prior_positive;
    double log_neg = model.log_prior_negative;
    for (const auto& token : tokens) {
        auto it = model.token_log_likelihoods.find(token);
        if (it != model.token_log_likelihoods.end()) {
            log_pos += it->second.first;
            log_neg += it->second.second;
        } else {
            log_pos += model.unk_log_likelihood_positive;
            log_neg += model.unk_log_likelihood_negative;
        }
    }
    // Renormalize in log space; anchoring on the max keeps exp() in range.
    const double anchor = std::max(log_pos, log_neg);
    const double wp = std::exp(log_pos - anchor);
    const double wn = std::exp(log_neg - anchor);
    return {wp / (wp + wn), wn / (wp + wn)};
}

// emo = P(positive) - P(negative) in [-1, 1]; empty input is neutral.
inline double emo(const SentimentModel& model, std::span<const std::string> tokens) {
    if (tokens.empty()) return 0.0;
    PosteriorDist posterior = prob_classify(model, tokens);
    return posterior.positive - posterior.negative;
}

// Sentiment corpus CSV: label,text with label in {positive, negative}. Text
// runs through the same preprocessing as abstracts before training.
inline std::vector<LabeledDoc> load_sentiment_corpus(const std::filesystem::path& path,
                                                     const Stoplist& stoplist) {
    const std::string module = "sentiment";
    csv::Table table = csv::read_file(path, module);
    const std::size_t c_label = csv::column(table, "label", module);
    const std::size_t c_text = csv::column(table, "text", module);
    std::vector<LabeledDoc> docs;
    docs.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string& label = table.rows[r][c_label];
        LabeledDoc doc;
        if (label == "positive")
            doc.label = Polarity::positive;
        else if (label == "negative")
            doc.label = Polarity::negative;
        else
            throw Error(module, ErrorCategory::schema,
                        "label must be positive or negative, got \"" + label +
                            "\" (line " + std::to_string(table.row_lines[r]) + ")");
        doc.tokens = stem(remove_stopwords(tokenize(table.rows[r][c_text]), stoplist));
        docs.push_back(std::move(doc));
    }
    return docs;
}

}  // namespace kgrec
