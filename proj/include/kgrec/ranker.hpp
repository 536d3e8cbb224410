#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "kgrec/corpus.hpp"
#include "kgrec/embed.hpp"
#include "kgrec/errors.hpp"
#include "kgrec/sentiment.hpp"
#include "kgrec/textprep.hpp"

// Per-paper similarity scoring against the target/exclude description vectors
// and the two-round ranking that produces the final candidate list.

namespace kgrec {

struct SimilarityScore {
    std::string paper_id;
    double cos_p1_target = 0.0;
    double cos_p2_target = 0.0;
    double cos_p1_exclude = 0.0;
    double cos_p2_exclude = 0.0;
    double emo_p1 = 0.0;
    double sim_target = 0.0;   // cos(p1,t_target)*emo(p1) + cos(p2,t_target)
    double sim_exclude = 0.0;  // cos(p1,t_exclude)*emo(p1) + cos(p2,t_exclude)
};

// Assemble a score from already-computed vectors and sentiment weight.
inline SimilarityScore compose_score(std::string paper_id, const DocVector& p1,
                                     const DocVector& p2, const DocVector& t_target,
                                     const DocVector& t_exclude, double emo_p1) {
    SimilarityScore score;
    score.paper_id = std::move(paper_id);
    score.cos_p1_target = cosine(p1, t_target);
    score.cos_p2_target = cosine(p2, t_target);
    score.cos_p1_exclude = cosine(p1, t_exclude);
    score.cos_p2_exclude = cosine(p2, t_exclude);
    score.emo_p1 = emo_p1;
    score.sim_target = score.cos_p1_target * score.emo_p1 + score.cos_p2_target;
    score.sim_exclude = score.cos_p1_exclude * score.emo_p1 + score.cos_p2_exclude;
    return score;
}

inline SimilarityScore score_paper(const EmbeddingModel& embed_model,
                                   const SentimentModel& sentiment_model,
                                   const SplitAbstract& split, const DocVector& t_target,
                                   const DocVector& t_exclude, const Stoplist& stoplist,
                                   int infer_epochs = 50) {
    ProcessedDoc p1_doc = preprocess(split.paper_id, DocPart::p1, split.p1_text, stoplist);
    ProcessedDoc p2_doc = preprocess(split.paper_id, DocPart::p2, split.p2_text, stoplist);
    const std::vector<std::string> p1_tokens = p1_doc.tokens();
    DocVector p1 = infer_vector(embed_model, p1_tokens, infer_epochs);
    DocVector p2 = infer_vector(embed_model, p2_doc.tokens(), infer_epochs);
    const double emo_p1 = emo(sentiment_model, p1_tokens);
    return compose_score(split.paper_id, p1, p2, t_target, t_exclude, emo_p1);
}

struct RankedList {
    std::vector<std::string> round1;  // descending sim_target
    int round1_cutoff = 0;            // K
    std::vector<std::string> round2;  // round-1 top-K, ascending sim_exclude
    std::vector<std::string> top5;    // first n of round2
};

// Round 1 sorts descending by sim_target, round 2 re-sorts the top K
// ascending by sim_exclude; ties always break by ascending paper_id.
inline RankedList rank(std::span<const SimilarityScore> scores, int k = 20, int n = 5) {
    const char* module = "ranker";
    if (scores.empty())
        throw Error(module, ErrorCategory::empty_input, "no scores to rank");
    if (n < 1)
        throw Error(module, ErrorCategory::parameter, "final size n must be at least 1");
    if (k < n)
        throw Error(module, ErrorCategory::parameter,
                    "round-1 cutoff k=" + std::to_string(k) +
                        " must be >= final size n=" + std::to_string(n));

    std::vector<const SimilarityScore*> order;
    order.reserve(scores.size());
    for (const auto& s : scores) order.push_back(&s);
    std::stable_sort(order.begin(), order.end(),
                     [](const SimilarityScore* a, const SimilarityScore* b) {
                         if (a->sim_target != b->sim_target)
                             return a->sim_target > b->sim_target;
                         return a->paper_id < b->paper_id;
                     });

    RankedList ranked;
    ranked.round1_cutoff = k;
    ranked.round1.reserve(order.size());
    for (const auto* s : order) ranked.round1.push_back(s->paper_id);

    const std::size_t pool = std::min<std::size_t>(static_cast<std::size_t>(k), order.size());
    std::vector<const SimilarityScore*> second(order.begin(),
                                               order.begin() + static_cast<std::ptrdiff_t>(pool));
    std::stable_sort(second.begin(), second.end(),
                     [](const SimilarityScore* a, const SimilarityScore* b) {
                         if (a->sim_exclude != b->sim_exclude)
                             return a->sim_exclude < b->sim_exclude;
                         return a->paper_id < b->paper_id;
                     });
    ranked.round2.reserve(second.size());
    for (const auto* s : second) ranked.round2.push_back(s->paper_id);

    const std::size_t top = std::min<std::size_t>(static_cast<std::size_t>(n), ranked.round2.size());
    ranked.top5.assign(ranked.round2.begin(),
                       ranked.round2.begin() + static_cast<std::ptrdiff_t>(top));
    return ranked;
}

}  // namespace kgrec
