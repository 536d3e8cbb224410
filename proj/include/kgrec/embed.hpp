#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgrec/errors.hpp"
#include "kgrec/textprep.hpp"

// PV-DM paragraph vectors: the document vector joins the averaged context
// word vectors to predict the center token, trained by SGD with negative
// sampling. Single-threaded on purpose; a fixed seed reproduces every bit.

namespace kgrec {

struct EmbedParams {
    int dim = 100;
    int window = 5;
    int negative = 5;
    int epochs = 40;
    double lr_start = 0.025;
    double lr_end = 0.0001;
    int min_count = 2;
    std::uint64_t seed = 0;

    void validate() const {
        const char* module = "embed";
        if (dim < 1) throw Error(module, ErrorCategory::parameter, "dim must be positive");
        if (window < 1)
            throw Error(module, ErrorCategory::parameter, "window must be positive");
        if (negative < 0)
            throw Error(module, ErrorCategory::parameter, "negative must be non-negative");
        if (epochs < 1)
            throw Error(module, ErrorCategory::parameter, "epochs must be positive");
        if (min_count < 1)
            throw Error(module, ErrorCategory::parameter, "min_count must be positive");
        if (!(lr_start >= lr_end) || !(lr_end > 0.0))
            throw Error(module, ErrorCategory::parameter,
                        "learning rates must satisfy lr_start >= lr_end > 0");
    }
};

struct DocVector {
    std::vector<double> values;
};

struct Vocab {
    std::vector<std::string> tokens;      // index -> token, first-appearance order
    std::vector<std::int64_t> counts;     // index -> corpus frequency
    std::unordered_map<std::string, std::int32_t> index;

    std::size_t size() const { return tokens.size(); }

    std::int32_t lookup(std::string_view token) const {
        auto it = index.find(std::string(token));
        return it == index.end() ? -1 : it->second;
    }
};

inline Vocab build_vocab(std::span<const ProcessedDoc> docs, int min_count) {
    std::unordered_map<std::string, std::int64_t> counts;
    std::vector<std::string> order;
    for (const auto& doc : docs) {
        for (const auto& pair : doc.pairs) {
            auto [it, inserted] = counts.emplace(pair.token, 0);
            if (inserted) order.push_back(pair.token);
            ++it->second;
        }
    }
    Vocab vocab;
    for (const auto& token : order) {
        std::int64_t count = counts.at(token);
        if (count < min_count) continue;
        vocab.index.emplace(token, static_cast<std::int32_t>(vocab.tokens.size()));
        vocab.tokens.push_back(token);
        vocab.counts.push_back(count);
    }
    if (vocab.tokens.empty())
        throw Error("embed", ErrorCategory::empty_vocab,
                    "no token reaches min_count=" + std::to_string(min_count));
    return vocab;
}

struct EmbeddingModel {
    EmbedParams params;
    Vocab vocab;
    std::vector<double> word_vectors;    // |V| x dim, input layer
    std::vector<double> output_vectors;  // |V| x dim, negative-sampling output layer
    std::vector<std::string> doc_keys;
    std::unordered_map<std::string, std::size_t> doc_index;
    std::vector<double> doc_vectors;     // |D| x dim
    std::vector<double> epoch_losses;    // mean per-position loss, training diagnostic

    std::span<const double> word_vector(std::size_t i) const {
        return {word_vectors.data() + i * static_cast<std::size_t>(params.dim),
                static_cast<std::size_t>(params.dim)};
    }
    DocVector doc_vector(std::string_view key) const {
        auto it = doc_index.find(std::string(key));
        if (it == doc_index.end())
            throw Error("embed", ErrorCategory::referential,
                        "unknown document \"" + std::string(key) + "\"");
        const double* base = doc_vectors.data() + it->second * static_cast<std::size_t>(params.dim);
        return DocVector{{base, base + params.dim}};
    }
};

// Training documents are keyed by id plus part so p1 and p2 of one paper stay
// distinct documents.
inline std::string doc_key(const ProcessedDoc& doc) {
    return doc.doc_id + "#" + std::string(doc_part_name(doc.part));
}

namespace detail {

// 53-bit uniform draw in [0,1); mt19937_64 keeps it identical across platforms.
inline double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(1 + e^x) without overflow.
inline double softplus(double x) {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// Cumulative unigram^0.75 table for negative sampling.
struct NoiseTable {
    std::vector<double> cumulative;
    double total = 0.0;

    explicit NoiseTable(const Vocab& vocab) {
        cumulative.reserve(vocab.size());
        for (std::int64_t count : vocab.counts) {
            total += std::pow(static_cast<double>(count), 0.75);
            cumulative.push_back(total);
        }
    }

    std::int32_t sample(std::mt19937_64& rng) const {
        double u = next_unit(rng) * total;
        auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) --it;
        return static_cast<std::int32_t>(it - cumulative.begin());
    }
};

}  // namespace detail

struct NsTarget {
    std::int32_t index;  // output-layer row
    double label;        // 1 center token, 0 noise
};

struct NsGradients {
    double loss = 0.0;
    std::vector<double> grad_context;                               // dL/dh
    std::vector<std::pair<std::int32_t, std::vector<double>>> grad_output;  // dL/dv'
};

// Loss and exact gradients of one negative-sampling step at the current
// parameter point: L = sum over targets of -[l log s(v'.h) + (1-l) log(1-s(v'.h))].
inline NsGradients ns_loss_and_gradients(std::span<const double> h,
                                         std::span<const double> output_vectors, int dim,
                                         std::span<const NsTarget> targets) {
    NsGradients result;
    result.grad_context.assign(static_cast<std::size_t>(dim), 0.0);
    for (const NsTarget& target : targets) {
        const double* row = output_vectors.data() + static_cast<std::size_t>(target.index) * dim;
        double x = 0.0;
        for (int c = 0; c < dim; ++c) x += h[static_cast<std::size_t>(c)] * row[c];
        result.loss += target.label > 0.5 ? detail::softplus(-x) : detail::softplus(x);
        double residual = detail::sigmoid(x) - target.label;  // dL/dx
        std::vector<double> grad_row(static_cast<std::size_t>(dim));
        for (int c = 0; c < dim; ++c) {
            result.grad_context[static_cast<std::size_t>(c)] += residual * row[c];
            grad_row[static_cast<std::size_t>(c)] = residual * h[static_cast<std::size_t>(c)];
        }
        result.grad_output.emplace_back(target.index, std::move(grad_row));
    }
    return result;
}

namespace detail {

inline void seed_uniform(std::vector<double>& m, std::size_t n, int dim,
                         std::mt19937_64& rng) {
    m.resize(n * static_cast<std::size_t>(dim));
    const double scale = 1.0 / dim;
    for (auto& v : m) v = (next_unit(rng) - 0.5) * scale;
}

struct EncodedDoc {
    std::vector<std::int32_t> tokens;
};

inline std::vector<EncodedDoc> encode_docs(std::span<const ProcessedDoc> docs,
                                           const Vocab& vocab) {
    std::vector<EncodedDoc> encoded(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        for (const auto& pair : docs[d].pairs) {
            std::int32_t idx = vocab.lookup(pair.token);
            if (idx >= 0) encoded[d].tokens.push_back(idx);
        }
    }
    return encoded;
}

// One SGD step at `pos` in `tokens`. Context = window words around pos plus
// the document vector, averaged; every input receives the exact mean-split
// gradient. During inference `mutable_words`/`mutable_outputs` are null and
// only the document vector moves.
inline double pvdm_step(const std::vector<std::int32_t>& tokens, std::size_t pos,
                        const EmbedParams& params, const NoiseTable& noise,
                        const std::vector<double>& word_vectors,
                        const std::vector<double>& output_vectors, double* doc_vec,
                        double lr, std::mt19937_64& rng,
                        std::vector<double>* mutable_words,
                        std::vector<double>* mutable_outputs) {
    const int dim = params.dim;
    const std::int32_t center = tokens[pos];

    std::vector<std::int32_t> context;
    const std::size_t begin = pos >= static_cast<std::size_t>(params.window)
                                  ? pos - static_cast<std::size_t>(params.window)
                                  : 0;
    const std::size_t end = std::min(tokens.size(), pos + static_cast<std::size_t>(params.window) + 1);
    for (std::size_t i = begin; i < end; ++i)
        if (i != pos) context.push_back(tokens[i]);

    const double inputs = static_cast<double>(context.size() + 1);
    std::vector<double> h(static_cast<std::size_t>(dim), 0.0);
    for (std::int32_t w : context) {
        const double* row = word_vectors.data() + static_cast<std::size_t>(w) * dim;
        for (int c = 0; c < dim; ++c) h[static_cast<std::size_t>(c)] += row[c];
    }
    for (int c = 0; c < dim; ++c)
        h[static_cast<std::size_t>(c)] = (h[static_cast<std::size_t>(c)] + doc_vec[c]) / inputs;

    std::vector<NsTarget> targets;
    targets.push_back({center, 1.0});
    for (int n = 0; n < params.negative; ++n) {
        std::int32_t draw = noise.sample(rng);
        if (draw == center) continue;
        targets.push_back({draw, 0.0});
    }

    NsGradients grads = ns_loss_and_gradients(h, output_vectors, dim, targets);

    if (mutable_outputs) {
        for (const auto& [index, grad_row] : grads.grad_output) {
            double* row = mutable_outputs->data() + static_cast<std::size_t>(index) * dim;
            for (int c = 0; c < dim; ++c) row[c] -= lr * grad_row[static_cast<std::size_t>(c)];
        }
    }
    for (int c = 0; c < dim; ++c) {
        const double step = lr * grads.grad_context[static_cast<std::size_t>(c)] / inputs;
        if (mutable_words)
            for (std::int32_t w : context)
                (*mutable_words)[static_cast<std::size_t>(w) * dim + static_cast<std::size_t>(c)] -= step;
        doc_vec[c] -= step;
    }
    return grads.loss;
}

}  // namespace detail

inline EmbeddingModel train_pvdm(std::span<const ProcessedDoc> docs,
                                 const EmbedParams& params) {
    params.validate();
    EmbeddingModel model;
    model.params = params;
    model.vocab = build_vocab(docs, params.min_count);

    const std::size_t v = model.vocab.size();
    std::mt19937_64 rng(params.seed);
    detail::seed_uniform(model.word_vectors, v, params.dim, rng);
    model.output_vectors.assign(v * static_cast<std::size_t>(params.dim), 0.0);

    model.doc_keys.reserve(docs.size());
    for (const auto& doc : docs) {
        std::string key = doc_key(doc);
        if (!model.doc_index.emplace(key, model.doc_keys.size()).second)
            throw Error("embed", ErrorCategory::duplicate_id,
                        "document \"" + key + "\" appears twice");
        model.doc_keys.push_back(std::move(key));
    }
    detail::seed_uniform(model.doc_vectors, model.doc_keys.size(), params.dim, rng);

    const auto encoded = detail::encode_docs(docs, model.vocab);
    const detail::NoiseTable noise(model.vocab);

    std::uint64_t total_updates = 0;
    for (const auto& doc : encoded) total_updates += doc.tokens.size();
    total_updates *= static_cast<std::uint64_t>(params.epochs);

    std::uint64_t update = 0;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        double epoch_loss = 0.0;
        std::uint64_t positions = 0;
        for (std::size_t d = 0; d < encoded.size(); ++d) {
            const auto& tokens = encoded[d].tokens;
            double* doc_vec =
                model.doc_vectors.data() + d * static_cast<std::size_t>(params.dim);
            for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
                const double progress =
                    total_updates > 1
                        ? static_cast<double>(update) / static_cast<double>(total_updates - 1)
                        : 0.0;
                const double lr = params.lr_start + (params.lr_end - params.lr_start) * progress;
                epoch_loss += detail::pvdm_step(
                    tokens, pos, params, noise, model.word_vectors, model.output_vectors,
                    doc_vec, lr, rng, &model.word_vectors, &model.output_vectors);
                ++update;
                ++positions;
            }
        }
        model.epoch_losses.push_back(positions ? epoch_loss / static_cast<double>(positions) : 0.0);
    }
    return model;
}

// Fresh document vector trained against frozen word and output vectors.
// Empty or all-out-of-vocabulary input yields the zero vector.
inline DocVector infer_vector(const EmbeddingModel& model,
                              std::span<const std::string> tokens, int infer_epochs = 50) {
    if (infer_epochs < 1)
        throw Error("embed", ErrorCategory::parameter, "infer_epochs must be positive");
    const EmbedParams& params = model.params;

    std::vector<std::int32_t> encoded;
    encoded.reserve(tokens.size());
    for (const auto& token : tokens) {
        std::int32_t idx = model.vocab.lookup(token);
        if (idx >= 0) encoded.push_back(idx);
    }
    if (encoded.empty())
        return DocVector{std::vector<double>(static_cast<std::size_t>(params.dim), 0.0)};

    // Zero start: the fresh vector carries no shared random component, so two
    // inferred vectors differ only through their tokens. The seeded RNG still
    // drives the negative draws.
    std::mt19937_64 rng(params.seed);
    std::vector<double> doc_vec(static_cast<std::size_t>(params.dim), 0.0);

    const detail::NoiseTable noise(model.vocab);
    const std::uint64_t total_updates =
        static_cast<std::uint64_t>(infer_epochs) * encoded.size();
    std::uint64_t update = 0;
    for (int epoch = 0; epoch < infer_epochs; ++epoch) {
        for (std::size_t pos = 0; pos < encoded.size(); ++pos) {
            const double progress =
                total_updates > 1
                    ? static_cast<double>(update) / static_cast<double>(total_updates - 1)
                    : 0.0;
            const double lr = params.lr_start + (params.lr_end - params.lr_start) * progress;
            detail::pvdm_step(encoded, pos, params, noise, model.word_vectors,
                              model.output_vectors, doc_vec.data(), lr, rng,
                              /*mutable_words=*/nullptr, /*mutable_outputs=*/nullptr);
            ++update;
        }
    }
    return DocVector{std::move(doc_vec)};
}

// dot(a,b) / (|a||b|); zero if either norm is zero.
inline double cosine(const DocVector& a, const DocVector& b) {
    if (a.values.size() != b.values.size())
        throw Error("embed", ErrorCategory::dimension,
                    "vector lengths differ: " + std::to_string(a.values.size()) + " vs " +
                        std::to_string(b.values.size()));
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        dot += a.values[i] * b.values[i];
        na += a.values[i] * a.values[i];
        nb += b.values[i] * b.values[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

// --- model persistence ---------------------------------------------------
// Little-endian binary artifact; loading rejects unknown versions.

namespace detail {

inline constexpr char kModelMagic[8] = {'K', 'G', 'R', 'E', 'C', 'E', 'M', 'B'};
inline constexpr std::uint32_t kModelVersion = 1;

template <typename T>
void put(std::ofstream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    return value;
}

inline void put_string(std::ofstream& out, const std::string& s) {
    put(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string get_string(std::ifstream& in) {
    auto n = get<std::uint32_t>(in);
    std::string s(n, '\0');
    in.read(s.data(), n);
    return s;
}

}  // namespace detail

inline void save_model(const EmbeddingModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("embed", ErrorCategory::io, "cannot write " + path.string());
    out.write(detail::kModelMagic, sizeof(detail::kModelMagic));
    detail::put(out, detail::kModelVersion);
    detail::put(out, model.params.dim);
    detail::put(out, model.params.window);
    detail::put(out, model.params.negative);
    detail::put(out, model.params.epochs);
    detail::put(out, model.params.lr_start);
    detail::put(out, model.params.lr_end);
    detail::put(out, model.params.min_count);
    detail::put(out, model.params.seed);

    detail::put(out, static_cast<std::uint64_t>(model.vocab.size()));
    for (std::size_t i = 0; i < model.vocab.size(); ++i) {
        detail::put_string(out, model.vocab.tokens[i]);
        detail::put(out, model.vocab.counts[i]);
    }
    auto put_matrix = [&](const std::vector<double>& m) {
        detail::put(out, static_cast<std::uint64_t>(m.size()));
        out.write(reinterpret_cast<const char*>(m.data()),
                  static_cast<std::streamsize>(m.size() * sizeof(double)));
    };
    put_matrix(model.word_vectors);
    put_matrix(model.output_vectors);
    detail::put(out, static_cast<std::uint64_t>(model.doc_keys.size()));
    for (const auto& key : model.doc_keys) detail::put_string(out, key);
    put_matrix(model.doc_vectors);
    if (!out) throw Error("embed", ErrorCategory::io, "write failed for " + path.string());
}

inline EmbeddingModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("embed", ErrorCategory::io, "cannot open " + path.string());
    char magic[sizeof(detail::kModelMagic)] = {};
    in.read(magic, sizeof(magic));
    if (std::memcmp(magic, detail::kModelMagic, sizeof(magic)) != 0)
        throw Error("embed", ErrorCategory::version,
                    path.string() + " is not an embedding model artifact");
    auto version = detail::get<std::uint32_t>(in);
    if (version != detail::kModelVersion)
        throw Error("embed", ErrorCategory::version,
                    "unsupported model version " + std::to_string(version) + " (expected " +
                        std::to_string(detail::kModelVersion) + ")");

    EmbeddingModel model;
    model.params.dim = detail::get<int>(in);
    model.params.window = detail::get<int>(in);
    model.params.negative = detail::get<int>(in);
    model.params.epochs = detail::get<int>(in);
    model.params.lr_start = detail::get<double>(in);
    model.params.lr_end = detail::get<double>(in);
    model.params.min_count = detail::get<int>(in);
    model.params.seed = detail::get<std::uint64_t>(in);

    auto vocab_size = detail::get<std::uint64_t>(in);
    for (std::uint64_t i = 0; i < vocab_size; ++i) {
        std::string token = detail::get_string(in);
        auto count = detail::get<std::int64_t>(in);
        model.vocab.index.emplace(token, static_cast<std::int32_t>(i));
        model.vocab.tokens.push_back(std::move(token));
        model.vocab.counts.push_back(count);
    }
    auto get_matrix = [&](std::vector<double>& m) {
        auto n = detail::get<std::uint64_t>(in);
        m.resize(n);
        in.read(reinterpret_cast<char*>(m.data()),
                static_cast<std::streamsize>(n * sizeof(double)));
    };
    get_matrix(model.word_vectors);
    get_matrix(model.output_vectors);
    auto doc_count = detail::get<std::uint64_t>(in);
    for (std::uint64_t i = 0; i < doc_count; ++i) {
        std::string key = detail::get_string(in);
        model.doc_index.emplace(key, i);
        model.doc_keys.push_back(std::move(key));
    }
    get_matrix(model.doc_vectors);
    if (!in)
        throw Error("embed", ErrorCategory::parse, path.string() + " is truncated");
    return model;
}

}  // namespace kgrec
