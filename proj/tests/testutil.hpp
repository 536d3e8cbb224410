#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "kgrec/embed.hpp"
#include "kgrec/textprep.hpp"

// Shared helpers for the test suites.

namespace testutil {

// Self-cleaning unique directory under the system temp root.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("kgrec_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

  private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Two disjoint 50-token vocabularies, `docs_per_topic` documents each.
inline std::vector<kgrec::ProcessedDoc> two_topic_corpus(std::uint64_t seed,
                                                         int docs_per_topic = 20,
                                                         int vocab_per_topic = 50,
                                                         int tokens_per_doc = 40) {
    std::mt19937_64 rng(seed);
    std::vector<kgrec::ProcessedDoc> docs;
    for (char topic : {'a', 'b'}) {
        for (int d = 0; d < docs_per_topic; ++d) {
            kgrec::ProcessedDoc doc;
            doc.doc_id = std::string(1, topic) + std::to_string(d);
            doc.part = kgrec::DocPart::p1;
            for (int t = 0; t < tokens_per_doc; ++t) {
                int w = static_cast<int>(rng() % static_cast<unsigned>(vocab_per_topic));
                doc.pairs.push_back({std::string(1, topic) + "w" + std::to_string(w),
                                     kgrec::PosTag::noun});
            }
            docs.push_back(std::move(doc));
        }
    }
    return docs;
}

// Mean pairwise cosine of trained document vectors, within or across topics.
struct SeparationStats {
    double intra = 0.0;
    double inter = 0.0;
    double margin() const { return intra - inter; }
};

inline SeparationStats doc_vector_separation(const kgrec::EmbeddingModel& model,
                                             int docs_per_topic) {
    auto vec = [&](std::size_t i) {
        const double* base =
            model.doc_vectors.data() + i * static_cast<std::size_t>(model.params.dim);
        return kgrec::DocVector{{base, base + model.params.dim}};
    };
    const std::size_t total = model.doc_keys.size();
    double intra = 0.0, inter = 0.0;
    std::size_t n_intra = 0, n_inter = 0;
    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = i + 1; j < total; ++j) {
            const bool same = (i < static_cast<std::size_t>(docs_per_topic)) ==
                              (j < static_cast<std::size_t>(docs_per_topic));
            double c = kgrec::cosine(vec(i), vec(j));
            if (same) {
                intra += c;
                ++n_intra;
            } else {
                inter += c;
                ++n_inter;
            }
        }
    }
    return {intra / static_cast<double>(n_intra), inter / static_cast<double>(n_inter)};
}

inline std::filesystem::path source_dir() { return KGREC_SOURCE_DIR; }
inline std::filesystem::path demo_dir() { return source_dir() / "data" / "demo"; }

}  // namespace testutil
