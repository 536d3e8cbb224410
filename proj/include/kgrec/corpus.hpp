#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgrec/csv.hpp"
#include "kgrec/errors.hpp"
#include "kgrec/strutil.hpp"

// Candidate-paper ingestion and the p1/p2 abstract split consumed by the ranker.

namespace kgrec {

enum class SourceDb { google_scholar, ei, ieee, other };

inline std::string_view source_db_name(SourceDb s) {
    switch (s) {
        case SourceDb::google_scholar: return "google_scholar";
        case SourceDb::ei: return "ei";
        case SourceDb::ieee: return "ieee";
        case SourceDb::other: return "other";
    }
    return "other";
}

struct PaperRecord {
    std::string id;
    std::string title;
    std::string abstract;
    std::vector<std::string> keywords;
    SourceDb source_db = SourceDb::other;
    std::optional<bool> relevant;  // evaluation ground truth
};

// p1 is the leading half of the abstract; p2 is the trailing half plus the
// title and the keywords.
struct SplitAbstract {
    std::string paper_id;
    std::string p1_text;
    std::string p2_text;
};

namespace detail {

constexpr const char* kCorpusModule = "corpus";

inline SourceDb parse_source_db(const std::string& value, std::size_t line) {
    if (value == "google_scholar") return SourceDb::google_scholar;
    if (value == "ei") return SourceDb::ei;
    if (value == "ieee") return SourceDb::ieee;
    if (value == "other") return SourceDb::other;
    throw Error(kCorpusModule, ErrorCategory::schema,
                "illegal source_db value \"" + value + "\" (line " +
                    std::to_string(line) + ")");
}

}  // namespace detail

// Corpus CSV: id,title,abstract,keywords,source_db,relevant (keywords are
// `;`-separated, relevant is 1/0/empty). Rows come back in file order.
inline std::vector<PaperRecord> load_papers(const std::filesystem::path& path) {
    const std::string module = detail::kCorpusModule;
    csv::Table table = csv::read_file(path, module);
    const std::size_t c_id = csv::column(table, "id", module);
    const std::size_t c_title = csv::column(table, "title", module);
    const std::size_t c_abstract = csv::column(table, "abstract", module);
    const std::size_t c_keywords = csv::column(table, "keywords", module);
    const std::size_t c_source = csv::column(table, "source_db", module);
    const std::size_t c_relevant = csv::column(table, "relevant", module);

    std::vector<PaperRecord> papers;
    papers.reserve(table.rows.size());
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t line = table.row_lines[r];
        PaperRecord rec;
        rec.id = row[c_id];
        if (rec.id.empty())
            throw Error(module, ErrorCategory::schema,
                        "empty id (line " + std::to_string(line) + ")");
        if (auto [it, inserted] = seen.emplace(rec.id, line); !inserted)
            throw Error(module, ErrorCategory::duplicate_id,
                        "id \"" + rec.id + "\" appears on lines " +
                            std::to_string(it->second) + " and " + std::to_string(line));
        rec.title = row[c_title];
        if (rec.title.empty())
            throw Error(module, ErrorCategory::schema,
                        "empty title for id \"" + rec.id + "\" (line " +
                            std::to_string(line) + ")");
        rec.abstract = row[c_abstract];
        rec.keywords = detail::split_list(row[c_keywords], ';');
        rec.source_db = detail::parse_source_db(row[c_source], line);
        const std::string& rel = row[c_relevant];
        if (rel == "1")
            rec.relevant = true;
        else if (rel == "0")
            rec.relevant = false;
        else if (!rel.empty())
            throw Error(module, ErrorCategory::schema,
                        "relevant must be 1, 0 or empty, got \"" + rel + "\" (line " +
                            std::to_string(line) + ")");
        papers.push_back(std::move(rec));
    }
    return papers;
}

inline void save_papers(const std::filesystem::path& path,
                        std::span<const PaperRecord> papers) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(papers.size());
    for (const auto& rec : papers) {
        std::string keywords;
        for (std::size_t i = 0; i < rec.keywords.size(); ++i) {
            if (i) keywords.push_back(';');
            keywords += rec.keywords[i];
        }
        std::string relevant;
        if (rec.relevant) relevant = *rec.relevant ? "1" : "0";
        rows.push_back({rec.id, rec.title, rec.abstract, std::move(keywords),
                        std::string(source_db_name(rec.source_db)), std::move(relevant)});
    }
    csv::write_file(path, {"id", "title", "abstract", "keywords", "source_db", "relevant"},
                    rows, detail::kCorpusModule);
}

// Sentence boundaries are `.` `!` `?` runs followed by whitespace or EOF.
inline std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> sentences;
    std::size_t start = 0;
    auto flush = [&](std::size_t end) {
        std::string s = detail::trim(text.substr(start, end - start));
        if (!s.empty()) sentences.push_back(std::move(s));
        start = end;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c != '.' && c != '!' && c != '?') continue;
        std::size_t j = i;
        while (j + 1 < text.size() &&
               (text[j + 1] == '.' || text[j + 1] == '!' || text[j + 1] == '?'))
            ++j;
        bool at_boundary = j + 1 >= text.size() || text[j + 1] == ' ' ||
                           text[j + 1] == '\t' || text[j + 1] == '\n' || text[j + 1] == '\r';
        if (at_boundary) flush(j + 1);
        i = j;
    }
    flush(text.size());
    return sentences;
}

// p1 takes the first ceil(S/2) sentences, p2 the rest plus title and keywords.
// Degenerate abstracts never fail: an empty abstract yields an empty p1.
inline SplitAbstract split_abstract(const PaperRecord& record) {
    std::vector<std::string> sentences = split_sentences(record.abstract);
    const std::size_t p1_count = (sentences.size() + 1) / 2;

    auto join = [](auto first, auto last, std::string& out) {
        for (auto it = first; it != last; ++it) {
            if (!out.empty()) out.push_back(' ');
            out += *it;
        }
    };

    SplitAbstract split;
    split.paper_id = record.id;
    join(sentences.begin(), sentences.begin() + static_cast<std::ptrdiff_t>(p1_count),
         split.p1_text);
    join(sentences.begin() + static_cast<std::ptrdiff_t>(p1_count), sentences.end(),
         split.p2_text);
    if (!record.title.empty()) {
        if (!split.p2_text.empty()) split.p2_text.push_back(' ');
        split.p2_text += record.title;
    }
    join(record.keywords.begin(), record.keywords.end(), split.p2_text);
    return split;
}

}  // namespace kgrec
