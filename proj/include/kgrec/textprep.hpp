#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "kgrec/errors.hpp"
#include "kgrec/porter.hpp"

// Text preprocessing ahead of embedding: tokenize, drop stopwords, stem,
// POS-tag, and package the surviving (token, tag) pairs.

namespace kgrec {

enum class PosTag { noun, verb, adj, adv, num, other };

inline std::string_view pos_tag_name(PosTag t) {
    switch (t) {
        case PosTag::noun: return "NOUN";
        case PosTag::verb: return "VERB";
        case PosTag::adj: return "ADJ";
        case PosTag::adv: return "ADV";
        case PosTag::num: return "NUM";
        case PosTag::other: return "OTHER";
    }
    return "OTHER";
}

enum class DocPart { p1, p2, target_text, exclude_text };

inline std::string_view doc_part_name(DocPart p) {
    switch (p) {
        case DocPart::p1: return "p1";
        case DocPart::p2: return "p2";
        case DocPart::target_text: return "target_text";
        case DocPart::exclude_text: return "exclude_text";
    }
    return "p1";
}

struct TokenTag {
    std::string token;
    PosTag tag;
    bool operator==(const TokenTag&) const = default;
};

struct ProcessedDoc {
    std::string doc_id;
    DocPart part = DocPart::p1;
    std::vector<TokenTag> pairs;

    std::vector<std::string> tokens() const {
        std::vector<std::string> out;
        out.reserve(pairs.size());
        for (const auto& p : pairs) out.push_back(p.token);
        return out;
    }
};

namespace detail {

inline bool is_ascii_alnum(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

inline char ascii_lower(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

}  // namespace detail

// Lowercased ASCII-alphanumeric tokens; punctuation separates. A hyphen stays
// inside a token only between alphanumerics ("short-text" is one token).
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (std::size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (detail::is_ascii_alnum(c)) {
            current.push_back(detail::ascii_lower(c));
            continue;
        }
        if (c == '-' && !current.empty() && i + 1 < text.size() &&
            detail::is_ascii_alnum(static_cast<unsigned char>(text[i + 1]))) {
            current.push_back('-');
            continue;
        }
        if (!current.empty()) tokens.push_back(std::move(current));
        current.clear();
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

// Built-in English stopword list, v1 (181 entries, mirrored in
// data/stopwords_en.txt). Contraction fragments appear in tokenizer form.
inline const std::vector<std::string>& builtin_stopwords() {
    static const std::vector<std::string> words = {
        "a", "about", "above", "after", "again", "against", "ain", "all", "am", "an",
        "and", "any", "are", "aren", "as", "at", "be", "because", "been", "before",
        "being", "below", "between", "both", "but", "by", "can", "couldn", "d", "did",
        "didn", "do", "does", "doesn", "doing", "don", "down", "during", "each", "few",
        "for", "from", "further", "had", "hadn", "has", "hasn", "have", "haven",
        "having", "he", "her", "here", "hers", "herself", "him", "himself", "his",
        "how", "i", "if", "in", "into", "is", "isn", "it", "its", "itself", "just",
        "ll", "m", "ma", "me", "mightn", "more", "most", "mustn", "my", "myself",
        "needn", "no", "nor", "not", "now", "o", "of", "off", "on", "once", "only",
        "or", "other", "our", "ours", "ourselves", "out", "over", "own", "re", "s",
        "same", "shan", "she", "should", "shouldn", "so", "some", "such", "t", "than",
        "that", "the", "their", "theirs", "them", "themselves", "then", "there",
        "these", "they", "this", "those", "through", "to", "too", "under", "until",
        "up", "ve", "very", "was", "wasn", "we", "were", "weren", "what", "when",
        "where", "which", "while", "who", "whom", "why", "will", "with", "won",
        "wouldn", "y", "you", "your", "yours", "yourself", "yourselves", "also",
        "among", "another", "besides", "cannot", "could", "either", "else", "ever",
        "however", "may", "might", "must", "neither", "often", "onto", "per", "shall",
        "since", "thus", "upon", "via", "whether", "within", "without", "would",
        "yet", "etc",
    };
    return words;
}

class Stoplist {
  public:
    Stoplist() = default;
    explicit Stoplist(const std::vector<std::string>& words)
        : words_(words.begin(), words.end()) {}

    static Stoplist builtin() { return Stoplist(builtin_stopwords()); }

    // One lowercase token per line, `#` starts a comment line.
    static Stoplist from_file(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in)
            throw Error("textprep", ErrorCategory::io, "cannot open " + path.string());
        Stoplist list;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::size_t b = line.find_first_not_of(" \t");
            if (b == std::string::npos || line[b] == '#') continue;
            std::size_t e = line.find_last_not_of(" \t");
            std::string word = line.substr(b, e - b + 1);
            std::transform(word.begin(), word.end(), word.begin(),
                           [](unsigned char c) { return detail::ascii_lower(c); });
            list.words_.insert(std::move(word));
        }
        return list;
    }

    bool contains(std::string_view token) const {
        return words_.count(std::string(token)) != 0;
    }
    std::size_t size() const { return words_.size(); }

  private:
    std::unordered_set<std::string> words_;
};

inline std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                                 const Stoplist& stoplist) {
    std::erase_if(tokens, [&](const std::string& t) { return stoplist.contains(t); });
    return tokens;
}

// Deterministic suffix/lexicon tagger. Tags annotate only; nothing downstream
// weights them, so the rules stay deliberately coarse.
inline PosTag tag_token(std::string_view token) {
    if (!token.empty() && token[0] >= '0' && token[0] <= '9') {
        bool all_digits = std::all_of(token.begin(), token.end(),
                                      [](char c) { return c >= '0' && c <= '9'; });
        if (all_digits) return PosTag::num;
    }

    static const std::unordered_set<std::string_view> adverbs = {
        "not", "never", "always", "well", "quite", "rather", "almost", "already"};
    static const std::unordered_set<std::string_view> verbs = {
        "be", "is", "are", "was", "were", "been", "am", "do", "does", "did",
        "has", "have", "had", "propose", "use", "show", "present"};
    if (adverbs.count(token)) return PosTag::adv;
    if (verbs.count(token)) return PosTag::verb;

    auto ends = [&](std::string_view suffix) {
        return token.size() > suffix.size() &&
               token.substr(token.size() - suffix.size()) == suffix;
    };
    if (ends("ly") || ends("li")) return PosTag::adv;
    if (ends("ing") || ends("ed") || ends("ize") || ends("ise") || ends("ify"))
        return PosTag::verb;
    if (ends("ical") || ends("ous") || ends("ful") || ends("less") || ends("ive") ||
        ends("able") || ends("ible") || ends("al") || ends("ic"))
        return PosTag::adj;
    return PosTag::noun;
}

inline std::vector<TokenTag> pos_tag(const std::vector<std::string>& tokens) {
    std::vector<TokenTag> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back({t, tag_token(t)});
    return out;
}

inline std::vector<std::string> stem(std::vector<std::string> tokens) {
    for (auto& t : tokens) t = porter_stem(t);
    return tokens;
}

// tokenize -> stopwords -> stem -> tag, packaged as (token, tag) pairs.
inline ProcessedDoc preprocess(std::string doc_id, DocPart part, std::string_view text,
                               const Stoplist& stoplist) {
    ProcessedDoc doc;
    doc.doc_id = std::move(doc_id);
    doc.part = part;
    doc.pairs = pos_tag(stem(remove_stopwords(tokenize(text), stoplist)));
    return doc;
}

}  // namespace kgrec
