#pragma once

#include <array>
#include <string>
#include <string_view>

// Porter's 1980 suffix-stripping algorithm, the original rule set (no later
// Snowball revisions, no short-word guard). Tokens containing anything other
// than ASCII letters pass through unchanged.

namespace kgrec {

namespace detail_porter {

inline bool is_vowel_at(std::string_view w, std::size_t i) {
    switch (w[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
            return true;
        case 'y':
            // y is a vowel when it follows a consonant.
            return i > 0 && !is_vowel_at(w, i - 1);
        default:
            return false;
    }
}

// m in the [C](VC)^m[V] decomposition of w[0, len).
inline int measure(std::string_view w, std::size_t len) {
    int m = 0;
    bool prev_vowel = false;
    for (std::size_t i = 0; i < len; ++i) {
        bool v = is_vowel_at(w, i);
        if (!v && prev_vowel) ++m;
        prev_vowel = v;
    }
    return m;
}

inline bool contains_vowel(std::string_view w, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i)
        if (is_vowel_at(w, i)) return true;
    return false;
}

inline bool ends_double_consonant(std::string_view w) {
    std::size_t n = w.size();
    return n >= 2 && w[n - 1] == w[n - 2] && !is_vowel_at(w, n - 1);
}

// *o: stem ends consonant-vowel-consonant where the final consonant is not w, x or y.
inline bool ends_cvc(std::string_view w, std::size_t len) {
    if (len < 3) return false;
    char last = w[len - 1];
    return !is_vowel_at(w, len - 3) && is_vowel_at(w, len - 2) &&
           !is_vowel_at(w, len - 1) && last != 'w' && last != 'x' && last != 'y';
}

inline bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

// Within a step the longest matching suffix decides the rule; if its measure
// condition fails no other rule in the step fires.
template <std::size_t N>
inline bool apply_step(std::string& word, const std::array<Rule, N>& rules, int min_m) {
    for (const Rule& rule : rules) {
        if (!ends_with(word, rule.suffix)) continue;
        std::size_t stem_len = word.size() - rule.suffix.size();
        if (measure(word, stem_len) > min_m) {
            word.resize(stem_len);
            word += rule.replacement;
            return true;
        }
        return false;
    }
    return false;
}

inline void step_1a(std::string& w) {
    if (ends_with(w, "sses")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "ies")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "ss")) {
        // keep
    } else if (ends_with(w, "s")) {
        w.pop_back();
    }
}

inline void step_1b(std::string& w) {
    if (ends_with(w, "eed")) {
        if (measure(w, w.size() - 3) > 0) w.pop_back();
        return;
    }
    bool stripped = false;
    if (ends_with(w, "ed") && contains_vowel(w, w.size() - 2)) {
        w.resize(w.size() - 2);
        stripped = true;
    } else if (ends_with(w, "ing") && contains_vowel(w, w.size() - 3)) {
        w.resize(w.size() - 3);
        stripped = true;
    }
    if (!stripped) return;
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w.push_back('e');
    } else if (ends_double_consonant(w)) {
        char last = w.back();
        if (last != 'l' && last != 's' && last != 'z') w.pop_back();
    } else if (measure(w, w.size()) == 1 && ends_cvc(w, w.size())) {
        w.push_back('e');
    }
}

inline void step_1c(std::string& w) {
    if (ends_with(w, "y") && contains_vowel(w, w.size() - 1)) w.back() = 'i';
}

inline void step_2(std::string& w) {
    static constexpr std::array<Rule, 20> rules{{
        {"ational", "ate"}, {"ization", "ize"}, {"iveness", "ive"},
        {"fulness", "ful"}, {"ousness", "ous"}, {"biliti", "ble"},
        {"tional", "tion"}, {"alism", "al"},    {"ation", "ate"},
        {"entli", "ent"},   {"ousli", "ous"},   {"aliti", "al"},
        {"iviti", "ive"},   {"enci", "ence"},   {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},
        {"ator", "ate"},    {"eli", "e"},
    }};
    apply_step(w, rules, 0);
}

inline void step_3(std::string& w) {
    static constexpr std::array<Rule, 7> rules{{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    }};
    apply_step(w, rules, 0);
}

inline void step_4(std::string& w) {
    static constexpr std::array<std::string_view, 18> plain{
        "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism",
        "ate",   "iti",  "ous",  "ive",  "ize",  "al",   "er",  "ic",  "ou",
    };
    for (std::string_view suffix : plain) {
        if (!ends_with(w, suffix)) continue;
        std::size_t stem_len = w.size() - suffix.size();
        if (measure(w, stem_len) > 1) w.resize(stem_len);
        return;
    }
    if (ends_with(w, "ion")) {
        std::size_t stem_len = w.size() - 3;
        if (stem_len > 0 && (w[stem_len - 1] == 's' || w[stem_len - 1] == 't') &&
            measure(w, stem_len) > 1)
            w.resize(stem_len);
    }
}

inline void step_5a(std::string& w) {
    if (!ends_with(w, "e")) return;
    std::size_t stem_len = w.size() - 1;
    int m = measure(w, stem_len);
    if (m > 1 || (m == 1 && !ends_cvc(w, stem_len))) w.pop_back();
}

inline void step_5b(std::string& w) {
    if (measure(w, w.size()) > 1 && ends_double_consonant(w) && w.back() == 'l')
        w.pop_back();
}

}  // namespace detail_porter

inline std::string porter_stem(std::string_view token) {
    for (char c : token)
        if (c < 'a' || c > 'z') return std::string(token);
    std::string w(token);
    namespace p = detail_porter;
    p::step_1a(w);
    p::step_1b(w);
    p::step_1c(w);
    p::step_2(w);
    p::step_3(w);
    p::step_4(w);
    p::step_5a(w);
    p::step_5b(w);
    return w;
}

}  // namespace kgrec
