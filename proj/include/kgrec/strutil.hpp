#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kgrec::detail {

inline std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

// Split a delimited cell into trimmed, non-empty items.
inline std::vector<std::string> split_list(std::string_view cell, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= cell.size()) {
        std::size_t end = cell.find(delim, start);
        if (end == std::string_view::npos) end = cell.size();
        std::string item = trim(cell.substr(start, end - start));
        if (!item.empty()) out.push_back(std::move(item));
        if (end == cell.size()) break;
        start = end + 1;
    }
    return out;
}

}  // namespace kgrec::detail
