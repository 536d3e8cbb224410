#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kgrec/errors.hpp"

// Strict RFC 4180 reader/writer. All on-disk tables in this project (paper
// corpus, KG nodes/edges, alias map, sentiment corpus) go through here, so
// quoting and error reporting stay uniform.

namespace kgrec::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    // Physical 1-based line on which each data row starts, for error messages.
    std::vector<std::size_t> row_lines;
};

inline Table parse(std::string_view text, const std::string& module,
                   const std::string& origin) {
    Table table;
    // Strip a UTF-8 BOM if present.
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::vector<std::string> record;
    std::string field;
    std::size_t line = 1;
    std::size_t record_line = 1;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool any_field = false;

    auto fail = [&](std::size_t at, const std::string& what) -> void {
        throw Error(module, ErrorCategory::parse,
                    origin + ":" + std::to_string(at) + ": " + what);
    };

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
        any_field = true;
    };
    auto end_record = [&] {
        // A fully blank line is not a record.
        if (record.empty() && field.empty() && !field_was_quoted) {
            any_field = false;
            return;
        }
        end_field();
        if (table.header.empty()) {
            table.header = std::move(record);
        } else {
            if (record.size() != table.header.size())
                fail(record_line, "expected " + std::to_string(table.header.size()) +
                                      " columns, got " + std::to_string(record.size()));
            table.rows.push_back(std::move(record));
            table.row_lines.push_back(record_line);
        }
        record.clear();
        any_field = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty() || field_was_quoted)
                    fail(line, "unexpected quote inside unquoted field");
                in_quotes = true;
                field_was_quoted = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') break;  // CRLF; LF handles it
                [[fallthrough]];
            case '\n':
                end_record();
                ++line;
                record_line = line;
                break;
            default:
                field.push_back(c);
        }
    }
    if (in_quotes) fail(record_line, "unterminated quoted field");
    if (any_field || !field.empty() || field_was_quoted) end_record();
    if (table.header.empty())
        throw Error(module, ErrorCategory::schema, origin + ": missing header row");
    return table;
}

inline Table read_file(const std::filesystem::path& path, const std::string& module) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(module, ErrorCategory::io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), module, path.filename().string());
}

inline bool needs_quoting(std::string_view field) {
    return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

inline std::string escape(std::string_view field) {
    if (!needs_quoting(field)) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline std::string to_string(const std::vector<std::string>& header,
                             const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    auto emit = [&](const std::vector<std::string>& record) {
        if (record.size() == 1 && record[0].empty()) {
            // Would otherwise read back as a blank line.
            out += "\"\"\n";
            return;
        }
        for (std::size_t i = 0; i < record.size(); ++i) {
            if (i) out.push_back(',');
            out += escape(record[i]);
        }
        out.push_back('\n');
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    return out;
}

inline void write_file(const std::filesystem::path& path,
                       const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows,
                       const std::string& module) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(module, ErrorCategory::io, "cannot write " + path.string());
    out << to_string(header, rows);
    if (!out)
        throw Error(module, ErrorCategory::io, "write failed for " + path.string());
}

// Column lookup for loaders. Throws the schema error the loader contracts ask for.
inline std::size_t column(const Table& table, std::string_view name,
                          const std::string& module) {
    for (std::size_t i = 0; i < table.header.size(); ++i)
        if (table.header[i] == name) return i;
    throw Error(module, ErrorCategory::schema,
                "missing required column \"" + std::string(name) + "\"");
}

}  // namespace kgrec::csv
