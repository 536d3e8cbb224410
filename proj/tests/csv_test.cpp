#include "kgrec/csv.hpp"

#include <gtest/gtest.h>

#include <random>

#include "testutil.hpp"

using kgrec::Error;
using kgrec::ErrorCategory;
namespace csv = kgrec::csv;

TEST(Csv, ParsesHeaderAndRows) {
    auto table = csv::parse("a,b,c\n1,2,3\n4,5,6\n", "test", "mem");
    EXPECT_EQ(table.header, (std::vector<std::string>{"a", "b", "c"}));
    ASSERT_EQ(table.rows.size(), 2u);
    EXPECT_EQ(table.rows[1], (std::vector<std::string>{"4", "5", "6"}));
    EXPECT_EQ(table.row_lines, (std::vector<std::size_t>{2, 3}));
}

TEST(Csv, HandlesQuotedFields) {
    auto table = csv::parse("a,b\n\"x,y\",\"he said \"\"hi\"\"\"\n", "test", "mem");
    EXPECT_EQ(table.rows[0][0], "x,y");
    EXPECT_EQ(table.rows[0][1], "he said \"hi\"");
}

TEST(Csv, HandlesCrlfAndEmbeddedNewlines) {
    auto table = csv::parse("a,b\r\n\"line1\nline2\",z\r\n", "test", "mem");
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_EQ(table.rows[0][0], "line1\nline2");
    EXPECT_EQ(table.rows[0][1], "z");
}

TEST(Csv, MissingFinalNewlineIsFine) {
    auto table = csv::parse("a,b\n1,2", "test", "mem");
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_EQ(table.rows[0][1], "2");
}

TEST(Csv, UnterminatedQuoteIsParseError) {
    try {
        csv::parse("a,b\n\"oops,2\n", "test", "mem");
        FAIL() << "expected parse error";
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::parse);
        EXPECT_NE(std::string(e.what()).find("mem:2"), std::string::npos);
    }
}

TEST(Csv, ColumnCountMismatchNamesLine) {
    try {
        csv::parse("a,b\n1,2\n1,2,3\n", "test", "mem");
        FAIL() << "expected parse error";
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::parse);
        EXPECT_NE(std::string(e.what()).find("mem:3"), std::string::npos);
    }
}

TEST(Csv, QuoteInsideUnquotedFieldRejected) {
    EXPECT_THROW(csv::parse("a,b\nx\"y,2\n", "test", "mem"), Error);
}

TEST(Csv, MissingColumnIsSchemaError) {
    auto table = csv::parse("a,b\n1,2\n", "test", "mem");
    try {
        csv::column(table, "missing", "test");
        FAIL() << "expected schema error";
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::schema);
        EXPECT_NE(std::string(e.what()).find("missing"), std::string::npos);
    }
}

// Round trip with randomized awkward fields: write -> parse recovers the rows.
TEST(Csv, RandomRoundTrip) {
    std::mt19937_64 rng(11);
    const std::string alphabet = "ab,\"\n\r x";
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<std::vector<std::string>> rows;
        const std::size_t n_rows = 1 + rng() % 4;
        const std::size_t n_cols = 1 + rng() % 4;
        for (std::size_t r = 0; r < n_rows; ++r) {
            std::vector<std::string> row;
            for (std::size_t c = 0; c < n_cols; ++c) {
                std::string field;
                const std::size_t len = rng() % 8;
                for (std::size_t i = 0; i < len; ++i)
                    field.push_back(alphabet[rng() % alphabet.size()]);
                row.push_back(std::move(field));
            }
            rows.push_back(std::move(row));
        }
        std::vector<std::string> header;
        for (std::size_t c = 0; c < n_cols; ++c) header.push_back("c" + std::to_string(c));

        auto text = csv::to_string(header, rows);
        auto parsed = csv::parse(text, "test", "mem");
        EXPECT_EQ(parsed.header, header);
        EXPECT_EQ(parsed.rows, rows);
    }
}

TEST(Csv, FileRoundTrip) {
    testutil::TempDir dir("csv");
    std::vector<std::vector<std::string>> rows{{"1", "a,b"}, {"2", "plain"}};
    csv::write_file(dir.file("t.csv"), {"id", "val"}, rows, "test");
    auto table = csv::read_file(dir.file("t.csv"), "test");
    EXPECT_EQ(table.rows, rows);
}

TEST(Csv, MissingFileIsIoError) {
    try {
        csv::read_file("/nonexistent/nope.csv", "test");
        FAIL() << "expected io error";
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::io);
        EXPECT_EQ(e.exit_code(), 2);
    }
}
