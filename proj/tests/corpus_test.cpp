#include "kgrec/corpus.hpp"

#include <gtest/gtest.h>

#include <random>

#include "testutil.hpp"

using namespace kgrec;
using testutil::TempDir;

namespace {

constexpr const char* kHeader = "id,title,abstract,keywords,source_db,relevant\n";

std::vector<PaperRecord> load_from(const std::string& content) {
    TempDir dir("corpus");
    testutil::write_file(dir.file("papers.csv"), content);
    return load_papers(dir.file("papers.csv"));
}

}  // namespace

TEST(LoadPapers, ReadsRowsInFileOrder) {
    auto papers = load_from(std::string(kHeader) +
                            "P2,Second,Abs two.,a;b,ei,0\n"
                            "P1,First,Abs one.,x,ieee,1\n");
    ASSERT_EQ(papers.size(), 2u);
    EXPECT_EQ(papers[0].id, "P2");
    EXPECT_EQ(papers[1].id, "P1");
    EXPECT_EQ(papers[0].source_db, SourceDb::ei);
    EXPECT_EQ(papers[0].relevant, std::optional<bool>(false));
    EXPECT_EQ(papers[1].relevant, std::optional<bool>(true));
}

TEST(LoadPapers, SplitsKeywordsOnSemicolon) {
    auto papers = load_from(std::string(kHeader) + "P1,T,A.,kg;ir;nlp,other,\n");
    EXPECT_EQ(papers[0].keywords, (std::vector<std::string>{"kg", "ir", "nlp"}));
    EXPECT_FALSE(papers[0].relevant.has_value());
}

TEST(LoadPapers, DuplicateIdNamesTheId) {
    try {
        load_from(std::string(kHeader) + "P1,T,A.,,other,\nP1,U,B.,,other,\n");
        FAIL() << "expected duplicate-id error";
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::duplicate_id);
        EXPECT_NE(std::string(e.what()).find("P1"), std::string::npos);
    }
}

TEST(LoadPapers, MissingColumnNamesTheColumn) {
    try {
        load_from("id,title,abstract,keywords,source_db\nP1,T,A.,,other\n");
        FAIL() << "expected schema error";
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::schema);
        EXPECT_NE(std::string(e.what()).find("relevant"), std::string::npos);
    }
}

TEST(LoadPapers, RejectsUnknownSourceDb) {
    EXPECT_THROW(load_from(std::string(kHeader) + "P1,T,A.,,acm,\n"), Error);
}

TEST(LoadPapers, RejectsEmptyTitle) {
    EXPECT_THROW(load_from(std::string(kHeader) + "P1,,A.,,other,\n"), Error);
}

TEST(LoadPapers, MalformedCsvReportsLine) {
    try {
        load_from(std::string(kHeader) + "P1,T,A.,,other,\nP2,T\n");
        FAIL() << "expected parse error";
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::parse);
        EXPECT_NE(std::string(e.what()).find(":3"), std::string::npos);
    }
}

TEST(SavePapers, RoundTripsByteIdentically) {
    TempDir dir("corpus_rt");
    auto papers = load_from(std::string(kHeader) +
                            "P1,\"Title, with comma\",\"Abs \"\"quoted\"\".\",kg;ir,google_scholar,1\n"
                            "P2,Plain,No punctuation here,,ei,\n");
    save_papers(dir.file("a.csv"), papers);
    auto reloaded = load_papers(dir.file("a.csv"));
    save_papers(dir.file("b.csv"), reloaded);
    EXPECT_EQ(testutil::read_file(dir.file("a.csv")), testutil::read_file(dir.file("b.csv")));
    ASSERT_EQ(reloaded.size(), 2u);
    EXPECT_EQ(reloaded[0].title, "Title, with comma");
    EXPECT_EQ(reloaded[0].abstract, "Abs \"quoted\".");
}

TEST(SplitSentences, HonorsTerminatorsBeforeWhitespaceOrEof) {
    EXPECT_EQ(split_sentences("One. Two! Three?"),
              (std::vector<std::string>{"One.", "Two!", "Three?"}));
    EXPECT_EQ(split_sentences("Version 2.5 rocks. Yes."),
              (std::vector<std::string>{"Version 2.5 rocks.", "Yes."}));
    EXPECT_EQ(split_sentences("Wow!! Done."),
              (std::vector<std::string>{"Wow!!", "Done."}));
    EXPECT_TRUE(split_sentences("").empty());
}

TEST(SplitAbstract, EvenSentenceCountSplitsInHalf) {
    PaperRecord rec{"P1", "T", "s1. s2. s3. s4.", {"k1"}, SourceDb::other, {}};
    SplitAbstract split = split_abstract(rec);
    EXPECT_EQ(split.p1_text, "s1. s2.");
    EXPECT_EQ(split.p2_text, "s3. s4. T k1");
}

TEST(SplitAbstract, OddSentenceCountGivesCeilingToP1) {
    PaperRecord rec{"P1", "T", "s1. s2. s3.", {"k1", "k2"}, SourceDb::other, {}};
    SplitAbstract split = split_abstract(rec);
    EXPECT_EQ(split.p1_text, "s1. s2.");
    EXPECT_EQ(split.p2_text, "s3. T k1 k2");
}

TEST(SplitAbstract, EmptyAbstractIsDegenerate) {
    PaperRecord rec{"P1", "T", "", {"a", "b"}, SourceDb::other, {}};
    SplitAbstract split = split_abstract(rec);
    EXPECT_EQ(split.p1_text, "");
    EXPECT_EQ(split.p2_text, "T a b");
}

// Sentence-count property: p1 holds ceil(S/2) sentences, the p2 abstract
// portion floor(S/2), and together they restore the sentence sequence.
TEST(SplitAbstract, SentenceCountsFollowCeilingRule) {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 100; ++iter) {
        const int s = static_cast<int>(rng() % 9);
        std::string abstract;
        std::vector<std::string> sentences;
        for (int i = 0; i < s; ++i) {
            std::string sentence = "word" + std::to_string(i) + " tail.";
            sentences.push_back(sentence);
            if (!abstract.empty()) abstract += " ";
            abstract += sentence;
        }
        PaperRecord rec{"P", "Title", abstract, {}, SourceDb::other, {}};
        SplitAbstract split = split_abstract(rec);
        auto p1_sentences = split_sentences(split.p1_text);
        EXPECT_EQ(p1_sentences.size(), static_cast<std::size_t>((s + 1) / 2));

        std::string rejoined = split.p1_text;
        std::string p2_abstract = split.p2_text.substr(
            0, split.p2_text.size() - std::string(" Title").size() *
                   (split.p2_text.size() >= 5 ? 1 : 0));
        // Reconstruction: p1 + p2-without-title restores the sentence sequence.
        std::vector<std::string> all = p1_sentences;
        for (const auto& sent : split_sentences(p2_abstract)) all.push_back(sent);
        EXPECT_EQ(all, sentences);
    }
}
