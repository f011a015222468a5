#include "doctest.h"

#include <random>

#include "codanorm/align.hpp"
#include "oracle.hpp"
#include "util.hpp"

using namespace codanorm;

TEST_CASE("identity alignment is all MATCH") {
  const auto a = align_words({"a", "b"}, {"a", "b"});
  REQUIRE(a.links.size() == 2);
  for (const auto& l : a.links) CHECK(l.kind == LinkKind::MATCH);
}

TEST_CASE("one-to-two split is a SPLIT link") {
  const auto a = align_words({"AwSlℏ"}, {"AwSl", "lh"});
  REQUIRE(a.links.size() == 1);
  CHECK(a.links[0].kind == LinkKind::SPLIT);
  CHECK(a.links[0].src_end - a.links[0].src_begin == 1);
  CHECK(a.links[0].tgt_end - a.links[0].tgt_begin == 2);
}

TEST_CASE("close spelling variant is a SUB link") {
  const auto a = align_words({"tHdst"}, {"tHdθt"});
  REQUIRE(a.links.size() == 1);
  CHECK(a.links[0].kind == LinkKind::SUB);
}

TEST_CASE("alignment invariants: disjoint sorted covering spans") {
  const std::vector<std::string> src = {"a", "bb", "c", "d"};
  const std::vector<std::string> tgt = {"a", "b", "b", "d", "e"};
  const auto a = align_words(src, tgt);
  std::size_t si = 0, ti = 0;
  for (const auto& l : a.links) {
    CHECK(l.src_begin == si);
    CHECK(l.tgt_begin == ti);
    si = l.src_end;
    ti = l.tgt_end;
  }
  CHECK(si == src.size());
  CHECK(ti == tgt.size());
}

TEST_CASE("extract_edits maps links and skips matches") {
  SUBCASE("identity gives no edits") {
    const std::vector<std::string> s = {"x", "y"};
    CHECK(extract_edits(align_words(s, s), s, s).empty());
  }
  SUBCASE("split becomes one span edit") {
    const std::vector<std::string> src = {"AwSlℏ"}, tgt = {"AwSl", "lh"};
    const auto edits = extract_edits(align_words(src, tgt), src, tgt);
    REQUIRE(edits.size() == 1);
    CHECK(edits[0] == Edit{0, 1, "AwSl lh"});
  }
  SUBCASE("single substitution") {
    const std::vector<std::string> src = {"a", "b", "c"}, tgt = {"a", "x", "c"};
    const auto edits = extract_edits(align_words(src, tgt), src, tgt);
    REQUIRE(edits.size() == 1);
    CHECK(edits[0] == Edit{1, 2, "x"});
  }
}

TEST_CASE("patch round-trip on random token lists") {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> alphabet = {"a", "ab", "abc", "b", "xy", "سلام", "سلم"};
  for (int iter = 0; iter < 300; ++iter) {
    auto src = testutil::random_tokens(rng, 6, alphabet);
    auto tgt = testutil::random_tokens(rng, 6, alphabet);
    if (src.empty() && tgt.empty()) continue;
    const auto edits = extract_edits(align_words(src, tgt), src, tgt);
    CHECK(apply_edits(src, edits) == tgt);
  }
}

TEST_CASE("alignment cost is symmetric") {
  std::mt19937_64 rng(77);
  const std::vector<std::string> alphabet = {"a", "ab", "ba", "c"};
  for (int iter = 0; iter < 200; ++iter) {
    auto src = testutil::random_tokens(rng, 5, alphabet);
    auto tgt = testutil::random_tokens(rng, 5, alphabet);
    CHECK(alignment_cost(src, tgt) == doctest::Approx(alignment_cost(tgt, src)).epsilon(1e-9));
  }
}

TEST_CASE("DP cost equals exhaustive-search minimum for small inputs") {
  std::mt19937_64 rng(404);
  const std::vector<std::string> alphabet = {"a", "b", "ab", "ba"};
  for (int iter = 0; iter < 200; ++iter) {
    auto src = testutil::random_tokens(rng, 6, alphabet);
    auto tgt = testutil::random_tokens(rng, 6, alphabet);
    CHECK(alignment_cost(src, tgt) ==
          doctest::Approx(oracle::min_cost(src, tgt)).epsilon(1e-9));
  }
}

TEST_CASE("char_transformations finds per-character operations") {
  SUBCASE("two substitutions") {
    const auto ops = char_transformations("zγyrh", "Sγyrℏ");
    REQUIRE(ops.size() == 2);
    CHECK(ops[0] == CharEdit{"z", "S"});
    CHECK(ops[1] == CharEdit{"h", "ℏ"});
  }
  SUBCASE("split surfaces a space insertion") {
    const auto ops = char_transformations("AwSlℏ", "AwSl lh");
    bool has_space_insert = false;
    for (const auto& op : ops)
      if (op.src_chars.empty() && op.tgt_chars == " ") has_space_insert = true;
    CHECK(has_space_insert);
  }
  SUBCASE("identity is empty") { CHECK(char_transformations("abc", "abc").empty()); }
  SUBCASE("pure deletion") {
    const auto ops = char_transformations("ab", "a");
    REQUIRE(ops.size() == 1);
    CHECK(ops[0] == CharEdit{"b", ""});
  }
}

TEST_CASE("transformation_stats ranks by count with lexicographic ties") {
  ParallelCorpus corpus;
  // h->ℏ three times, z->S once.
  corpus.examples.push_back(testutil::make_example("1", Dialect::CAI, {"zγyrh"}, {"Sγyrℏ"}));
  corpus.examples.push_back(testutil::make_example("2", Dialect::CAI, {"kbyrh"}, {"kbyrℏ"}));
  corpus.examples.push_back(testutil::make_example("3", Dialect::BEI, {"mdrsh"}, {"mdrsℏ"}));
  const auto ranked = transformation_stats(corpus, std::nullopt);
  REQUIRE(ranked.size() == 2);
  CHECK(ranked[0].first == CharEdit{"h", "ℏ"});
  CHECK(ranked[0].second == 3);
  CHECK(ranked[1].first == CharEdit{"z", "S"});
  CHECK(ranked[1].second == 1);

  SUBCASE("dialect filter") {
    const auto cai_only = transformation_stats(corpus, Dialect::CAI);
    REQUIRE(cai_only.size() == 2);
    CHECK(cai_only[0].second == 2);
  }
  SUBCASE("identity corpus is empty") {
    ParallelCorpus id_corpus;
    id_corpus.examples.push_back(testutil::make_example("1", Dialect::CAI, {"a"}, {"a"}));
    CHECK(transformation_stats(id_corpus, std::nullopt).empty());
  }
}

TEST_CASE("transformation_stats breaks count ties lexicographically") {
  ParallelCorpus corpus;
  corpus.examples.push_back(testutil::make_example("1", Dialect::CAI, {"za"}, {"Sa"}));
  corpus.examples.push_back(testutil::make_example("2", Dialect::CAI, {"zb"}, {"Sb"}));
  corpus.examples.push_back(testutil::make_example("3", Dialect::CAI, {"ha"}, {"ℏa"}));
  corpus.examples.push_back(testutil::make_example("4", Dialect::CAI, {"hb"}, {"ℏb"}));
  const auto ranked = transformation_stats(corpus, std::nullopt);
  REQUIRE(ranked.size() == 2);
  CHECK(ranked[0].first == CharEdit{"h", "ℏ"});  // "h" < "z"
  CHECK(ranked[1].first == CharEdit{"z", "S"});
}
