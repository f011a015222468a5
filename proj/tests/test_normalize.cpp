#include "doctest.h"

#include "codanorm/normalize.hpp"
#include "util.hpp"

using namespace codanorm;
using testutil::TempDir;
using testutil::make_example;
using testutil::write_file;

TEST_CASE("do_nothing is the identity") {
  CHECK(do_nothing(Sentence::from_tokens({"a", "b"})).tokens ==
        std::vector<std::string>{"a", "b"});
  CHECK(do_nothing(Sentence::from_tokens({})).tokens.empty());
  CHECK(do_nothing(Sentence::from_tokens({"tHdst"})).tokens == std::vector<std::string>{"tHdst"});
}

TEST_CASE("train_mle records bigram and unigram counts") {
  ParallelCorpus corpus;
  corpus.examples.push_back(make_example("1", Dialect::CAI, {"a"}, {"b"}));
  const MleModel model = train_mle(corpus, MleCondition::joint());
  REQUIRE(model.bigram_counts.count(kBoundarySymbol));
  CHECK(model.bigram_counts.at(kBoundarySymbol).at("a").at("b") == 1);
  CHECK(model.unigram_counts.at("a").at("b") == 1);
}

TEST_CASE("unigram counts follow target frequency") {
  ParallelCorpus corpus;
  corpus.examples.push_back(make_example("1", Dialect::CAI, {"zγyrh"}, {"Sγyrℏ"}));
  corpus.examples.push_back(make_example("2", Dialect::CAI, {"zγyrh"}, {"Sγyrℏ"}));
  corpus.examples.push_back(make_example("3", Dialect::CAI, {"zγyrh"}, {"zγyrℏ"}));
  const MleModel model = train_mle(corpus, MleCondition::joint());
  CHECK(model.unigram_counts.at("zγyrh").at("Sγyrℏ") == 2);
  CHECK(model.unigram_counts.at("zγyrh").at("zγyrℏ") == 1);

  SUBCASE("prediction takes the argmax") {
    CHECK(mle_predict(model, Sentence::from_tokens({"zγyrh"})).tokens ==
          std::vector<std::string>{"Sγyrℏ"});
  }
}

TEST_CASE("train_mle errors on an empty selection") {
  ParallelCorpus corpus;
  corpus.examples.push_back(make_example("1", Dialect::BEI, {"a"}, {"b"}));
  CHECK_THROWS_AS(train_mle(corpus, MleCondition::city(Dialect::CAI)), std::runtime_error);
  ParallelCorpus no_train;
  no_train.examples.push_back(make_example("1", Dialect::BEI, {"a"}, {"b"}, Split::DEV));
  CHECK_THROWS_AS(train_mle(no_train, MleCondition::joint()), std::runtime_error);
}

TEST_CASE("unigram counts marginalize bigram counts") {
  ParallelCorpus corpus;
  corpus.examples.push_back(make_example("1", Dialect::CAI, {"a", "w"}, {"b", "w"}));
  corpus.examples.push_back(make_example("2", Dialect::CAI, {"c", "w"}, {"c", "v"}));
  corpus.examples.push_back(make_example("3", Dialect::BEI, {"w"}, {"v"}));
  const MleModel model = train_mle(corpus, MleCondition::joint());
  for (const auto& [src, targets] : model.unigram_counts) {
    for (const auto& [target, count] : targets) {
      long bigram_sum = 0;
      for (const auto& [prev, words] : model.bigram_counts) {
        auto w = words.find(src);
        if (w == words.end()) continue;
        auto t = w->second.find(target);
        if (t != w->second.end()) bigram_sum += t->second;
      }
      CHECK(bigram_sum == count);
    }
  }
  CHECK(!model.unigram_counts.count(kBoundarySymbol));
}

TEST_CASE("mle_predict passes OOV words through") {
  ParallelCorpus corpus;
  corpus.examples.push_back(make_example("1", Dialect::CAI, {"a"}, {"b"}));
  const MleModel model = train_mle(corpus, MleCondition::joint());
  CHECK(mle_predict(model, Sentence::from_tokens({"qqq"})).tokens ==
        std::vector<std::string>{"qqq"});
}

TEST_CASE("mle_predict emits multi-word targets as multiple tokens") {
  ParallelCorpus corpus;
  corpus.examples.push_back(make_example("1", Dialect::CAI, {"AwSlℏ"}, {"AwSl", "lh"}));
  const MleModel model = train_mle(corpus, MleCondition::joint());
  CHECK(mle_predict(model, Sentence::from_tokens({"AwSlℏ"})).tokens ==
        std::vector<std::string>{"AwSl", "lh"});
}

TEST_CASE("bigram evidence dominates the unigram backoff") {
  // Construct counts directly so bigram and unigram argmaxes disagree.
  MleModel model;
  model.bigram_counts[kBoundarySymbol]["w"]["big"] = 1;
  model.unigram_counts["w"]["uni"] = 10;
  model.unigram_counts["w"]["big"] = 1;
  CHECK(mle_predict(model, Sentence::from_tokens({"w"})).tokens ==
        std::vector<std::string>{"big"});

  SUBCASE("removing the bigram entry flips to the unigram target") {
    model.bigram_counts.clear();
    CHECK(mle_predict(model, Sentence::from_tokens({"w"})).tokens ==
          std::vector<std::string>{"uni"});
  }
}

TEST_CASE("mle_predict context is the raw previous token") {
  MleModel model;
  // "x" rewrites to "y"; the context for the next word must still be raw "x".
  model.unigram_counts["x"]["y"] = 1;
  model.bigram_counts["x"]["w"]["after_raw_x"] = 1;
  model.bigram_counts["y"]["w"]["after_predicted_y"] = 1;
  const auto out = mle_predict(model, Sentence::from_tokens({"x", "w"}));
  CHECK(out.tokens == std::vector<std::string>{"y", "after_raw_x"});
}

TEST_CASE("argmax ties break lexicographically") {
  MleModel model;
  model.unigram_counts["w"]["zz"] = 2;
  model.unigram_counts["w"]["aa"] = 2;
  CHECK(mle_predict(model, Sentence::from_tokens({"w"})).tokens ==
        std::vector<std::string>{"aa"});
}

TEST_CASE("memorization: functional training corpora are reproduced exactly") {
  ParallelCorpus corpus;
  corpus.examples.push_back(make_example("1", Dialect::CAI, {"a", "b"}, {"A", "B"}));
  corpus.examples.push_back(make_example("2", Dialect::CAI, {"b", "c"}, {"B2", "C"}));
  corpus.examples.push_back(make_example("3", Dialect::BEI, {"c"}, {"C0"}));
  const MleModel model = train_mle(corpus, MleCondition::joint());
  for (const auto& ex : corpus.examples)
    CHECK(mle_predict(model, ex.raw).tokens == ex.coda.tokens);
}

namespace {

// DID training set where each dialect has a unique marker token.
std::vector<std::pair<Sentence, Dialect>> marker_training() {
  std::vector<std::pair<Sentence, Dialect>> out;
  for (Dialect d : kCityDialects) {
    const std::string marker = "marker_" + std::string(dialect_code(d));
    for (int i = 0; i < 5; ++i)
      out.emplace_back(Sentence::from_tokens({marker, "common", "filler"}), d);
  }
  return out;
}

}  // namespace

TEST_CASE("route_predict selects the model named by DID") {
  const DidModel did = train_did(marker_training());
  std::map<Dialect, MleModel> models;
  for (Dialect d : kCityDialects) {
    MleModel m;
    m.condition = MleCondition::city(d);
    m.unigram_counts["w"]["out_" + std::string(dialect_code(d))] = 1;
    models[d] = m;
  }
  MleModel fallback;
  fallback.unigram_counts["w"]["out_JOINT"] = 1;

  const Sentence cai = Sentence::from_tokens({"marker_CAI", "w"});
  auto [out, chosen] = route_predict(models, did, fallback, cai);
  CHECK(chosen == Dialect::CAI);
  CHECK(out.tokens == mle_predict(models[Dialect::CAI], cai).tokens);

  SUBCASE("deterministic") {
    auto [out2, chosen2] = route_predict(models, did, fallback, cai);
    CHECK(out2.tokens == out.tokens);
    CHECK(chosen2 == chosen);
  }
  SUBCASE("MSA prediction routes to the joint fallback") {
    auto labeled = marker_training();
    for (int i = 0; i < 5; ++i)
      labeled.emplace_back(Sentence::from_tokens({"msa_marker", "common", "filler"}),
                           Dialect::MSA);
    const DidModel did6 = train_did(labeled);
    const Sentence msa = Sentence::from_tokens({"msa_marker", "w"});
    auto [out_msa, chosen_msa] = route_predict(models, did6, fallback, msa);
    CHECK(chosen_msa == Dialect::MSA);
    CHECK(out_msa.tokens == std::vector<std::string>{"msa_marker", "out_JOINT"});
  }
  SUBCASE("missing city model is an error") {
    models.erase(Dialect::TUN);
    CHECK_THROWS_AS(route_predict(models, did, fallback, cai), std::runtime_error);
  }
}

TEST_CASE("format_control_input prefixes the control token") {
  ControlTable table;
  table[{ControlScheme::DIGIT, Dialect::CAI}] = "2";
  table[{ControlScheme::CITY, Dialect::CAI}] = "القاهرة";
  const Sentence s = Sentence::from_tokens({"x"});
  CHECK(format_control_input(s, Dialect::CAI, ControlScheme::DIGIT, table) == "2 x");

  SUBCASE("schemes differ only in the prefix") {
    const auto digit = format_control_input(s, Dialect::CAI, ControlScheme::DIGIT, table);
    const auto city = format_control_input(s, Dialect::CAI, ControlScheme::CITY, table);
    CHECK(digit.substr(digit.size() - 2) == city.substr(city.size() - 2));
    CHECK(digit != city);
  }
  SUBCASE("MSA is rejected") {
    CHECK_THROWS_AS(format_control_input(s, Dialect::MSA, ControlScheme::DIGIT, table),
                    std::runtime_error);
  }
  SUBCASE("missing entry is an error") {
    CHECK_THROWS_AS(format_control_input(s, Dialect::BEI, ControlScheme::DIGIT, table),
                    std::runtime_error);
  }
}

TEST_CASE("default control table covers all five cities in all schemes") {
  const ControlTable table = default_control_table();
  for (Dialect d : kCityDialects)
    for (ControlScheme scheme : {ControlScheme::CITY, ControlScheme::MSA_PHRASE,
                                 ControlScheme::DA_PHRASE, ControlScheme::DIGIT})
      CHECK(table.count({scheme, d}) == 1);
}

TEST_CASE("control input round-trips through tokenize for single-token schemes") {
  const ControlTable table = default_control_table();
  const Sentence s = Sentence::from_tokens({"kyf", "Hlk"});
  for (ControlScheme scheme : {ControlScheme::CITY, ControlScheme::DIGIT}) {
    const std::string line = format_control_input(s, Dialect::DOH, scheme, table);
    const auto tokens = tokenize(line);
    REQUIRE(tokens.size() == s.tokens.size() + 1);
    CHECK(std::vector<std::string>(tokens.begin() + 1, tokens.end()) == s.tokens);
  }
}

TEST_CASE("control table TSV loading") {
  TempDir dir;
  const auto path = write_file(dir, "ct.tsv",
                               "# scheme\tdialect\ttoken\n"
                               "DIGIT\tCAI\t2\nCITY\tBEI\tبيروت\n");
  const ControlTable table = load_control_table(path);
  CHECK(table.at({ControlScheme::DIGIT, Dialect::CAI}) == "2");
  CHECK(table.at({ControlScheme::CITY, Dialect::BEI}) == "بيروت");
  const auto bad = write_file(dir, "bad.tsv", "DIGIT\tMSA\t9\n");
  CHECK_THROWS_AS(load_control_table(bad), std::runtime_error);
}

TEST_CASE("load_hypotheses checks line counts") {
  TempDir dir;
  const auto path = write_file(dir, "h.txt", "a b\nc\n\n");
  const auto sentences = load_hypotheses(path, 3);
  REQUIRE(sentences.size() == 3);
  CHECK(sentences[0].tokens == std::vector<std::string>{"a", "b"});
  CHECK(sentences[2].tokens.empty());  // empty output line is valid
  CHECK_THROWS_AS(load_hypotheses(path, 2), std::runtime_error);
}

TEST_CASE("MLE model JSON round-trip is stable") {
  ParallelCorpus corpus;
  corpus.examples.push_back(make_example("1", Dialect::CAI, {"AwSlℏ", "b"}, {"AwSl", "lh", "b"}));
  const MleModel model = train_mle(corpus, MleCondition::joint());
  const std::string json = model.to_json();
  const MleModel back = MleModel::from_json(json);
  CHECK(back.to_json() == json);
  CHECK(back.condition.name() == "JOINT");
  CHECK(mle_predict(back, Sentence::from_tokens({"AwSlℏ"})).tokens ==
        std::vector<std::string>{"AwSl", "lh"});
}
