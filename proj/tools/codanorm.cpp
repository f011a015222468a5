#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "codanorm/align.hpp"
#include "codanorm/corpus.hpp"
#include "codanorm/did.hpp"
#include "codanorm/eval.hpp"
#include "codanorm/io.hpp"
#include "codanorm/normalize.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace codanorm;

namespace {

Split parse_split_arg(const std::string& s) {
  if (s == "train") return Split::TRAIN;
  if (s == "dev") return Split::DEV;
  if (s == "test") return Split::TEST;
  throw std::runtime_error("unknown split \"" + s + "\" (use train|dev|test)");
}

ParallelCorpus load_with_manifest(const std::string& corpus_path, const std::string& manifest) {
  ParallelCorpus corpus = load_corpus(corpus_path);
  if (!manifest.empty()) apply_split_manifest(corpus, manifest);
  return corpus;
}

struct SplitView {
  std::vector<Sentence> sources, references;
  std::vector<Dialect> dialects;
  std::vector<std::string> ids;
};

SplitView view_of(const ParallelCorpus& corpus, Split split) {
  SplitView v;
  for (const auto* ex : corpus.with_split(split)) {
    v.sources.push_back(ex->raw);
    v.references.push_back(ex->coda);
    v.dialects.push_back(ex->dialect);
    v.ids.push_back(ex->id);
  }
  if (v.sources.empty())
    throw std::runtime_error(std::string("no examples in split ") +
                             std::string(split_code(split)));
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_sentences(const std::vector<Sentence>& sentences, const std::string& path) {
  std::string out;
  for (const auto& s : sentences) {
    out += s.joined();
    out.push_back('\n');
  }
  write_file_atomic(path, out);
}

nlohmann::json scores_to_json(const Scores& s) {
  return {{"matched_edits", s.counts.matched}, {"system_edits", s.counts.system},
          {"gold_edits", s.counts.gold},       {"precision", s.precision},
          {"recall", s.recall},                {"f1", s.f1},
          {"f_half", s.f_half},                {"wer", s.wer}};
}

void print_score_row(const std::string& name, const Scores& s) {
  std::printf("%-8s %8.2f %8.2f %8.2f %8.2f %8.2f\n", name.c_str(), 100.0 * s.precision,
              100.0 * s.recall, 100.0 * s.f1, 100.0 * s.f_half, 100.0 * s.wer);
}

void print_report(const ScoreReport& report, bool per_dialect) {
  std::printf("%-8s %8s %8s %8s %8s %8s\n", "", "P", "R", "F1", "F0.5", "WER");
  print_score_row("ALL", report.overall);
  if (per_dialect)
    for (const auto& [d, s] : report.per_dialect) print_score_row(std::string(dialect_code(d)), s);
}

std::string render_spc(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == ' ')
      out += "<SPC>";
    else
      out.push_back(c);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dialectal Arabic orthography normalization and evaluation toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key/value config file; flags override file values");
  app.get_config_formatter_base()->comment('#');

  std::string corpus_path, manifest_path, split_name = "dev";
  std::string out_path, model_dir = ".", hyp_path;
  std::uint64_t seed = 42;

  // split
  auto* cmd_split = app.add_subcommand("split", "Assign train/dev/test splits per dialect");
  double r_train = 0.70, r_dev = 0.15, r_test = 0.15;
  cmd_split->add_option("--corpus", corpus_path, "Corpus TSV")->required();
  cmd_split->add_option("--train-ratio", r_train, "Train fraction");
  cmd_split->add_option("--dev-ratio", r_dev, "Dev fraction");
  cmd_split->add_option("--test-ratio", r_test, "Test fraction");
  cmd_split->add_option("--seed", seed, "Shuffle seed");
  cmd_split->add_option("--manifest", out_path, "Output split manifest TSV")->required();

  // train
  auto* cmd_train = app.add_subcommand("train", "Train MLE or DID models");
  std::string model_kind;
  cmd_train->add_option("--corpus", corpus_path, "Corpus TSV")->required();
  cmd_train->add_option("--manifest", manifest_path, "Split manifest TSV")->required();
  cmd_train->add_option("--model", model_kind, "mle-joint | mle-ensemble | did")->required();
  cmd_train->add_option("--out-dir", model_dir, "Output directory for model files");

  // predict
  auto* cmd_predict = app.add_subcommand("predict", "Normalize a split with a chosen system");
  std::string system_kind, sidecar_path;
  cmd_predict->add_option("--corpus", corpus_path, "Corpus TSV")->required();
  cmd_predict->add_option("--manifest", manifest_path, "Split manifest TSV")->required();
  cmd_predict->add_option("--split", split_name, "train | dev | test");
  cmd_predict->add_option("--system", system_kind, "do-nothing | mle-joint | mle-ensemble")
      ->required();
  cmd_predict->add_option("--models", model_dir, "Directory holding model files");
  cmd_predict->add_option("--out", out_path, "Output hypothesis file")->required();
  cmd_predict->add_option("--sidecar", sidecar_path, "Chosen-dialect sidecar (ensemble only)");

  // evaluate
  auto* cmd_evaluate = app.add_subcommand("evaluate", "Score a hypothesis file (M2 + WER)");
  bool per_dialect = false;
  std::string report_path;
  cmd_evaluate->add_option("--corpus", corpus_path, "Corpus TSV")->required();
  cmd_evaluate->add_option("--manifest", manifest_path, "Split manifest TSV")->required();
  cmd_evaluate->add_option("--split", split_name, "train | dev | test");
  cmd_evaluate->add_option("--hyp", hyp_path, "Hypothesis file")->required();
  cmd_evaluate->add_option("--report", report_path, "Output JSON report");
  cmd_evaluate->add_flag("--per-dialect", per_dialect, "Include per-dialect sub-reports");

  // stats
  auto* cmd_stats = app.add_subcommand("stats", "Character transformation statistics");
  long top = 10;
  std::string dialect_filter;
  bool stats_per_dialect = false;
  cmd_stats->add_option("--corpus", corpus_path, "Corpus TSV")->required();
  cmd_stats->add_option("--top", top, "Number of rows to keep");
  cmd_stats->add_option("--dialect", dialect_filter, "Restrict to one dialect");
  cmd_stats->add_flag("--per-dialect", stats_per_dialect, "One ranked column per dialect");
  cmd_stats->add_option("--out", out_path, "Output TSV")->required();

  // significance
  auto* cmd_sig = app.add_subcommand("significance", "Approximate randomization test");
  std::string hyp_a, hyp_b, metric_name = "f0.5";
  long iterations = 10000;
  cmd_sig->add_option("--corpus", corpus_path, "Corpus TSV")->required();
  cmd_sig->add_option("--manifest", manifest_path, "Split manifest TSV")->required();
  cmd_sig->add_option("--split", split_name, "train | dev | test");
  cmd_sig->add_option("--hyp-a", hyp_a, "Hypothesis file A")->required();
  cmd_sig->add_option("--hyp-b", hyp_b, "Hypothesis file B")->required();
  cmd_sig->add_option("--metric", metric_name, "f0.5 | wer");
  cmd_sig->add_option("--iterations", iterations, "Randomization iterations");
  cmd_sig->add_option("--seed", seed, "Randomization seed");

  // diff-report
  auto* cmd_diff = app.add_subcommand("diff-report", "Unmatched-edit report for annotation");
  std::string ingest_path;
  cmd_diff->add_option("--corpus", corpus_path, "Corpus TSV");
  cmd_diff->add_option("--manifest", manifest_path, "Split manifest TSV");
  cmd_diff->add_option("--split", split_name, "train | dev | test");
  cmd_diff->add_option("--hyp", hyp_path, "Hypothesis file");
  cmd_diff->add_option("--out", out_path, "Output TSV");
  cmd_diff->add_option("--ingest", ingest_path,
                       "Annotated TSV; prints the category distribution instead");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_split->parsed()) {
      ParallelCorpus corpus = load_corpus(corpus_path);
      corpus = split_corpus(corpus, {r_train, r_dev, r_test}, seed);
      save_split_manifest(corpus, out_path);
      std::map<Split, long> sizes;
      for (const auto& ex : corpus.examples) ++sizes[ex.split];
      std::printf("train=%ld dev=%ld test=%ld\n", sizes[Split::TRAIN], sizes[Split::DEV],
                  sizes[Split::TEST]);
    } else if (cmd_train->parsed()) {
      ParallelCorpus corpus = load_with_manifest(corpus_path, manifest_path);
      fs::create_directories(model_dir);
      auto write_model = [&](const MleModel& m) {
        write_file_atomic((fs::path(model_dir) / ("mle." + m.condition.name() + ".json")).string(),
                          m.to_json());
      };
      if (model_kind == "mle-joint") {
        write_model(train_mle(corpus, MleCondition::joint()));
      } else if (model_kind == "mle-ensemble") {
        write_model(train_mle(corpus, MleCondition::joint()));
        for (Dialect d : kCityDialects) write_model(train_mle(corpus, MleCondition::city(d)));
      } else if (model_kind == "did") {
        std::vector<std::pair<Sentence, Dialect>> labeled;
        std::map<Dialect, long> counts;
        for (const auto* ex : corpus.with_split(Split::TRAIN)) {
          labeled.emplace_back(ex->raw, ex->dialect);
          ++counts[ex->dialect];
        }
        for (Dialect d : kCityDialects)
          if (counts[d] == 0)
            throw std::runtime_error(std::string("no training data for dialect ") +
                                     std::string(dialect_code(d)));
        write_file_atomic((fs::path(model_dir) / "did.json").string(),
                          train_did(labeled).to_json());
      } else {
        throw std::runtime_error("unknown model kind \"" + model_kind + "\"");
      }
    } else if (cmd_predict->parsed()) {
      ParallelCorpus corpus = load_with_manifest(corpus_path, manifest_path);
      const SplitView v = view_of(corpus, parse_split_arg(split_name));
      std::vector<Sentence> outputs;
      if (system_kind == "do-nothing") {
        for (const auto& s : v.sources) outputs.push_back(do_nothing(s));
      } else if (system_kind == "mle-joint") {
        const MleModel joint =
            MleModel::from_json(read_file((fs::path(model_dir) / "mle.JOINT.json").string()));
        for (const auto& s : v.sources) outputs.push_back(mle_predict(joint, s));
      } else if (system_kind == "mle-ensemble") {
        const MleModel joint =
            MleModel::from_json(read_file((fs::path(model_dir) / "mle.JOINT.json").string()));
        std::map<Dialect, MleModel> models;
        for (Dialect d : kCityDialects)
          models.emplace(d, MleModel::from_json(read_file(
                                (fs::path(model_dir) / ("mle." + std::string(dialect_code(d)) +
                                                        ".json")).string())));
        const DidModel did =
            DidModel::from_json(read_file((fs::path(model_dir) / "did.json").string()));
        std::string sidecar;
        for (const auto& s : v.sources) {
          auto [out, chosen] = route_predict(models, did, joint, s);
          outputs.push_back(std::move(out));
          sidecar += std::string(dialect_code(chosen));
          sidecar.push_back('\n');
        }
        if (!sidecar_path.empty()) write_file_atomic(sidecar_path, sidecar);
      } else {
        throw std::runtime_error("unknown system \"" + system_kind + "\"");
      }
      write_sentences(outputs, out_path);
    } else if (cmd_evaluate->parsed()) {
      ParallelCorpus corpus = load_with_manifest(corpus_path, manifest_path);
      const SplitView v = view_of(corpus, parse_split_arg(split_name));
      const auto hyps = load_hypotheses(hyp_path, v.sources.size());
      const ScoreReport report =
          m2_score(v.sources, hyps, v.references, per_dialect ? &v.dialects : nullptr);
      print_report(report, per_dialect);
      if (!report_path.empty()) {
        nlohmann::json j;
        j["overall"] = scores_to_json(report.overall);
        nlohmann::json pd = nlohmann::json::object();
        for (const auto& [d, s] : report.per_dialect)
          pd[std::string(dialect_code(d))] = scores_to_json(s);
        j["per_dialect"] = pd;
        write_file_atomic(report_path, j.dump(2) + "\n");
      }
    } else if (cmd_stats->parsed()) {
      ParallelCorpus corpus = load_corpus(corpus_path);
      auto take = [&](std::vector<std::pair<CharEdit, long>> ranked) {
        if (top >= 0 && ranked.size() > static_cast<std::size_t>(top))
          ranked.resize(static_cast<std::size_t>(top));
        return ranked;
      };
      std::string out;
      if (stats_per_dialect) {
        std::map<Dialect, std::vector<std::pair<CharEdit, long>>> columns;
        std::size_t rows = 0;
        for (Dialect d : kCityDialects) {
          columns[d] = take(transformation_stats(corpus, d));
          rows = std::max(rows, columns[d].size());
        }
        out = "rank";
        for (Dialect d : kCityDialects)
          out += "\t" + std::string(dialect_code(d)) + "_src\t" + std::string(dialect_code(d)) +
                 "_tgt\t" + std::string(dialect_code(d)) + "_count";
        out.push_back('\n');
        for (std::size_t r = 0; r < rows; ++r) {
          out += std::to_string(r + 1);
          for (Dialect d : kCityDialects) {
            const auto& col = columns[d];
            if (r < col.size())
              out += "\t" + render_spc(col[r].first.src_chars) + "\t" +
                     render_spc(col[r].first.tgt_chars) + "\t" + std::to_string(col[r].second);
            else
              out += "\t\t\t";
          }
          out.push_back('\n');
        }
      } else {
        std::optional<Dialect> only;
        if (!dialect_filter.empty()) {
          auto d = parse_dialect(dialect_filter);
          if (!d || *d == Dialect::MSA)
            throw std::runtime_error("unknown dialect \"" + dialect_filter + "\"");
          only = *d;
        }
        const auto ranked = take(transformation_stats(corpus, only));
        out = "rank\tsrc\ttgt\tcount\n";
        for (std::size_t r = 0; r < ranked.size(); ++r)
          out += std::to_string(r + 1) + "\t" + render_spc(ranked[r].first.src_chars) + "\t" +
                 render_spc(ranked[r].first.tgt_chars) + "\t" + std::to_string(ranked[r].second) +
                 "\n";
      }
      write_file_atomic(out_path, out);
    } else if (cmd_sig->parsed()) {
      ParallelCorpus corpus = load_with_manifest(corpus_path, manifest_path);
      const SplitView v = view_of(corpus, parse_split_arg(split_name));
      const auto a = load_hypotheses(hyp_a, v.sources.size());
      const auto b = load_hypotheses(hyp_b, v.sources.size());
      SignificanceMetric metric;
      if (metric_name == "f0.5")
        metric = SignificanceMetric::F_HALF;
      else if (metric_name == "wer")
        metric = SignificanceMetric::WER;
      else
        throw std::runtime_error("unknown metric \"" + metric_name + "\"");
      const double p = significance(v.sources, v.references, a, b, metric, iterations, seed);
      std::printf("p=%.6f significant_at_0.05=%s\n", p, p < 0.05 ? "yes" : "no");
    } else if (cmd_diff->parsed()) {
      if (!ingest_path.empty()) {
        const auto records = mismatches_from_tsv(read_file(ingest_path));
        long annotated = 0;
        const auto dist = category_distribution(records);
        for (const auto& [_, c] : dist) annotated += c;
        for (const auto& [category, count] : dist)
          std::printf("%-24s %6ld %6.1f%%\n", category.c_str(), count,
                      annotated ? 100.0 * count / annotated : 0.0);
        std::printf("%-24s %6ld\n", "TOTAL_ANNOTATED", annotated);
      } else {
        if (corpus_path.empty() || manifest_path.empty() || hyp_path.empty() || out_path.empty())
          throw std::runtime_error("diff-report needs --corpus --manifest --hyp --out");
        ParallelCorpus corpus = load_with_manifest(corpus_path, manifest_path);
        const SplitView v = view_of(corpus, parse_split_arg(split_name));
        const auto hyps = load_hypotheses(hyp_path, v.sources.size());
        const auto records = diff_report(v.sources, hyps, v.references, &v.dialects, &v.ids);
        write_file_atomic(out_path, mismatches_to_tsv(records));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
