#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "codanorm/align.hpp"
#include "codanorm/corpus.hpp"
#include "codanorm/did.hpp"
#include "codanorm/eval.hpp"
#include "codanorm/normalize.hpp"

namespace py = pybind11;
using namespace codanorm;

namespace {

std::vector<Sentence> to_sentences(const std::vector<std::vector<std::string>>& token_lists) {
  std::vector<Sentence> out;
  out.reserve(token_lists.size());
  for (const auto& tokens : token_lists) out.push_back(Sentence::from_tokens(tokens));
  return out;
}

py::dict scores_to_dict(const Scores& s) {
  py::dict d;
  d["matched_edits"] = s.counts.matched;
  d["system_edits"] = s.counts.system;
  d["gold_edits"] = s.counts.gold;
  d["precision"] = s.precision;
  d["recall"] = s.recall;
  d["f1"] = s.f1;
  d["f_half"] = s.f_half;
  d["wer"] = s.wer;
  return d;
}

}  // namespace

PYBIND11_MODULE(_codanorm, m) {
  m.doc() = "Dialectal Arabic orthography normalization and evaluation toolkit";

  py::enum_<Dialect>(m, "Dialect")
      .value("BEI", Dialect::BEI)
      .value("CAI", Dialect::CAI)
      .value("DOH", Dialect::DOH)
      .value("RAB", Dialect::RAB)
      .value("TUN", Dialect::TUN)
      .value("MSA", Dialect::MSA);

  m.def("tokenize", [](const std::string& text) { return tokenize(text); }, py::arg("text"));

  m.def("align_words",
        [](const std::vector<std::string>& src, const std::vector<std::string>& tgt) {
          py::list out;
          for (const AlignLink& l : align_words(src, tgt).links)
            out.append(py::make_tuple(std::string(link_kind_name(l.kind)), l.src_begin, l.src_end,
                                      l.tgt_begin, l.tgt_end));
          return out;
        },
        py::arg("src"), py::arg("tgt"));

  m.def("extract_edits",
        [](const std::vector<std::string>& src, const std::vector<std::string>& tgt) {
          py::list out;
          for (const Edit& e : extract_edits(align_words(src, tgt), src, tgt))
            out.append(py::make_tuple(e.src_start, e.src_end, e.replacement));
          return out;
        },
        py::arg("src"), py::arg("tgt"));

  m.def("char_transformations",
        [](const std::string& src_span, const std::string& tgt_span) {
          py::list out;
          for (const CharEdit& e : char_transformations(src_span, tgt_span))
            out.append(py::make_tuple(e.src_chars, e.tgt_chars));
          return out;
        },
        py::arg("src_span"), py::arg("tgt_span"));

  m.def("f_beta", &f_beta, py::arg("p"), py::arg("r"), py::arg("beta"));

  m.def("m2_score",
        [](const std::vector<std::vector<std::string>>& sources,
           const std::vector<std::vector<std::string>>& hypotheses,
           const std::vector<std::vector<std::string>>& references) {
          const ScoreReport report =
              m2_score(to_sentences(sources), to_sentences(hypotheses), to_sentences(references));
          return scores_to_dict(report.overall);
        },
        py::arg("sources"), py::arg("hypotheses"), py::arg("references"));

  m.def("wer",
        [](const std::vector<std::vector<std::string>>& hypotheses,
           const std::vector<std::vector<std::string>>& references) {
          return wer(to_sentences(hypotheses), to_sentences(references));
        },
        py::arg("hypotheses"), py::arg("references"));

  m.def("significance",
        [](const std::vector<std::vector<std::string>>& sources,
           const std::vector<std::vector<std::string>>& references,
           const std::vector<std::vector<std::string>>& outputs_a,
           const std::vector<std::vector<std::string>>& outputs_b, const std::string& metric,
           long iterations, std::uint64_t seed) {
          SignificanceMetric m2metric;
          if (metric == "f0.5")
            m2metric = SignificanceMetric::F_HALF;
          else if (metric == "wer")
            m2metric = SignificanceMetric::WER;
          else
            throw std::invalid_argument("metric must be 'f0.5' or 'wer'");
          return significance(to_sentences(sources), to_sentences(references),
                              to_sentences(outputs_a), to_sentences(outputs_b), m2metric,
                              iterations, seed);
        },
        py::arg("sources"), py::arg("references"), py::arg("outputs_a"), py::arg("outputs_b"),
        py::arg("metric") = "f0.5", py::arg("iterations") = 10000, py::arg("seed") = 42);

  py::class_<MleModel>(m, "MleModel")
      .def("predict",
           [](const MleModel& model, const std::vector<std::string>& tokens) {
             return mle_predict(model, Sentence::from_tokens(tokens)).tokens;
           },
           py::arg("tokens"))
      .def("to_json", &MleModel::to_json)
      .def_static("from_json", &MleModel::from_json, py::arg("text"));

  py::class_<DidModel>(m, "DidModel")
      .def("predict",
           [](const DidModel& model, const std::vector<std::string>& tokens) {
             const DidPrediction pred = did_predict(model, Sentence::from_tokens(tokens));
             py::dict scores;
             for (const auto& [d, s] : pred.scores) scores[py::cast(d)] = s;
             return py::make_tuple(pred.label, scores);
           },
           py::arg("tokens"))
      .def("to_json", &DidModel::to_json)
      .def_static("from_json", &DidModel::from_json, py::arg("text"));

  m.def("train_did",
        [](const std::vector<std::pair<std::vector<std::string>, Dialect>>& labeled) {
          std::vector<std::pair<Sentence, Dialect>> data;
          data.reserve(labeled.size());
          for (const auto& [tokens, d] : labeled)
            data.emplace_back(Sentence::from_tokens(tokens), d);
          return train_did(data);
        },
        py::arg("labeled"));

  m.def("did_accuracy",
        [](const DidModel& model,
           const std::vector<std::pair<std::vector<std::string>, Dialect>>& labeled) {
          std::vector<std::pair<Sentence, Dialect>> data;
          data.reserve(labeled.size());
          for (const auto& [tokens, d] : labeled)
            data.emplace_back(Sentence::from_tokens(tokens), d);
          return did_accuracy(model, data);
        },
        py::arg("model"), py::arg("labeled"));

  m.def("load_corpus_models",
        [](const std::string& corpus_path, const std::string& manifest_path) {
          ParallelCorpus corpus = load_corpus(corpus_path);
          if (!manifest_path.empty()) apply_split_manifest(corpus, manifest_path);
          py::list out;
          for (const auto& ex : corpus.examples)
            out.append(py::make_tuple(ex.id, ex.dialect, ex.raw.tokens, ex.coda.tokens,
                                      std::string(split_code(ex.split))));
          return out;
        },
        py::arg("corpus_path"), py::arg("manifest_path") = "");

  m.def("train_mle_from_corpus",
        [](const std::string& corpus_path, const std::string& manifest_path,
           const std::string& condition) {
          ParallelCorpus corpus = load_corpus(corpus_path);
          apply_split_manifest(corpus, manifest_path);
          return train_mle(corpus, MleCondition::parse(condition));
        },
        py::arg("corpus_path"), py::arg("manifest_path"), py::arg("condition") = "JOINT");

  m.def("format_control_input",
        [](const std::vector<std::string>& tokens, Dialect dialect, const std::string& scheme) {
          auto s = parse_control_scheme(scheme);
          if (!s) throw std::invalid_argument("unknown control scheme: " + scheme);
          return format_control_input(Sentence::from_tokens(tokens), dialect, *s,
                                      default_control_table());
        },
        py::arg("tokens"), py::arg("dialect"), py::arg("scheme"));
}
