#include "codanorm/did.hpp"

#include <cmath>
#include <stdexcept>

#include "codanorm/unicode.hpp"
#include "json.hpp"

namespace codanorm {

namespace {

const std::u32string kWordBoundary = U"⟨w⟩";

}  // namespace

std::vector<std::string> did_features(const Sentence& sentence, int max_char_order) {
  std::vector<std::string> feats;
  for (const std::string& word : sentence.tokens) {
    // Pad each word so word-initial and word-final n-grams are distinct cues.
    std::vector<std::u32string> symbols;
    symbols.push_back(kWordBoundary);
    for (char32_t c : decode_utf8(word)) symbols.push_back(std::u32string(1, c));
    symbols.push_back(kWordBoundary);
    for (int order = 1; order <= max_char_order; ++order) {
      if (symbols.size() < static_cast<std::size_t>(order)) continue;
      for (std::size_t i = 0; i + order <= symbols.size(); ++i) {
        std::u32string gram;
        for (int k = 0; k < order; ++k) gram += symbols[i + k];
        feats.push_back("c|" + encode_utf8(gram));
      }
    }
    feats.push_back("w|" + word);
  }
  return feats;
}

DidModel train_did(const std::vector<std::pair<Sentence, Dialect>>& labeled) {
  if (labeled.empty()) throw std::runtime_error("cannot train DID on an empty set");

  DidModel model;
  std::map<Dialect, long> class_counts;
  std::map<Dialect, std::map<std::string, long>> feature_counts;
  std::map<Dialect, long> feature_mass;
  for (const auto& [sentence, label] : labeled) {
    ++class_counts[label];
    for (auto& f : did_features(sentence, model.max_char_order)) {
      ++feature_counts[label][f];
      ++feature_mass[label];
      model.vocabulary.insert(f);
    }
  }
  for (const auto& [label, count] : class_counts) {
    if (count == 0) throw std::runtime_error("DID label with zero examples");
  }

  const double total = static_cast<double>(labeled.size());
  const double vocab_size = static_cast<double>(model.vocabulary.size());
  for (const auto& [label, count] : class_counts) {
    model.class_log_priors[label] = std::log(static_cast<double>(count) / total);
    const double mass = static_cast<double>(feature_mass[label]);
    auto& lik = model.feature_log_likelihoods[label];
    const auto& counts = feature_counts[label];
    for (const std::string& f : model.vocabulary) {
      auto it = counts.find(f);
      const double c = it == counts.end() ? 0.0 : static_cast<double>(it->second);
      lik[f] = std::log((c + 1.0) / (mass + vocab_size));
    }
  }
  return model;
}

DidPrediction did_predict(const DidModel& model, const Sentence& sentence) {
  const auto feats = did_features(sentence, model.max_char_order);
  DidPrediction pred;
  bool first = true;
  for (Dialect label : kAllLabels) {
    auto prior = model.class_log_priors.find(label);
    if (prior == model.class_log_priors.end()) continue;
    double score = prior->second;
    const auto& lik = model.feature_log_likelihoods.at(label);
    for (const auto& f : feats) {
      auto it = lik.find(f);
      if (it != lik.end()) score += it->second;
    }
    pred.scores[label] = score;
    if (first || score > pred.scores[pred.label]) {
      pred.label = label;
      first = false;
    }
  }
  if (first) throw std::runtime_error("DID model has no classes");
  return pred;
}

double did_accuracy(const DidModel& model,
                    const std::vector<std::pair<Sentence, Dialect>>& labeled) {
  if (labeled.empty()) throw std::runtime_error("empty DID evaluation set");
  long correct = 0;
  for (const auto& [sentence, label] : labeled)
    if (did_predict(model, sentence).label == label) ++correct;
  return static_cast<double>(correct) / static_cast<double>(labeled.size());
}

std::string DidModel::to_json() const {
  nlohmann::json j;
  j["format_version"] = 1;
  j["max_char_order"] = max_char_order;
  nlohmann::json priors = nlohmann::json::object();
  for (const auto& [label, lp] : class_log_priors) priors[std::string(dialect_code(label))] = lp;
  j["class_log_priors"] = priors;
  nlohmann::json liks = nlohmann::json::object();
  for (const auto& [label, table] : feature_log_likelihoods) {
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [f, v] : table) t[f] = v;
    liks[std::string(dialect_code(label))] = t;
  }
  j["feature_log_likelihoods"] = liks;
  j["vocabulary"] = vocabulary;
  return j.dump();
}

DidModel DidModel::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("format_version").get<int>() != 1)
    throw std::runtime_error("unsupported DID model format version");
  DidModel model;
  model.max_char_order = j.at("max_char_order").get<int>();
  for (const auto& [code, lp] : j.at("class_log_priors").items()) {
    auto d = parse_dialect(code);
    if (!d) throw std::runtime_error("bad dialect code in DID model: " + code);
    model.class_log_priors[*d] = lp.get<double>();
  }
  for (const auto& [code, table] : j.at("feature_log_likelihoods").items()) {
    auto d = parse_dialect(code);
    if (!d) throw std::runtime_error("bad dialect code in DID model: " + code);
    auto& lik = model.feature_log_likelihoods[*d];
    for (const auto& [f, v] : table.items()) lik[f] = v.get<double>();
  }
  for (const auto& f : j.at("vocabulary")) model.vocabulary.insert(f.get<std::string>());
  return model;
}

}  // namespace codanorm
