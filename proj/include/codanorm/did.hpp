#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "codanorm/corpus.hpp"

namespace codanorm {

// Multinomial naive Bayes over character 1-3-grams (with word-boundary
// padding) plus word unigrams, add-one smoothed.
struct DidModel {
  std::map<Dialect, double> class_log_priors;
  std::map<Dialect, std::map<std::string, double>> feature_log_likelihoods;
  std::set<std::string> vocabulary;
  int max_char_order = 3;

  std::string to_json() const;
  static DidModel from_json(const std::string& text);
};

struct DidPrediction {
  Dialect label = Dialect::BEI;
  std::map<Dialect, double> scores;
};

// Character n-gram and word-unigram features of one sentence.
std::vector<std::string> did_features(const Sentence& sentence, int max_char_order);

// Throws if any class in the input has zero examples (classes are whatever
// labels appear; an unrepresented label is simply absent from the model).
DidModel train_did(const std::vector<std::pair<Sentence, Dialect>>& labeled);

// Score = class prior + sum of feature log likelihoods; unknown features are
// skipped. Ties break by the fixed label order BEI < CAI < DOH < RAB < TUN < MSA.
DidPrediction did_predict(const DidModel& model, const Sentence& sentence);

double did_accuracy(const DidModel& model,
                    const std::vector<std::pair<Sentence, Dialect>>& labeled);

}  // namespace codanorm
