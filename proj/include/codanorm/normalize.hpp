#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "codanorm/corpus.hpp"
#include "codanorm/did.hpp"

namespace codanorm {

// Reserved previous-word symbol for sentence-initial positions.
inline const std::string kBoundarySymbol = "⟨s⟩";  // ⟨s⟩

// Training condition: all dialects pooled, or a single city dialect.
struct MleCondition {
  std::optional<Dialect> dialect;  // nullopt = JOINT

  static MleCondition joint() { return {}; }
  static MleCondition city(Dialect d) { return {d}; }
  std::string name() const;
  static MleCondition parse(const std::string& name);
};

// Bigram maximum likelihood lookup with unigram backoff. Keys and targets are
// span texts from word alignments (multi-token spans space-joined).
struct MleModel {
  // prev raw word (or boundary symbol) -> raw span -> target -> count
  std::map<std::string, std::map<std::string, std::map<std::string, long>>> bigram_counts;
  // raw span -> target -> count
  std::map<std::string, std::map<std::string, long>> unigram_counts;
  MleCondition condition;

  std::string to_json() const;
  static MleModel from_json(const std::string& text);
};

Sentence do_nothing(const Sentence& sentence);

// Builds count tables from word alignments over the TRAIN examples matching
// the condition. MATCH links count as identity evidence. Throws if the
// selection is empty.
MleModel train_mle(const ParallelCorpus& corpus, MleCondition condition);

// Left-to-right lookup: bigram table first, then unigram backoff, then the
// input word unchanged. Context is always the raw previous token. Argmax
// ties break lexicographically; multi-word targets emit multiple tokens.
Sentence mle_predict(const MleModel& model, const Sentence& sentence);

// DID-routed ensemble: city prediction selects that city's model, an MSA
// prediction falls back to the joint model.
std::pair<Sentence, Dialect> route_predict(const std::map<Dialect, MleModel>& models,
                                           const DidModel& did, const MleModel& fallback,
                                           const Sentence& sentence);

enum class ControlScheme { CITY, MSA_PHRASE, DA_PHRASE, DIGIT };
std::string_view control_scheme_name(ControlScheme s);
std::optional<ControlScheme> parse_control_scheme(std::string_view name);

// (scheme, city dialect) -> control token string.
using ControlTable = std::map<std::pair<ControlScheme, Dialect>, std::string>;

// TSV rows: scheme <TAB> dialect <TAB> token_string.
ControlTable load_control_table(const std::string& path);
ControlTable default_control_table();

// Control token + single space + space-joined sentence, for export to
// external seq2seq systems. Throws for MSA or a missing table entry.
std::string format_control_input(const Sentence& sentence, Dialect dialect, ControlScheme scheme,
                                 const ControlTable& table);

// One sentence per line, order-aligned with its source file. Throws on a
// line-count mismatch.
std::vector<Sentence> load_hypotheses(const std::string& path, std::size_t expected_count);

}  // namespace codanorm
