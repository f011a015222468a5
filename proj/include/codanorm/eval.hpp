#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "codanorm/align.hpp"
#include "codanorm/corpus.hpp"

namespace codanorm {

// (1+b^2) p r / (b^2 p + r); 0 when the denominator vanishes.
double f_beta(double p, double r, double beta);

struct ScoreCounts {
  long matched = 0;
  long system = 0;
  long gold = 0;
  // WER ingredients.
  long edit_distance = 0;
  long ref_tokens = 0;

  ScoreCounts& operator+=(const ScoreCounts& o);
};

struct Scores {
  ScoreCounts counts;
  double precision = 0, recall = 0, f1 = 0, f_half = 0, wer = 0;
};

struct ScoreReport {
  Scores overall;
  std::map<Dialect, Scores> per_dialect;
};

// Per-sentence M2 suffstats: gold edits from align(src, ref), system edits
// from align(src, hyp); an edit matches when (src_start, src_end,
// replacement) are all equal.
ScoreCounts sentence_counts(const Sentence& src, const Sentence& hyp, const Sentence& ref);

Scores scores_from_counts(const ScoreCounts& c);

// Micro-averaged corpus scores; per-dialect sub-reports when labels given.
ScoreReport m2_score(const std::vector<Sentence>& sources, const std::vector<Sentence>& hypotheses,
                     const std::vector<Sentence>& references,
                     const std::vector<Dialect>* dialects = nullptr);

// Corpus WER: sum of token Levenshtein distances / sum of reference lengths.
double wer(const std::vector<Sentence>& hypotheses, const std::vector<Sentence>& references);

enum class SignificanceMetric { F_HALF, WER };

// Two-sided approximate randomization test over whole-sentence output swaps.
// p = (#{|d'| >= |d|} + 1) / (iterations + 1).
double significance(const std::vector<Sentence>& sources, const std::vector<Sentence>& references,
                    const std::vector<Sentence>& outputs_a,
                    const std::vector<Sentence>& outputs_b, SignificanceMetric metric,
                    long iterations, std::uint64_t seed);

enum class ErrorCategory { NON_CODA, HALLUCINATION, RELATED_HALLUCINATION, VALID, DELETION,
                           PUNCTUATION };
std::string_view error_category_name(ErrorCategory c);
std::optional<ErrorCategory> parse_error_category(std::string_view name);

enum class MismatchSide { SPURIOUS, MISSED };

// One record per unmatched system or gold edit; category left blank for
// human annotation.
struct MismatchRecord {
  std::string sentence_id;
  std::optional<Dialect> dialect;
  Edit edit;
  MismatchSide side = MismatchSide::SPURIOUS;
  std::string category;  // empty until annotated
};

std::vector<MismatchRecord> diff_report(const std::vector<Sentence>& sources,
                                        const std::vector<Sentence>& hypotheses,
                                        const std::vector<Sentence>& references,
                                        const std::vector<Dialect>* dialects = nullptr,
                                        const std::vector<std::string>* ids = nullptr);

// TSV: id, dialect, src_start, src_end, replacement, side, category (category
// blank on export; re-ingestion accepts the same layout with it filled).
std::string mismatches_to_tsv(const std::vector<MismatchRecord>& records);
std::vector<MismatchRecord> mismatches_from_tsv(const std::string& text);

// Count of records per annotated category (blank categories skipped).
std::map<std::string, long> category_distribution(const std::vector<MismatchRecord>& records);

}  // namespace codanorm
