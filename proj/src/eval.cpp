#include "codanorm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "codanorm/unicode.hpp"

namespace codanorm {

double f_beta(double p, double r, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * p + r;
  if (denom <= 0.0) return 0.0;
  return (1.0 + b2) * p * r / denom;
}

ScoreCounts& ScoreCounts::operator+=(const ScoreCounts& o) {
  matched += o.matched;
  system += o.system;
  gold += o.gold;
  edit_distance += o.edit_distance;
  ref_tokens += o.ref_tokens;
  return *this;
}

namespace {

std::vector<Edit> edits_between(const Sentence& src, const Sentence& tgt) {
  return extract_edits(align_words(src.tokens, tgt.tokens), src.tokens, tgt.tokens);
}

long token_distance(const Sentence& a, const Sentence& b) {
  // Token-level Levenshtein via interning tokens to code points.
  std::map<std::string, char32_t> intern;
  auto encode = [&](const std::vector<std::string>& tokens) {
    std::u32string s;
    for (const auto& t : tokens) {
      auto [it, _] = intern.emplace(t, static_cast<char32_t>(intern.size() + 1));
      s.push_back(it->second);
    }
    return s;
  };
  return static_cast<long>(levenshtein(encode(a.tokens), encode(b.tokens)));
}

}  // namespace

ScoreCounts sentence_counts(const Sentence& src, const Sentence& hyp, const Sentence& ref) {
  ScoreCounts c;
  std::vector<Edit> gold = edits_between(src, ref);
  std::vector<Edit> system = edits_between(src, hyp);
  c.gold = static_cast<long>(gold.size());
  c.system = static_cast<long>(system.size());
  // Spans within one side are disjoint, so matching is set intersection.
  std::sort(gold.begin(), gold.end());
  std::sort(system.begin(), system.end());
  std::vector<Edit> matched;
  std::set_intersection(gold.begin(), gold.end(), system.begin(), system.end(),
                        std::back_inserter(matched));
  c.matched = static_cast<long>(matched.size());
  c.edit_distance = token_distance(hyp, ref);
  c.ref_tokens = static_cast<long>(ref.tokens.size());
  return c;
}

Scores scores_from_counts(const ScoreCounts& c) {
  Scores s;
  s.counts = c;
  s.precision = c.system == 0 ? 1.0 : static_cast<double>(c.matched) / c.system;
  if (c.gold == 0)
    s.recall = c.system == 0 ? 1.0 : 0.0;
  else
    s.recall = static_cast<double>(c.matched) / c.gold;
  s.f1 = f_beta(s.precision, s.recall, 1.0);
  s.f_half = f_beta(s.precision, s.recall, 0.5);
  s.wer = c.ref_tokens == 0 ? 0.0 : static_cast<double>(c.edit_distance) / c.ref_tokens;
  return s;
}

ScoreReport m2_score(const std::vector<Sentence>& sources, const std::vector<Sentence>& hypotheses,
                     const std::vector<Sentence>& references,
                     const std::vector<Dialect>* dialects) {
  if (sources.size() != hypotheses.size() || sources.size() != references.size())
    throw std::runtime_error("m2_score: source/hypothesis/reference lengths differ");
  if (dialects && dialects->size() != sources.size())
    throw std::runtime_error("m2_score: dialect label count mismatch");

  ScoreCounts total;
  std::map<Dialect, ScoreCounts> by_dialect;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const ScoreCounts c = sentence_counts(sources[i], hypotheses[i], references[i]);
    total += c;
    if (dialects) by_dialect[(*dialects)[i]] += c;
  }
  ScoreReport report;
  report.overall = scores_from_counts(total);
  for (const auto& [d, c] : by_dialect) report.per_dialect[d] = scores_from_counts(c);
  return report;
}

double wer(const std::vector<Sentence>& hypotheses, const std::vector<Sentence>& references) {
  if (hypotheses.size() != references.size())
    throw std::runtime_error("wer: hypothesis/reference lengths differ");
  long dist = 0, ref_tokens = 0;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    dist += token_distance(hypotheses[i], references[i]);
    ref_tokens += static_cast<long>(references[i].tokens.size());
  }
  if (ref_tokens == 0) throw std::runtime_error("wer: zero reference tokens");
  return static_cast<double>(dist) / static_cast<double>(ref_tokens);
}

namespace {

double corpus_metric(SignificanceMetric metric, const ScoreCounts& c) {
  const Scores s = scores_from_counts(c);
  return metric == SignificanceMetric::F_HALF ? s.f_half : s.wer;
}

}  // namespace

double significance(const std::vector<Sentence>& sources, const std::vector<Sentence>& references,
                    const std::vector<Sentence>& outputs_a,
                    const std::vector<Sentence>& outputs_b, SignificanceMetric metric,
                    long iterations, std::uint64_t seed) {
  const std::size_t n = sources.size();
  if (references.size() != n || outputs_a.size() != n || outputs_b.size() != n)
    throw std::runtime_error("significance: input lengths differ");
  if (iterations < 1) throw std::runtime_error("significance: iterations must be >= 1");

  // Per-sentence suffstats are fixed; shuffles only swap which side owns them.
  std::vector<ScoreCounts> stats_a(n), stats_b(n);
  ScoreCounts total_a, total_b;
  for (std::size_t i = 0; i < n; ++i) {
    stats_a[i] = sentence_counts(sources[i], outputs_a[i], references[i]);
    stats_b[i] = sentence_counts(sources[i], outputs_b[i], references[i]);
    total_a += stats_a[i];
    total_b += stats_b[i];
  }
  const double observed =
      std::abs(corpus_metric(metric, total_a) - corpus_metric(metric, total_b));

  std::mt19937_64 rng(seed);
  long at_least = 0;
  for (long it = 0; it < iterations; ++it) {
    ScoreCounts sa, sb;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() & 1u) {
        sa += stats_b[i];
        sb += stats_a[i];
      } else {
        sa += stats_a[i];
        sb += stats_b[i];
      }
    }
    const double delta = std::abs(corpus_metric(metric, sa) - corpus_metric(metric, sb));
    if (delta >= observed - 1e-12) ++at_least;
  }
  return static_cast<double>(at_least + 1) / static_cast<double>(iterations + 1);
}

std::string_view error_category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::NON_CODA: return "NON_CODA";
    case ErrorCategory::HALLUCINATION: return "HALLUCINATION";
    case ErrorCategory::RELATED_HALLUCINATION: return "RELATED_HALLUCINATION";
    case ErrorCategory::VALID: return "VALID";
    case ErrorCategory::DELETION: return "DELETION";
    case ErrorCategory::PUNCTUATION: return "PUNCTUATION";
  }
  return "?";
}

std::optional<ErrorCategory> parse_error_category(std::string_view name) {
  for (ErrorCategory c :
       {ErrorCategory::NON_CODA, ErrorCategory::HALLUCINATION,
        ErrorCategory::RELATED_HALLUCINATION, ErrorCategory::VALID, ErrorCategory::DELETION,
        ErrorCategory::PUNCTUATION})
    if (name == error_category_name(c)) return c;
  return std::nullopt;
}

std::vector<MismatchRecord> diff_report(const std::vector<Sentence>& sources,
                                        const std::vector<Sentence>& hypotheses,
                                        const std::vector<Sentence>& references,
                                        const std::vector<Dialect>* dialects,
                                        const std::vector<std::string>* ids) {
  const std::size_t n = sources.size();
  if (hypotheses.size() != n || references.size() != n)
    throw std::runtime_error("diff_report: input lengths differ");

  std::vector<MismatchRecord> records;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Edit> gold = edits_between(sources[i], references[i]);
    std::vector<Edit> system = edits_between(sources[i], hypotheses[i]);
    std::sort(gold.begin(), gold.end());
    std::sort(system.begin(), system.end());
    auto emit = [&](const Edit& e, MismatchSide side) {
      MismatchRecord r;
      r.sentence_id = ids ? (*ids)[i] : std::to_string(i);
      if (dialects) r.dialect = (*dialects)[i];
      r.edit = e;
      r.side = side;
      records.push_back(std::move(r));
    };
    std::vector<Edit> spurious, missed;
    std::set_difference(system.begin(), system.end(), gold.begin(), gold.end(),
                        std::back_inserter(spurious));
    std::set_difference(gold.begin(), gold.end(), system.begin(), system.end(),
                        std::back_inserter(missed));
    for (const Edit& e : spurious) emit(e, MismatchSide::SPURIOUS);
    for (const Edit& e : missed) emit(e, MismatchSide::MISSED);
  }
  return records;
}

std::string mismatches_to_tsv(const std::vector<MismatchRecord>& records) {
  std::string out = "id\tdialect\tsrc_start\tsrc_end\treplacement\tside\tcategory\n";
  for (const auto& r : records) {
    out += r.sentence_id;
    out.push_back('\t');
    out += r.dialect ? std::string(dialect_code(*r.dialect)) : "";
    out.push_back('\t');
    out += std::to_string(r.edit.src_start);
    out.push_back('\t');
    out += std::to_string(r.edit.src_end);
    out.push_back('\t');
    out += r.edit.replacement;
    out.push_back('\t');
    out += r.side == MismatchSide::SPURIOUS ? "SPURIOUS" : "MISSED";
    out.push_back('\t');
    out += r.category;
    out.push_back('\n');
  }
  return out;
}

std::vector<MismatchRecord> mismatches_from_tsv(const std::string& text) {
  std::vector<MismatchRecord> records;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, '\t')) cells.push_back(cell);
    while (cells.size() < 7) cells.push_back("");
    if (lineno == 1 && cells[0] == "id") continue;
    if (cells.size() != 7)
      throw std::runtime_error("malformed mismatch row at line " + std::to_string(lineno));
    MismatchRecord r;
    r.sentence_id = cells[0];
    if (!cells[1].empty()) {
      auto d = parse_dialect(cells[1]);
      if (!d) throw std::runtime_error("bad dialect at line " + std::to_string(lineno));
      r.dialect = *d;
    }
    r.edit.src_start = std::stoul(cells[2]);
    r.edit.src_end = std::stoul(cells[3]);
    r.edit.replacement = cells[4];
    if (cells[5] == "SPURIOUS")
      r.side = MismatchSide::SPURIOUS;
    else if (cells[5] == "MISSED")
      r.side = MismatchSide::MISSED;
    else
      throw std::runtime_error("bad side at line " + std::to_string(lineno));
    if (!cells[6].empty() && !parse_error_category(cells[6]))
      throw std::runtime_error("unknown category at line " + std::to_string(lineno));
    r.category = cells[6];
    records.push_back(std::move(r));
  }
  return records;
}

std::map<std::string, long> category_distribution(const std::vector<MismatchRecord>& records) {
  std::map<std::string, long> dist;
  for (const auto& r : records)
    if (!r.category.empty()) ++dist[r.category];
  return dist;
}

}  // namespace codanorm
