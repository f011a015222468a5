#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace codanorm {

// Five MADAR city dialects plus MSA. MSA is a valid dialect-identification
// label but never a corpus example's dialect.
enum class Dialect { BEI, CAI, DOH, RAB, TUN, MSA };

constexpr std::array<Dialect, 5> kCityDialects = {Dialect::BEI, Dialect::CAI, Dialect::DOH,
                                                  Dialect::RAB, Dialect::TUN};
constexpr std::array<Dialect, 6> kAllLabels = {Dialect::BEI, Dialect::CAI, Dialect::DOH,
                                               Dialect::RAB, Dialect::TUN, Dialect::MSA};

std::string_view dialect_code(Dialect d);
std::optional<Dialect> parse_dialect(std::string_view code);

enum class Split { TRAIN, DEV, TEST, UNSPLIT };
std::string_view split_code(Split s);
std::optional<Split> parse_split(std::string_view code);

// NFC-normalizes, splits on whitespace, then detaches contiguous punctuation
// runs from word characters. Empty input yields an empty list.
std::vector<std::string> tokenize(std::string_view text);

struct Sentence {
  std::vector<std::string> tokens;
  std::string raw_text;

  static Sentence from_text(std::string_view text);
  static Sentence from_tokens(std::vector<std::string> tokens);

  bool empty() const { return tokens.empty(); }
  std::string joined() const;  // tokens joined with single spaces
  bool operator==(const Sentence& o) const { return tokens == o.tokens; }
};

struct ParallelExample {
  std::string id;
  Dialect dialect = Dialect::BEI;  // city dialects only
  Sentence raw;
  Sentence coda;
  Split split = Split::UNSPLIT;
};

struct ParallelCorpus {
  std::vector<ParallelExample> examples;

  std::map<Dialect, std::size_t> per_dialect_counts() const;
  // Examples carrying the given split label, in corpus order.
  std::vector<const ParallelExample*> with_split(Split s) const;
};

// TSV columns: id <TAB> dialect <TAB> raw <TAB> coda. A header row whose
// first cell is the literal "id" is skipped. Throws std::runtime_error with
// the offending line number on malformed rows or duplicate ids.
ParallelCorpus load_corpus(const std::string& path);
void save_corpus(const ParallelCorpus& corpus, const std::string& path);

struct SplitRatios {
  double train = 0.70;
  double dev = 0.15;
  double test = 0.15;
};

// Shuffles examples within each dialect with a generator seeded from `seed`,
// then assigns floor(n*train) to TRAIN, floor(n*dev) to DEV, remainder to
// TEST per dialect. Throws if ratios do not sum to 1 or any dialect has
// fewer than 3 examples.
ParallelCorpus split_corpus(const ParallelCorpus& corpus, SplitRatios ratios, std::uint64_t seed);

// Split manifest: id <TAB> split, one row per example in corpus order.
void save_split_manifest(const ParallelCorpus& corpus, const std::string& path);
void apply_split_manifest(ParallelCorpus& corpus, const std::string& path);

}  // namespace codanorm
