#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "codanorm/corpus.hpp"

namespace codanorm {

enum class LinkKind { MATCH, SUB, INS, DEL, SPLIT, MERGE };
std::string_view link_kind_name(LinkKind k);

// One monotone link between a raw-side token span and a coda-side token span.
// Spans are half-open index ranges.
struct AlignLink {
  std::size_t src_begin = 0, src_end = 0;
  std::size_t tgt_begin = 0, tgt_end = 0;
  LinkKind kind = LinkKind::MATCH;

  bool operator==(const AlignLink&) const = default;
};

struct Alignment {
  std::vector<AlignLink> links;
};

// Span replacement over the source token sequence. Replacement holds target
// tokens joined by single spaces; empty for a pure deletion.
struct Edit {
  std::size_t src_start = 0, src_end = 0;
  std::string replacement;

  bool operator==(const Edit&) const = default;
  auto operator<=>(const Edit&) const = default;
};

// Character-level transformation; a space code point marks an explicit word
// boundary. Empty src = insertion, empty tgt = deletion.
struct CharEdit {
  std::string src_chars;
  std::string tgt_chars;

  bool operator==(const CharEdit&) const = default;
  auto operator<=>(const CharEdit&) const = default;
};

// Minimal-cost monotone word alignment with MATCH/SUB/DEL/INS plus 1-to-2
// SPLIT and 2-to-1 MERGE moves. Costs: MATCH/SUB use the length-normalized
// character edit distance between the tokens (0 for equality); DEL/INS cost
// 1.0 + 0.01 per code point; SPLIT/MERGE use the normalized distance against
// the space-joined pair plus a 0.1 penalty. Ties resolve preferring
// MATCH > SUB > MERGE > SPLIT > DEL > INS on the later link first.
Alignment align_words(const std::vector<std::string>& src, const std::vector<std::string>& tgt);

// Total cost of the optimal alignment (exposed for oracle cross-checks).
double alignment_cost(const std::vector<std::string>& src, const std::vector<std::string>& tgt);

// One Edit per non-MATCH link, sorted by (src_start, src_end). Adjacent
// non-MATCH links stay separate.
std::vector<Edit> extract_edits(const Alignment& alignment, const std::vector<std::string>& src,
                                const std::vector<std::string>& tgt);

// Applies edits right-to-left; inverse of extract_edits on the same pair.
std::vector<std::string> apply_edits(const std::vector<std::string>& src,
                                     const std::vector<Edit>& edits);

// Non-identity character operations from a unit-cost Levenshtein alignment of
// the two span strings (ties prefer MATCH, then SUB, then DEL, then INS).
std::vector<CharEdit> char_transformations(const std::string& src_span,
                                           const std::string& tgt_span);

// Aligns every example and accumulates character transformation counts,
// descending by count with a lexicographic (src, tgt) tie-break.
std::vector<std::pair<CharEdit, long>> transformation_stats(const ParallelCorpus& corpus,
                                                            std::optional<Dialect> only);

// Unit-cost Levenshtein distance over code points.
std::size_t levenshtein(const std::u32string& a, const std::u32string& b);

}  // namespace codanorm
