#include "codanorm/align.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "codanorm/unicode.hpp"

namespace codanorm {

namespace {

constexpr double kEps = 1e-9;
constexpr double kGapCost = 1.0;
constexpr double kLenPenalty = 0.01;
constexpr double kSplitMergePenalty = 0.1;

// Tie preference, lower wins.
int move_rank(LinkKind k) {
  switch (k) {
    case LinkKind::MATCH: return 0;
    case LinkKind::SUB: return 1;
    case LinkKind::MERGE: return 2;
    case LinkKind::SPLIT: return 3;
    case LinkKind::DEL: return 4;
    case LinkKind::INS: return 5;
  }
  return 6;
}

// Normalized by the summed lengths so an unrelated 1-1 substitution stays
// cheaper than a split/merge that swallows a neighboring token.
double normalized_distance(const std::u32string& a, const std::u32string& b) {
  if (a == b) return 0.0;
  const std::size_t m = a.size() + b.size();
  return m == 0 ? 0.0 : static_cast<double>(levenshtein(a, b)) / static_cast<double>(m);
}

struct Move {
  LinkKind kind;
  std::size_t di, dj;  // span widths consumed on src/tgt
};

struct Cell {
  double cost = std::numeric_limits<double>::infinity();
  Move move{LinkKind::MATCH, 0, 0};
};

std::vector<std::vector<Cell>> run_dp(const std::vector<std::u32string>& src,
                                      const std::vector<std::u32string>& tgt) {
  const std::size_t n = src.size(), m = tgt.size();
  std::vector<std::vector<Cell>> dp(n + 1, std::vector<Cell>(m + 1));
  dp[0][0].cost = 0.0;

  auto joined = [](const std::u32string& a, const std::u32string& b) {
    std::u32string j = a;
    j.push_back(U' ');
    j += b;
    return j;
  };

  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      if (i == 0 && j == 0) continue;
      Cell best;
      int best_rank = 7;
      auto consider = [&](LinkKind kind, std::size_t di, std::size_t dj, double move_cost) {
        if (i < di || j < dj) return;
        const double c = dp[i - di][j - dj].cost + move_cost;
        const int r = move_rank(kind);
        if (c < best.cost - kEps || (c <= best.cost + kEps && r < best_rank)) {
          best.cost = std::min(c, best.cost);
          best.move = {kind, di, dj};
          best_rank = r;
        }
      };
      if (i >= 1 && j >= 1) {
        const bool eq = src[i - 1] == tgt[j - 1];
        consider(eq ? LinkKind::MATCH : LinkKind::SUB, 1, 1,
                 normalized_distance(src[i - 1], tgt[j - 1]));
      }
      if (i >= 2 && j >= 1)
        consider(LinkKind::MERGE, 2, 1,
                 normalized_distance(joined(src[i - 2], src[i - 1]), tgt[j - 1]) +
                     kSplitMergePenalty);
      if (i >= 1 && j >= 2)
        consider(LinkKind::SPLIT, 1, 2,
                 normalized_distance(src[i - 1], joined(tgt[j - 2], tgt[j - 1])) +
                     kSplitMergePenalty);
      if (i >= 1)
        consider(LinkKind::DEL, 1, 0,
                 kGapCost + kLenPenalty * static_cast<double>(src[i - 1].size()));
      if (j >= 1)
        consider(LinkKind::INS, 0, 1,
                 kGapCost + kLenPenalty * static_cast<double>(tgt[j - 1].size()));
      dp[i][j] = best;
    }
  }
  return dp;
}

std::vector<std::u32string> decode_tokens(const std::vector<std::string>& tokens) {
  std::vector<std::u32string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(decode_utf8(t));
  return out;
}

std::string join_span(const std::vector<std::string>& tokens, std::size_t b, std::size_t e) {
  std::string out;
  for (std::size_t k = b; k < e; ++k) {
    if (k > b) out.push_back(' ');
    out += tokens[k];
  }
  return out;
}

}  // namespace

std::string_view link_kind_name(LinkKind k) {
  switch (k) {
    case LinkKind::MATCH: return "MATCH";
    case LinkKind::SUB: return "SUB";
    case LinkKind::INS: return "INS";
    case LinkKind::DEL: return "DEL";
    case LinkKind::SPLIT: return "SPLIT";
    case LinkKind::MERGE: return "MERGE";
  }
  return "?";
}

std::size_t levenshtein(const std::u32string& a, const std::u32string& b) {
  const std::size_t n = a.size(), m = b.size();
  if (n == 0) return m;
  if (m == 0) return n;
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

Alignment align_words(const std::vector<std::string>& src, const std::vector<std::string>& tgt) {
  const auto s = decode_tokens(src);
  const auto t = decode_tokens(tgt);
  const auto dp = run_dp(s, t);

  Alignment out;
  std::size_t i = src.size(), j = tgt.size();
  while (i > 0 || j > 0) {
    const Move& mv = dp[i][j].move;
    AlignLink link;
    link.src_begin = i - mv.di;
    link.src_end = i;
    link.tgt_begin = j - mv.dj;
    link.tgt_end = j;
    link.kind = mv.kind;
    out.links.push_back(link);
    i -= mv.di;
    j -= mv.dj;
  }
  std::reverse(out.links.begin(), out.links.end());
  return out;
}

double alignment_cost(const std::vector<std::string>& src, const std::vector<std::string>& tgt) {
  const auto s = decode_tokens(src);
  const auto t = decode_tokens(tgt);
  return run_dp(s, t)[s.size()][t.size()].cost;
}

std::vector<Edit> extract_edits(const Alignment& alignment, const std::vector<std::string>& src,
                                const std::vector<std::string>& tgt) {
  (void)src;
  std::vector<Edit> edits;
  for (const AlignLink& link : alignment.links) {
    if (link.kind == LinkKind::MATCH) continue;
    Edit e;
    e.src_start = link.src_begin;
    e.src_end = link.src_end;
    e.replacement = join_span(tgt, link.tgt_begin, link.tgt_end);
    edits.push_back(std::move(e));
  }
  std::stable_sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) {
    return std::tie(a.src_start, a.src_end) < std::tie(b.src_start, b.src_end);
  });
  return edits;
}

std::vector<std::string> apply_edits(const std::vector<std::string>& src,
                                     const std::vector<Edit>& edits) {
  std::vector<Edit> ordered = edits;
  std::stable_sort(ordered.begin(), ordered.end(), [](const Edit& a, const Edit& b) {
    return std::tie(a.src_start, a.src_end) < std::tie(b.src_start, b.src_end);
  });
  // Right-to-left application; same-position insertions unwind last-first so
  // their alignment order is preserved.
  std::reverse(ordered.begin(), ordered.end());
  std::vector<std::string> out = src;
  for (const Edit& e : ordered) {
    if (e.src_end > out.size() || e.src_start > e.src_end)
      throw std::runtime_error("edit span out of range");
    std::vector<std::string> repl;
    if (!e.replacement.empty()) repl = tokenize(e.replacement);
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(e.src_start),
              out.begin() + static_cast<std::ptrdiff_t>(e.src_end));
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(e.src_start), repl.begin(), repl.end());
  }
  return out;
}

std::vector<CharEdit> char_transformations(const std::string& src_span,
                                           const std::string& tgt_span) {
  const std::u32string a = decode_utf8(src_span);
  const std::u32string b = decode_utf8(tgt_span);
  const std::size_t n = a.size(), m = b.size();

  // Unit-cost Levenshtein with full backtrace; tie order MATCH > SUB > DEL > INS.
  std::vector<std::vector<std::size_t>> dp(n + 1, std::vector<std::size_t>(m + 1));
  std::vector<std::vector<char>> back(n + 1, std::vector<char>(m + 1));  // 'M','S','D','I'
  for (std::size_t i = 0; i <= n; ++i) {
    dp[i][0] = i;
    back[i][0] = 'D';
  }
  for (std::size_t j = 0; j <= m; ++j) {
    dp[0][j] = j;
    back[0][j] = 'I';
  }
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const bool eq = a[i - 1] == b[j - 1];
      const std::size_t diag = dp[i - 1][j - 1] + (eq ? 0 : 1);
      const std::size_t del = dp[i - 1][j] + 1;
      const std::size_t ins = dp[i][j - 1] + 1;
      std::size_t best = diag;
      char move = eq ? 'M' : 'S';
      if (del < best) {
        best = del;
        move = 'D';
      }
      if (ins < best) {
        best = ins;
        move = 'I';
      }
      dp[i][j] = best;
      back[i][j] = move;
    }
  }

  std::vector<CharEdit> ops;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const char move = back[i][j];
    if (move == 'M' || move == 'S') {
      if (move == 'S')
        ops.push_back({encode_utf8(std::u32string(1, a[i - 1])),
                       encode_utf8(std::u32string(1, b[j - 1]))});
      --i;
      --j;
    } else if (move == 'D') {
      ops.push_back({encode_utf8(std::u32string(1, a[i - 1])), ""});
      --i;
    } else {
      ops.push_back({"", encode_utf8(std::u32string(1, b[j - 1]))});
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

std::vector<std::pair<CharEdit, long>> transformation_stats(const ParallelCorpus& corpus,
                                                            std::optional<Dialect> only) {
  std::map<CharEdit, long> counts;
  for (const auto& ex : corpus.examples) {
    if (only && ex.dialect != *only) continue;
    const Alignment alignment = align_words(ex.raw.tokens, ex.coda.tokens);
    for (const AlignLink& link : alignment.links) {
      if (link.kind == LinkKind::MATCH) continue;
      const std::string s = join_span(ex.raw.tokens, link.src_begin, link.src_end);
      const std::string t = join_span(ex.coda.tokens, link.tgt_begin, link.tgt_end);
      for (auto& op : char_transformations(s, t)) ++counts[op];
    }
  }
  std::vector<std::pair<CharEdit, long>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second > y.second;
    return x.first < y.first;
  });
  return ranked;
}

}  // namespace codanorm
