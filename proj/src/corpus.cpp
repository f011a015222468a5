#include "codanorm/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "codanorm/io.hpp"
#include "codanorm/unicode.hpp"

namespace codanorm {

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + path);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::string_view dialect_code(Dialect d) {
  switch (d) {
    case Dialect::BEI: return "BEI";
    case Dialect::CAI: return "CAI";
    case Dialect::DOH: return "DOH";
    case Dialect::RAB: return "RAB";
    case Dialect::TUN: return "TUN";
    case Dialect::MSA: return "MSA";
  }
  return "?";
}

std::optional<Dialect> parse_dialect(std::string_view code) {
  for (Dialect d : kAllLabels)
    if (code == dialect_code(d)) return d;
  return std::nullopt;
}

std::string_view split_code(Split s) {
  switch (s) {
    case Split::TRAIN: return "TRAIN";
    case Split::DEV: return "DEV";
    case Split::TEST: return "TEST";
    case Split::UNSPLIT: return "UNSPLIT";
  }
  return "?";
}

std::optional<Split> parse_split(std::string_view code) {
  for (Split s : {Split::TRAIN, Split::DEV, Split::TEST, Split::UNSPLIT})
    if (code == split_code(s)) return s;
  return std::nullopt;
}

std::vector<std::string> tokenize(std::string_view text) {
  const std::u32string cps = decode_utf8(nfc(std::string(text)));
  std::vector<std::string> tokens;
  std::u32string current;
  bool current_punct = false;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(encode_utf8(current));
      current.clear();
    }
  };
  for (char32_t c : cps) {
    if (is_space(c)) {
      flush();
      continue;
    }
    const bool p = is_punct(c);
    if (!current.empty() && p != current_punct) flush();
    current_punct = p;
    current.push_back(c);
  }
  flush();
  return tokens;
}

Sentence Sentence::from_text(std::string_view text) {
  Sentence s;
  s.raw_text = std::string(text);
  s.tokens = tokenize(text);
  return s;
}

Sentence Sentence::from_tokens(std::vector<std::string> tokens) {
  Sentence s;
  s.tokens = std::move(tokens);
  s.raw_text = s.joined();
  return s;
}

std::string Sentence::joined() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::map<Dialect, std::size_t> ParallelCorpus::per_dialect_counts() const {
  std::map<Dialect, std::size_t> counts;
  for (const auto& ex : examples) ++counts[ex.dialect];
  return counts;
}

std::vector<const ParallelExample*> ParallelCorpus::with_split(Split s) const {
  std::vector<const ParallelExample*> out;
  for (const auto& ex : examples)
    if (ex.split == s) out.push_back(&ex);
  return out;
}

namespace {

std::vector<std::string> split_tsv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, '\t')) cells.push_back(cell);
  if (!line.empty() && line.back() == '\t') cells.push_back("");
  return cells;
}

}  // namespace

ParallelCorpus load_corpus(const std::string& path) {
  const auto lines = read_lines(path);
  ParallelCorpus corpus;
  std::set<std::string> seen_ids;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    if (lines[i].empty()) continue;
    const auto cells = split_tsv(lines[i]);
    if (i == 0 && !cells.empty() && cells[0] == "id") continue;  // header
    if (cells.size() != 4)
      throw std::runtime_error("expected 4 columns at line " + std::to_string(lineno));
    ParallelExample ex;
    ex.id = cells[0];
    auto d = parse_dialect(cells[1]);
    if (!d || *d == Dialect::MSA)
      throw std::runtime_error("unknown dialect at line " + std::to_string(lineno));
    ex.dialect = *d;
    ex.raw = Sentence::from_text(cells[2]);
    ex.coda = Sentence::from_text(cells[3]);
    if (ex.raw.empty() || ex.coda.empty())
      throw std::runtime_error("empty raw or coda at line " + std::to_string(lineno));
    if (!seen_ids.insert(ex.id).second)
      throw std::runtime_error("duplicate id \"" + ex.id + "\" at line " + std::to_string(lineno));
    ex.split = Split::UNSPLIT;
    corpus.examples.push_back(std::move(ex));
  }
  return corpus;
}

void save_corpus(const ParallelCorpus& corpus, const std::string& path) {
  std::string out = "id\tdialect\traw\tcoda\n";
  for (const auto& ex : corpus.examples) {
    out += ex.id;
    out.push_back('\t');
    out += dialect_code(ex.dialect);
    out.push_back('\t');
    out += ex.raw.joined();
    out.push_back('\t');
    out += ex.coda.joined();
    out.push_back('\n');
  }
  write_file_atomic(path, out);
}

ParallelCorpus split_corpus(const ParallelCorpus& corpus, SplitRatios ratios, std::uint64_t seed) {
  const double sum = ratios.train + ratios.dev + ratios.test;
  if (std::abs(sum - 1.0) > 1e-9) throw std::runtime_error("split ratios must sum to 1.0");
  if (corpus.examples.empty()) throw std::runtime_error("cannot split an empty corpus");

  std::map<Dialect, std::vector<std::size_t>> by_dialect;
  for (std::size_t i = 0; i < corpus.examples.size(); ++i)
    by_dialect[corpus.examples[i].dialect].push_back(i);

  ParallelCorpus out = corpus;
  for (auto& [dialect, idxs] : by_dialect) {
    if (idxs.size() < 3)
      throw std::runtime_error(std::string("dialect ") + std::string(dialect_code(dialect)) +
                               " has fewer than 3 examples");
    std::seed_seq seq{seed, static_cast<std::uint64_t>(dialect)};
    std::mt19937_64 rng(seq);
    std::shuffle(idxs.begin(), idxs.end(), rng);
    const std::size_t n = idxs.size();
    const auto n_train = static_cast<std::size_t>(n * ratios.train);
    const auto n_dev = static_cast<std::size_t>(n * ratios.dev);
    for (std::size_t k = 0; k < n; ++k) {
      Split s = k < n_train ? Split::TRAIN : (k < n_train + n_dev ? Split::DEV : Split::TEST);
      out.examples[idxs[k]].split = s;
    }
  }
  return out;
}

void save_split_manifest(const ParallelCorpus& corpus, const std::string& path) {
  std::string out;
  for (const auto& ex : corpus.examples) {
    out += ex.id;
    out.push_back('\t');
    out += split_code(ex.split);
    out.push_back('\n');
  }
  write_file_atomic(path, out);
}

void apply_split_manifest(ParallelCorpus& corpus, const std::string& path) {
  const auto lines = read_lines(path);
  std::map<std::string, Split> assignment;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = split_tsv(lines[i]);
    auto s = cells.size() == 2 ? parse_split(cells[1]) : std::nullopt;
    if (!s) throw std::runtime_error("malformed manifest row at line " + std::to_string(i + 1));
    assignment[cells[0]] = *s;
  }
  for (auto& ex : corpus.examples) {
    auto it = assignment.find(ex.id);
    if (it == assignment.end())
      throw std::runtime_error("manifest missing id \"" + ex.id + "\"");
    ex.split = it->second;
  }
}

}  // namespace codanorm
