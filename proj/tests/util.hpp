#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "codanorm/corpus.hpp"

namespace testutil {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0; i < 1000; ++i) {
      auto candidate = base / ("codanorm_test_" + std::to_string(std::random_device{}()));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path = candidate;
        return;
      }
    }
    throw std::runtime_error("could not create temp dir");
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

inline std::string write_file(const TempDir& dir, const std::string& name,
                              const std::string& content) {
  const std::string p = dir.file(name);
  std::ofstream out(p, std::ios::binary);
  out << content;
  return p;
}

inline std::vector<std::string> random_tokens(std::mt19937_64& rng, std::size_t max_len,
                                              const std::vector<std::string>& alphabet) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::vector<std::string> out(len(rng));
  for (auto& t : out) t = alphabet[pick(rng)];
  return out;
}

inline codanorm::ParallelExample make_example(std::string id, codanorm::Dialect d,
                                              std::vector<std::string> raw,
                                              std::vector<std::string> coda,
                                              codanorm::Split split = codanorm::Split::TRAIN) {
  codanorm::ParallelExample ex;
  ex.id = std::move(id);
  ex.dialect = d;
  ex.raw = codanorm::Sentence::from_tokens(std::move(raw));
  ex.coda = codanorm::Sentence::from_tokens(std::move(coda));
  ex.split = split;
  return ex;
}

}  // namespace testutil
