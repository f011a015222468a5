#include "codanorm/normalize.hpp"

#include <sstream>
#include <stdexcept>

#include "codanorm/align.hpp"
#include "codanorm/io.hpp"
#include "json.hpp"

namespace codanorm {

std::string MleCondition::name() const {
  return dialect ? std::string(dialect_code(*dialect)) : "JOINT";
}

MleCondition MleCondition::parse(const std::string& name) {
  if (name == "JOINT") return joint();
  auto d = parse_dialect(name);
  if (!d || *d == Dialect::MSA) throw std::runtime_error("bad MLE condition: " + name);
  return city(*d);
}

Sentence do_nothing(const Sentence& sentence) { return sentence; }

namespace {

std::string join_span(const std::vector<std::string>& tokens, std::size_t b, std::size_t e) {
  std::string out;
  for (std::size_t k = b; k < e; ++k) {
    if (k > b) out.push_back(' ');
    out += tokens[k];
  }
  return out;
}

// Highest-count target; ties take the lexicographically smallest target.
const std::string* argmax_target(const std::map<std::string, long>& targets) {
  const std::string* best = nullptr;
  long best_count = 0;
  for (const auto& [target, count] : targets) {
    if (!best || count > best_count) {
      best = &target;
      best_count = count;
    }
  }
  return best;
}

void emit_target(const std::string& target, std::vector<std::string>& out) {
  std::istringstream ss(target);
  std::string tok;
  while (std::getline(ss, tok, ' '))
    if (!tok.empty()) out.push_back(tok);
}

}  // namespace

MleModel train_mle(const ParallelCorpus& corpus, MleCondition condition) {
  MleModel model;
  model.condition = condition;
  bool any = false;
  for (const auto& ex : corpus.examples) {
    if (ex.split != Split::TRAIN) continue;
    if (condition.dialect && ex.dialect != *condition.dialect) continue;
    any = true;
    const Alignment alignment = align_words(ex.raw.tokens, ex.coda.tokens);
    for (const AlignLink& link : alignment.links) {
      const std::string src = join_span(ex.raw.tokens, link.src_begin, link.src_end);
      const std::string tgt = join_span(ex.coda.tokens, link.tgt_begin, link.tgt_end);
      const std::string prev =
          link.src_begin == 0 ? kBoundarySymbol : ex.raw.tokens[link.src_begin - 1];
      ++model.bigram_counts[prev][src][tgt];
      ++model.unigram_counts[src][tgt];
    }
  }
  if (!any)
    throw std::runtime_error("no TRAIN examples for condition " + condition.name());
  return model;
}

Sentence mle_predict(const MleModel& model, const Sentence& sentence) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const std::string& word = sentence.tokens[i];
    const std::string& prev = i == 0 ? kBoundarySymbol : sentence.tokens[i - 1];
    const std::string* target = nullptr;
    auto prev_it = model.bigram_counts.find(prev);
    if (prev_it != model.bigram_counts.end()) {
      auto word_it = prev_it->second.find(word);
      if (word_it != prev_it->second.end()) target = argmax_target(word_it->second);
    }
    if (!target) {
      auto uni_it = model.unigram_counts.find(word);
      if (uni_it != model.unigram_counts.end()) target = argmax_target(uni_it->second);
    }
    if (target)
      emit_target(*target, out);
    else
      out.push_back(word);
  }
  return Sentence::from_tokens(std::move(out));
}

std::pair<Sentence, Dialect> route_predict(const std::map<Dialect, MleModel>& models,
                                           const DidModel& did, const MleModel& fallback,
                                           const Sentence& sentence) {
  for (Dialect d : kCityDialects)
    if (!models.count(d))
      throw std::runtime_error(std::string("ensemble missing model for ") +
                               std::string(dialect_code(d)));
  const Dialect chosen = did_predict(did, sentence).label;
  if (chosen == Dialect::MSA) return {mle_predict(fallback, sentence), chosen};
  return {mle_predict(models.at(chosen), sentence), chosen};
}

std::string_view control_scheme_name(ControlScheme s) {
  switch (s) {
    case ControlScheme::CITY: return "CITY";
    case ControlScheme::MSA_PHRASE: return "MSA_PHRASE";
    case ControlScheme::DA_PHRASE: return "DA_PHRASE";
    case ControlScheme::DIGIT: return "DIGIT";
  }
  return "?";
}

std::optional<ControlScheme> parse_control_scheme(std::string_view name) {
  for (ControlScheme s : {ControlScheme::CITY, ControlScheme::MSA_PHRASE,
                          ControlScheme::DA_PHRASE, ControlScheme::DIGIT})
    if (name == control_scheme_name(s)) return s;
  return std::nullopt;
}

ControlTable load_control_table(const std::string& path) {
  ControlTable table;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty() || lines[i][0] == '#') continue;
    std::istringstream ss(lines[i]);
    std::string scheme_s, dialect_s, token;
    if (!std::getline(ss, scheme_s, '\t') || !std::getline(ss, dialect_s, '\t') ||
        !std::getline(ss, token))
      throw std::runtime_error("malformed control table row at line " + std::to_string(i + 1));
    auto scheme = parse_control_scheme(scheme_s);
    auto dialect = parse_dialect(dialect_s);
    if (!scheme || !dialect || *dialect == Dialect::MSA)
      throw std::runtime_error("bad scheme or dialect at line " + std::to_string(i + 1));
    table[{*scheme, *dialect}] = token;
  }
  return table;
}

ControlTable default_control_table() {
  // City names, "in <city> we say" in MSA, the dialectal "we say" variants,
  // and per-dialect digits.
  ControlTable t;
  const std::map<Dialect, std::string> city = {{Dialect::BEI, "بيروت"},
                                               {Dialect::CAI, "القاهرة"},
                                               {Dialect::DOH, "الدوحة"},
                                               {Dialect::RAB, "الرباط"},
                                               {Dialect::TUN, "تونس"}};
  const std::map<Dialect, std::string> we_say = {{Dialect::BEI, "منقول"},
                                                 {Dialect::CAI, "بنقول"},
                                                 {Dialect::DOH, "نقول"},
                                                 {Dialect::RAB, "كنقولو"},
                                                 {Dialect::TUN, "نقولو"}};
  int digit = 1;
  for (Dialect d : kCityDialects) {
    t[{ControlScheme::CITY, d}] = city.at(d);
    t[{ControlScheme::MSA_PHRASE, d}] = "في " + city.at(d) + " نقول";
    t[{ControlScheme::DA_PHRASE, d}] = "في " + city.at(d) + " " + we_say.at(d);
    t[{ControlScheme::DIGIT, d}] = std::to_string(digit++);
  }
  return t;
}

std::string format_control_input(const Sentence& sentence, Dialect dialect, ControlScheme scheme,
                                 const ControlTable& table) {
  if (dialect == Dialect::MSA)
    throw std::runtime_error("control tokens are defined for city dialects only");
  auto it = table.find({scheme, dialect});
  if (it == table.end())
    throw std::runtime_error(std::string("no control token for (") +
                             std::string(control_scheme_name(scheme)) + ", " +
                             std::string(dialect_code(dialect)) + ")");
  return it->second + " " + sentence.joined();
}

std::vector<Sentence> load_hypotheses(const std::string& path, std::size_t expected_count) {
  auto lines = read_lines(path);
  // A trailing newline produces no extra element with getline; nothing to trim.
  if (lines.size() != expected_count)
    throw std::runtime_error("hypothesis count mismatch: got " + std::to_string(lines.size()) +
                             ", expected " + std::to_string(expected_count));
  std::vector<Sentence> out;
  out.reserve(lines.size());
  for (const auto& line : lines) out.push_back(Sentence::from_text(line));
  return out;
}

std::string MleModel::to_json() const {
  nlohmann::json j;
  j["format_version"] = 1;
  j["condition"] = condition.name();
  nlohmann::json bi = nlohmann::json::object();
  for (const auto& [prev, words] : bigram_counts) {
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [src, targets] : words) {
      nlohmann::json t = nlohmann::json::object();
      for (const auto& [target, count] : targets) t[target] = count;
      w[src] = t;
    }
    bi[prev] = w;
  }
  j["bigram_counts"] = bi;
  nlohmann::json uni = nlohmann::json::object();
  for (const auto& [src, targets] : unigram_counts) {
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [target, count] : targets) t[target] = count;
    uni[src] = t;
  }
  j["unigram_counts"] = uni;
  return j.dump();
}

MleModel MleModel::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("format_version").get<int>() != 1)
    throw std::runtime_error("unsupported MLE model format version");
  MleModel model;
  model.condition = MleCondition::parse(j.at("condition").get<std::string>());
  for (const auto& [prev, words] : j.at("bigram_counts").items())
    for (const auto& [src, targets] : words.items())
      for (const auto& [target, count] : targets.items())
        model.bigram_counts[prev][src][target] = count.get<long>();
  for (const auto& [src, targets] : j.at("unigram_counts").items())
    for (const auto& [target, count] : targets.items())
      model.unigram_counts[src][target] = count.get<long>();
  return model;
}

}  // namespace codanorm
