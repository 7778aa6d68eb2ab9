#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "random.hpp"

namespace abstractrank {

inline constexpr int kNumAnomalyClasses = 8;

enum class SegmentLabel { Problem = 0, Method = 1, Result = 2 };
inline constexpr std::array<SegmentLabel, 3> kSegmentLabels{SegmentLabel::Problem, SegmentLabel::Method,
                                                             SegmentLabel::Result};

inline std::string_view to_string(SegmentLabel label) {
  switch (label) {
    case SegmentLabel::Problem: return "problem";
    case SegmentLabel::Method: return "method";
    case SegmentLabel::Result: return "result";
  }
  return "?";
}

enum class Polarity { Positive, Negative, Neutral };

inline std::string_view to_string(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    case Polarity::Neutral: return "neutral";
  }
  return "?";
}

struct Sentence {
  std::string text;
  std::optional<SegmentLabel> label;
};

/// One abstract. `class_label` is the anomaly class (1..=8) when known;
/// `sentences` is only populated for segmentation corpora.
struct Document {
  std::string id;
  std::string text;
  std::optional<int> class_label;
  std::vector<Sentence> sentences;
};

struct SentimentDoc {
  std::string id;
  std::string text;
  Polarity polarity = Polarity::Neutral;
};

using Corpus = std::vector<Document>;
using SentimentCorpus = std::vector<SentimentDoc>;

enum class CorpusKind { Anomaly, Segmentation, Sentiment };

struct SplitAssignment {
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
  std::uint64_t seed = 0;
  double ratio = 0.0;
};

struct ClassHistogram {
  std::array<std::size_t, kNumAnomalyClasses> per_class{};
  std::size_t unlabeled = 0;

  std::size_t total() const {
    std::size_t n = unlabeled;
    for (auto c : per_class) n += c;
    return n;
  }
};

namespace detail {

inline std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
  return out;
}

inline bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

[[noreturn]] inline void malformed(std::size_t line_no, const std::string& why) {
  fail(Errc::MalformedRecord, "line " + std::to_string(line_no) + ": " + why);
}

inline const nlohmann::json& require_field(const nlohmann::json& rec, const char* key, std::size_t line_no) {
  auto it = rec.find(key);
  if (it == rec.end()) malformed(line_no, std::string("missing field '") + key + "'");
  return *it;
}

inline std::string require_string(const nlohmann::json& rec, const char* key, std::size_t line_no,
                                  bool allow_empty = false) {
  const auto& v = require_field(rec, key, line_no);
  if (!v.is_string()) malformed(line_no, std::string("field '") + key + "' must be a string");
  auto s = v.get<std::string>();
  if (!allow_empty && s.empty()) malformed(line_no, std::string("field '") + key + "' is empty");
  return s;
}

// Iterates non-blank lines, handing each parsed JSON object to `on_record`.
template <typename F>
void for_each_record(std::istream& in, F&& on_record) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      malformed(line_no, e.what());
    }
    if (!rec.is_object()) malformed(line_no, "record is not a JSON object");
    on_record(rec, line_no);
  }
}

inline void check_unique(std::unordered_set<std::string>& seen, const std::string& id) {
  if (!seen.insert(id).second) fail(Errc::DuplicateId, id);
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::Io, "cannot open " + path.string());
  return in;
}

}  // namespace detail

/// Maps the five structured-abstract section names onto the three segments.
/// BACKGROUND|OBJECTIVE -> Problem, METHODS -> Method, RESULTS|CONCLUSIONS -> Result.
inline SegmentLabel map_pubmed_label(std::string_view raw) {
  const auto key = detail::upper(raw);
  if (key == "BACKGROUND" || key == "OBJECTIVE") return SegmentLabel::Problem;
  if (key == "METHODS") return SegmentLabel::Method;
  if (key == "RESULTS" || key == "CONCLUSIONS") return SegmentLabel::Result;
  detail::fail(Errc::UnknownLabel, std::string(raw));
}

/// Accepts the canonical names (problem/method/result) as well as the
/// five-label section scheme handled by map_pubmed_label.
inline SegmentLabel parse_segment_label(std::string_view raw) {
  const auto key = detail::upper(raw);
  if (key == "PROBLEM") return SegmentLabel::Problem;
  if (key == "METHOD") return SegmentLabel::Method;
  if (key == "RESULT") return SegmentLabel::Result;
  return map_pubmed_label(raw);
}

inline Polarity parse_polarity(std::string_view raw) {
  const auto key = detail::upper(raw);
  if (key == "POSITIVE") return Polarity::Positive;
  if (key == "NEGATIVE") return Polarity::Negative;
  if (key == "NEUTRAL") return Polarity::Neutral;
  detail::fail(Errc::UnknownLabel, std::string(raw));
}

// ---------------------------------------------------------------------------
// Parsing

inline Corpus parse_anomaly_corpus(std::istream& in) {
  Corpus corpus;
  std::unordered_set<std::string> seen;
  detail::for_each_record(in, [&](const nlohmann::json& rec, std::size_t line_no) {
    Document doc;
    doc.id = detail::require_string(rec, "id", line_no);
    doc.text = detail::require_string(rec, "abstract", line_no);
    const auto& cls = detail::require_field(rec, "class", line_no);
    if (!cls.is_null()) {
      if (!cls.is_number_integer()) detail::malformed(line_no, "field 'class' must be an integer or null");
      const auto value = cls.get<std::int64_t>();
      if (value < 1 || value > kNumAnomalyClasses)
        detail::malformed(line_no, "class " + std::to_string(value) + " outside 1..8");
      doc.class_label = static_cast<int>(value);
    }
    detail::check_unique(seen, doc.id);
    corpus.push_back(std::move(doc));
  });
  if (corpus.empty()) detail::fail(Errc::EmptyCorpus, "no anomaly records");
  return corpus;
}

inline Corpus parse_segmentation_corpus(std::istream& in) {
  Corpus corpus;
  std::unordered_set<std::string> seen;
  detail::for_each_record(in, [&](const nlohmann::json& rec, std::size_t line_no) {
    Document doc;
    doc.id = detail::require_string(rec, "id", line_no);
    const auto& sentences = detail::require_field(rec, "sentences", line_no);
    if (!sentences.is_array() || sentences.empty()) detail::malformed(line_no, "'sentences' must be a non-empty array");
    for (const auto& s : sentences) {
      if (!s.is_object()) detail::malformed(line_no, "sentence entry is not an object");
      Sentence sentence;
      sentence.text = detail::require_string(s, "text", line_no);
      if (auto it = s.find("label"); it != s.end() && !it->is_null()) {
        if (!it->is_string()) detail::malformed(line_no, "sentence 'label' must be a string");
        try {
          sentence.label = parse_segment_label(it->get<std::string>());
        } catch (const Error&) {
          detail::malformed(line_no, "unknown segment label '" + it->get<std::string>() + "'");
        }
      }
      if (!doc.text.empty()) doc.text += ' ';
      doc.text += sentence.text;
      doc.sentences.push_back(std::move(sentence));
    }
    detail::check_unique(seen, doc.id);
    corpus.push_back(std::move(doc));
  });
  if (corpus.empty()) detail::fail(Errc::EmptyCorpus, "no segmentation records");
  return corpus;
}

inline SentimentCorpus parse_sentiment_corpus(std::istream& in) {
  SentimentCorpus corpus;
  std::unordered_set<std::string> seen;
  detail::for_each_record(in, [&](const nlohmann::json& rec, std::size_t line_no) {
    SentimentDoc doc;
    doc.id = detail::require_string(rec, "id", line_no);
    doc.text = detail::require_string(rec, "text", line_no);
    const auto raw = detail::require_string(rec, "polarity", line_no);
    try {
      doc.polarity = parse_polarity(raw);
    } catch (const Error&) {
      detail::malformed(line_no, "unknown polarity '" + raw + "'");
    }
    detail::check_unique(seen, doc.id);
    corpus.push_back(std::move(doc));
  });
  if (corpus.empty()) detail::fail(Errc::EmptyCorpus, "no sentiment records");
  return corpus;
}

inline Corpus load_anomaly_corpus(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_anomaly_corpus(in);
}

inline Corpus load_segmentation_corpus(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_segmentation_corpus(in);
}

inline SentimentCorpus load_sentiment_corpus(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_sentiment_corpus(in);
}

using LoadedCorpus = std::variant<Corpus, SentimentCorpus>;

inline LoadedCorpus load_corpus(const std::filesystem::path& path, CorpusKind kind) {
  switch (kind) {
    case CorpusKind::Anomaly: return load_anomaly_corpus(path);
    case CorpusKind::Segmentation: return load_segmentation_corpus(path);
    case CorpusKind::Sentiment: return load_sentiment_corpus(path);
  }
  detail::fail(Errc::InvalidArgument, "unknown corpus kind");
}

// ---------------------------------------------------------------------------
// Serialization (one line per record, no trailing newline)

inline std::string to_anomaly_record(const Document& doc) {
  nlohmann::ordered_json rec;
  rec["id"] = doc.id;
  rec["class"] = doc.class_label ? nlohmann::ordered_json(*doc.class_label) : nlohmann::ordered_json(nullptr);
  rec["abstract"] = doc.text;
  return rec.dump();
}

inline std::string to_segmentation_record(const Document& doc) {
  nlohmann::ordered_json rec;
  rec["id"] = doc.id;
  auto sentences = nlohmann::ordered_json::array();
  for (const auto& s : doc.sentences) {
    nlohmann::ordered_json entry;
    entry["text"] = s.text;
    entry["label"] = s.label ? nlohmann::ordered_json(to_string(*s.label)) : nlohmann::ordered_json(nullptr);
    sentences.push_back(std::move(entry));
  }
  rec["sentences"] = std::move(sentences);
  return rec.dump();
}

inline std::string to_sentiment_record(const SentimentDoc& doc) {
  nlohmann::ordered_json rec;
  rec["id"] = doc.id;
  rec["text"] = doc.text;
  rec["polarity"] = to_string(doc.polarity);
  return rec.dump();
}

// ---------------------------------------------------------------------------
// Splits and statistics

/// Per-class train/test partition. Each class keeps round-half-up(ratio * n_c)
/// documents for training; the rest go to test. Within a class, documents are
/// shuffled by an Rng seeded from (seed, class), and both id lists come back
/// in corpus order so that the result is independent of hash-set iteration.
inline SplitAssignment stratified_split(const Corpus& corpus, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) detail::fail(Errc::InvalidArgument, "split ratio must be in (0,1)");

  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!corpus[i].class_label) detail::fail(Errc::MissingLabel, corpus[i].id);
    by_class[*corpus[i].class_label].push_back(i);
  }

  std::vector<bool> in_train(corpus.size(), false);
  for (auto& [cls, members] : by_class) {
    if (members.size() < 2) detail::fail(Errc::ClassTooSmall, "class " + std::to_string(cls));
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(cls)));
    rng.shuffle(std::span<std::size_t>(members));
    const auto n_train = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(members.size()) + 0.5));
    for (std::size_t j = 0; j < n_train && j < members.size(); ++j) in_train[members[j]] = true;
  }

  SplitAssignment split;
  split.seed = seed;
  split.ratio = ratio;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    (in_train[i] ? split.train_ids : split.test_ids).push_back(corpus[i].id);
  return split;
}

inline nlohmann::ordered_json to_json(const SplitAssignment& split) {
  nlohmann::ordered_json j;
  j["seed"] = split.seed;
  j["ratio"] = split.ratio;
  j["train"] = split.train_ids;
  j["test"] = split.test_ids;
  return j;
}

inline SplitAssignment split_from_json(const nlohmann::json& j) {
  SplitAssignment split;
  try {
    split.seed = j.at("seed").get<std::uint64_t>();
    split.ratio = j.at("ratio").get<double>();
    split.train_ids = j.at("train").get<std::vector<std::string>>();
    split.test_ids = j.at("test").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    detail::fail(Errc::MalformedRecord, std::string("split assignment: ") + e.what());
  }
  return split;
}

inline ClassHistogram corpus_stats(const Corpus& corpus) {
  ClassHistogram h;
  for (const auto& doc : corpus) {
    if (doc.class_label)
      ++h.per_class[static_cast<std::size_t>(*doc.class_label - 1)];
    else
      ++h.unlabeled;
  }
  return h;
}

}  // namespace abstractrank
