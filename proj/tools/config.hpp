#pragma once

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#ifndef ABSTRACTRANK_DATA_DIR
#define ABSTRACTRANK_DATA_DIR "data"
#endif

namespace abstractrank::cli {

/// Bad flags, unreadable config or missing inputs; the CLI exits with 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class KeyType { String, Int, Real, Bool };

struct KeySpec {
  const char* key;
  KeyType type;
  nlohmann::json default_value;
  const char* help;
};

// Every configuration key. A key "a.b" is set in the JSON config as
// {"a.b": value} and on the command line as --a.b VALUE.
inline const std::vector<KeySpec>& key_specs() {
  static const std::vector<KeySpec> specs{
      {"corpus.anomaly", KeyType::String, "", "Anomaly corpus (JSONL: id, class, abstract)"},
      {"corpus.segmentation", KeyType::String, "", "Segmentation corpus (JSONL: id, sentences)"},
      {"corpus.sentiment", KeyType::String, "", "Sentiment corpus (JSONL: id, text, polarity)"},
      {"input", KeyType::String, "", "Abstracts to segment or rank (anomaly format, class may be null)"},
      {"stoplist", KeyType::String, ABSTRACTRANK_DATA_DIR "/stopwords.txt", "Stop-word list, one per line"},
      {"lexicon", KeyType::String, "", "Noun lexicon for --nouns-only, one per line"},
      {"model-dir", KeyType::String, "models", "Directory holding persisted models"},
      {"out-dir", KeyType::String, "out", "Directory for reports"},
      {"seed", KeyType::Int, 0, "Master seed"},
      {"vectorizer", KeyType::String, "tfidf", "count | tfidf"},
      {"classifier", KeyType::String, "logreg", "logreg | nb | svm"},
      {"nouns-only", KeyType::Bool, false, "Keep only lexicon nouns before vectorizing"},
      {"split.ratio", KeyType::Real, 0.7, "Training fraction of the stratified split"},
      {"vocab.min-df", KeyType::Int, 2, "Minimum document frequency"},
      {"vocab.max-df", KeyType::Real, 0.95, "Maximum document-frequency ratio"},
      {"nmf.k", KeyType::Int, 8, "Number of NMF topics"},
      {"nmf.max-iters", KeyType::Int, 400, "NMF iteration cap"},
      {"nmf.tol", KeyType::Real, 1e-5, "NMF relative objective tolerance"},
      {"topics.top-n", KeyType::Int, 5, "Terms reported per topic"},
      {"pca.components", KeyType::Int, 8, "Principal components kept (also the K-means space)"},
      {"pca.max-docs", KeyType::Int, 20000, "Refuse PCA above this many documents"},
      {"k-range", KeyType::String, "1..10", "K range for the elbow search, A..B"},
      {"kmeans.restarts", KeyType::Int, 10, "K-means restarts per k"},
      {"kmeans.max-iters", KeyType::Int, 300, "Lloyd iteration cap"},
      {"logreg.lr", KeyType::Real, 0.1, "Logistic regression learning rate"},
      {"logreg.lambda", KeyType::Real, 1e-4, "Logistic regression L2 strength"},
      {"logreg.epochs", KeyType::Int, 200, "Logistic regression epochs"},
      {"logreg.batch", KeyType::Int, 0, "Mini-batch size (0 = full batch)"},
      {"svm.lambda", KeyType::Real, 1e-4, "SVM regularization"},
      {"svm.epochs", KeyType::Int, 100, "SVM epochs"},
      {"nb.alpha", KeyType::Real, 1.0, "Naive Bayes smoothing"},
      {"segment.lr", KeyType::Real, 1.0, "Segmenter learning rate"},
      {"segment.lambda", KeyType::Real, 1e-4, "Segmenter L2 strength"},
      {"segment.epochs", KeyType::Int, 300, "Segmenter epochs"},
      {"segment.min-df", KeyType::Int, 2, "Segmenter vocabulary minimum document frequency"},
      {"segment.max-df", KeyType::Real, 0.95, "Segmenter vocabulary maximum document-frequency ratio"},
      {"sentiment.lr", KeyType::Real, 0.5, "Sentiment learning rate"},
      {"sentiment.lambda", KeyType::Real, 1e-4, "Sentiment L2 strength"},
      {"sentiment.epochs", KeyType::Int, 300, "Sentiment epochs"},
      {"sentiment.min-df", KeyType::Int, 1, "Sentiment vocabulary minimum document frequency"},
      {"sentiment.max-df", KeyType::Real, 1.0, "Sentiment vocabulary maximum document-frequency ratio"},
      {"sentiment.neutral", KeyType::String, "drop", "drop | negative"},
  };
  return specs;
}

/// Resolved configuration: defaults, then the JSON file, then flags.
class PipelineConfig {
 public:
  PipelineConfig() {
    for (const auto& s : key_specs()) values_[s.key] = s.default_value;
  }

  void set(const std::string& key, const nlohmann::json& value) {
    const auto* spec = find(key);
    if (!spec) throw ConfigError("unknown config key '" + key + "'");
    values_[key] = coerce(*spec, value);
  }

  void set_from_string(const std::string& key, const std::string& text) {
    const auto* spec = find(key);
    if (!spec) throw ConfigError("unknown config key '" + key + "'");
    nlohmann::json v;
    try {
      switch (spec->type) {
        case KeyType::String: v = text; break;
        case KeyType::Int: v = std::stoll(text); break;
        case KeyType::Real: v = std::stod(text); break;
        case KeyType::Bool: v = (text == "true" || text == "1"); break;
      }
    } catch (const std::exception&) {
      throw ConfigError("invalid value '" + text + "' for --" + key);
    }
    values_[key] = v;
  }

  void merge_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("config file " + path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file " + path.string() + " must hold a JSON object");
    for (const auto& [key, value] : j.items()) set(key, value);
  }

  std::string str(const std::string& key) const { return values_.at(key).get<std::string>(); }
  std::int64_t integer(const std::string& key) const { return values_.at(key).get<std::int64_t>(); }
  std::size_t count(const std::string& key) const {
    const auto v = integer(key);
    if (v < 0) throw ConfigError("--" + key + " must be non-negative");
    return static_cast<std::size_t>(v);
  }
  double real(const std::string& key) const { return values_.at(key).get<double>(); }
  bool flag(const std::string& key) const { return values_.at(key).get<bool>(); }
  std::uint64_t seed() const { return static_cast<std::uint64_t>(integer("seed")); }

  /// Path-valued key that must name an existing file.
  std::filesystem::path existing_file(const std::string& key) const {
    const auto p = str(key);
    if (p.empty()) throw ConfigError("--" + key + " is required");
    if (!std::filesystem::is_regular_file(p)) throw ConfigError("--" + key + ": no such file: " + p);
    return p;
  }

  std::pair<std::size_t, std::size_t> k_range() const {
    const auto text = str("k-range");
    const auto dots = text.find("..");
    try {
      if (dots == std::string::npos) throw std::invalid_argument(text);
      const auto a = std::stoul(text.substr(0, dots));
      const auto b = std::stoul(text.substr(dots + 2));
      if (a < 1 || b <= a) throw std::invalid_argument(text);
      return {a, b};
    } catch (const std::exception&) {
      throw ConfigError("--k-range expects A..B with 1 <= A < B, got '" + text + "'");
    }
  }

  /// Checks values that have a closed set of choices or a fixed range.
  void validate() const {
    auto one_of = [&](const std::string& key, std::initializer_list<const char*> choices) {
      const auto v = str(key);
      for (const auto* c : choices)
        if (v == c) return;
      throw ConfigError("--" + key + ": unsupported value '" + v + "'");
    };
    one_of("vectorizer", {"count", "tfidf"});
    one_of("classifier", {"logreg", "nb", "svm"});
    one_of("sentiment.neutral", {"drop", "negative"});
    const double ratio = real("split.ratio");
    if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("--split.ratio must be in (0,1)");
    if (integer("seed") < 0) throw ConfigError("--seed must be non-negative");
    k_range();
  }

  const nlohmann::json& snapshot() const { return values_; }

 private:
  static const KeySpec* find(const std::string& key) {
    for (const auto& s : key_specs())
      if (key == s.key) return &s;
    return nullptr;
  }

  static nlohmann::json coerce(const KeySpec& spec, const nlohmann::json& v) {
    const bool ok = (spec.type == KeyType::String && v.is_string()) ||
                    (spec.type == KeyType::Int && v.is_number_integer()) ||
                    (spec.type == KeyType::Real && v.is_number()) || (spec.type == KeyType::Bool && v.is_boolean());
    if (!ok) throw ConfigError(std::string("config key '") + spec.key + "' has the wrong type");
    if (spec.type == KeyType::Real) return v.get<double>();
    return v;
  }

  nlohmann::json values_ = nlohmann::json::object();
};

}  // namespace abstractrank::cli
