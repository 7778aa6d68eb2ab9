#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "corpus.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "logreg.hpp"
#include "naive_bayes.hpp"
#include "nmf.hpp"
#include "rank.hpp"
#include "segment.hpp"
#include "svm.hpp"
#include "vectorize.hpp"

// Versioned JSON for every persisted model and the report formats. Loading a
// document whose schema_version differs from kSchemaVersion is an error.

namespace abstractrank {

using ojson = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline ojson matrix_json(const DenseMatrix& m) {
  ojson j;
  j["shape"] = {m.rows(), m.cols()};
  j["data"] = std::vector<double>(m.data().begin(), m.data().end());
  return j;
}

inline DenseMatrix matrix_from_json(const nlohmann::json& j) {
  const auto shape = j.at("shape").get<std::vector<std::size_t>>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (shape.size() != 2 || shape[0] * shape[1] != data.size())
    fail(Errc::MalformedRecord, "matrix shape does not match its data");
  DenseMatrix m(shape[0], shape[1]);
  std::copy(data.begin(), data.end(), m.data().begin());
  return m;
}

inline void check_schema(const nlohmann::json& j, std::string_view kind) {
  if (!j.is_object() || !j.contains("schema_version"))
    fail(Errc::SchemaVersion, std::string(kind) + ": missing schema_version");
  const auto v = j.at("schema_version");
  if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
    fail(Errc::SchemaVersion, std::string(kind) + ": expected schema_version " + std::to_string(kSchemaVersion) +
                                  ", found " + v.dump());
  if (j.value("kind", std::string()) != kind)
    fail(Errc::SchemaVersion, "expected a '" + std::string(kind) + "' document, found '" +
                                  j.value("kind", std::string()) + "'");
}

template <typename F>
auto guarded(std::string_view what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::MalformedRecord, std::string(what) + ": " + e.what());
  }
}

}  // namespace detail

inline ojson versioned(std::string_view kind) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

// Models --------------------------------------------------------------------

inline ojson to_json(const LogRegModel& m) {
  ojson j = versioned("logreg");
  j["classes"] = m.classes;
  j["weights"] = detail::matrix_json(m.weights);
  j["bias"] = m.bias;
  j["hyper"] = {{"learning_rate", m.hyper.learning_rate},
                {"l2_lambda", m.hyper.l2_lambda},
                {"epochs", m.hyper.epochs},
                {"batch_size", m.hyper.batch_size},
                {"seed", m.hyper.seed}};
  j["loss_history"] = m.loss_history;
  return j;
}

inline LogRegModel logreg_from_json(const nlohmann::json& j) {
  detail::check_schema(j, "logreg");
  return detail::guarded("logreg", [&] {
    LogRegModel m;
    m.classes = j.at("classes").get<std::vector<int>>();
    m.weights = detail::matrix_from_json(j.at("weights"));
    m.bias = j.at("bias").get<std::vector<double>>();
    const auto& h = j.at("hyper");
    m.hyper = {h.at("learning_rate").get<double>(), h.at("l2_lambda").get<double>(), h.at("epochs").get<std::size_t>(),
               h.at("batch_size").get<std::size_t>(), h.at("seed").get<std::uint64_t>()};
    m.loss_history = j.at("loss_history").get<std::vector<double>>();
    if (m.weights.rows() != m.classes.size() || m.bias.size() != m.classes.size())
      detail::fail(Errc::MalformedRecord, "logreg: class count disagrees with weight shape");
    return m;
  });
}

inline ojson to_json(const NaiveBayesModel& m) {
  ojson j = versioned("naive_bayes");
  j["classes"] = m.classes;
  j["alpha"] = m.alpha;
  j["log_prior"] = m.log_prior;
  j["log_likelihood"] = detail::matrix_json(m.log_likelihood);
  return j;
}

inline NaiveBayesModel naive_bayes_from_json(const nlohmann::json& j) {
  detail::check_schema(j, "naive_bayes");
  return detail::guarded("naive_bayes", [&] {
    NaiveBayesModel m;
    m.classes = j.at("classes").get<std::vector<int>>();
    m.alpha = j.at("alpha").get<double>();
    m.log_prior = j.at("log_prior").get<std::vector<double>>();
    m.log_likelihood = detail::matrix_from_json(j.at("log_likelihood"));
    if (m.log_likelihood.rows() != m.classes.size() || m.log_prior.size() != m.classes.size())
      detail::fail(Errc::MalformedRecord, "naive_bayes: class count disagrees with shapes");
    return m;
  });
}

inline ojson to_json(const SvmModel& m) {
  ojson j = versioned("svm_ovr");
  j["classes"] = m.classes;
  j["weights"] = detail::matrix_json(m.weights);
  j["bias"] = m.bias;
  j["hyper"] = {{"lambda", m.hyper.lambda}, {"epochs", m.hyper.epochs}, {"seed", m.hyper.seed}};
  return j;
}

inline SvmModel svm_from_json(const nlohmann::json& j) {
  detail::check_schema(j, "svm_ovr");
  return detail::guarded("svm_ovr", [&] {
    SvmModel m;
    m.classes = j.at("classes").get<std::vector<int>>();
    m.weights = detail::matrix_from_json(j.at("weights"));
    m.bias = j.at("bias").get<std::vector<double>>();
    const auto& h = j.at("hyper");
    m.hyper = {h.at("lambda").get<double>(), h.at("epochs").get<std::size_t>(), h.at("seed").get<std::uint64_t>()};
    if (m.weights.rows() != m.classes.size() || m.bias.size() != m.classes.size())
      detail::fail(Errc::MalformedRecord, "svm_ovr: class count disagrees with weight shape");
    return m;
  });
}

inline ojson to_json(const SegmentModel& m) {
  ojson j = versioned("segmenter");
  j["vocab"] = m.vocab.terms();
  j["idf"] = to_json(m.idf);
  j["classifier"] = to_json(m.classifier);
  return j;
}

inline SegmentModel segment_model_from_json(const nlohmann::json& j) {
  detail::check_schema(j, "segmenter");
  return detail::guarded("segmenter", [&] {
    SegmentModel m;
    m.vocab = Vocabulary(j.at("vocab").get<std::vector<std::string>>());
    m.idf = tfidf_from_json(j.at("idf"));
    m.classifier = logreg_from_json(j.at("classifier"));
    if (m.idf.idf.size() != m.vocab.size() || m.classifier.n_features() != m.vocab.size() + 1)
      detail::fail(Errc::MalformedRecord, "segmenter: vocabulary, idf and classifier sizes disagree");
    return m;
  });
}

inline ojson to_json(const SentimentModel& m) {
  ojson j = versioned("sentiment");
  j["vocab"] = m.vocab.terms();
  j["idf"] = to_json(m.idf);
  j["classifier"] = to_json(m.classifier);
  return j;
}

inline SentimentModel sentiment_model_from_json(const nlohmann::json& j) {
  detail::check_schema(j, "sentiment");
  return detail::guarded("sentiment", [&] {
    SentimentModel m;
    m.vocab = Vocabulary(j.at("vocab").get<std::vector<std::string>>());
    m.idf = tfidf_from_json(j.at("idf"));
    m.classifier = logreg_from_json(j.at("classifier"));
    if (m.idf.idf.size() != m.vocab.size() || m.classifier.n_features() != m.vocab.size())
      detail::fail(Errc::MalformedRecord, "sentiment: vocabulary, idf and classifier sizes disagree");
    return m;
  });
}

// Reports -------------------------------------------------------------------

inline ojson to_json(const SegmentedAbstract& sa) {
  ojson j;
  j["id"] = sa.doc_id;
  auto sentences = ojson::array();
  for (const auto& s : sa.labeled_sentences)
    sentences.push_back({{"text", s.text}, {"label", to_string(s.label)}, {"confidence", s.confidence}});
  j["sentences"] = std::move(sentences);
  return j;
}

inline ojson topics_json(const std::vector<TopicSummary>& topics) {
  auto j = ojson::array();
  for (const auto& t : topics) j.push_back({{"topic_id", t.topic_id}, {"top_terms", t.top_terms}});
  return j;
}

inline ojson to_json(const RankedReport& r) {
  ojson j;
  j["class"] = r.class_id;
  auto ranking = ojson::array();
  for (const auto& e : r.entries)
    ranking.push_back({{"doc_id", e.doc_id}, {"impact", e.impact.value}, {"excerpt", e.excerpt}});
  j["ranking"] = std::move(ranking);
  j["unscored"] = r.unscored;
  return j;
}

namespace detail {

inline std::string csv_quote(std::string_view field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

/// rank,doc_id,impact,excerpt rows; unscored documents follow with an empty
/// rank and impact.
inline std::string ranked_report_csv(const RankedReport& r) {
  std::ostringstream out;
  out << "rank,doc_id,impact,excerpt\n";
  char buf[32];
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6f", r.entries[i].impact.value);
    out << (i + 1) << ',' << detail::csv_quote(r.entries[i].doc_id) << ',' << buf << ','
        << detail::csv_quote(r.entries[i].excerpt) << '\n';
  }
  for (const auto& id : r.unscored) out << ',' << detail::csv_quote(id) << ",,\n";
  return out.str();
}

}  // namespace abstractrank
