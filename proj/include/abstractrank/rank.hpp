#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"
#include "error.hpp"
#include "logreg.hpp"
#include "segment.hpp"
#include "textprep.hpp"
#include "vectorize.hpp"

namespace abstractrank {

inline constexpr int kNegativeClass = 0;
inline constexpr int kPositiveClass = 1;

/// Binary positive/negative scorer over TF-IDF features.
struct SentimentModel {
  Vocabulary vocab;
  TfidfModel idf;
  LogRegModel classifier;  // classes {kNegativeClass, kPositiveClass}
};

enum class NeutralPolicy { Drop, AsNegative };

struct SentimentOptions {
  VocabularyOptions vocab{1, 1.0};
  LogRegHyper hyper{0.5, 1e-4, 300, 0, 0};
  NeutralPolicy neutral = NeutralPolicy::Drop;
  StopList stoplist;
};

struct ImpactScore {
  double value = 0.0;
};

inline SentimentModel train_sentiment(std::span<const SentimentDoc> corpus, const SentimentOptions& opts = {}) {
  std::vector<TokenStream> docs;
  std::vector<int> labels;
  for (const auto& d : corpus) {
    int label = kNegativeClass;
    if (d.polarity == Polarity::Positive) {
      label = kPositiveClass;
    } else if (d.polarity == Polarity::Neutral && opts.neutral == NeutralPolicy::Drop) {
      continue;
    }
    docs.push_back(remove_stopwords(tokenize(d.text), opts.stoplist));
    labels.push_back(label);
  }
  const bool has_pos = std::find(labels.begin(), labels.end(), kPositiveClass) != labels.end();
  const bool has_neg = std::find(labels.begin(), labels.end(), kNegativeClass) != labels.end();
  if (!has_pos || !has_neg)
    detail::fail(Errc::SingleClass, "sentiment training needs positive and negative documents");

  SentimentModel model;
  model.vocab = build_vocabulary(docs, opts.vocab);
  const auto counts = count_matrix(docs, model.vocab);
  model.idf = fit_idf(counts);
  model.classifier = train_logreg(tfidf_matrix(counts, model.idf), labels, opts.hyper);
  return model;
}

/// Positive-class probability of the text's TF-IDF vector.
inline ImpactScore impact_score(std::string_view text, const SentimentModel& model) {
  const auto counts = count_vectorize(tokenize(text), model.vocab);
  if (counts.empty()) detail::fail(Errc::EmptySegment, "no scoreable tokens");
  const auto proba = predict_proba(model.classifier, tfidf_transform(counts, model.idf));
  const auto pos = std::find(model.classifier.classes.begin(), model.classifier.classes.end(), kPositiveClass) -
                   model.classifier.classes.begin();
  return {std::clamp(proba[static_cast<std::size_t>(pos)], 0.0, 1.0)};
}

struct RankEntry {
  std::string doc_id;
  ImpactScore impact;
  std::string excerpt;
};

/// Abstracts of one predicted class ordered by impact (descending, ties by
/// doc_id); abstracts without a scoreable result segment go to `unscored`.
struct RankedReport {
  int class_id = 0;
  std::vector<RankEntry> entries;
  std::vector<std::string> unscored;
};

struct RankInput {
  std::string doc_id;
  int class_id = 0;
  SegmentedAbstract segmented;
};

inline std::vector<RankedReport> rank_methods(std::span<const RankInput> docs, const SentimentModel& model) {
  std::map<int, RankedReport> by_class;
  for (const auto& d : docs) {
    auto& report = by_class[d.class_id];
    report.class_id = d.class_id;
    auto excerpt = extract_segment(d.segmented, SegmentLabel::Result);
    try {
      const auto score = impact_score(excerpt, model);
      report.entries.push_back({d.doc_id, score, std::move(excerpt)});
    } catch (const Error& e) {
      if (e.code() != Errc::EmptySegment) throw;
      report.unscored.push_back(d.doc_id);
    }
  }
  std::vector<RankedReport> out;
  for (auto& [cls, report] : by_class) {
    std::sort(report.entries.begin(), report.entries.end(), [](const RankEntry& a, const RankEntry& b) {
      if (a.impact.value != b.impact.value) return a.impact.value > b.impact.value;
      return a.doc_id < b.doc_id;
    });
    std::sort(report.unscored.begin(), report.unscored.end());
    out.push_back(std::move(report));
  }
  return out;
}

}  // namespace abstractrank
