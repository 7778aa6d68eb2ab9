#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"
#include "error.hpp"
#include "logreg.hpp"
#include "textprep.hpp"
#include "vectorize.hpp"

namespace abstractrank {

/// Sentence TF-IDF vector plus its position ratio in the abstract.
struct SentenceFeature {
  SparseVector token_vector;
  double position = 0.0;

  /// token_vector with the position appended as column |vocab|.
  SparseVector combined() const {
    SparseVector v{token_vector.dim + 1, token_vector.entries};
    v.entries.push_back({static_cast<std::uint32_t>(token_vector.dim), position});
    return v;
  }
};

struct SegmentModel {
  Vocabulary vocab;
  TfidfModel idf;
  LogRegModel classifier;  // classes are the SegmentLabel values 0, 1, 2
};

struct LabeledSentence {
  std::string text;
  SegmentLabel label = SegmentLabel::Problem;
  double confidence = 0.0;
};

struct SegmentedAbstract {
  std::string doc_id;
  std::vector<LabeledSentence> labeled_sentences;
};

struct SegmenterOptions {
  VocabularyOptions vocab{2, 0.95};
  LogRegHyper hyper{1.0, 1e-4, 300, 0, 0};
  StopList stoplist;
};

inline SentenceFeature featurize_sentence(const TokenStream& ts, std::size_t index, std::size_t total,
                                          const Vocabulary& vocab, const TfidfModel& idf) {
  const double position = sentence_position(index, total);
  return {tfidf_transform(count_vectorize(ts, vocab), idf), position};
}

/// Fits a sentence vocabulary and IDF on every labeled sentence, then a
/// three-class logistic regression over [TF-IDF | position].
inline SegmentModel train_segmenter(std::span<const Document> corpus, const SegmenterOptions& opts = {}) {
  std::vector<TokenStream> sentence_tokens;
  std::vector<std::pair<std::size_t, std::size_t>> positions;
  std::vector<int> labels;
  for (const auto& doc : corpus) {
    const auto total = doc.sentences.size();
    for (std::size_t i = 0; i < total; ++i) {
      const auto& s = doc.sentences[i];
      if (!s.label) detail::fail(Errc::MissingLabel, doc.id + " sentence " + std::to_string(i + 1));
      sentence_tokens.push_back(remove_stopwords(tokenize(s.text), opts.stoplist));
      positions.emplace_back(i + 1, total);
      labels.push_back(static_cast<int>(*s.label));
    }
  }
  if (sentence_tokens.empty()) detail::fail(Errc::EmptyCorpus, "no labeled sentences");

  SegmentModel model;
  model.vocab = build_vocabulary(sentence_tokens, opts.vocab);
  model.idf = fit_idf(count_matrix(sentence_tokens, model.vocab));
  std::vector<SparseVector> features;
  features.reserve(sentence_tokens.size());
  for (std::size_t i = 0; i < sentence_tokens.size(); ++i)
    features.push_back(
        featurize_sentence(sentence_tokens[i], positions[i].first, positions[i].second, model.vocab, model.idf)
            .combined());
  model.classifier = train_logreg(features, labels, model.vocab.size() + 1, opts.hyper);
  return model;
}

/// Labels already-split sentences; position i of n is (i+1)/n.
inline std::vector<LabeledSentence> label_sentences(std::span<const std::string> sentences, const SegmentModel& model) {
  std::vector<LabeledSentence> out;
  out.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const auto feature = featurize_sentence(tokenize(sentences[i]), i + 1, sentences.size(), model.vocab, model.idf);
    const auto proba = predict_proba(model.classifier, feature.combined());
    const auto best = detail::argmax_first(proba);
    out.push_back({sentences[i], static_cast<SegmentLabel>(model.classifier.classes[best]), proba[best]});
  }
  return out;
}

inline SegmentedAbstract segment_abstract(std::string doc_id, std::string_view text, const SegmentModel& model) {
  const auto sentences = split_sentences(text);
  if (sentences.empty()) detail::fail(Errc::EmptyText, doc_id.empty() ? "abstract" : doc_id);
  return {std::move(doc_id), label_sentences(sentences, model)};
}

/// Space-joined sentences carrying `label`, in abstract order.
inline std::string extract_segment(const SegmentedAbstract& sa, SegmentLabel label) {
  std::string out;
  for (const auto& s : sa.labeled_sentences) {
    if (s.label != label) continue;
    if (!out.empty()) out += ' ';
    out += s.text;
  }
  return out;
}

}  // namespace abstractrank
