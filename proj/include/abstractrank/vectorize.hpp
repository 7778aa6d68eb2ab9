#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "textprep.hpp"

namespace abstractrank {

/// Sorted, duplicate-free term list with its inverse index.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// `terms` must already be strictly increasing.
  explicit Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].empty()) detail::fail(Errc::InvalidArgument, "empty vocabulary term");
      if (i > 0 && !(terms_[i - 1] < terms_[i]))
        detail::fail(Errc::InvalidArgument, "vocabulary terms must be sorted and unique: '" + terms_[i] + "'");
      index_.emplace(terms_[i], static_cast<std::uint32_t>(i));
    }
  }

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::string& term(std::size_t i) const { return terms_.at(i); }
  const std::vector<std::string>& terms() const { return terms_; }

  std::optional<std::uint32_t> find(const std::string& term) const {
    auto it = index_.find(term);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

struct SparseEntry {
  std::uint32_t index = 0;
  double value = 0.0;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Column ids strictly increasing and below `dim`; zero weights are omitted.
struct SparseVector {
  std::size_t dim = 0;
  std::vector<SparseEntry> entries;

  bool empty() const { return entries.empty(); }

  double squared_norm() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.value * e.value;
    return s;
  }

  double dot(std::span<const double> dense) const {
    double s = 0.0;
    for (const auto& e : entries) s += e.value * dense[e.index];
    return s;
  }

  double at(std::uint32_t column) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), column,
                               [](const SparseEntry& e, std::uint32_t c) { return e.index < c; });
    return (it != entries.end() && it->index == column) ? it->value : 0.0;
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

inline SparseVector operator+(const SparseVector& a, const SparseVector& b) {
  if (a.dim != b.dim) detail::fail(Errc::DimensionMismatch, "sparse add");
  SparseVector out{a.dim, {}};
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() || j < b.entries.size()) {
    if (j == b.entries.size() || (i < a.entries.size() && a.entries[i].index < b.entries[j].index)) {
      out.entries.push_back(a.entries[i++]);
    } else if (i == a.entries.size() || b.entries[j].index < a.entries[i].index) {
      out.entries.push_back(b.entries[j++]);
    } else {
      const double v = a.entries[i].value + b.entries[j].value;
      if (v != 0.0) out.entries.push_back({a.entries[i].index, v});
      ++i;
      ++j;
    }
  }
  return out;
}

enum class Weighting { Count, Tfidf };

struct DocTermMatrix {
  std::vector<SparseVector> rows;
  Vocabulary vocab;
  Weighting weighting = Weighting::Count;

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return vocab.size(); }
};

/// Smoothed inverse document frequencies, one per vocabulary term.
struct TfidfModel {
  std::vector<double> idf;
  std::size_t n_docs = 0;
};

struct VocabularyOptions {
  std::size_t min_df = 2;
  double max_df_ratio = 0.95;
};

/// Keeps term t iff min_df <= df(t) and df(t)/N <= max_df_ratio.
inline Vocabulary build_vocabulary(std::span<const TokenStream> docs, VocabularyOptions opts = {}) {
  if (docs.empty()) detail::fail(Errc::InvalidArgument, "build_vocabulary needs at least one document");
  if (opts.min_df < 1) detail::fail(Errc::InvalidArgument, "min_df must be >= 1");
  std::map<std::string, std::size_t> df;
  for (const auto& doc : docs) {
    std::unordered_set<std::string_view> seen;
    for (const auto& t : doc)
      if (seen.insert(t).second) ++df[t];
  }
  const auto n = static_cast<double>(docs.size());
  std::vector<std::string> terms;
  for (const auto& [term, count] : df) {
    if (count >= opts.min_df && static_cast<double>(count) / n <= opts.max_df_ratio) terms.push_back(term);
  }
  if (terms.empty()) detail::fail(Errc::EmptyVocabulary, "no term satisfies the document-frequency bounds");
  return Vocabulary(std::move(terms));
}

inline SparseVector count_vectorize(const TokenStream& ts, const Vocabulary& vocab) {
  std::map<std::uint32_t, double> counts;
  for (const auto& t : ts)
    if (auto id = vocab.find(t)) counts[*id] += 1.0;
  SparseVector v{vocab.size(), {}};
  v.entries.reserve(counts.size());
  for (const auto& [id, c] : counts) v.entries.push_back({id, c});
  return v;
}

inline DocTermMatrix count_matrix(std::span<const TokenStream> docs, const Vocabulary& vocab) {
  DocTermMatrix m{{}, vocab, Weighting::Count};
  m.rows.reserve(docs.size());
  for (const auto& d : docs) m.rows.push_back(count_vectorize(d, vocab));
  return m;
}

/// idf_t = ln((1 + N) / (1 + df_t)) + 1.
inline TfidfModel fit_idf(const DocTermMatrix& counts) {
  if (counts.weighting != Weighting::Count) detail::fail(Errc::InvalidArgument, "fit_idf expects raw counts");
  if (counts.rows.empty()) detail::fail(Errc::InvalidArgument, "fit_idf needs at least one document");
  std::vector<std::size_t> df(counts.n_cols(), 0);
  for (const auto& row : counts.rows)
    for (const auto& e : row.entries) ++df[e.index];
  TfidfModel model;
  model.n_docs = counts.rows.size();
  model.idf.resize(df.size());
  const auto n = static_cast<double>(model.n_docs);
  for (std::size_t t = 0; t < df.size(); ++t) model.idf[t] = std::log((1.0 + n) / (1.0 + static_cast<double>(df[t]))) + 1.0;
  return model;
}

/// tf * idf, then L2-normalized; an all-zero row is returned unchanged.
inline SparseVector tfidf_transform(const SparseVector& counts_row, const TfidfModel& model) {
  if (counts_row.dim != model.idf.size())
    detail::fail(Errc::DimensionMismatch,
                 "row dim " + std::to_string(counts_row.dim) + " vs idf size " + std::to_string(model.idf.size()));
  SparseVector out{counts_row.dim, {}};
  out.entries.reserve(counts_row.entries.size());
  double norm2 = 0.0;
  for (const auto& e : counts_row.entries) {
    const double w = e.value * model.idf[e.index];
    out.entries.push_back({e.index, w});
    norm2 += w * w;
  }
  if (norm2 > 0.0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& e : out.entries) e.value *= inv;
  }
  return out;
}

inline DocTermMatrix tfidf_matrix(const DocTermMatrix& counts, const TfidfModel& model) {
  DocTermMatrix m{{}, counts.vocab, Weighting::Tfidf};
  m.rows.reserve(counts.rows.size());
  for (const auto& r : counts.rows) m.rows.push_back(tfidf_transform(r, model));
  return m;
}

// Persistence -----------------------------------------------------------------

inline void write_vocabulary(std::ostream& out, const Vocabulary& vocab) {
  for (const auto& t : vocab.terms()) out << t << '\n';
}

inline Vocabulary read_vocabulary(std::istream& in) {
  std::vector<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) terms.push_back(line);
  }
  return Vocabulary(std::move(terms));
}

inline nlohmann::ordered_json to_json(const TfidfModel& model) {
  nlohmann::ordered_json j;
  j["n_docs"] = model.n_docs;
  j["idf"] = model.idf;
  return j;
}

inline TfidfModel tfidf_from_json(const nlohmann::json& j) {
  TfidfModel model;
  try {
    model.n_docs = j.at("n_docs").get<std::size_t>();
    model.idf = j.at("idf").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    detail::fail(Errc::MalformedRecord, std::string("tfidf model: ") + e.what());
  }
  if (model.n_docs == 0) detail::fail(Errc::MalformedRecord, "tfidf model: n_docs must be positive");
  return model;
}

}  // namespace abstractrank
