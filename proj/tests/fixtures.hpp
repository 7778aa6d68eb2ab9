#pragma once

#include <abstractrank/abstractrank.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

// Shared generators and fixture data for the unit and acceptance suites.

namespace fixtures {

namespace ar = abstractrank;

inline std::filesystem::path data_path(const std::string& name) { return std::filesystem::path(ABSTRACTRANK_DATA_DIR) / name; }

// Result fragments used to check the sentiment ordering. Expected order of
// impact: kLowImpactFragment < kInconclusiveFragment < kHighImpactFragment.
inline const std::string kLowImpactFragment =
    "They concluded that hydrate grows preferentially in coarse-grained sediments because lower capillary pressures "
    "in these sediments permit the migration of gas and nucleation of hydrate.The growth of gas hydrate in clay-rich "
    "sediments, however, is more poorly understood and appears to be limited to mostly massive occurrences.";
inline const std::string kHighImpactFragment =
    "The application of extended subsea gathering networks and transportation of unprocessed wellstreams are amongst "
    "favourable options for reducing field development and operational costs.These lines will convey a cocktail of "
    "multiphase fluids, including mixed electrolyte produced water, and liquid and gaseous hydrocarbons. A good "
    "knowledge of the behaviour of these complex systems is essential for confident and economical design and "
    "operation of associated fields, pipelines and processing facilities.";
inline const std::string kInconclusiveFragment =
    "This probabilistic method has been applied to log data acquired from the ODP/IODP (marine) and the Mallik "
    "(permafrost) exploration wells, successfully generating gas hydrate saturation estimates, with comparable "
    "results to Archie saturation estimates at high saturations. Further investigation is required to fully "
    "determine the potential of probabilistic methods for gas hydrate evaluation.";

/// Random sparse non-negative row with roughly `density` of its entries set.
inline ar::SparseVector random_sparse(ar::Rng& rng, std::size_t dim, double density, double scale = 1.0) {
  ar::SparseVector v{dim, {}};
  for (std::size_t j = 0; j < dim; ++j)
    if (rng.uniform() < density) v.entries.push_back({static_cast<std::uint32_t>(j), scale * rng.uniform() + 1e-3});
  return v;
}

/// Random sparse count row (integer entries in 1..max_count).
inline ar::SparseVector random_counts(ar::Rng& rng, std::size_t dim, double density, std::uint64_t max_count) {
  ar::SparseVector v{dim, {}};
  for (std::size_t j = 0; j < dim; ++j)
    if (rng.uniform() < density)
      v.entries.push_back({static_cast<std::uint32_t>(j), static_cast<double>(1 + rng.below(max_count))});
  return v;
}

inline ar::DenseMatrix random_dense(ar::Rng& rng, std::size_t rows, std::size_t cols) {
  ar::DenseMatrix m(rows, cols);
  for (auto& v : m.data()) v = 2.0 * rng.uniform() - 1.0;
  return m;
}

/// Gaussian-ish blobs (sum of uniforms) around the given centers.
inline ar::DenseMatrix blobs(ar::Rng& rng, const std::vector<std::vector<double>>& centers, std::size_t per_blob,
                             double spread) {
  const std::size_t dim = centers.front().size();
  ar::DenseMatrix m(centers.size() * per_blob, dim);
  for (std::size_t c = 0; c < centers.size(); ++c)
    for (std::size_t i = 0; i < per_blob; ++i)
      for (std::size_t d = 0; d < dim; ++d) {
        double noise = 0.0;
        for (int t = 0; t < 4; ++t) noise += rng.uniform() - 0.5;
        m(c * per_blob + i, d) = centers[c][d] + spread * noise;
      }
  return m;
}

inline const std::vector<std::string> kFillerWords{
    "well",   "pressure", "flow",  "gas",    "oil",      "riser",   "valve",  "choke",   "scale",  "hydrate",
    "sand",   "water",    "field", "system", "pipeline", "density", "rate",   "fluid",   "tubing", "reservoir",
    "damage", "skin",     "wax",   "brine",  "methane",  "glycol",  "casing", "heading", "slug",   "liquid"};

inline std::string filler_sentence(ar::Rng& rng, std::size_t words) {
  std::string s;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) s += ' ';
    s += kFillerWords[rng.below(kFillerWords.size())];
  }
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s + '.';
}

/// Labels depend only on position: first third problem, middle third method,
/// last third result. Tokens are drawn from one shared pool.
inline ar::Corpus position_only_corpus(std::uint64_t seed, std::size_t n_docs) {
  ar::Rng rng(seed);
  ar::Corpus corpus;
  for (std::size_t d = 0; d < n_docs; ++d) {
    ar::Document doc;
    doc.id = "p" + std::to_string(d);
    const std::size_t total = 3 + rng.below(7);
    for (std::size_t i = 1; i <= total; ++i) {
      const double pos = ar::sentence_position(i, total);
      const auto label = pos <= 1.0 / 3.0 + 1e-12   ? ar::SegmentLabel::Problem
                         : pos <= 2.0 / 3.0 + 1e-12 ? ar::SegmentLabel::Method
                                                    : ar::SegmentLabel::Result;
      doc.sentences.push_back({filler_sentence(rng, 5 + rng.below(4)), label});
    }
    for (const auto& s : doc.sentences) doc.text += (doc.text.empty() ? "" : " ") + s.text;
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

/// Cue-word corpus: problem sentences contain "aim", method "procedure",
/// result "showed"; sentence order within an abstract is shuffled so position
/// carries no signal.
inline ar::Corpus token_signal_corpus(std::uint64_t seed, std::size_t n_docs) {
  ar::Rng rng(seed);
  const std::array<std::string, 3> cues{"aim", "procedure", "showed"};
  ar::Corpus corpus;
  for (std::size_t d = 0; d < n_docs; ++d) {
    ar::Document doc;
    doc.id = "t" + std::to_string(d);
    const std::size_t total = 3 + rng.below(5);
    for (std::size_t i = 0; i < total; ++i) {
      const auto label = static_cast<ar::SegmentLabel>(rng.below(3));
      auto words = filler_sentence(rng, 4 + rng.below(4));
      words.pop_back();
      doc.sentences.push_back({words + " " + cues[static_cast<std::size_t>(label)] + ".", label});
    }
    for (const auto& s : doc.sentences) doc.text += (doc.text.empty() ? "" : " ") + s.text;
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

/// Fraction of held-out sentences whose predicted label matches, with
/// sentences scored in their abstract's context.
inline double sentence_accuracy(const ar::Corpus& held_out, const ar::SegmentModel& model) {
  std::size_t hit = 0, total = 0;
  for (const auto& doc : held_out) {
    std::vector<std::string> texts;
    for (const auto& s : doc.sentences) texts.push_back(s.text);
    const auto labeled = ar::label_sentences(texts, model);
    for (std::size_t i = 0; i < labeled.size(); ++i) {
      hit += labeled[i].label == *doc.sentences[i].label;
      ++total;
    }
  }
  return total ? static_cast<double>(hit) / static_cast<double>(total) : 0.0;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs a shell command, returning its exit status.
inline int run(const std::string& command) {
  const int status = std::system((command + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

/// Runs a shell command, returning its exit status and capturing stderr.
inline int run_capture(const std::string& command, std::string& err) {
  const auto tmp = std::filesystem::temp_directory_path() / ("ar_stderr_" + std::to_string(::getpid()));
  const int status = std::system((command + " >/dev/null 2>" + tmp.string()).c_str());
  err = slurp(tmp);
  std::filesystem::remove(tmp);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("abstractrank_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace fixtures
