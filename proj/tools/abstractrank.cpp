// abstractrank: classify, segment and rank research abstracts.
//
//   abstractrank <subcommand> [--config PATH] [--key value ...]
//
// Subcommands: ingest-check, topics, train-eval, train-segmenter,
// train-sentiment, segment, rank. Exit codes: 0 success, 1 internal error,
// 2 usage or configuration error.

#include <abstractrank/abstractrank.hpp>

#include "config.hpp"
#include "svg.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace fs = std::filesystem;
using namespace abstractrank;
using abstractrank::cli::ConfigError;
using abstractrank::cli::PipelineConfig;

namespace {

// Output helpers ------------------------------------------------------------

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Collects artifact checksums and stage timings for the run manifest.
class Run {
 public:
  Run(std::string command, const PipelineConfig& config) : command_(std::move(command)), config_(config) {}

  void write(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
    out.close();
    artifacts_[path.generic_string()] = hex(fnv1a(content));
  }

  template <typename F>
  auto timed(const std::string& stage, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(stage, t0);
    } else {
      auto result = f();
      record(stage, t0);
      return result;
    }
  }

  /// Writes <out-dir>/manifest-<command>.json through a rename so readers
  /// never observe a partial file.
  void finish() {
    nlohmann::ordered_json m;
    m["command"] = command_;
    m["seed"] = config_.seed();
    m["config"] = config_.snapshot();
    m["artifacts"] = artifacts_;
    m["timings_ms"] = timings_;
    const fs::path dir = config_.str("out-dir");
    fs::create_directories(dir);
    const auto final_path = dir / ("manifest-" + command_ + ".json");
    const auto tmp = dir / ("manifest-" + command_ + ".json.tmp");
    {
      std::ofstream out(tmp, std::ios::binary);
      out << m.dump(2) << '\n';
    }
    fs::rename(tmp, final_path);
  }

 private:
  void record(const std::string& stage, std::chrono::steady_clock::time_point t0) {
    timings_[stage] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }

  std::string command_;
  const PipelineConfig& config_;
  std::map<std::string, std::string> artifacts_;
  std::map<std::string, double> timings_;
};

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + '\n'; }

nlohmann::json read_json(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw ConfigError("model not found: " + path.string() + " (train it first)");
  std::ifstream in(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

// Preprocessing ---------------------------------------------------------------

Preprocessor make_preprocessor(const PipelineConfig& cfg, bool nouns_only) {
  Preprocessor pre;
  if (!cfg.str("stoplist").empty()) pre.stoplist = load_word_list(cfg.existing_file("stoplist"));
  if (nouns_only) {
    if (cfg.str("lexicon").empty()) throw ConfigError("--nouns-only requires --lexicon PATH");
    pre.nouns = load_pos_lexicon(cfg.existing_file("lexicon"));
  }
  return pre;
}

std::vector<TokenStream> preprocess_all(const Corpus& corpus, const Preprocessor& pre) {
  std::vector<TokenStream> out;
  out.reserve(corpus.size());
  for (const auto& d : corpus) out.push_back(pre(d.text));
  return out;
}

// Abstracts to segment/rank may legitimately be an empty file.
Corpus load_input_abstracts(const PipelineConfig& cfg) {
  const auto path = cfg.existing_file("input");
  try {
    return load_anomaly_corpus(path);
  } catch (const Error& e) {
    if (e.code() == Errc::EmptyCorpus) return {};
    throw;
  }
}

// Classifier bundle -------------------------------------------------------------

using AnyClassifier = std::variant<LogRegModel, NaiveBayesModel, SvmModel>;

struct ClassifierBundle {
  std::string classifier;
  std::string vectorizer;
  bool nouns_only = false;
  Vocabulary vocab;
  std::optional<TfidfModel> idf;
  AnyClassifier model;

  SparseVector features(const TokenStream& tokens) const {
    auto v = count_vectorize(tokens, vocab);
    return idf ? tfidf_transform(v, *idf) : v;
  }

  int predict(const SparseVector& x) const {
    return std::visit(
        [&](const auto& m) {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, LogRegModel>) return predict_logreg(m, x);
          if constexpr (std::is_same_v<M, NaiveBayesModel>) return predict_nb(m, x);
          if constexpr (std::is_same_v<M, SvmModel>) return predict_svm(m, x);
        },
        model);
  }

  std::string display_name() const {
    const std::string vec = vectorizer == "tfidf" ? "TF-IDF" : "CV";
    if (classifier == "logreg") return "Logistic Regression (" + vec + ")";
    if (classifier == "nb") return "Naive-Bayes (" + vec + ")";
    return "SVM (" + vec + ")";
  }
};

nlohmann::ordered_json to_json(const ClassifierBundle& b) {
  auto j = versioned("classifier_bundle");
  j["classifier"] = b.classifier;
  j["vectorizer"] = b.vectorizer;
  j["nouns_only"] = b.nouns_only;
  j["vocab"] = b.vocab.terms();
  if (b.idf) j["idf"] = abstractrank::to_json(*b.idf);
  j["model"] = std::visit([](const auto& m) { return abstractrank::to_json(m); }, b.model);
  return j;
}

ClassifierBundle bundle_from_json(const nlohmann::json& j) {
  detail::check_schema(j, "classifier_bundle");
  ClassifierBundle b;
  try {
    b.classifier = j.at("classifier").get<std::string>();
    b.vectorizer = j.at("vectorizer").get<std::string>();
    b.nouns_only = j.at("nouns_only").get<bool>();
    b.vocab = Vocabulary(j.at("vocab").get<std::vector<std::string>>());
    if (j.contains("idf")) b.idf = tfidf_from_json(j.at("idf"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedRecord, std::string("classifier bundle: ") + e.what());
  }
  const auto& m = j.at("model");
  if (b.classifier == "logreg") {
    b.model = logreg_from_json(m);
  } else if (b.classifier == "nb") {
    b.model = naive_bayes_from_json(m);
  } else if (b.classifier == "svm") {
    b.model = svm_from_json(m);
  } else {
    throw Error(Errc::MalformedRecord, "unknown classifier '" + b.classifier + "'");
  }
  return b;
}

// Commands ----------------------------------------------------------------------

int cmd_ingest_check(const PipelineConfig& cfg) {
  Run run("ingest-check", cfg);
  bool any = false;
  auto report = [&](const char* key, CorpusKind kind) {
    if (cfg.str(key).empty()) return;
    any = true;
    const auto path = cfg.existing_file(key);
    const auto loaded = load_corpus(path, kind);
    if (const auto* docs = std::get_if<Corpus>(&loaded)) {
      std::cout << key << ": " << docs->size() << " documents\n";
      if (kind == CorpusKind::Anomaly) {
        const auto h = corpus_stats(*docs);
        for (std::size_t c = 0; c < h.per_class.size(); ++c) std::cout << "  class " << c + 1 << ": " << h.per_class[c] << '\n';
        std::cout << "  unlabeled: " << h.unlabeled << '\n';
        if (h.unlabeled == 0) {
          const auto split = stratified_split(*docs, cfg.real("split.ratio"), cfg.seed());
          run.write(fs::path(cfg.str("out-dir")) / "split.json", dump(to_json(split)));
          std::cout << "  split: " << split.train_ids.size() << " train / " << split.test_ids.size() << " test\n";
        }
      } else {
        std::size_t sentences = 0;
        for (const auto& d : *docs) sentences += d.sentences.size();
        std::cout << "  sentences: " << sentences << '\n';
      }
    } else {
      const auto& sdocs = std::get<SentimentCorpus>(loaded);
      std::map<std::string_view, std::size_t> counts;
      for (const auto& d : sdocs) ++counts[to_string(d.polarity)];
      std::cout << key << ": " << sdocs.size() << " documents\n";
      for (const auto& [p, n] : counts) std::cout << "  " << p << ": " << n << '\n';
    }
  };
  report("corpus.anomaly", CorpusKind::Anomaly);
  report("corpus.segmentation", CorpusKind::Segmentation);
  report("corpus.sentiment", CorpusKind::Sentiment);
  report("input", CorpusKind::Anomaly);
  if (!any) throw ConfigError("ingest-check needs at least one of --corpus.anomaly, --corpus.segmentation, "
                              "--corpus.sentiment, --input");
  run.finish();
  return 0;
}

int cmd_topics(const PipelineConfig& cfg) {
  Run run("topics", cfg);
  const auto path = cfg.existing_file("corpus.anomaly");
  const auto pre = make_preprocessor(cfg, cfg.flag("nouns-only"));
  const fs::path out = cfg.str("out-dir");

  const auto corpus = run.timed("load", [&] { return load_anomaly_corpus(path); });
  const auto tokens = preprocess_all(corpus, pre);
  const auto vocab = build_vocabulary(tokens, {cfg.count("vocab.min-df"), cfg.real("vocab.max-df")});
  const auto counts = count_matrix(tokens, vocab);
  const auto tfidf = tfidf_matrix(counts, fit_idf(counts));

  const auto factors = run.timed("nmf", [&] {
    return nmf_fit(tfidf, cfg.count("nmf.k"), {cfg.count("nmf.max-iters"), cfg.real("nmf.tol"), cfg.seed()});
  });
  const auto topics = topic_top_terms(factors, vocab, std::min(cfg.count("topics.top-n"), vocab.size()));
  run.write(out / "topics.json", dump(topics_json(topics)));
  for (const auto& t : topics) {
    std::cout << "topic " << t.topic_id << ":";
    for (const auto& term : t.top_terms) std::cout << ' ' << term;
    std::cout << '\n';
  }

  const auto dense = densify(tfidf);
  const std::size_t max_k = std::min(dense.rows() - 1, dense.cols());
  const std::size_t n_comp = std::min(std::max<std::size_t>(cfg.count("pca.components"), 3), max_k);
  const auto pca = run.timed("pca", [&] { return pca_fit(dense, n_comp, {cfg.count("pca.max-docs")}); });
  const auto scores = pca_transform(pca, dense);
  const auto ratios = explained_variance_ratio(pca);
  {
    std::ostringstream csv;
    csv << "component,ratio,cumulative\n";
    double cum = 0.0;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      cum += ratios[i];
      csv << i + 1 << ',' << format_metric(ratios[i]) << ',' << format_metric(cum) << '\n';
    }
    run.write(out / "pca_variance.csv", csv.str());
  }
  {
    std::ostringstream csv;
    csv << "doc_id,pc1,pc2,pc3\n";
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      csv << corpus[i].id;
      for (std::size_t c = 0; c < 3; ++c) csv << ',' << (c < scores.cols() ? format_metric(scores(i, c)) : "0.000000");
      csv << '\n';
    }
    run.write(out / "pca_projection.csv", csv.str());
  }

  // K-means runs in the space of the first pca.components scores.
  const std::size_t space = std::min(cfg.count("pca.components"), scores.cols());
  DenseMatrix points(scores.rows(), std::max<std::size_t>(space, 1));
  for (std::size_t i = 0; i < scores.rows(); ++i)
    for (std::size_t c = 0; c < points.cols(); ++c) points(i, c) = scores(i, c);
  auto [k_min, k_max] = cfg.k_range();
  k_max = std::min(k_max, points.rows());
  const auto curve = run.timed("elbow", [&] {
    return elbow_select(points, k_min, k_max, cfg.seed(), {cfg.count("kmeans.restarts"), cfg.count("kmeans.max-iters")});
  });
  {
    std::ostringstream csv;
    csv << "k,inertia\n";
    for (std::size_t i = 0; i < curve.ks.size(); ++i) csv << curve.ks[i] << ',' << format_metric(curve.inertias[i]) << '\n';
    csv << "chosen_k," << curve.chosen_k << '\n';
    run.write(out / "elbow.csv", csv.str());
  }
  std::cout << "elbow: chosen k = " << curve.chosen_k << '\n';

  std::vector<double> xs(curve.ks.begin(), curve.ks.end());
  long chosen_at = 0;
  for (std::size_t i = 0; i < curve.ks.size(); ++i)
    if (curve.ks[i] == curve.chosen_k) chosen_at = static_cast<long>(i);
  run.write(out / "elbow.svg", cli::svg::line_chart(xs, curve.inertias, "K-means elbow", "k", "inertia", chosen_at));

  std::vector<double> pc1(scores.rows()), pc2(scores.rows());
  std::vector<int> groups(scores.rows());
  const bool labeled = std::all_of(corpus.begin(), corpus.end(), [](const Document& d) { return d.class_label.has_value(); });
  std::vector<std::size_t> clusters;
  if (!labeled)
    clusters = kmeans_fit(points, curve.chosen_k, cfg.seed(), {cfg.count("kmeans.restarts"), cfg.count("kmeans.max-iters")})
                   .assignments;
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    pc1[i] = scores(i, 0);
    pc2[i] = scores(i, 1);
    groups[i] = labeled ? *corpus[i].class_label - 1 : static_cast<int>(clusters[i]);
  }
  run.write(out / "pca_scatter.svg", cli::svg::scatter(pc1, pc2, groups, "PCA projection", "pc1", "pc2"));
  run.finish();
  return 0;
}

int cmd_train_eval(const PipelineConfig& cfg) {
  Run run("train-eval", cfg);
  const auto path = cfg.existing_file("corpus.anomaly");
  const bool nouns_only = cfg.flag("nouns-only");
  const auto pre = make_preprocessor(cfg, nouns_only);
  const fs::path out = cfg.str("out-dir");
  const fs::path models = cfg.str("model-dir");

  const auto corpus = run.timed("load", [&] { return load_anomaly_corpus(path); });
  const auto split = stratified_split(corpus, cfg.real("split.ratio"), cfg.seed());
  run.write(out / "split.json", dump(to_json(split)));

  std::map<std::string, const Document*> by_id;
  for (const auto& d : corpus) by_id[d.id] = &d;
  auto gather = [&](const std::vector<std::string>& ids, std::vector<TokenStream>& tokens, std::vector<int>& labels) {
    for (const auto& id : ids) {
      tokens.push_back(pre(by_id.at(id)->text));
      labels.push_back(*by_id.at(id)->class_label);
    }
  };
  std::vector<TokenStream> train_tokens, test_tokens;
  std::vector<int> train_y, test_y;
  gather(split.train_ids, train_tokens, train_y);
  gather(split.test_ids, test_tokens, test_y);

  ClassifierBundle bundle;
  bundle.classifier = cfg.str("classifier");
  bundle.vectorizer = cfg.str("vectorizer");
  bundle.nouns_only = nouns_only;
  bundle.vocab = build_vocabulary(train_tokens, {cfg.count("vocab.min-df"), cfg.real("vocab.max-df")});
  auto train_x = count_matrix(train_tokens, bundle.vocab);
  if (bundle.vectorizer == "tfidf") {
    bundle.idf = fit_idf(train_x);
    train_x = tfidf_matrix(train_x, *bundle.idf);
  }

  run.timed("train", [&] {
    if (bundle.classifier == "logreg") {
      bundle.model = train_logreg(train_x, train_y,
                                  {cfg.real("logreg.lr"), cfg.real("logreg.lambda"), cfg.count("logreg.epochs"),
                                   cfg.count("logreg.batch"), cfg.seed()});
    } else if (bundle.classifier == "nb") {
      // TF-IDF weights are accepted as pseudo-counts.
      bundle.model = train_nb(train_x, train_y, {cfg.real("nb.alpha"), true});
    } else {
      bundle.model = train_svm_ovr(train_x, train_y, {cfg.real("svm.lambda"), cfg.count("svm.epochs"), cfg.seed()});
    }
  });

  std::vector<int> classes(train_y);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  auto index_of = [&](int label) {
    return static_cast<int>(std::lower_bound(classes.begin(), classes.end(), label) - classes.begin());
  };
  std::vector<int> truth, predicted;
  for (std::size_t i = 0; i < test_tokens.size(); ++i) {
    truth.push_back(index_of(test_y[i]));
    predicted.push_back(index_of(bundle.predict(bundle.features(test_tokens[i]))));
  }
  const auto ev = evaluate(truth, predicted, classes.size());

  const auto row = metrics_csv_row(bundle.display_name(), ev.metrics);
  run.write(out / "metrics.csv", std::string(kMetricsCsvHeader) + '\n' + row + '\n');
  std::vector<std::string> labels;
  for (int c : classes) labels.push_back(std::to_string(c));
  run.write(out / "confusion.csv", confusion_csv(ev.confusion, labels));
  run.write(models / "classifier.json", dump(to_json(bundle)));
  std::cout << kMetricsCsvHeader << '\n' << row << '\n';
  run.finish();
  return 0;
}

StopList stoplist_of(const PipelineConfig& cfg) {
  return cfg.str("stoplist").empty() ? StopList{} : load_word_list(cfg.existing_file("stoplist"));
}

int cmd_train_segmenter(const PipelineConfig& cfg) {
  Run run("train-segmenter", cfg);
  const auto corpus = load_segmentation_corpus(cfg.existing_file("corpus.segmentation"));
  SegmenterOptions opts;
  opts.vocab = {cfg.count("segment.min-df"), cfg.real("segment.max-df")};
  opts.hyper = {cfg.real("segment.lr"), cfg.real("segment.lambda"), cfg.count("segment.epochs"), 0, cfg.seed()};
  opts.stoplist = stoplist_of(cfg);
  const auto model = run.timed("train", [&] { return train_segmenter(corpus, opts); });
  run.write(fs::path(cfg.str("model-dir")) / "segmenter.json", dump(to_json(model)));
  std::cout << "segmenter: " << model.vocab.size() << " terms, final loss " << model.classifier.loss_history.back()
            << '\n';
  run.finish();
  return 0;
}

int cmd_train_sentiment(const PipelineConfig& cfg) {
  Run run("train-sentiment", cfg);
  const auto corpus = load_sentiment_corpus(cfg.existing_file("corpus.sentiment"));
  SentimentOptions opts;
  opts.vocab = {cfg.count("sentiment.min-df"), cfg.real("sentiment.max-df")};
  opts.hyper = {cfg.real("sentiment.lr"), cfg.real("sentiment.lambda"), cfg.count("sentiment.epochs"), 0, cfg.seed()};
  opts.neutral = cfg.str("sentiment.neutral") == "drop" ? NeutralPolicy::Drop : NeutralPolicy::AsNegative;
  opts.stoplist = stoplist_of(cfg);
  const auto model = run.timed("train", [&] { return train_sentiment(corpus, opts); });
  run.write(fs::path(cfg.str("model-dir")) / "sentiment.json", dump(to_json(model)));
  std::cout << "sentiment: " << model.vocab.size() << " terms, final loss " << model.classifier.loss_history.back()
            << '\n';
  run.finish();
  return 0;
}

int cmd_segment(const PipelineConfig& cfg) {
  Run run("segment", cfg);
  const auto model = segment_model_from_json(read_json(fs::path(cfg.str("model-dir")) / "segmenter.json"));
  const auto docs = load_input_abstracts(cfg);
  std::string lines;
  for (const auto& d : docs) lines += to_json(segment_abstract(d.id, d.text, model)).dump() + '\n';
  run.write(fs::path(cfg.str("out-dir")) / "segmented.jsonl", lines);
  std::cout << "segmented " << docs.size() << " abstracts\n";
  run.finish();
  return 0;
}

int cmd_rank(const PipelineConfig& cfg) {
  Run run("rank", cfg);
  const fs::path models = cfg.str("model-dir");
  const auto bundle = bundle_from_json(read_json(models / "classifier.json"));
  const auto segmenter = segment_model_from_json(read_json(models / "segmenter.json"));
  const auto sentiment = sentiment_model_from_json(read_json(models / "sentiment.json"));
  const auto pre = make_preprocessor(cfg, bundle.nouns_only);
  const auto docs = load_input_abstracts(cfg);

  std::vector<RankInput> inputs;
  run.timed("classify+segment", [&] {
    for (const auto& d : docs) {
      const int cls = bundle.predict(bundle.features(pre(d.text)));
      inputs.push_back({d.id, cls, segment_abstract(d.id, d.text, segmenter)});
    }
  });
  const auto reports = run.timed("rank", [&] { return rank_methods(inputs, sentiment); });
  const fs::path out = cfg.str("out-dir");
  for (const auto& r : reports) {
    const auto stem = "rank_class_" + std::to_string(r.class_id);
    run.write(out / (stem + ".json"), dump(to_json(r)));
    run.write(out / (stem + ".csv"), ranked_report_csv(r));
    std::cout << "class " << r.class_id << ": " << r.entries.size() << " ranked, " << r.unscored.size()
              << " unscored\n";
  }
  run.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify, segment and rank research abstracts"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string config_path;
  std::map<std::string, std::string> overrides;
  bool nouns_only = false;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"ingest-check", "Validate corpora and report class statistics"},
      {"topics", "NMF topics, PCA projection and K-means elbow"},
      {"train-eval", "Stratified split, train a classifier, report metrics"},
      {"train-segmenter", "Train the problem/method/result sentence classifier"},
      {"train-sentiment", "Train the binary sentiment scorer"},
      {"segment", "Segment input abstracts into problem/method/result"},
      {"rank", "Classify, segment and rank input abstracts per class"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config with flat dotted keys");
    for (const auto& spec : cli::key_specs()) {
      const std::string key = spec.key;
      if (spec.type == cli::KeyType::Bool) {
        sub->add_flag("--" + key, nouns_only, spec.help);
      } else {
        sub->add_option_function<std::string>(
            "--" + key, [&overrides, key](const std::string& v) { overrides[key] = v; }, spec.help);
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    PipelineConfig cfg;
    if (!config_path.empty()) cfg.merge_file(config_path);
    for (const auto& [key, value] : overrides) cfg.set_from_string(key, value);
    if (nouns_only) cfg.set("nouns-only", true);
    cfg.validate();

    const auto* sub = app.get_subcommands().front();
    const auto name = sub->get_name();
    if (name == "ingest-check") return cmd_ingest_check(cfg);
    if (name == "topics") return cmd_topics(cfg);
    if (name == "train-eval") return cmd_train_eval(cfg);
    if (name == "train-segmenter") return cmd_train_segmenter(cfg);
    if (name == "train-sentiment") return cmd_train_sentiment(cfg);
    if (name == "segment") return cmd_segment(cfg);
    if (name == "rank") return cmd_rank(cfg);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::Io:
      case Errc::SchemaVersion:
      case Errc::InvalidArgument:
      case Errc::EmptyLexicon: return 2;
      default: return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
