#include <gtest/gtest.h>

#include "fixtures.hpp"

#include <cmath>
#include <map>

namespace ar = abstractrank;

namespace {

ar::SparseVector dense_row(std::initializer_list<double> values) {
  ar::SparseVector v{values.size(), {}};
  std::uint32_t j = 0;
  for (double x : values) {
    if (x != 0.0) v.entries.push_back({j, x});
    ++j;
  }
  return v;
}

// Two separable blobs in 2-D with margin >= 2 between them.
void two_blobs(ar::Rng& rng, std::vector<ar::SparseVector>& x, std::vector<int>& y) {
  for (int i = 0; i < 40; ++i) {
    const int cls = i % 2;
    const double cx = cls ? 3.0 : -3.0;
    x.push_back(dense_row({cx + rng.uniform() - 0.5, rng.uniform() - 0.5}));
    y.push_back(cls);
  }
}

// Brute-force multinomial NB: counts per class straight from the data, then
// the class posterior of every candidate class, normalized by enumeration.
struct BruteNb {
  std::vector<int> classes;
  std::vector<double> log_prior;
  std::vector<std::vector<double>> log_lik;

  BruteNb(const std::vector<ar::SparseVector>& x, const std::vector<int>& y, std::size_t dim, double alpha) {
    std::map<int, std::vector<double>> counts;
    std::map<int, double> docs;
    for (std::size_t i = 0; i < x.size(); ++i) {
      auto& c = counts[y[i]];
      c.resize(dim, 0.0);
      for (const auto& e : x[i].entries) c[e.index] += e.value;
      docs[y[i]] += 1.0;
    }
    for (const auto& [cls, c] : counts) {
      classes.push_back(cls);
      log_prior.push_back(std::log(docs[cls] / static_cast<double>(x.size())));
      double total = 0.0;
      for (double v : c) total += v;
      std::vector<double> row;
      for (double v : c) row.push_back(std::log((v + alpha) / (total + alpha * static_cast<double>(dim))));
      log_lik.push_back(row);
    }
  }

  std::vector<double> posterior(const ar::SparseVector& q) const {
    std::vector<double> joint;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      double s = log_prior[c];
      for (const auto& e : q.entries) s += e.value * log_lik[c][e.index];
      joint.push_back(s);
    }
    const double mx = *std::max_element(joint.begin(), joint.end());
    double z = 0.0;
    for (double j : joint) z += std::exp(j - mx);
    for (double& j : joint) j = std::exp(j - mx) / z;
    return joint;
  }

  int predict(const ar::SparseVector& q) const {
    const auto p = posterior(q);
    return classes[static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin())];
  }
};

double logreg_loss(const ar::DenseMatrix& w, const std::vector<double>& b, const std::vector<ar::SparseVector>& x,
                   const std::vector<std::size_t>& y, double lambda) {
  return ar::logreg_loss_gradient(w, b, x, y, lambda).loss;
}

}  // namespace

// Logistic regression -----------------------------------------------------------

TEST(LogReg, GradientMatchesFiniteDifferences) {
  ar::Rng rng(101);
  const double h = 1e-5;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.below(4), f = 2 + rng.below(6), c = 2 + rng.below(2);
    std::vector<ar::SparseVector> x;
    std::vector<std::size_t> y;
    for (std::size_t i = 0; i < n; ++i) {
      x.push_back(fixtures::random_sparse(rng, f, 0.7, 2.0));
      y.push_back(static_cast<std::size_t>(rng.below(c)));
    }
    ar::DenseMatrix w = fixtures::random_dense(rng, c, f);
    std::vector<double> b(c);
    for (auto& v : b) v = rng.uniform() - 0.5;
    const double lambda = rng.uniform() * 0.1;
    const auto g = ar::logreg_loss_gradient(w, b, x, y, lambda);

    double diff2 = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < w.data().size(); ++i) {
      const double keep = w.data()[i];
      w.data()[i] = keep + h;
      const double up = logreg_loss(w, b, x, y, lambda);
      w.data()[i] = keep - h;
      const double down = logreg_loss(w, b, x, y, lambda);
      w.data()[i] = keep;
      const double numeric = (up - down) / (2 * h);
      diff2 += std::pow(numeric - g.grad_w.data()[i], 2);
      norm2 += numeric * numeric;
    }
    for (std::size_t k = 0; k < c; ++k) {
      const double keep = b[k];
      b[k] = keep + h;
      const double up = logreg_loss(w, b, x, y, lambda);
      b[k] = keep - h;
      const double down = logreg_loss(w, b, x, y, lambda);
      b[k] = keep;
      const double numeric = (up - down) / (2 * h);
      diff2 += std::pow(numeric - g.grad_b[k], 2);
      norm2 += numeric * numeric;
    }
    EXPECT_LE(std::sqrt(diff2) / std::max(std::sqrt(norm2), 1e-12), 1e-4) << "trial " << trial;
  }
}

TEST(LogReg, SeparableBlobsFitExactly) {
  ar::Rng rng(102);
  std::vector<ar::SparseVector> x;
  std::vector<int> y;
  two_blobs(rng, x, y);
  const auto m = ar::train_logreg(x, y, 2);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(ar::predict_logreg(m, x[i]), y[i]);
}

TEST(LogReg, SingleClassRejected) {
  std::vector<ar::SparseVector> x{dense_row({1, 0}), dense_row({0, 1})};
  std::vector<int> y{3, 3};
  try {
    ar::train_logreg(x, y, 2);
    FAIL();
  } catch (const ar::Error& e) {
    EXPECT_EQ(e.code(), ar::Errc::SingleClass);
  }
}

TEST(LogReg, ZeroEpochsGivesUniformProbabilities) {
  std::vector<ar::SparseVector> x{dense_row({1, 0}), dense_row({0, 1}), dense_row({1, 1})};
  std::vector<int> y{1, 2, 5};
  ar::LogRegHyper hyper;
  hyper.epochs = 0;
  const auto m = ar::train_logreg(x, y, 2, hyper);
  EXPECT_EQ(m.loss_history.size(), 1u);
  for (const auto& row : x)
    for (double p : ar::predict_proba(m, row)) EXPECT_NEAR(p, 1.0 / 3.0, 1e-15);
  EXPECT_EQ(ar::predict_logreg(m, x[0]), 1);
}

TEST(LogReg, HandSetSoftmax) {
  ar::LogRegModel m;
  m.classes = {0, 1};
  m.weights = ar::DenseMatrix::from_rows({{1.0, -2.0}, {0.5, 0.25}});
  m.bias = {0.1, -0.3};
  const auto x = dense_row({2.0, 1.0});
  const double z0 = 1.0 * 2 - 2.0 * 1 + 0.1, z1 = 0.5 * 2 + 0.25 * 1 - 0.3;
  const double p0 = std::exp(z0) / (std::exp(z0) + std::exp(z1));
  const auto p = ar::predict_proba(m, x);
  EXPECT_NEAR(p[0], p0, 1e-15);
  EXPECT_NEAR(p[1], 1.0 - p0, 1e-15);
  // Shifting every logit by a constant (via the bias) changes nothing.
  auto shifted = m;
  for (double& b : shifted.bias) b += 7.5;
  const auto q = ar::predict_proba(shifted, x);
  EXPECT_NEAR(q[0], p[0], 1e-12);
  EXPECT_THROW(ar::predict_proba(m, dense_row({1, 2, 3})), ar::Error);
}

TEST(LogReg, FullBatchLossNonIncreasingWithSmallStep) {
  ar::Rng rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<ar::SparseVector> x;
    std::vector<int> y;
    for (int i = 0; i < 30; ++i) {
      x.push_back(fixtures::random_sparse(rng, 8, 0.5));
      y.push_back(static_cast<int>(rng.below(3)));
    }
    y[0] = 0, y[1] = 1, y[2] = 2;
    const auto m = ar::train_logreg(x, y, 8, {0.01, 1e-3, 100, 0, 0});
    for (std::size_t t = 1; t < m.loss_history.size(); ++t) EXPECT_LE(m.loss_history[t], m.loss_history[t - 1] + 1e-12);
  }
}

TEST(LogReg, DeterministicIncludingMiniBatch) {
  ar::Rng rng(104);
  std::vector<ar::SparseVector> x;
  std::vector<int> y;
  two_blobs(rng, x, y);
  const ar::LogRegHyper hyper{0.1, 1e-4, 20, 7, 99};
  const auto a = ar::train_logreg(x, y, 2, hyper);
  const auto b = ar::train_logreg(x, y, 2, hyper);
  EXPECT_EQ(a.loss_history, b.loss_history);
  EXPECT_TRUE(std::equal(a.weights.data().begin(), a.weights.data().end(), b.weights.data().begin()));
}

TEST(LogReg, DivergenceIsReported) {
  std::vector<ar::SparseVector> x{dense_row({1e200, 0}), dense_row({0, 1e200})};
  std::vector<int> y{0, 1};
  try {
    ar::train_logreg(x, y, 2, {1e10, 0.0, 5, 0, 0});
    FAIL();
  } catch (const ar::Error& e) {
    EXPECT_EQ(e.code(), ar::Errc::NonFiniteLoss);
  }
}

// Naive Bayes --------------------------------------------------------------------

TEST(NaiveBayes, HandFixture) {
  // c1: [a,a,b]; c2: [b,b,c]; alpha 1, V = {a,b,c}.
  std::vector<ar::SparseVector> x{dense_row({2, 1, 0}), dense_row({0, 2, 1})};
  std::vector<int> y{1, 2};
  const auto m = ar::train_nb(x, y, 3, 1.0);
  EXPECT_NEAR(m.log_likelihood(0, 0), std::log(3.0 / 6.0), 1e-12);
  EXPECT_NEAR(m.log_likelihood(0, 1), std::log(2.0 / 6.0), 1e-12);
  EXPECT_NEAR(m.log_likelihood(0, 2), std::log(1.0 / 6.0), 1e-12);
  EXPECT_NEAR(m.log_likelihood(1, 0), std::log(1.0 / 6.0), 1e-12);
  EXPECT_NEAR(m.log_likelihood(1, 1), std::log(3.0 / 6.0), 1e-12);
  EXPECT_NEAR(m.log_likelihood(1, 2), std::log(2.0 / 6.0), 1e-12);
  EXPECT_NEAR(m.log_prior[0], std::log(0.5), 1e-12);
  EXPECT_EQ(ar::predict_nb(m, dense_row({1, 0, 0})), 1);
  EXPECT_EQ(ar::predict_nb(m, dense_row({2, 0, 0})), 1);
  EXPECT_EQ(ar::predict_nb(m, dense_row({0, 0, 1})), 2);
}

TEST(NaiveBayes, PriorsAndEmptyQuery) {
  std::vector<ar::SparseVector> x{dense_row({1, 0}), dense_row({1, 0}), dense_row({1, 1}), dense_row({0, 3})};
  std::vector<int> y{1, 1, 1, 2};
  const auto m = ar::train_nb(x, y, 2, 1.0);
  EXPECT_NEAR(m.log_prior[0], std::log(0.75), 1e-12);
  EXPECT_NEAR(m.log_prior[1], std::log(0.25), 1e-12);
  EXPECT_EQ(ar::predict_nb(m, ar::SparseVector{2, {}}), 1);
  for (double v : ar::nb_joint_log_likelihood(m, dense_row({0, 50}))) EXPECT_TRUE(std::isfinite(v));
}

TEST(NaiveBayes, PropertyMatchesBruteForcePosterior) {
  ar::Rng rng(105);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 2 + rng.below(5), n = 3 + rng.below(8), n_classes = 2 + rng.below(3);
    std::vector<ar::SparseVector> x;
    std::vector<int> y;
    for (std::size_t i = 0; i < n; ++i) {
      x.push_back(fixtures::random_counts(rng, dim, 0.6, 4));
      y.push_back(static_cast<int>(i < n_classes ? i : rng.below(n_classes)));
    }
    const double alpha = 0.1 + rng.uniform();
    const auto m = ar::train_nb(x, y, dim, alpha);
    const BruteNb oracle(x, y, dim, alpha);
    ASSERT_EQ(m.classes, oracle.classes);
    for (std::size_t c = 0; c < m.classes.size(); ++c) {
      EXPECT_NEAR(m.log_prior[c], oracle.log_prior[c], 1e-12);
      double mass = 0.0;
      for (std::size_t t = 0; t < dim; ++t) {
        EXPECT_NEAR(m.log_likelihood(c, t), oracle.log_lik[c][t], 1e-12);
        mass += std::exp(m.log_likelihood(c, t));
      }
      EXPECT_NEAR(mass, 1.0, 1e-12);
    }
    for (int q = 0; q < 10; ++q) {
      const auto query = fixtures::random_counts(rng, dim, 0.5, 5);
      EXPECT_EQ(ar::predict_nb(m, query), oracle.predict(query));
    }
  }
}

TEST(NaiveBayes, DuplicatedTrainingSetKeepsDecisions) {
  ar::Rng rng(106);
  std::vector<ar::SparseVector> x;
  std::vector<int> y;
  for (int i = 0; i < 12; ++i) {
    x.push_back(fixtures::random_counts(rng, 5, 0.6, 3));
    y.push_back(i % 3);
  }
  const auto m = ar::train_nb(x, y, 5);
  auto x2 = x;
  auto y2 = y;
  x2.insert(x2.end(), x.begin(), x.end());
  y2.insert(y2.end(), y.begin(), y.end());
  // Doubling alpha with the counts leaves every smoothed estimate unchanged.
  const auto m2 = ar::train_nb(x2, y2, 5, 2.0);
  for (const auto& row : x) EXPECT_EQ(ar::predict_nb(m, row), ar::predict_nb(m2, row));
}

TEST(NaiveBayes, RejectsTfidfUnlessPseudoCounts) {
  ar::DocTermMatrix m{{dense_row({0.5, 0.5}), dense_row({1.0, 0.0})}, ar::Vocabulary({"a", "b"}), ar::Weighting::Tfidf};
  std::vector<int> y{0, 1};
  EXPECT_THROW(ar::train_nb(m, y), ar::Error);
  EXPECT_NO_THROW(ar::train_nb(m, y, {1.0, true}));
}

// SVM ------------------------------------------------------------------------------

TEST(Svm, OneDimensionalSeparable) {
  std::vector<ar::SparseVector> x{dense_row({-1}), dense_row({1})};
  std::vector<int> y{0, 1};
  const auto m = ar::train_svm_ovr(x, y, 1, {1e-2, 200, 0});
  EXPECT_EQ(ar::predict_svm(m, x[0]), 0);
  EXPECT_EQ(ar::predict_svm(m, x[1]), 1);
}

TEST(Svm, ZeroEpochsTiesToFirstClass) {
  std::vector<ar::SparseVector> x{dense_row({-1, 1}), dense_row({1, 0}), dense_row({0, 2})};
  std::vector<int> y{4, 2, 7};
  const auto m = ar::train_svm_ovr(x, y, 2, {1e-4, 0, 0});
  for (const auto& row : x) {
    for (double v : ar::svm_decision_values(m, row)) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(ar::predict_svm(m, row), 2);
  }
}

TEST(Svm, PropertyObjectiveNotAboveInit) {
  ar::Rng rng(107);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<ar::SparseVector> x;
    std::vector<int> y;
    for (int i = 0; i < 30; ++i) {
      x.push_back(fixtures::random_sparse(rng, 6, 0.6));
      y.push_back(i % 3);
    }
    const ar::SvmHyper hyper{1e-2, 50, rng.next()};
    const auto m = ar::train_svm_ovr(x, y, 6, hyper);
    for (std::size_t c = 0; c < m.classes.size(); ++c) {
      std::vector<int> pm;
      for (int label : y) pm.push_back(label == m.classes[c] ? 1 : -1);
      const std::vector<double> zero(6, 0.0);
      const double init = ar::pegasos_objective(zero, 0.0, x, pm, hyper.lambda);
      const double final_obj = ar::pegasos_objective(m.weights.row(c), m.bias[c], x, pm, hyper.lambda);
      EXPECT_LE(final_obj, init + 1e-12) << "trial " << trial << " class " << c;
    }
  }
}

TEST(Svm, DeterministicGivenSeed) {
  ar::Rng rng(108);
  std::vector<ar::SparseVector> x;
  std::vector<int> y;
  two_blobs(rng, x, y);
  const auto a = ar::train_svm_ovr(x, y, 2, {1e-3, 10, 5});
  const auto b = ar::train_svm_ovr(x, y, 2, {1e-3, 10, 5});
  EXPECT_TRUE(std::equal(a.weights.data().begin(), a.weights.data().end(), b.weights.data().begin()));
  EXPECT_EQ(a.bias, b.bias);
}

// Metrics ------------------------------------------------------------------------

TEST(Metrics, HandConfusion) {
  // Confusion [[2,0],[1,1]].
  const std::vector<int> truth{0, 0, 1, 1}, pred{0, 0, 0, 1};
  const auto ev = ar::evaluate(truth, pred, 2);
  EXPECT_EQ(ev.confusion.at(0, 0), 2u);
  EXPECT_EQ(ev.confusion.at(1, 0), 1u);
  EXPECT_NEAR(ev.metrics.accuracy, 0.75, 1e-15);
  EXPECT_NEAR(ev.metrics.precision, (2.0 / 3.0 + 1.0) / 2.0, 1e-12);
  EXPECT_NEAR(ev.metrics.f1, (0.8 + 2.0 / 3.0) / 2.0, 1e-12);
  EXPECT_NEAR(ev.metrics.recall, (1.0 + 0.5) / 2.0, 1e-12);
}

TEST(Metrics, PerfectAndDegenerate) {
  const std::vector<int> truth{0, 1, 2, 1};
  const auto perfect = ar::evaluate(truth, truth, 3);
  EXPECT_EQ(perfect.metrics.accuracy, 1.0);
  EXPECT_EQ(perfect.metrics.f1, 1.0);
  const std::vector<int> t2{0, 0, 1, 1}, all0{0, 0, 0, 0};
  const auto one = ar::evaluate(t2, all0, 2);
  EXPECT_EQ(one.metrics.accuracy, 0.5);
  EXPECT_EQ(one.metrics.per_class[1].precision, 0.0);
  EXPECT_EQ(one.metrics.per_class[1].f1, 0.0);
}

TEST(Metrics, PropertyAccuracyAndRowSums) {
  ar::Rng rng(109);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng.below(6), n = 1 + rng.below(50);
    std::vector<int> t, p;
    for (std::size_t i = 0; i < n; ++i) {
      t.push_back(static_cast<int>(rng.below(k)));
      p.push_back(static_cast<int>(rng.below(k)));
    }
    const auto ev = ar::evaluate(t, p, k);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) correct += t[i] == p[i];
    EXPECT_DOUBLE_EQ(ev.metrics.accuracy, static_cast<double>(correct) / static_cast<double>(n));
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t row = 0, support = 0;
      for (std::size_t q = 0; q < k; ++q) row += ev.confusion.at(c, q);
      for (int v : t) support += static_cast<std::size_t>(v) == c;
      EXPECT_EQ(row, support);
    }
  }
}

TEST(Metrics, CsvLayout) {
  const std::vector<int> truth{0, 0, 1, 1}, pred{0, 0, 0, 1};
  const auto ev = ar::evaluate(truth, pred, 2);
  EXPECT_EQ(ar::kMetricsCsvHeader, "classifier,f1,accuracy,precision");
  EXPECT_EQ(ar::metrics_csv_row("Logistic Regression (TF-IDF)", ev.metrics),
            "Logistic Regression (TF-IDF),0.733333,0.750000,0.833333");
  const std::vector<std::string> labels{"1", "2"};
  EXPECT_EQ(ar::confusion_csv(ev.confusion, labels), "true\\predicted,1,2\n1,2,0\n2,1,1\n");
  EXPECT_THROW(ar::evaluate(truth, std::vector<int>{0}, 2), ar::Error);
}

TEST(Classify, BundledCorpusEndToEnd) {
  const auto corpus = ar::load_anomaly_corpus(fixtures::data_path("anomaly_synthetic.jsonl"));
  const auto split = ar::stratified_split(corpus, 0.7, 0);
  std::map<std::string, const ar::Document*> by_id;
  for (const auto& d : corpus) by_id[d.id] = &d;
  ar::Preprocessor pre;
  pre.stoplist = ar::load_word_list(fixtures::data_path("stopwords.txt"));
  std::vector<ar::TokenStream> train_docs, test_docs;
  std::vector<int> train_y, test_y;
  for (const auto& id : split.train_ids) train_docs.push_back(pre(by_id[id]->text)), train_y.push_back(*by_id[id]->class_label);
  for (const auto& id : split.test_ids) test_docs.push_back(pre(by_id[id]->text)), test_y.push_back(*by_id[id]->class_label - 1);
  const auto vocab = ar::build_vocabulary(train_docs);
  const auto counts = ar::count_matrix(train_docs, vocab);
  const auto idf = ar::fit_idf(counts);
  const auto lr = ar::train_logreg(ar::tfidf_matrix(counts, idf), train_y);
  const auto nb = ar::train_nb(counts, train_y);
  std::vector<int> lr_pred, nb_pred;
  for (const auto& d : test_docs) {
    const auto c = ar::count_vectorize(d, vocab);
    lr_pred.push_back(ar::predict_logreg(lr, ar::tfidf_transform(c, idf)) - 1);
    nb_pred.push_back(ar::predict_nb(nb, c) - 1);
  }
  EXPECT_GE(ar::evaluate(test_y, lr_pred, 8).metrics.f1, 0.90);
  EXPECT_GE(ar::evaluate(test_y, nb_pred, 8).metrics.f1, 0.85);
}
