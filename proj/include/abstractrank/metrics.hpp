#pragma once

#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace abstractrank {

/// Rows are true classes, columns predicted classes.
struct ConfusionMatrix {
  std::size_t n_classes = 0;
  std::vector<std::size_t> counts;

  std::size_t at(std::size_t truth, std::size_t predicted) const { return counts[truth * n_classes + predicted]; }

  std::size_t total() const {
    std::size_t s = 0;
    for (auto c : counts) s += c;
    return s;
  }
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Macro-averaged scores plus the per-class breakdown.
struct MetricsReport {
  double f1 = 0.0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  std::vector<ClassMetrics> per_class;
};

struct Evaluation {
  ConfusionMatrix confusion;
  MetricsReport metrics;
};

/// Labels are class indices in [0, n_classes). Precision, recall and F1 are
/// 0 whenever their denominator is 0.
inline Evaluation evaluate(std::span<const int> y_true, std::span<const int> y_pred, std::size_t n_classes) {
  if (y_true.size() != y_pred.size())
    detail::fail(Errc::LengthMismatch,
                 std::to_string(y_true.size()) + " truths vs " + std::to_string(y_pred.size()) + " predictions");
  if (y_true.empty()) detail::fail(Errc::InvalidArgument, "nothing to evaluate");
  Evaluation ev;
  ev.confusion.n_classes = n_classes;
  ev.confusion.counts.assign(n_classes * n_classes, 0);
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const auto t = y_true[i], p = y_pred[i];
    if (t < 0 || p < 0 || static_cast<std::size_t>(t) >= n_classes || static_cast<std::size_t>(p) >= n_classes)
      detail::fail(Errc::InvalidArgument, "label outside [0, n_classes)");
    ++ev.confusion.counts[static_cast<std::size_t>(t) * n_classes + static_cast<std::size_t>(p)];
  }
  auto& m = ev.metrics;
  std::size_t correct = 0;
  for (std::size_t c = 0; c < n_classes; ++c) {
    std::size_t predicted = 0, support = 0;
    for (std::size_t o = 0; o < n_classes; ++o) {
      predicted += ev.confusion.at(o, c);
      support += ev.confusion.at(c, o);
    }
    const auto tp = ev.confusion.at(c, c);
    correct += tp;
    ClassMetrics cm;
    cm.precision = predicted ? static_cast<double>(tp) / static_cast<double>(predicted) : 0.0;
    cm.recall = support ? static_cast<double>(tp) / static_cast<double>(support) : 0.0;
    cm.f1 = (cm.precision + cm.recall) > 0.0 ? 2.0 * cm.precision * cm.recall / (cm.precision + cm.recall) : 0.0;
    m.precision += cm.precision;
    m.recall += cm.recall;
    m.f1 += cm.f1;
    m.per_class.push_back(cm);
  }
  const auto nc = static_cast<double>(n_classes);
  m.precision /= nc;
  m.recall /= nc;
  m.f1 /= nc;
  m.accuracy = static_cast<double>(correct) / static_cast<double>(y_true.size());
  return ev;
}

inline constexpr std::string_view kMetricsCsvHeader = "classifier,f1,accuracy,precision";

inline std::string format_metric(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string metrics_csv_row(std::string_view classifier, const MetricsReport& m) {
  std::string row(classifier);
  row += ',' + format_metric(m.f1) + ',' + format_metric(m.accuracy) + ',' + format_metric(m.precision);
  return row;
}

/// Header row "true\predicted,<labels...>", then one row per true class.
inline std::string confusion_csv(const ConfusionMatrix& cm, std::span<const std::string> labels) {
  std::ostringstream out;
  out << "true\\predicted";
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  for (std::size_t t = 0; t < cm.n_classes; ++t) {
    out << labels[t];
    for (std::size_t p = 0; p < cm.n_classes; ++p) out << ',' << cm.at(t, p);
    out << '\n';
  }
  return out.str();
}

}  // namespace abstractrank
