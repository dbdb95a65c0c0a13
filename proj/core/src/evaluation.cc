/*
 * Copyright 2026 The vandalstack Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "vandalstack/evaluation.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "vandalstack/error.h"
#include "vandalstack/number_format.h"

namespace vandalstack {

double auc_roc(std::span<const ScoredExample> scored) {
  std::size_t positives = 0;
  for (const auto& s : scored) {
    if (!std::isfinite(s.score)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite score for rev " + std::to_string(s.rev_id));
    }
    if (s.label) ++positives;
  }
  const std::size_t negatives = scored.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorCode::kSingleClass, "AUC needs both positive and negative examples");
  }
  std::vector<std::size_t> order(scored.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scored[a].score < scored[b].score; });

  // Ranks are 1-based; a tie group [i, j) shares rank (i + 1 + j) / 2.
  double positive_rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::size_t group_positives = 0;
    while (j < order.size() && scored[order[j]].score == scored[order[i]].score) {
      if (scored[order[j]].label) ++group_positives;
      ++j;
    }
    positive_rank_sum += static_cast<double>(group_positives) * static_cast<double>(i + 1 + j) / 2.0;
    i = j;
  }
  const double p = static_cast<double>(positives);
  const double u = positive_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

EvalReport score_diff_report(std::span<const ScoredExample> scored) {
  EvalReport report;
  report.n = scored.size();
  for (const auto& s : scored) {
    if (s.label) ++report.positives;
    const double diff = std::abs((s.label ? 1.0 : 0.0) - s.score);
    const double position = (diff + 1e-9) * static_cast<double>(kHistogramBins);
    const auto bin = std::min<std::size_t>(static_cast<std::size_t>(std::max(0.0, position)),
                                           kHistogramBins - 1);
    ++report.histogram[bin];
    if (diff > 0.5) ++report.misclassified_count;
  }
  return report;
}

ErrorSets error_sets(std::span<const ScoredExample> scored, std::span<const SparseVector> vectors,
                     double threshold) {
  if (!vectors.empty() && vectors.size() != scored.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "error_sets: one vector per scored example");
  }
  ErrorSets sets;
  std::unordered_set<SparseVector, SparseVectorHash> seen_fp, seen_fn;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    const bool fp = !scored[i].label && scored[i].score >= threshold;
    const bool fn = scored[i].label && scored[i].score < threshold;
    if (fp) {
      sets.false_positives.push_back(i);
      if (!vectors.empty() && seen_fp.insert(vectors[i]).second) {
        sets.distinct_false_positives.push_back(i);
      }
    } else if (fn) {
      sets.false_negatives.push_back(i);
      if (!vectors.empty() && seen_fn.insert(vectors[i]).second) {
        sets.distinct_false_negatives.push_back(i);
      }
    }
  }
  return sets;
}

EvalReport evaluate(std::span<const ScoredExample> scored, std::span<const SparseVector> vectors) {
  EvalReport report = score_diff_report(scored);
  if (report.positives > 0 && report.positives < report.n) report.auc = auc_roc(scored);
  const ErrorSets sets = error_sets(scored, vectors);
  report.fp_total = sets.false_positives.size();
  report.fn_total = sets.false_negatives.size();
  if (!vectors.empty()) {
    report.fp_distinct = sets.distinct_false_positives.size();
    report.fn_distinct = sets.distinct_false_negatives.size();
  }
  return report;
}

void write_report(std::ostream& out, const EvalReport& report) {
  out << "n=" << report.n << '\n';
  out << "positives=" << report.positives << '\n';
  out << "auc=" << (report.auc ? format_score(*report.auc) : std::string("undefined")) << '\n';
  out << "misclassified=" << report.misclassified_count << '\n';
  out << "fp_total=" << report.fp_total << '\n';
  if (report.fp_distinct) out << "fp_distinct=" << *report.fp_distinct << '\n';
  out << "fn_total=" << report.fn_total << '\n';
  if (report.fn_distinct) out << "fn_distinct=" << *report.fn_distinct << '\n';
}

void write_histogram(std::ostream& out, const EvalReport& report) {
  const double bins = static_cast<double>(kHistogramBins);
  for (std::size_t b = 0; b < kHistogramBins; ++b) {
    out << format_double(static_cast<double>(b) / bins) << '\t'
        << format_double(static_cast<double>(b + 1) / bins) << '\t' << report.histogram[b]
        << '\n';
  }
}

std::vector<std::size_t> mds_subsample(std::span<const RevisionId> rev_ids, std::size_t cap) {
  std::vector<std::size_t> order(rev_ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rev_ids[a] < rev_ids[b]; });
  if (order.size() <= cap) return order;
  std::vector<std::size_t> out;
  out.reserve(cap);
  const std::size_t n = order.size();
  for (std::size_t k = 0; k < cap; ++k) out.push_back(order[k * n / cap]);
  return out;
}

std::vector<Point2> classical_mds(std::span<const SparseVector> vectors) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  if (n == 0) return {};
  if (n == 1) return {Point2{}};

  Eigen::MatrixXd b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    b(i, i) = 0.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double d2 = squared_distance(vectors[static_cast<std::size_t>(i)],
                                         vectors[static_cast<std::size_t>(j)]);
      b(i, j) = d2;
      b(j, i) = d2;
    }
  }
  const Eigen::VectorXd row_mean = b.rowwise().mean();
  const double grand_mean = row_mean.mean();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      b(i, j) = -0.5 * (b(i, j) - row_mean(i) - row_mean(j) + grand_mean);
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kInvalidArgument, "MDS eigendecomposition failed");
  }
  // Eigenvalues come back ascending.
  std::array<Eigen::VectorXd, 2> axes;
  for (int a = 0; a < 2; ++a) {
    const Eigen::Index k = n - 1 - a;
    Eigen::VectorXd axis = solver.eigenvectors().col(k) * std::sqrt(std::max(solver.eigenvalues()(k), 0.0));
    Eigen::Index largest = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (std::abs(axis(i)) > std::abs(axis(largest))) largest = i;
    }
    if (axis(largest) < 0.0) axis = -axis;
    axis.array() -= axis.mean();
    axes[static_cast<std::size_t>(a)] = std::move(axis);
  }
  std::vector<Point2> points(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    points[static_cast<std::size_t>(i)] = Point2{axes[0](i), axes[1](i)};
  }
  return points;
}

}  // namespace vandalstack
