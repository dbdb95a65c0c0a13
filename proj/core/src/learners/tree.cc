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

#include "vandalstack/learners/tree.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "vandalstack/error.h"
#include "vandalstack/number_format.h"

namespace vandalstack {

DecisionTree::DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error(ErrorCode::kFormat, "tree without nodes");
  const auto n = static_cast<std::int32_t>(nodes_.size());
  for (std::int32_t i = 0; i < n; ++i) {
    const TreeNode& node = nodes_[static_cast<std::size_t>(i)];
    if (node.is_leaf()) continue;
    if (node.left <= i || node.right <= i || node.left >= n || node.right >= n) {
      throw Error(ErrorCode::kFormat, "tree child index out of order at node " +
                                          std::to_string(i));
    }
  }
}

std::size_t DecisionTree::leaf_index(const SparseVector& x) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& node = nodes_[i];
    i = static_cast<std::size_t>(
        x.at(static_cast<std::size_t>(node.feature)) <= node.threshold ? node.left
                                                                       : node.right);
  }
  return i;
}

void DecisionTree::accumulate_importances(std::span<double> importances) const {
  for (const auto& node : nodes_) {
    if (!node.is_leaf()) importances[static_cast<std::size_t>(node.feature)] += node.gain;
  }
}

void DecisionTree::write(std::ostream& out) const {
  out << "tree " << nodes_.size() << '\n';
  for (const auto& n : nodes_) {
    out << n.feature << ' ' << format_double(n.threshold) << ' ' << n.left << ' '
        << n.right << ' ' << format_double(n.value) << ' ' << format_double(n.gain)
        << ' ' << format_double(n.weight) << '\n';
  }
}

DecisionTree DecisionTree::read(std::istream& in) {
  std::string tag;
  std::size_t count = 0;
  if (!(in >> tag >> count) || tag != "tree") {
    throw Error(ErrorCode::kFormat, "expected 'tree <count>'");
  }
  std::vector<TreeNode> nodes(count);
  for (auto& n : nodes) {
    std::string threshold, value, gain, weight;
    if (!(in >> n.feature >> threshold >> n.left >> n.right >> value >> gain >> weight)) {
      throw Error(ErrorCode::kFormat, "truncated tree node");
    }
    n.threshold = parse_double(threshold);
    n.value = parse_double(value);
    n.gain = parse_double(gain);
    n.weight = parse_double(weight);
  }
  return DecisionTree(std::move(nodes));
}

namespace {

struct Stats {
  std::int64_t count = 0;
  double w = 0.0;   // weight
  double s = 0.0;   // weighted target sum
  double s2 = 0.0;  // weighted squared target sum
  double h = 0.0;   // weighted hessian sum

  Stats& operator+=(const Stats& o) {
    count += o.count;
    w += o.w;
    s += o.s;
    s2 += o.s2;
    h += o.h;
    return *this;
  }
  friend Stats operator-(Stats a, const Stats& b) {
    a.count -= b.count;
    a.w -= b.w;
    a.s -= b.s;
    a.s2 -= b.s2;
    a.h -= b.h;
    return a;
  }
};

struct BestSplit {
  double gain = -std::numeric_limits<double>::infinity();
  std::int32_t feature = -1;
  double threshold = 0.0;
};

// Columns restricted to the rows that are still in splittable nodes. The
// builder re-filters when the active share halves, so deep levels of
// unlimited-depth trees stay cheap.
class ActiveColumns {
 public:
  explicit ActiveColumns(const ColumnStore& store) : offsets_(store.dim() + 1, 0) {
    for (std::size_t j = 0; j < store.dim(); ++j) {
      auto col = store.column(j);
      entries_.insert(entries_.end(), col.begin(), col.end());
      offsets_[j + 1] = entries_.size();
    }
  }

  std::span<const ColumnStore::Entry> column(std::size_t j) const {
    return {entries_.data() + offsets_[j], offsets_[j + 1] - offsets_[j]};
  }
  std::size_t size() const { return entries_.size(); }

  template <typename Keep>
  void filter(Keep keep) {
    std::size_t out = 0;
    std::size_t begin = 0;
    for (std::size_t j = 0; j + 1 < offsets_.size(); ++j) {
      const std::size_t end = offsets_[j + 1];
      for (std::size_t k = begin; k < end; ++k) {
        if (keep(entries_[k].row)) entries_[out++] = entries_[k];
      }
      begin = end;
      offsets_[j + 1] = out;
    }
    entries_.resize(out);
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<ColumnStore::Entry> entries_;
};

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, const ColumnStore& columns, const TreeTargets& targets,
              const TreeOptions& options, std::uint64_t seed)
      : data_(data), targets_(targets), options_(options),
        seed_(seed), dim_(data.dim()), active_(columns) {
    const std::size_t n = data.size();
    if (targets.weight.size() != n || targets.target.size() != n ||
        (options.criterion == SplitCriterion::kSquaredError && targets.hessian.size() != n)) {
      throw Error(ErrorCode::kDimensionMismatch, "tree targets do not match the dataset");
    }
    node_of_row_.assign(n, -1);
    active_row_count_at_filter_ = n;
  }

  GrownTree grow() {
    Stats root;
    for (std::size_t r = 0; r < data_.size(); ++r) {
      if (targets_.weight[r] <= 0.0) continue;
      node_of_row_[r] = 0;
      active_rows_.push_back(static_cast<std::uint32_t>(r));
      root += row_stats(r);
    }
    nodes_.push_back(TreeNode{});
    stats_.push_back(root);
    std::vector<std::int32_t> frontier = {0};
    int depth = 0;
    while (!frontier.empty()) {
      frontier = grow_level(frontier, depth);
      ++depth;
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      nodes_[i].weight = stats_[i].w;
      if (nodes_[i].is_leaf()) nodes_[i].value = leaf_value(stats_[i]);
    }
    GrownTree out;
    out.leaf_of_row = std::move(node_of_row_);
    out.tree = DecisionTree(std::move(nodes_));
    return out;
  }

 private:
  Stats row_stats(std::size_t r) const {
    Stats st;
    const double w = targets_.weight[r];
    const double t = targets_.target[r];
    st.count = 1;
    st.w = w;
    st.s = w * t;
    if (options_.criterion == SplitCriterion::kSquaredError) {
      st.s2 = w * t * t;
      st.h = w * targets_.hessian[r];
    }
    return st;
  }

  // Impurity scaled by node weight; a split's gain is parent - children.
  double weighted_impurity(const Stats& st) const {
    if (st.w <= 0.0) return 0.0;
    if (options_.criterion == SplitCriterion::kGini) {
      const double neg = st.w - st.s;
      return 2.0 * st.s * neg / st.w;
    }
    return st.s2 - st.s * st.s / st.w;
  }

  double split_gain(const Stats& total, const Stats& left, const Stats& right) const {
    if (options_.criterion == SplitCriterion::kGini) {
      return weighted_impurity(total) - weighted_impurity(left) - weighted_impurity(right);
    }
    // SSE decrease without the s2 terms, which cancel.
    return left.s * left.s / left.w + right.s * right.s / right.w - total.s * total.s / total.w;
  }

  bool impure(const Stats& st) const {
    if (options_.criterion == SplitCriterion::kGini) {
      constexpr double kEps = 1e-12;
      return st.s > kEps * st.w && st.w - st.s > kEps * st.w;
    }
    return st.s2 > 0.0 && weighted_impurity(st) > 1e-10 * st.s2;
  }

  double leaf_value(const Stats& st) const {
    if (options_.criterion == SplitCriterion::kGini) return st.w > 0.0 ? st.s / st.w : 0.0;
    constexpr double kMinHessian = 1e-12;
    return st.s / std::max(st.h, kMinHessian);
  }

  bool valid_children(const Stats& left, const Stats& right) const {
    return left.count >= options_.min_samples_leaf && right.count >= options_.min_samples_leaf &&
           left.w > 0.0 && right.w > 0.0;
  }

  struct Search {
    std::int32_t node;
    BestSplit best;
    Rng rng;
    std::vector<std::uint32_t> order;  // feature draw order when subsampling
    std::size_t cursor = 0;
  };

  std::size_t features_per_batch() const {
    if (options_.max_features == 0 || options_.max_features >= dim_) return dim_;
    return options_.max_features;
  }

  std::vector<std::int32_t> grow_level(const std::vector<std::int32_t>& frontier, int depth) {
    std::vector<Search> searches;
    for (std::int32_t node : frontier) {
      const Stats& st = stats_[static_cast<std::size_t>(node)];
      const bool depth_ok = options_.max_depth <= 0 || depth < options_.max_depth;
      if (!depth_ok || st.count < 2 || st.count < 2 * options_.min_samples_leaf || !impure(st) ||
          dim_ == 0) {
        continue;
      }
      Search search{node, {}, Rng(derive_seed(seed_, "node", static_cast<std::uint64_t>(node))), {}, 0};
      if (features_per_batch() < dim_) {
        search.order.resize(dim_);
        std::iota(search.order.begin(), search.order.end(), 0u);
      }
      searches.push_back(std::move(search));
    }
    if (searches.empty()) return {};

    slot_of_node_.assign(nodes_.size(), -1);
    for (std::size_t i = 0; i < searches.size(); ++i) {
      slot_of_node_[static_cast<std::size_t>(searches[i].node)] = static_cast<std::int32_t>(i);
    }
    maybe_compact();

    std::vector<std::size_t> pending(searches.size());
    std::iota(pending.begin(), pending.end(), 0);
    const std::size_t batch = features_per_batch();
    while (!pending.empty()) {
      std::vector<std::vector<std::int32_t>> requests(dim_);
      for (std::size_t slot : pending) {
        Search& s = searches[slot];
        if (batch == dim_) {
          for (std::size_t j = 0; j < dim_; ++j) requests[j].push_back(static_cast<std::int32_t>(slot));
          s.cursor = dim_;
          continue;
        }
        // Partial Fisher-Yates continues from where the last batch stopped.
        std::vector<std::uint32_t> drawn;
        for (std::size_t k = 0; k < batch && s.cursor < dim_; ++k, ++s.cursor) {
          const std::size_t pick =
              s.cursor + static_cast<std::size_t>(s.rng.uniform_below(dim_ - s.cursor));
          std::swap(s.order[s.cursor], s.order[pick]);
          drawn.push_back(s.order[s.cursor]);
        }
        for (std::uint32_t j : drawn) requests[j].push_back(static_cast<std::int32_t>(slot));
      }
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!requests[j].empty()) evaluate_feature(j, requests[j], searches);
      }
      std::vector<std::size_t> still;
      for (std::size_t slot : pending) {
        if (searches[slot].best.feature < 0 && searches[slot].cursor < dim_) still.push_back(slot);
      }
      pending.swap(still);
    }

    std::vector<std::int32_t> next;
    for (Search& s : searches) {
      if (s.best.feature < 0) continue;
      const auto parent = static_cast<std::size_t>(s.node);
      const auto left = static_cast<std::int32_t>(nodes_.size());
      nodes_.push_back(TreeNode{});
      nodes_.push_back(TreeNode{});
      stats_.emplace_back();
      stats_.emplace_back();
      TreeNode& p = nodes_[parent];
      p.feature = s.best.feature;
      p.threshold = s.best.threshold;
      p.left = left;
      p.right = left + 1;
      p.gain = std::max(0.0, s.best.gain);
      next.push_back(left);
      next.push_back(left + 1);
    }

    // Route rows of split nodes; child statistics are summed in row order.
    std::vector<std::uint32_t> still_active;
    for (std::uint32_t r : active_rows_) {
      const std::int32_t node = node_of_row_[r];
      const TreeNode& p = nodes_[static_cast<std::size_t>(node)];
      if (p.is_leaf()) continue;
      const double v = data_.row(r).at(static_cast<std::size_t>(p.feature));
      const std::int32_t child = v <= p.threshold ? p.left : p.right;
      node_of_row_[r] = child;
      stats_[static_cast<std::size_t>(child)] += row_stats(r);
      still_active.push_back(r);
    }
    active_rows_.swap(still_active);
    return next;
  }

  void maybe_compact() {
    // Rows of nodes that will not be split never matter again.
    std::vector<std::uint32_t> kept;
    kept.reserve(active_rows_.size());
    for (std::uint32_t r : active_rows_) {
      if (slot_of_node_[static_cast<std::size_t>(node_of_row_[r])] >= 0) kept.push_back(r);
    }
    active_rows_.swap(kept);
    if (2 * active_rows_.size() < active_row_count_at_filter_) {
      std::vector<std::uint8_t> live(data_.size(), 0);
      for (std::uint32_t r : active_rows_) live[r] = 1;
      active_.filter([&live](std::uint32_t r) { return live[r] != 0; });
      active_row_count_at_filter_ = active_rows_.size();
    }
  }

  struct Scan {
    Stats nonzero;
    Stats left;
    double lo = 0.0, hi = 0.0;
    bool any_nonzero = false;
    double last = 0.0;
    bool has_last = false;
    bool zero_done = false;
    double threshold = 0.0;
    bool usable = false;
  };

  void evaluate_feature(std::size_t j, const std::vector<std::int32_t>& slots,
                        std::vector<Search>& searches) {
    const std::size_t nslots = searches.size();
    if (scan_.size() < nslots) {
      scan_.resize(nslots);
      wanted_.resize(nslots, 0);
    }
    ++stamp_;
    for (std::int32_t slot : slots) {
      scan_[static_cast<std::size_t>(slot)] = Scan{};
      wanted_[static_cast<std::size_t>(slot)] = stamp_;
    }
    const auto col = active_.column(j);
    const auto slot_of_row = [&](std::uint32_t r) -> std::int32_t {
      const std::int32_t node = node_of_row_[r];
      if (node < 0) return -1;
      const std::int32_t slot = slot_of_node_[static_cast<std::size_t>(node)];
      if (slot < 0 || wanted_[static_cast<std::size_t>(slot)] != stamp_) return -1;
      return slot;
    };

    for (const auto& e : col) {
      const std::int32_t slot = slot_of_row(e.row);
      if (slot < 0) continue;
      Scan& sc = scan_[static_cast<std::size_t>(slot)];
      sc.nonzero += row_stats(e.row);
      if (!sc.any_nonzero) {
        sc.lo = sc.hi = e.value;
        sc.any_nonzero = true;
      } else {
        sc.lo = std::min(sc.lo, e.value);
        sc.hi = std::max(sc.hi, e.value);
      }
    }

    const bool random_rule = options_.rule == SplitRule::kRandom;
    for (std::int32_t slot : slots) {
      Scan& sc = scan_[static_cast<std::size_t>(slot)];
      Search& search = searches[static_cast<std::size_t>(slot)];
      const Stats& total = stats_[static_cast<std::size_t>(search.node)];
      const bool has_zero = total.count > sc.nonzero.count;
      double lo = sc.any_nonzero ? sc.lo : 0.0;
      double hi = sc.any_nonzero ? sc.hi : 0.0;
      if (has_zero) {
        lo = std::min(lo, 0.0);
        hi = std::max(hi, 0.0);
      }
      sc.usable = lo < hi;
      if (random_rule && sc.usable) {
        double t = search.rng.uniform(lo, hi);
        if (t >= hi) t = lo;
        sc.threshold = t;
        if (has_zero && 0.0 <= t) sc.left = total - sc.nonzero;
      }
    }

    if (random_rule) {
      for (const auto& e : col) {
        const std::int32_t slot = slot_of_row(e.row);
        if (slot < 0) continue;
        Scan& sc = scan_[static_cast<std::size_t>(slot)];
        if (sc.usable && e.value <= sc.threshold) sc.left += row_stats(e.row);
      }
      for (std::int32_t slot : slots) {
        Scan& sc = scan_[static_cast<std::size_t>(slot)];
        if (!sc.usable) continue;
        Search& search = searches[static_cast<std::size_t>(slot)];
        const Stats& total = stats_[static_cast<std::size_t>(search.node)];
        consider(search, j, total, sc.left, sc.threshold);
      }
      return;
    }

    const auto advance = [&](std::int32_t slot, double value, const Stats& add) {
      Scan& sc = scan_[static_cast<std::size_t>(slot)];
      Search& search = searches[static_cast<std::size_t>(slot)];
      if (sc.has_last && value != sc.last) {
        double threshold = 0.5 * (sc.last + value);
        if (threshold == value) threshold = sc.last;
        consider(search, j, stats_[static_cast<std::size_t>(search.node)], sc.left, threshold);
      }
      sc.left += add;
      sc.last = value;
      sc.has_last = true;
    };
    const auto add_zero = [&](std::int32_t slot) {
      Scan& sc = scan_[static_cast<std::size_t>(slot)];
      sc.zero_done = true;
      const Stats& total =
          stats_[static_cast<std::size_t>(searches[static_cast<std::size_t>(slot)].node)];
      if (total.count > sc.nonzero.count) advance(slot, 0.0, total - sc.nonzero);
    };

    for (const auto& e : col) {
      const std::int32_t slot = slot_of_row(e.row);
      if (slot < 0 || !scan_[static_cast<std::size_t>(slot)].usable) continue;
      if (e.value > 0.0 && !scan_[static_cast<std::size_t>(slot)].zero_done) add_zero(slot);
      advance(slot, e.value, row_stats(e.row));
    }
    for (std::int32_t slot : slots) {
      if (scan_[static_cast<std::size_t>(slot)].usable &&
          !scan_[static_cast<std::size_t>(slot)].zero_done) {
        add_zero(slot);
      }
    }
  }

  void consider(Search& search, std::size_t feature, const Stats& total, const Stats& left,
                double threshold) {
    const Stats right = total - left;
    if (!valid_children(left, right)) return;
    const double gain = split_gain(total, left, right);
    BestSplit& best = search.best;
    if (gain > best.gain) {
      best.gain = gain;
      best.feature = static_cast<std::int32_t>(feature);
      best.threshold = threshold;
    }
  }

  const Dataset& data_;
  TreeTargets targets_;
  TreeOptions options_;
  std::uint64_t seed_;
  std::size_t dim_;
  ActiveColumns active_;
  std::size_t active_row_count_at_filter_ = 0;

  std::vector<TreeNode> nodes_;
  std::vector<Stats> stats_;
  std::vector<std::int32_t> node_of_row_;
  std::vector<std::uint32_t> active_rows_;
  std::vector<std::int32_t> slot_of_node_;
  std::vector<Scan> scan_;
  std::vector<std::uint64_t> wanted_;
  std::uint64_t stamp_ = 0;
};

}  // namespace

GrownTree grow_tree(const Dataset& data, const ColumnStore& columns,
                    const TreeTargets& targets, const TreeOptions& options,
                    std::uint64_t seed) {
  if (columns.rows() != data.size() || columns.dim() != data.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "column store does not match the dataset");
  }
  return TreeBuilder(data, columns, targets, options, seed).grow();
}

}  // namespace vandalstack
