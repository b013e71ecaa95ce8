#include "cumulant/hoeffding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

namespace cumulant {

namespace {

std::uint32_t full_mask(int n) { return (1u << n) - 1; }

std::vector<int> axes_of(SubsetMask subset) {
  std::vector<int> axes;
  for (int i = 0; subset >> i; ++i) {
    if (subset & (1u << i)) axes.push_back(i);
  }
  return axes;
}

}  // namespace

JointDistributionModel JointDistributionModel::independent(std::vector<DistributionModel> marginals) {
  std::vector<JointDistributionModel> groups;
  for (auto& m : marginals) groups.push_back(comonotone(std::move(m), 1));
  return independent_groups(std::move(groups));
}

JointDistributionModel JointDistributionModel::independent_groups(
    std::vector<JointDistributionModel> groups) {
  if (groups.empty()) throw ModelError("independent model needs at least one group");
  JointDistributionModel j;
  j.kind_ = JointKind::independent;
  for (const auto& g : groups) {
    j.n_ += g.n_;
    j.marginals_.insert(j.marginals_.end(), g.marginals_.begin(), g.marginals_.end());
  }
  if (j.n_ > 30) throw SizeLimitError("too many variables");
  j.groups_ = std::move(groups);
  return j;
}

JointDistributionModel JointDistributionModel::comonotone(DistributionModel d, int n) {
  if (n < 1 || n > 30) throw ModelError("comonotone model needs 1 <= n <= 30");
  JointDistributionModel j;
  j.kind_ = JointKind::comonotone;
  j.n_ = n;
  j.marginals_.assign(static_cast<std::size_t>(n), std::move(d));
  return j;
}

JointDistributionModel JointDistributionModel::empirical(std::vector<std::vector<double>> rows) {
  if (rows.empty()) throw ModelError("empirical joint model needs at least one row");
  const std::size_t n = rows.front().size();
  if (n < 1 || n > 30) throw ModelError("empirical rows need 1..30 columns");
  std::vector<std::vector<double>> columns(n);
  for (const auto& row : rows) {
    if (row.size() != n) throw ModelError("empirical rows must all have the same length");
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(row[i])) throw ModelError("samples must be finite");
      columns[i].push_back(row[i]);
    }
  }
  JointDistributionModel j;
  j.kind_ = JointKind::empirical;
  j.n_ = static_cast<int>(n);
  for (auto& c : columns) j.marginals_.push_back(DistributionModel::empirical_from_samples(std::move(c)));
  j.rows_ = std::move(rows);
  return j;
}

double JointDistributionModel::joint_cdf(std::span<const double> t) const {
  return subset_cdf(full_mask(n_), t);
}

double JointDistributionModel::subset_cdf(SubsetMask subset, std::span<const double> t) const {
  if (static_cast<int>(t.size()) != n_) throw ModelError("point has the wrong dimension");
  if (subset == 0) return 1.0;
  if (subset > full_mask(n_)) throw ModelError("subset mask out of range");
  switch (kind_) {
    case JointKind::comonotone: {
      double lowest = INFINITY;
      for (int i : axes_of(subset)) lowest = std::min(lowest, t[i]);
      return marginals_.front().cdf(lowest);
    }
    case JointKind::empirical: {
      const auto axes = axes_of(subset);
      std::size_t below = 0;
      for (const auto& row : rows_) {
        bool all = true;
        for (int i : axes) all = all && row[i] <= t[i];
        below += all;
      }
      return static_cast<double>(below) / static_cast<double>(rows_.size());
    }
    case JointKind::independent: {
      double product = 1.0;
      int offset = 0;
      for (const auto& g : groups_) {
        const SubsetMask local = (subset >> offset) & full_mask(g.n_);
        if (local) product *= g.subset_cdf(local, t.subspan(offset, g.n_));
        offset += g.n_;
      }
      return product;
    }
  }
  return 0.0;
}

std::vector<std::vector<double>> JointDistributionModel::draw(std::size_t count,
                                                              std::uint64_t seed) const {
  std::vector<std::vector<double>> out(count, std::vector<double>(n_));
  switch (kind_) {
    case JointKind::comonotone: {
      const auto xs = marginals_.front().draw(count, seed);
      for (std::size_t r = 0; r < count; ++r) std::fill(out[r].begin(), out[r].end(), xs[r]);
      break;
    }
    case JointKind::empirical: {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, rows_.size() - 1);
      for (auto& row : out) row = rows_[pick(rng)];
      break;
    }
    case JointKind::independent: {
      std::seed_seq seq{seed};
      std::vector<std::uint64_t> seeds(groups_.size());
      seq.generate(seeds.begin(), seeds.end());
      int offset = 0;
      for (std::size_t g = 0; g < groups_.size(); ++g) {
        const auto part = groups_[g].draw(count, seeds[g]);
        for (std::size_t r = 0; r < count; ++r) {
          std::copy(part[r].begin(), part[r].end(), out[r].begin() + offset);
        }
        offset += groups_[g].n_;
      }
      break;
    }
  }
  return out;
}

MarginalCdf::MarginalCdf(const JointDistributionModel& joint, SubsetMask subset)
    : joint_(&joint), subset_(subset), axes_(axes_of(subset)) {
  if (subset == 0 || subset > full_mask(joint.dimension())) {
    throw ModelError("marginal subset must be a nonempty subset of the coordinates");
  }
}

double MarginalCdf::operator()(std::span<const double> t) const {
  if (t.size() != axes_.size()) throw ModelError("marginal CDF called with the wrong arity");
  std::vector<double> full(static_cast<std::size_t>(joint_->dimension()), INFINITY);
  for (std::size_t i = 0; i < axes_.size(); ++i) full[axes_[i]] = t[i];
  return joint_->subset_cdf(subset_, full);
}

MarginalCdf marginal_cdf(const JointDistributionModel& joint, SubsetMask subset) {
  return MarginalCdf(joint, subset);
}

std::size_t Tensor::stride(std::size_t axis) const {
  std::size_t s = 1;
  for (std::size_t a = axis + 1; a < dims.size(); ++a) s *= dims[a];
  return s;
}

namespace {

void check_dimension(const JointDistributionModel& joint) {
  if (joint.dimension() > kMaxJointDimension) {
    throw SizeLimitError("tensor-grid integration supports at most " +
                         std::to_string(kMaxJointDimension) + " variables");
  }
}

std::size_t default_points(int n) {
  switch (n) {
    case 1: return 2001;
    case 2: return 201;
    default: return 101;
  }
}

std::size_t node_index(const TensorAxis& axis, double x) {
  const double r = std::round((x - axis.lo) / axis.step);
  return static_cast<std::size_t>(std::clamp(r, 0.0, static_cast<double>(axis.points - 1)));
}

void check_budget(std::size_t doubles, std::size_t budget) {
  if (doubles > budget / sizeof(double)) {
    throw SizeLimitError("tensor grid exceeds the memory budget of " + std::to_string(budget) +
                         " bytes");
  }
}

std::vector<std::size_t> subset_dims(std::span<const TensorAxis> axes, SubsetMask subset) {
  std::vector<std::size_t> dims;
  for (int i : axes_of(subset)) dims.push_back(axes[i].points);
  return dims;
}

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

// Joint CDF of the snapped sample on every node: counts then prefix sums.
Tensor empirical_full_cdf(const JointDistributionModel& joint, std::span<const TensorAxis> axes) {
  const auto n = static_cast<std::size_t>(joint.dimension());
  Tensor t{subset_dims(axes, full_mask(joint.dimension())), {}};
  t.data.assign(product(t.dims), 0.0);
  const double weight = 1.0 / static_cast<double>(joint.rows().size());
  for (const auto& row : joint.rows()) {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < n; ++i) flat += node_index(axes[i], row[i]) * t.stride(i);
    t.data[flat] += weight;
  }
  for (std::size_t axis = 0; axis < n; ++axis) {
    const std::size_t stride = t.stride(axis);
    const std::size_t len = t.dims[axis];
    for (std::size_t flat = 0; flat < t.data.size(); ++flat) {
      if ((flat / stride) % len != 0) t.data[flat] += t.data[flat - stride];
    }
  }
  return t;
}

// F_I sampled on the sub-grid of the axes in I.
Tensor sample_subset(const JointDistributionModel& joint, std::span<const TensorAxis> axes,
                     SubsetMask subset, const Tensor* empirical_full) {
  const auto sub_axes = axes_of(subset);
  Tensor t{subset_dims(axes, subset), {}};
  t.data.resize(product(t.dims));
  std::vector<double> point(axes.size());
  std::vector<std::size_t> idx(sub_axes.size());
  for (std::size_t flat = 0; flat < t.data.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t a = sub_axes.size(); a-- > 0;) {
      idx[a] = rem % t.dims[a];
      rem /= t.dims[a];
    }
    if (empirical_full) {
      // Complementary coordinates at the top node, which dominates every sample.
      std::size_t full_flat = 0;
      std::size_t s = 0;
      for (std::size_t i = 0; i < axes.size(); ++i) {
        const bool inside = s < sub_axes.size() && sub_axes[s] == static_cast<int>(i);
        full_flat += (inside ? idx[s++] : axes[i].points - 1) * empirical_full->stride(i);
      }
      t.data[flat] = empirical_full->data[full_flat];
    } else {
      for (std::size_t i = 0; i < axes.size(); ++i) point[i] = axes[i].hi();
      for (std::size_t a = 0; a < sub_axes.size(); ++a) point[sub_axes[a]] = axes[sub_axes[a]].node(idx[a]);
      t.data[flat] = joint.subset_cdf(subset, point);
    }
  }
  return t;
}

struct SampledJoint {
  std::vector<Tensor> subsets;  // index = subset mask
};

SampledJoint sample_all_subsets(const JointDistributionModel& joint, std::span<const TensorAxis> axes,
                                std::size_t budget) {
  const int n = joint.dimension();
  std::size_t doubles = 0;
  for (SubsetMask s = 1; s <= full_mask(n); ++s) doubles += product(subset_dims(axes, s));
  check_budget(doubles, budget);

  SampledJoint out;
  out.subsets.resize(full_mask(n) + 1);
  std::optional<Tensor> full;
  if (joint.kind() == JointKind::empirical) full = empirical_full_cdf(joint, axes);
  for (SubsetMask s = 1; s <= full_mask(n); ++s) {
    out.subsets[s] = sample_subset(joint, axes, s, full ? &*full : nullptr);
  }
  return out;
}

// Tensor trapezoid: sum over nodes of prod_i w_i(j_i) * integrand(node).
template <class Integrand>
double integrate_box(std::span<const TensorAxis> axes, Integrand&& integrand) {
  const std::size_t n = axes.size();
  std::vector<std::vector<double>> weights(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    weights[i].assign(axes[i].points, axes[i].step);
    weights[i].front() *= 0.5;
    weights[i].back() *= 0.5;
    total *= axes[i].points;
  }
  std::vector<std::size_t> idx(n, 0);
  double sum = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) w *= weights[i][idx[i]];
    sum += w * integrand(std::span<const std::size_t>(idx));
    for (std::size_t i = n; i-- > 0;) {
      if (++idx[i] < axes[i].points) break;
      idx[i] = 0;
    }
  }
  return sum;
}

double subset_value(const Tensor& t, SubsetMask subset, std::span<const std::size_t> idx) {
  std::size_t flat = 0;
  std::size_t a = 0;
  for (int i : axes_of(subset)) flat += idx[i] * t.stride(a++);
  return t.data[flat];
}

}  // namespace

std::vector<TensorAxis> integration_grid(const JointDistributionModel& joint,
                                         const JointGridOptions& options) {
  check_dimension(joint);
  const std::size_t points =
      options.points_per_axis ? options.points_per_axis : default_points(joint.dimension());
  if (points < 5) throw ModelError("points_per_axis must be at least 5");
  std::vector<TensorAxis> axes;
  for (int i = 0; i < joint.dimension(); ++i) {
    SupportBounds box{};
    if (joint.kind() == JointKind::empirical) {
      const auto xs = joint.marginal(i).samples();
      const double range = xs.back() - xs.front();
      const double slack = (range > 0.0 ? range : 1.0) / static_cast<double>(points - 3);
      box = {xs.front() - slack, xs.back() + slack};
    } else {
      box = truncate_support(joint.marginal(i), options.eps_tail);
    }
    axes.push_back({box.lo, (box.hi - box.lo) / static_cast<double>(points - 1), points});
  }
  return axes;
}

std::vector<std::vector<double>> snapped_rows(const JointDistributionModel& joint,
                                              std::span<const TensorAxis> axes) {
  if (joint.kind() != JointKind::empirical) throw ModelError("snapping applies to empirical models");
  if (axes.size() != static_cast<std::size_t>(joint.dimension())) throw ModelError("axis count mismatch");
  auto rows = joint.rows();
  for (auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = axes[i].node(node_index(axes[i], row[i]));
  }
  return rows;
}

MultiIndexCumulative::MultiIndexCumulative(const JointDistributionModel& joint,
                                           const JointGridOptions& options)
    : axes_(integration_grid(joint, options)), budget_(options.memory_budget_bytes) {
  const SubsetMask full = full_mask(joint.dimension());
  check_budget(2 * product(subset_dims(axes_, full)), budget_);
  if (joint.kind() == JointKind::empirical) {
    base_ = empirical_full_cdf(joint, axes_);
  } else {
    base_ = sample_subset(joint, axes_, full, nullptr);
  }
}

Tensor MultiIndexCumulative::level(std::span<const int> k, std::span<const int> axis_order) const {
  const std::size_t n = axes_.size();
  if (k.size() != n) throw ModelError("multi-index length must equal the dimension");
  int order = 0;
  for (int ki : k) {
    if (ki < 0) throw ModelError("multi-index entries must be nonnegative");
    order += ki;
  }
  if (order > kMaxJointIteratedOrder) {
    throw SizeLimitError("multivariate iterated integrals support total order <= " +
                         std::to_string(kMaxJointIteratedOrder));
  }
  std::vector<int> sequence(n);
  std::iota(sequence.begin(), sequence.end(), 0);
  if (!axis_order.empty()) {
    sequence.assign(axis_order.begin(), axis_order.end());
    auto sorted = sequence;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) {
      if (sorted.size() != n || sorted[i] != static_cast<int>(i)) {
        throw ModelError("axis order must be a permutation of the axes");
      }
    }
  }

  Tensor out = base_;
  for (int axis : sequence) {
    const std::size_t stride = out.stride(static_cast<std::size_t>(axis));
    const std::size_t len = out.dims[axis];
    const double half_step = 0.5 * axes_[axis].step;
    for (int rep = 0; rep < k[axis]; ++rep) {
      for (std::size_t start = 0; start < out.data.size(); ++start) {
        if ((start / stride) % len != 0) continue;  // first node of a line
        double previous = out.data[start];
        out.data[start] = 0.0;
        for (std::size_t j = 1; j < len; ++j) {
          const std::size_t at = start + j * stride;
          const double current = out.data[at];
          out.data[at] = out.data[at - stride] + half_step * (previous + current);
          previous = current;
        }
      }
    }
  }
  return out;
}

double MultiIndexCumulative::at_corner(std::span<const int> k, std::span<const int> axis_order) const {
  return level(k, axis_order).data.back();
}

double multivariate_iterated(const JointDistributionModel& joint, std::span<const int> k,
                             const JointGridOptions& options, std::span<const int> axis_order) {
  return MultiIndexCumulative(joint, options).at_corner(k, axis_order);
}

double hoeffding_covariance(const JointDistributionModel& joint, const JointGridOptions& options) {
  if (joint.dimension() != 2) throw ModelError("Hoeffding's formula needs exactly two variables");
  const auto axes = integration_grid(joint, options);
  const auto sampled = sample_all_subsets(joint, axes, options.memory_budget_bytes);
  const Tensor& F1 = sampled.subsets[0b01];
  const Tensor& F2 = sampled.subsets[0b10];
  const Tensor& F12 = sampled.subsets[0b11];
  return integrate_box(axes, [&](std::span<const std::size_t> idx) {
    return F12.data[idx[0] * F12.dims[1] + idx[1]] - F1.data[idx[0]] * F2.data[idx[1]];
  });
}

double block_fang_cumulant(const JointDistributionModel& joint, int n, const JointGridOptions& options) {
  if (n != 2 && n != 3) throw SizeLimitError("block_fang_cumulant supports n in {2, 3}");
  if (joint.dimension() != n) throw ModelError("block_fang_cumulant: n must equal the model dimension");
  const auto axes = integration_grid(joint, options);
  const auto sampled = sample_all_subsets(joint, axes, options.memory_budget_bytes);

  struct Term {
    double mobius;
    std::vector<SubsetMask> blocks;
  };
  std::vector<Term> terms;
  for_each_partition(n, [&](const SetPartition& pi) {
    Term t{static_cast<double>(mobius_to_top(pi)), {}};
    for (const auto& block : pi.blocks()) {
      SubsetMask m = 0;
      for (int e : block) m |= 1u << (e - 1);
      t.blocks.push_back(m);
    }
    terms.push_back(std::move(t));
  });

  const double integral = integrate_box(axes, [&](std::span<const std::size_t> idx) {
    double sum = 0.0;
    for (const auto& t : terms) {
      double product = t.mobius;
      for (SubsetMask b : t.blocks) product *= subset_value(sampled.subsets[b], b, idx);
      sum += product;
    }
    return sum;
  });
  return (n % 2 == 0) ? integral : -integral;
}

double comonotone_reduction_check(const DistributionModel& d, int n,
                                  const JointGridOptions& joint_options,
                                  const GridOptions& grid_options) {
  if (n != 2 && n != 3) throw SizeLimitError("comonotone_reduction_check supports n in {2, 3}");
  const double multivariate = block_fang_cumulant(JointDistributionModel::comonotone(d, n), n, joint_options);
  const double simplex = cumulants_via_theorem1(d, n, grid_options)[n];
  return std::abs(multivariate - simplex);
}

JointDistributionModel read_joint_samples_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    bool numeric = true;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      auto comma = line.find(',', pos);
      if (comma == std::string::npos) comma = line.size();
      std::string_view token(line.data() + pos, comma - pos);
      while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
      while (!token.empty() && (token.back() == ' ' || token.back() == '\t')) token.remove_suffix(1);
      double v = 0.0;
      const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
      if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size() ||
          !std::isfinite(v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
      pos = comma + 1;
    }
    if (!numeric) {
      if (rows.empty() && no == 1) continue;  // header
      throw ParseError(path.string() + ":" + std::to_string(no) + ": expected numeric columns");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(path.string() + ":" + std::to_string(no) + ": inconsistent column count");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path.string() + ": no sample rows");
  return JointDistributionModel::empirical(std::move(rows));
}

}  // namespace cumulant
