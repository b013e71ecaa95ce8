#pragma once

// Joint distribution functions and the tensor-grid integrals built on them:
// the multivariate iterated-integral recursion, Hoeffding's covariance
// formula, and the partition-lattice cumulant formula of Block and Fang.

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cumulant/dists.hpp"
#include "cumulant/volterra.hpp"

namespace cumulant {

/// Bit i-1 set iff variable i belongs to the subset.
using SubsetMask = std::uint32_t;

enum class JointKind { independent, comonotone, empirical };

class JointDistributionModel {
 public:
  /// Mutually independent coordinates with the given marginals.
  static JointDistributionModel independent(std::vector<DistributionModel> marginals);
  /// Concatenation of mutually independent groups (each may be dependent).
  static JointDistributionModel independent_groups(std::vector<JointDistributionModel> groups);
  /// n copies of one variable: F(t) = F(min_i t_i).
  static JointDistributionModel comonotone(DistributionModel d, int n);
  /// Equally weighted sample vectors.
  static JointDistributionModel empirical(std::vector<std::vector<double>> rows);

  int dimension() const noexcept { return n_; }
  JointKind kind() const noexcept { return kind_; }

  double joint_cdf(std::span<const double> t) const;
  /// F_I((t_i)_{i in I}); entries of t outside I are ignored.
  double subset_cdf(SubsetMask subset, std::span<const double> t) const;

  /// Univariate marginal of coordinate i (0-based).
  const DistributionModel& marginal(int i) const { return marginals_.at(static_cast<std::size_t>(i)); }
  /// Sample rows of an empirical model.
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }

  std::vector<std::vector<double>> draw(std::size_t count, std::uint64_t seed) const;

 private:
  JointDistributionModel() = default;

  JointKind kind_ = JointKind::independent;
  int n_ = 0;
  std::vector<DistributionModel> marginals_;
  std::vector<JointDistributionModel> groups_;  // independent
  std::vector<std::vector<double>> rows_;       // empirical
};

/// F_I as a function of its |I| own coordinates (in increasing index order).
class MarginalCdf {
 public:
  MarginalCdf(const JointDistributionModel& joint, SubsetMask subset);

  int arity() const noexcept { return static_cast<int>(axes_.size()); }
  double operator()(std::span<const double> t) const;

 private:
  const JointDistributionModel* joint_;
  SubsetMask subset_;
  std::vector<int> axes_;
};

/// Marginals are taken structurally (product of group marginals, minimum
/// of the comonotone coordinates, sample counts), which coincides with
/// sending the complementary coordinates to their upper bounds.
MarginalCdf marginal_cdf(const JointDistributionModel& joint, SubsetMask subset);

struct TensorAxis {
  double lo;
  double step;
  std::size_t points;

  double node(std::size_t i) const noexcept { return lo + static_cast<double>(i) * step; }
  double hi() const noexcept { return node(points - 1); }
};

struct JointGridOptions {
  /// Tail level for the upper box corners of non-empirical marginals.
  double eps_tail = 1e-8;
  /// 0 selects 201 for two variables and 101 for three.
  std::size_t points_per_axis = 0;
  std::size_t memory_budget_bytes = std::size_t{512} << 20;
};

inline constexpr int kMaxJointDimension = 3;
inline constexpr int kMaxJointIteratedOrder = 4;

/// Integration box and per-axis grids. Empirical axes span
/// [min - d, max + d] with d equal to one grid step so that every snapped
/// sample sits strictly inside the box.
std::vector<TensorAxis> integration_grid(const JointDistributionModel& joint,
                                         const JointGridOptions& options = {});

/// Empirical rows with every coordinate moved to its nearest grid node.
std::vector<std::vector<double>> snapped_rows(const JointDistributionModel& joint,
                                              std::span<const TensorAxis> axes);

/// Dense row-major tensor (last axis fastest).
struct Tensor {
  std::vector<std::size_t> dims;
  std::vector<double> data;

  std::size_t stride(std::size_t axis) const;
};

/// F^[k_1..k_n] on the tensor grid, built from the sampled joint CDF by
/// running trapezoid integrals along each axis.
class MultiIndexCumulative {
 public:
  MultiIndexCumulative(const JointDistributionModel& joint, const JointGridOptions& options = {});

  std::span<const TensorAxis> axes() const noexcept { return axes_; }
  const Tensor& base() const noexcept { return base_; }
  /// Applies the k_i-fold integration along axes in `axis_order`
  /// (default 0..n-1).
  Tensor level(std::span<const int> k, std::span<const int> axis_order = {}) const;
  /// level(k) at the upper box corner.
  double at_corner(std::span<const int> k, std::span<const int> axis_order = {}) const;

 private:
  std::vector<TensorAxis> axes_;
  Tensor base_;
  std::size_t budget_;
};

/// F^[k](b) = E prod_i (b_i - X_i)_+^{k_i} / k_i! at the upper box corner b.
double multivariate_iterated(const JointDistributionModel& joint, std::span<const int> k,
                             const JointGridOptions& options = {},
                             std::span<const int> axis_order = {});

/// Cov(X_1, X_2) = int int F(s,t) - F_1(s) F_2(t) ds dt.
double hoeffding_covariance(const JointDistributionModel& joint, const JointGridOptions& options = {});

/// kappa_n(X_1..X_n) = (-1)^n int sum_pi mu(pi, 1_n) prod_{B in pi} F_B, n in {2,3}.
/// n must equal the model dimension.
double block_fang_cumulant(const JointDistributionModel& joint, int n,
                           const JointGridOptions& options = {});

/// |block_fang_cumulant(comonotone(d, n), n) - kappa_n via the ordered simplex|.
double comonotone_reduction_check(const DistributionModel& d, int n,
                                  const JointGridOptions& joint_options = {},
                                  const GridOptions& grid_options = {});

/// CSV, one sample vector per row; a non-numeric first line is a header.
JointDistributionModel read_joint_samples_file(const std::filesystem::path& path);

}  // namespace cumulant
