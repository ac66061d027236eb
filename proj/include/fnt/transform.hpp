#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "fnt/basis1d.hpp"
#include "fnt/multiindex.hpp"
#include "fnt/nodes.hpp"

namespace fnt {

struct PlanOptions {
  // replace the triangular substitutions of the forward transform by
  // multiplications with per-axis triangular inverses (computed at plan time)
  bool precompute_inverses = false;
};

struct Workspace {
  std::vector<double> a, b;
};

// Precomputed machinery for one lower set / grid / basis combination: the
// three projection families, per-axis triangular factors, the nested-block
// selection maps every sweep needs, and the rotation permutations used by
// differentiation. Immutable once built; transforms are reentrant when each
// caller owns its Workspace.
class TransformPlan {
 public:
  const DownwardClosedSet& set() const { return *set_; }
  const std::shared_ptr<const DownwardClosedSet>& set_ptr() const { return set_; }
  const NonTensorialGrid& grid() const { return grid_; }
  BasisKind kind() const { return kind_; }
  const PlanOptions& options() const { return opts_; }

  int dim() const { return set_->dim(); }
  std::int64_t size() const { return set_->size(); }

  const TubeProjections& tubes() const { return tubes_; }
  const FiberProjections& fibers() const { return fibers_; }
  const FiberTubeProjections& fiber_tubes() const { return fiber_tubes_; }
  std::int64_t tube_norm() const { return tube_norm_; }
  double carry_count() const;

  const AxisBasis& axis_basis(int axis) const;  // axes are 1-based

  // true when every selection map on the axis is a plain prefix (weaker than
  // identity only when nested blocks shrink)
  bool selection_maps_all_prefix(int axis) const;

  // rotation permutation used for differentiation along the axis; empty means
  // identity (always the case for the last axis)
  const std::vector<std::int64_t>& diff_permutation(int axis) const;
  const std::vector<int>& diff_tube_sizes(int axis) const;

  // prefix sums of the tube-projection rows: child offsets per tree depth,
  // element offsets at the last depth (shared by evaluation walks)
  const std::vector<std::vector<std::int64_t>>& level_offsets() const { return level_offsets_; }

 private:
  TransformPlan() = default;

  friend TransformPlan plan(const NonTensorialGrid&, BasisKind, PlanOptions);
  friend void fnt_forward(const TransformPlan&, std::span<const double>, std::span<double>,
                          Workspace&);
  friend void fnt_inverse(const TransformPlan&, std::span<const double>, std::span<double>,
                          Workspace&);
  friend void diff_coeffs(const TransformPlan&, std::span<const double>, std::span<double>, int,
                          Workspace&);

  struct FiberChain {
    std::int64_t rank_off;  // first coefficient of the fiber
    std::int64_t sub_off;   // first sub-block in the axis size row
    std::int32_t nblocks;
    std::int64_t pair_off;  // first (l,s) selection-map slot, l(l-1)/2+s layout
  };

  struct AxisSweep {
    std::vector<FiberChain> fibers;
    std::vector<std::int64_t> sub_sizes;  // fiber row of the next level
    std::vector<std::int64_t> sub_offs;   // absolute offset of each sub-block
    std::vector<std::int64_t> pair_refs;  // offset into gather_idx, -1 = prefix
    std::vector<std::int32_t> gather_idx;
    bool all_prefix = false;
  };

  struct DiffAxis {
    std::vector<std::int64_t> perm;  // rotated position -> original position
    std::vector<int> tube_sizes;     // tube row of the rotated set
  };

  enum class Mode { apply, solve };

  void run_tube_axis(const Matrix& m, Triangle shape, Mode mode, const double* in,
                     double* out) const;
  void run_block_axis(int axis0, const Matrix& m, Triangle shape, Mode mode, const double* in,
                      double* out) const;
  void run_axis(int axis0, const Matrix& m, Triangle shape, Mode mode, const double* in,
                double* out) const;

  std::shared_ptr<const DownwardClosedSet> set_;
  NonTensorialGrid grid_;
  BasisKind kind_ = BasisKind::newton;
  PlanOptions opts_;
  TubeProjections tubes_;
  FiberProjections fibers_;
  FiberTubeProjections fiber_tubes_;
  std::int64_t tube_norm_ = 0;
  std::vector<AxisBasis> bases_;
  std::vector<Matrix> lower_inv_, upper_inv_;  // only with precompute_inverses
  std::vector<AxisSweep> sweeps_;              // axes 1..m-1
  std::vector<DiffAxis> diff_;                 // axes 1..m
  std::vector<std::vector<std::int64_t>> level_offsets_;
};

TransformPlan plan(const NonTensorialGrid& grid, BasisKind kind, PlanOptions opts = {});

// values at the grid -> coefficients
void fnt_forward(const TransformPlan& p, std::span<const double> values, std::span<double> out,
                 Workspace& ws);
std::vector<double> fnt_forward(const TransformPlan& p, std::span<const double> values);

// coefficients -> values at the grid
void fnt_inverse(const TransformPlan& p, std::span<const double> coeffs, std::span<double> out,
                 Workspace& ws);
std::vector<double> fnt_inverse(const TransformPlan& p, std::span<const double> coeffs);

// coefficients of the partial derivative along one axis, same basis
void diff_coeffs(const TransformPlan& p, std::span<const double> coeffs, std::span<double> out,
                 int axis, Workspace& ws);
std::vector<double> diff_coeffs(const TransformPlan& p, std::span<const double> coeffs, int axis);

// y_l = sum_{s<=l} L(l,s) * (x_s gathered onto block l's index set), blocks
// nested downward: sizes must not increase and tails must embed rightward
std::vector<double> lower_block_product(const Matrix& l, std::span<const double> x,
                                        const std::vector<std::int64_t>& sizes,
                                        const std::vector<TubeProjections>& tails);

}  // namespace fnt
