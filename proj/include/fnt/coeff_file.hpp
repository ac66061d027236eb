#pragma once

#include <string>
#include <vector>

#include "fnt/basis1d.hpp"
#include "fnt/multiindex.hpp"
#include "fnt/transform.hpp"

namespace fnt {

// On-disk coefficient container. Binary little-endian layout:
//   magic "FNT1"
//   u32 dimension m, u32 basis kind (0 newton, 1 chebyshev)
//   per axis: u32 node count, then that many f64 nodes
//   per tube row (m rows): u64 length, then that many u32 entries
//   u64 coefficient count, then that many f64 in lex rank order
// The tube rows pin down the index set exactly, so a file is self-contained.
struct CoefficientFile {
  int dim = 0;
  BasisKind kind = BasisKind::newton;
  std::vector<std::vector<double>> axis_nodes;
  TubeProjections tubes;
  std::vector<double> coeffs;
};

void write_coefficient_file(const std::string& path, const CoefficientFile& f);
CoefficientFile read_coefficient_file(const std::string& path);

// rebuilds the index set from the tube rows and plans on it
TransformPlan plan_from_file(const CoefficientFile& f, PlanOptions opts = {});

}  // namespace fnt
