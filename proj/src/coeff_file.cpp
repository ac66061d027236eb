#include "fnt/coeff_file.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>

#include "fnt/errors.hpp"
#include "fnt/nodes.hpp"

namespace fnt {

static_assert(std::endian::native == std::endian::little,
              "coefficient files are little-endian; big-endian hosts need byte swaps");

namespace {

constexpr char kMagic[4] = {'F', 'N', 'T', '1'};

template <class T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw IoError("coefficient file: truncated");
  return v;
}

}  // namespace

void write_coefficient_file(const std::string& path, const CoefficientFile& f) {
  if (f.dim <= 0) throw ArgumentError("coefficient file: dimension must be positive");
  if (static_cast<int>(f.axis_nodes.size()) != f.dim)
    throw ArgumentError("coefficient file: one node list per axis required");
  if (f.tubes.dim() != f.dim)
    throw ArgumentError("coefficient file: tube rows do not match the dimension");
  if (f.tubes.cardinality() != static_cast<std::int64_t>(f.coeffs.size()))
    throw ArgumentError("coefficient file: payload length does not match the tube rows");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os.write(kMagic, 4);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.dim));
  put<std::uint32_t>(os, f.kind == BasisKind::newton ? 0u : 1u);
  for (const std::vector<double>& nodes : f.axis_nodes) {
    put<std::uint32_t>(os, static_cast<std::uint32_t>(nodes.size()));
    for (double v : nodes) put(os, v);
  }
  for (const std::vector<int>& row : f.tubes.rows) {
    put<std::uint64_t>(os, static_cast<std::uint64_t>(row.size()));
    for (int v : row) put<std::uint32_t>(os, static_cast<std::uint32_t>(v));
  }
  put<std::uint64_t>(os, static_cast<std::uint64_t>(f.coeffs.size()));
  for (double v : f.coeffs) put(os, v);
  os.flush();
  if (!os) throw IoError("failed writing '" + path + "'");
}

CoefficientFile read_coefficient_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path + "'");
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw IoError("'" + path + "' is not a coefficient file (bad magic)");
  CoefficientFile f;
  const std::uint32_t m = get<std::uint32_t>(is);
  if (m == 0 || m > 64) throw IoError("coefficient file: implausible dimension");
  const std::uint32_t kind = get<std::uint32_t>(is);
  if (kind > 1) throw IoError("coefficient file: unknown basis kind");
  f.dim = static_cast<int>(m);
  f.kind = kind == 0 ? BasisKind::newton : BasisKind::chebyshev;
  f.axis_nodes.resize(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    const std::uint32_t count = get<std::uint32_t>(is);
    if (count == 0 || count > (1u << 24)) throw IoError("coefficient file: bad node count");
    f.axis_nodes[i].resize(count);
    for (std::uint32_t k = 0; k < count; ++k) f.axis_nodes[i][k] = get<double>(is);
  }
  f.tubes.rows.resize(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    const std::uint64_t len = get<std::uint64_t>(is);
    if (len > (1ull << 40)) throw IoError("coefficient file: implausible tube row length");
    f.tubes.rows[i].resize(static_cast<std::size_t>(len));
    for (std::uint64_t k = 0; k < len; ++k) {
      const std::uint32_t v = get<std::uint32_t>(is);
      if (v == 0 || v > static_cast<std::uint32_t>(std::numeric_limits<int>::max()))
        throw IoError("coefficient file: tube entries must be positive");
      f.tubes.rows[i][static_cast<std::size_t>(k)] = static_cast<int>(v);
    }
  }
  const std::uint64_t count = get<std::uint64_t>(is);
  if (count != static_cast<std::uint64_t>(f.tubes.cardinality()))
    throw IoError("coefficient file: payload length does not match the tube rows");
  f.coeffs.resize(static_cast<std::size_t>(count));
  for (std::uint64_t k = 0; k < count; ++k)
    f.coeffs[static_cast<std::size_t>(k)] = get<double>(is);
  is.peek();
  if (!is.eof()) throw IoError("coefficient file: trailing data");
  return f;
}

TransformPlan plan_from_file(const CoefficientFile& f, PlanOptions opts) {
  auto set = std::make_shared<DownwardClosedSet>(DownwardClosedSet::from_tubes(f.tubes));
  std::vector<AxisNodes> axes;
  axes.reserve(f.axis_nodes.size());
  for (const std::vector<double>& pts : f.axis_nodes)
    axes.push_back(AxisNodes{pts, {}, AxisNodes::Family::custom});
  return plan(make_grid(std::move(set), std::move(axes)), f.kind, opts);
}

}  // namespace fnt
