// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace sllb {

/// Brownian increments of a single scalar Wiener process at the finest time
/// resolution of a study. Generation is counter-based: increment n is a pure
/// function of (seed, path_index, n), so any worker can regenerate any path
/// bit-identically regardless of scheduling.
///
/// Increments are snapped to the 2^-40 grid (a relative perturbation around
/// 1e-12, far below statistical resolution). All partial sums of a path then
/// stay exactly representable in double, so coarsening to any nested level
/// is associative and exact to the last ulp.
struct NoisePath {
  std::uint64_t seed = 0;
  std::uint64_t path_index = 0;
  double k_fine = 0.0;
  int n_fine = 0;
  std::vector<double> increments;
};

/// Draw n_fine increments ~ N(0, k_fine). Requires k_fine > 0, n_fine >= 1.
NoisePath generate_path(std::uint64_t seed, std::uint64_t path_index,
                        double k_fine, int n_fine);

/// Sum consecutive groups of `factor` fine increments (left-to-right) into
/// increments at step factor * k_fine. The factor must divide n_fine.
/// Sums are exact: re-coarsening a coarsened sequence equals coarsening
/// directly, bitwise.
std::vector<double> coarsen(const NoisePath& path, int factor);
std::vector<double> coarsen(const std::vector<double>& increments, int factor);

/// Binary dump/load for cross-implementation comparison. Layout: four
/// little-endian 64-bit header words (seed, path_index, k_fine as IEEE
/// double, n_fine), then n_fine little-endian IEEE doubles.
void dump_path(const NoisePath& path, std::ostream& out);
NoisePath load_path(std::istream& in);

} // namespace sllb
