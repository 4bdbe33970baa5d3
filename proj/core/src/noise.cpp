// SPDX-License-Identifier: Apache-2.0
#include "sllb/noise.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace sllb {

namespace {

// SplitMix64 finalizer: full-avalanche 64-bit mix.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based key: chained mixing of seed, path index, step, and lane.
std::uint64_t key(std::uint64_t seed, std::uint64_t path, std::uint64_t step,
                  std::uint64_t lane) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ path);
  h = mix64(h ^ step);
  h = mix64(h ^ lane);
  return h;
}

double to_unit_open(std::uint64_t bits) {
  // (0, 1]: the +1 keeps the log argument of Box-Muller away from zero.
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

double to_unit_halfopen(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
}

// Snap to the 2^-40 grid. With increments below 1 in magnitude and fewer
// than 2^13 of them per path, every partial sum is exactly representable,
// so regrouping sums across coarsening levels cannot change a single bit.
double quantize(double x) { return std::ldexp(std::nearbyint(std::ldexp(x, 40)), -40); }

} // namespace

NoisePath generate_path(std::uint64_t seed, std::uint64_t path_index,
                        double k_fine, int n_fine) {
  if (!(k_fine > 0.0)) throw std::invalid_argument("generate_path: k_fine must be > 0");
  if (n_fine < 1) throw std::invalid_argument("generate_path: n_fine must be >= 1");

  NoisePath path{seed, path_index, k_fine, n_fine, {}};
  path.increments.resize(n_fine);
  const double scale = std::sqrt(k_fine);
  for (int n = 0; n < n_fine; ++n) {
    const double u1 = to_unit_open(key(seed, path_index, static_cast<std::uint64_t>(n), 0));
    const double u2 = to_unit_halfopen(key(seed, path_index, static_cast<std::uint64_t>(n), 1));
    const double z = std::sqrt(-2.0 * std::log(u1)) *
                     std::cos(2.0 * std::numbers::pi * u2);
    path.increments[n] = quantize(scale * z);
  }
  return path;
}

std::vector<double> coarsen(const std::vector<double>& increments, int factor) {
  if (factor < 1) throw std::invalid_argument("coarsen: factor must be >= 1");
  const int n = static_cast<int>(increments.size());
  if (n % factor != 0)
    throw std::invalid_argument("coarsen: factor does not divide the step count");
  std::vector<double> out(n / factor);
  for (int j = 0; j < n / factor; ++j) {
    double sum = 0.0;  // left-to-right; exact for grid-aligned increments
    for (int i = 0; i < factor; ++i) sum += increments[j * factor + i];
    out[j] = sum;
  }
  return out;
}

std::vector<double> coarsen(const NoisePath& path, int factor) {
  return coarsen(path.increments, factor);
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  if (!in) throw std::runtime_error("load_path: truncated stream");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

} // namespace

void dump_path(const NoisePath& path, std::ostream& out) {
  put_u64(out, path.seed);
  put_u64(out, path.path_index);
  put_u64(out, std::bit_cast<std::uint64_t>(path.k_fine));
  put_u64(out, static_cast<std::uint64_t>(path.n_fine));
  for (double d : path.increments) put_u64(out, std::bit_cast<std::uint64_t>(d));
}

NoisePath load_path(std::istream& in) {
  NoisePath path;
  path.seed = get_u64(in);
  path.path_index = get_u64(in);
  path.k_fine = std::bit_cast<double>(get_u64(in));
  path.n_fine = static_cast<int>(get_u64(in));
  if (path.n_fine < 0) throw std::runtime_error("load_path: bad step count");
  path.increments.resize(path.n_fine);
  for (auto& d : path.increments) d = std::bit_cast<double>(get_u64(in));
  return path;
}

} // namespace sllb
