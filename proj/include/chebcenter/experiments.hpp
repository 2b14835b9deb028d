#pragma once

#include <span>
#include <string>
#include <vector>

#include "chebcenter/centers.hpp"

namespace chebcenter {

// Finite slices of the two c0 hyperplanes
//   X = { x : sum_n 2^-n (x_{2n} - x_{2n-1}) = 0 }
//   Y = { x : sum_n 2^-n x_{2n-1} = 0 and sum_n 2^-n x_{2n} = 0 }
// with the sup norm.
enum class TruncationVariant { XSpace, YSpace };

const char* to_string(TruncationVariant v);

// LInf space of even dimension d with the variant's constraint rows (the
// coefficients 2^-1 .. 2^-(d/2) are exact binary fractions). The YSpace slice
// with d = 2 is the zero space {0}.
NormSpec build_truncation(TruncationVariant variant, int d);

struct SweepRecord {
  int d = 0;
  double radius = 0.0;
  Vec center;
  bool certified = false;
};

struct SweepResult {
  TruncationVariant variant = TruncationVariant::XSpace;
  std::vector<SweepRecord> records;  // sorted by d
  bool non_increasing = true;
};

inline constexpr double kSweepMonotoneTol = 2e-9;

// Zero-pads the seed to every requested dimension and solves the constrained
// LInf Chebyshev center LP in each slice. Exploratory output: says nothing
// about the infinite-dimensional limit.
SweepResult radius_sweep(TruncationVariant variant, std::span<const Vec> seed,
                         std::span<const int> dims, double tol = 1e-9);

std::string sweep_csv(const SweepResult& sweep);
std::string sweep_svg(const SweepResult& sweep);

}  // namespace chebcenter
