#pragma once

#include <cstddef>
#include <vector>

#include "regfree/exact.hpp"
#include "regfree/linalg.hpp"

namespace regfree {

// Spectral radius of a non-negative matrix with a certified enclosure
// lower <= σ(M) <= upper.
//
// `upper` is a Collatz-Wielandt bound: `certificate` is a strictly positive
// vector x with M x <= upper · x componentwise (checked in exact arithmetic),
// so M^k x <= upper^k x for every k. A nilpotent matrix has σ = 0 exactly; in
// that case `certificate` is empty and `nilpotency_index` is the least p with
// M^p = 0.
struct SpectralEnclosure {
  double estimate = 0;
  Rational lower;
  Rational upper;
  std::vector<Rational> certificate;
  bool nilpotent = false;
  std::size_t nilpotency_index = 0;
};

SpectralEnclosure spectral_radius(const RationalMatrix& m);

// Strongly connected components of the support graph, in reverse topological
// order (sinks first). Used by classification code as well.
std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& successors);

}  // namespace regfree
