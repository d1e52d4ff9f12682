#pragma once

#include <vector>

#include "qlax/exactfield/gaussian_rational.hpp"

namespace qlax {

using ExactRow = std::vector<GaussianRational>;

/// Basis of the right nullspace of a dense matrix over Q(i), by exact row reduction.
std::vector<ExactRow> nullspace(std::vector<ExactRow> rows, std::size_t cols);

}  // namespace qlax
