// SPDX-License-Identifier: MIT
#ifndef ILLPOSE_HAUSDORFF_HPP
#define ILLPOSE_HAUSDORFF_HPP

#include "illpose/types.hpp"

namespace illpose {

/// Exact finite section of the simple integration operator in the orthonormal
/// shifted Legendre basis (each column has at most two nonzero entries).
OperatorMatrix build_integration_legendre(int n);

/// Singular values of the section of the composed operator
/// (moments of the antiderivative), rows = n moment rows against n basis
/// functions. The composition decays below double precision well inside the
/// window of interest, so entries and the SVD are carried in __float128 and
/// the values are returned as doubles.
Vector hausdorff_composition_singular_values(int n);

/// Singular values of the Legendre section of the integration operator
/// itself, for ratio baselines in the same frame.
Vector integration_legendre_singular_values(int n);

}  // namespace illpose

#endif
