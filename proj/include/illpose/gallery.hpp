// SPDX-License-Identifier: MIT
#ifndef ILLPOSE_GALLERY_HPP
#define ILLPOSE_GALLERY_HPP

#include <string>
#include <vector>

#include "illpose/multiplier.hpp"
#include "illpose/types.hpp"

namespace illpose {

/// Collocation matrix of the Riemann-Liouville integration operator of
/// integer order m on the unit interval. Quadrature nodes are the cell
/// midpoints t_j = (j-1/2)h, collocation points the cell right edges
/// s_i = i*h, h = 1/N, so every kernel evaluation stays inside the
/// integration triangle and the m=1 matrix is the exact cell-sum operator.
OperatorMatrix build_integration(int m, const GridSpec& grid);

/// Diagonal surrogate carrying the known singular-value asymptotics of the
/// Sobolev embedding of order k. dim=1 gives s_n = n^{-k}; dim=2 gives the
/// sorted values (1+i^2+j^2)^{-k/2} over the N x N index square.
OperatorMatrix build_embedding_surrogate(int k, int dim, int N);

/// Moment operator z |-> (int_0^1 t^{j-1} z dt)_j in the orthonormal shifted
/// Legendre basis on the domain side; entries are exact Gauss-Legendre
/// integrals of polynomial integrands.
OperatorMatrix build_hausdorff(int rows, const GridSpec& grid);

/// Mixed second-order integration over the unit square: the Kronecker square
/// of build_integration(1, N). Dimension N^2 x N^2.
OperatorMatrix build_mixed_integration(int N);

/// Diagonal multiplication operator diag(f(t_1), ..., f(t_N)) on the grid
/// nodes; flagged noncompact_model.
OperatorMatrix build_multiplication(const MultiplierSpec& f, const GridSpec& grid);

/// Midpoint nodes of the grid (uniform cells on [0,1] or [0,T]).
std::vector<double> grid_nodes(const GridSpec& grid);

/// Resolves a stable gallery identifier at discretization level N.
/// Identifiers: "J^m:<m>", "E^k:<k>:<dim>", "BH", "J2", "M:<fname>".
OperatorMatrix build_gallery(const std::string& identifier, int N);

/// All identifier stems accepted by build_gallery, for error messages.
std::vector<std::string> gallery_identifier_forms();

}  // namespace illpose

#endif
