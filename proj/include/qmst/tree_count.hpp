#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>

#include "qmst/graph.hpp"

namespace qmst {

/// Exact number of spanning trees.
using TreeCount = boost::multiprecision::cpp_int;

/// Kirchhoff: any cofactor of the Laplacian, via fraction-free elimination.
/// Disconnected graphs count 0.
TreeCount count_matrix_tree(const Graph& g);
TreeCount count_matrix_tree(const Multigraph& g);

inline constexpr std::size_t kDeletionContractionMaxEdges = 24;

/// tau(G) = tau(G-e) + tau(G/e) with memoisation. Exponential; guarded.
TreeCount count_deletion_contraction(const Multigraph& g,
                                     std::size_t max_edges = kDeletionContractionMaxEdges);
TreeCount count_deletion_contraction(const Graph& g,
                                     std::size_t max_edges = kDeletionContractionMaxEdges);

/**
   tau(A(k,n)) = k tau(A(k,n-1)) - tau(A(k,n-2)). The two seeds tau(A(k,1))
   and tau(A(k,2)) come from the matrix-tree count of concrete accordions.
 */
TreeCount count_accordion_recursive(int k, int n);

/**
   The surd closed forms for k = 3 and k = 4. With a + b = k and ab = 1 both
   read tau(A(k,n)) = (a^{n+1} - b^{n+1}) / (a - b), i.e. the Lucas sequence
   U_{n+1}(k, 1); that is evaluated exactly by 2x2 integer matrix powers.
 */
TreeCount count_accordion_closed_form(int k, int n);

}  // namespace qmst
