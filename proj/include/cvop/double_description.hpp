#pragma once

// Double description sweep: converts {z : a_i^T z >= 0} into generators.
// Practical for the small dimensions this library targets (q + 1 <= 7).

#include "cvop/types.hpp"

namespace cvop {

inline constexpr int kMaxConversionDim = 7;

struct ConeGenerators {
  VecList rays;       // unit length, orthogonal to the lineality space, lex-sorted
  VecList lineality;  // orthonormal basis of the lineality space
};

ConeGenerators enumerate_cone(int dim, const VecList& inequalities, double tol = kTolCone);

/// rays ∪ {±l : l in lineality}, each unit length, lex-sorted.
VecList all_generators(const ConeGenerators& g);

/// Unit-normalize, drop (near-)zero vectors, remove duplicates and sort.
VecList canonical_directions(const VecList& vs, double tol = kTolCone);

int numerical_rank(const VecList& rows, int dim, double tol = 1e-9);

}  // namespace cvop
