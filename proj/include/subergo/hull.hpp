#pragma once

#include <span>
#include <vector>

#include "subergo/sublinear.hpp"

namespace subergo {

// Decides whether q lies in the convex hull of `points` by a phase-one
// simplex solve of  sum_k l_k p_k = q,  sum_k l_k = 1,  l >= 0.
// The point is accepted when the minimal total infeasibility is <= tol.
bool in_convex_hull(std::span<const ProbVector> points, const ProbVector& q,
                    double tol = kIdentityTol);

// conv(a) == conv(b) for two finite families of equal dimension.
bool same_convex_hull(std::span<const ProbVector> a, std::span<const ProbVector> b,
                      double tol = kIdentityTol);

}  // namespace subergo
