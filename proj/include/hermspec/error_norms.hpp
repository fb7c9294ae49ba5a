#pragma once

#include <functional>

#include "hermspec/field.hpp"

namespace hermspec {

/// L2 distance in velocity space between two expansions, by scaled
/// Gauss-Hermite quadrature with 64 nodes per axis.  The quadrature scale
/// follows the smaller of the two scaling factors so both tails are
/// resolved.
double l2_error(const CoeffVector& a, const CoeffVector& b);

/// L2 distance between an expansion and a closed-form distribution.
double l2_error(const CoeffVector& a,
                const std::function<double(const std::array<double, 3>&)>& f);

/// Spatial case: velocity-space L2 at each collocation point combined by
/// the rectangle rule in x.  Fields must share the spatial layout.
double l2_error(const SpatialField& a, const SpatialField& b);

/// L2 norm in x of the difference of a scalar macroscopic field.
/// `quantity` maps the local MacroState to the compared scalar.
double macro_l2_error(const SpatialField& a, const SpatialField& b,
                      const std::function<double(const MacroState&)>& quantity);

}  // namespace hermspec
