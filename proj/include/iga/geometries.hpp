// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

// Reference geometries for the demo problems.

#pragma once

#include <span>

#include "iga/geometry.hpp"
#include "iga/space.hpp"

namespace iga {

/// Affine box [lo, hi] over the knot vectors of `space`, with control points
/// at the Greville abscissae and unit weights (so x is affine in xi). Axes
/// that are periodic in the space stay periodic in the patch.
NurbsPatch box_patch(const TensorSpace& space, std::span<const double> lo,
                     std::span<const double> hi);

/// Quarter annulus between radii r_in and r_out in the first quadrant.
/// Axis 0 is radial, axis 1 angular; quadratic, C^1, with the given element
/// counts per axis (obtained by knot insertion into the one-element patch).
NurbsPatch quarter_annulus(int radial_elements, int angular_elements,
                           double r_in = 1.0, double r_out = 2.0);

/// Inserts knot u once along an open axis (Boehm). The geometry is unchanged.
NurbsPatch insert_knot(const NurbsPatch& patch, int axis, double u);

}  // namespace iga
