// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

// Patch files and field output.
//
// A patch file is JSON:
//   {"dim": 2, "degrees": [2, 2], "knots": [[...], [...]],
//    "periodic": [-1, -1], "points": [x*w, y*w, w, ...]}
// Points are homogeneous, dim + 1 values each, lexicographic with the last
// axis fastest. "periodic" is optional; entry k >= 0 marks an axis already
// unclamped to continuity k.

#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "iga/geometry.hpp"
#include "iga/space.hpp"

namespace iga {

/// Throws Error(kParse) with line and field context on malformed input.
NurbsPatch read_patch(std::istream& in);
NurbsPatch read_patch_file(const std::string& path);
NurbsPatch parse_patch(const std::string& text);

void write_patch(std::ostream& out, const NurbsPatch& patch);
void write_patch_file(const std::string& path, const NurbsPatch& patch);

/// Value of a nodal field (dof_count entries) at parametric point xi.
void evaluate_field(const TensorSpace& space, const NurbsPatch& patch,
                    std::span<const double> field, std::span<const double> xi,
                    std::span<double> out);

/// Legacy ASCII VTK structured grid sampled on `samples` points per axis
/// of a uniform parametric lattice. Fields with one component are written
/// as SCALARS, otherwise as a multi-component SCALARS array.
void write_vtk(std::ostream& out, const TensorSpace& space, const NurbsPatch& patch,
               std::span<const double> field, int samples = 33,
               const std::string& name = "u");
void write_vtk(const std::string& path, const TensorSpace& space, const NurbsPatch& patch,
               std::span<const double> field, int samples = 33,
               const std::string& name = "u");

}  // namespace iga
