// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include "iga/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

#include "iga/error.hpp"

namespace iga {

namespace {

using json = nlohmann::json;

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
  fail(ErrorCode::kParse, "patch: field '" + field + "': " + what);
}

const json& member(const json& j, const char* key) {
  if (!j.contains(key)) parse_fail(key, "missing");
  return j.at(key);
}

int as_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) parse_fail(field, "expected an integer");
  return j.get<int>();
}

double as_double(const json& j, const std::string& field) {
  if (!j.is_number()) parse_fail(field, "expected a number");
  return j.get<double>();
}

int line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace

NurbsPatch parse_patch(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, "patch: syntax error at line " + std::to_string(line_of(text, e.byte)) +
                                ": " + e.what());
  }
  if (!j.is_object()) parse_fail("<root>", "expected an object");

  NurbsPatch p;
  p.dim = as_int(member(j, "dim"), "dim");
  if (p.dim < 1 || p.dim > kMaxDim) parse_fail("dim", "must be 1, 2 or 3");
  const size_t dim = static_cast<size_t>(p.dim);

  const json& degrees = member(j, "degrees");
  const json& knots = member(j, "knots");
  if (!degrees.is_array() || degrees.size() != dim) parse_fail("degrees", "expected dim entries");
  if (!knots.is_array() || knots.size() != dim) parse_fail("knots", "expected dim entries");
  if (j.contains("periodic")) {
    p.periodic.assign(dim, -1);
    const json& per = j.at("periodic");
    if (!per.is_array() || per.size() != dim) parse_fail("periodic", "expected dim entries");
    for (size_t d = 0; d < dim; ++d)
      p.periodic[d] = as_int(per[d], "periodic[" + std::to_string(d) + "]");
  }
  for (size_t d = 0; d < dim; ++d) {
    const std::string field = "knots[" + std::to_string(d) + "]";
    const int deg = as_int(degrees[d], "degrees[" + std::to_string(d) + "]");
    if (!knots[d].is_array()) parse_fail(field, "expected an array");
    std::vector<double> U;
    for (size_t i = 0; i < knots[d].size(); ++i) {
      U.push_back(as_double(knots[d][i], field + "[" + std::to_string(i) + "]"));
      if (i > 0 && U[i] < U[i - 1])
        parse_fail(field, "knots must be non-decreasing (index " + std::to_string(i) + ")");
    }
    try {
      p.axes.emplace_back(std::move(U), deg);
    } catch (const Error& e) {
      parse_fail(field, e.what());
    }
  }
  const json& pts = member(j, "points");
  if (!pts.is_array()) parse_fail("points", "expected an array");
  p.points.reserve(pts.size());
  for (size_t i = 0; i < pts.size(); ++i)
    p.points.push_back(as_double(pts[i], "points[" + std::to_string(i) + "]"));
  try {
    p.validate();
  } catch (const Error& e) {
    fail(ErrorCode::kParse, std::string("patch: ") + e.what());
  }
  return p;
}

NurbsPatch read_patch(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_patch(text);
}

NurbsPatch read_patch_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  return read_patch(in);
}

void write_patch(std::ostream& out, const NurbsPatch& p) {
  json j;
  j["dim"] = p.dim;
  json degrees = json::array(), knots = json::array();
  for (const KnotVector& kv : p.axes) {
    degrees.push_back(kv.degree());
    knots.push_back(std::vector<double>(kv.knots().begin(), kv.knots().end()));
  }
  j["degrees"] = degrees;
  j["knots"] = knots;
  if (!p.periodic.empty()) j["periodic"] = p.periodic;
  j["points"] = p.points;
  // Doubles are written in shortest round-trip form.
  out << j.dump(1) << '\n';
}

void write_patch_file(const std::string& path, const NurbsPatch& patch) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  write_patch(out, patch);
  if (!out) fail(ErrorCode::kIo, "write failed: " + path);
}

void evaluate_field(const TensorSpace& space, const NurbsPatch& patch,
                    std::span<const double> field, std::span<const double> xi,
                    std::span<double> out) {
  const int dpn = space.dof_per_node();
  if (static_cast<int>(field.size()) != space.dof_count())
    fail(ErrorCode::kParameter, "field length does not match the space");
  if (static_cast<int>(out.size()) != dpn) fail(ErrorCode::kParameter, "output size mismatch");
  const PointEvaluation pe = evaluate_point(patch, xi, 0);
  std::fill(out.begin(), out.end(), 0.0);
  const int dim = patch.dim;
  std::array<int, kMaxDim> loc{0, 0, 0}, idx{0, 0, 0};
  for (int A = 0; A < pe.shape.nen; ++A) {
    int rem = A;
    for (int d = dim - 1; d >= 0; --d) {
      loc[d] = rem % pe.local_counts[d];
      rem /= pe.local_counts[d];
    }
    for (int d = 0; d < dim; ++d) idx[d] = space.wrap(d, pe.first[d] + loc[d]);
    const int node = space.node_index(std::span<const int>(idx.data(), static_cast<size_t>(dim)));
    for (int c = 0; c < dpn; ++c)
      out[static_cast<size_t>(c)] += pe.shape.v(A) * field[static_cast<size_t>(node * dpn + c)];
  }
}

void write_vtk(std::ostream& os, const TensorSpace& space, const NurbsPatch& patch,
               std::span<const double> field, int samples, const std::string& name) {
  if (samples < 2) fail(ErrorCode::kParameter, "write_vtk: need at least 2 samples per axis");
  if (static_cast<int>(field.size()) != space.dof_count())
    fail(ErrorCode::kParameter, "write_vtk: field length does not match the space");
  const int dim = patch.dim, dpn = space.dof_per_node();
  if (dpn > 4) fail(ErrorCode::kParameter, "write_vtk: at most 4 components");
  std::array<int, kMaxDim> n{1, 1, 1};
  for (int d = 0; d < dim; ++d) n[d] = samples;
  const int total = n[0] * n[1] * n[2];

  std::vector<double> xs, vs;
  xs.reserve(static_cast<size_t>(total) * 3);
  vs.reserve(static_cast<size_t>(total * dpn));
  std::vector<double> xi(static_cast<size_t>(dim)), val(static_cast<size_t>(dpn));
  // VTK structured points run with the first index fastest.
  for (int k = 0; k < n[2]; ++k)
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) {
        const int ijk[3] = {i, j, k};
        for (int d = 0; d < dim; ++d) {
          const KnotVector& kv = space.knots(d);
          const double t = static_cast<double>(ijk[d]) / (n[d] - 1);
          xi[static_cast<size_t>(d)] = kv.domain_lo() + t * (kv.domain_hi() - kv.domain_lo());
        }
        const Vec3 x = map_point(patch, xi);
        for (int c = 0; c < 3; ++c) xs.push_back(c < dim ? x[c] : 0.0);
        evaluate_field(space, patch, field, xi, val);
        vs.insert(vs.end(), val.begin(), val.end());
      }

  os << "# vtk DataFile Version 3.0\n"
     << "iga field " << name << "\n"
     << "ASCII\n"
     << "DATASET STRUCTURED_GRID\n"
     << "DIMENSIONS " << n[0] << ' ' << n[1] << ' ' << n[2] << "\n"
     << "POINTS " << total << " double\n";
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (int p = 0; p < total; ++p)
    os << xs[static_cast<size_t>(3 * p)] << ' ' << xs[static_cast<size_t>(3 * p + 1)] << ' '
       << xs[static_cast<size_t>(3 * p + 2)] << '\n';
  os << "POINT_DATA " << total << "\n"
     << "SCALARS " << name << " double " << dpn << "\n"
     << "LOOKUP_TABLE default\n";
  for (int p = 0; p < total; ++p) {
    for (int c = 0; c < dpn; ++c) os << (c ? " " : "") << vs[static_cast<size_t>(p * dpn + c)];
    os << '\n';
  }
}

void write_vtk(const std::string& path, const TensorSpace& space, const NurbsPatch& patch,
               std::span<const double> field, int samples, const std::string& name) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  write_vtk(out, space, patch, field, samples, name);
  if (!out) fail(ErrorCode::kIo, "write failed: " + path);
}

}  // namespace iga
