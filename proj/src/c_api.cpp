// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include "iga/iga.h"

#include <algorithm>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "iga/error.hpp"
#include "iga/geometries.hpp"
#include "iga/io.hpp"
#include "iga/runner.hpp"
#include "iga/space.hpp"
#include "iga/splines.hpp"

struct iga_patch {
  iga::NurbsPatch patch;
};

struct iga_space {
  iga::TensorSpace space;
};

struct iga_report {
  iga::RunReport report;
  std::vector<std::string> keys;
};

namespace {

thread_local std::string last_error;

template <class Fn>
int guard(Fn&& fn) noexcept {
  try {
    fn();
    last_error.clear();
    return IGA_OK;
  } catch (const iga::Error& e) {
    last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown exception";
  }
  return IGA_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  if (!p) iga::fail(iga::ErrorCode::kParameter, std::string(what) + " is NULL");
}

}  // namespace

extern "C" {

const char* iga_version(void) { return "0.1.0"; }

const char* iga_status_name(int status) {
  if (status == IGA_OK) return "ok";
  if (status == IGA_ERR_INTERNAL) return "internal";
  if (status < IGA_ERR_DOMAIN || status > IGA_ERR_IO) return "unknown";
  return iga::error_code_name(static_cast<iga::ErrorCode>(status));
}

const char* iga_last_error(void) { return last_error.c_str(); }

int iga_basis_eval(const double* knots, size_t nknots, int degree, double x, int nderiv,
                   int* span, double* out) {
  return guard([&] {
    need(knots, "knots");
    need(out, "out");
    const iga::KnotVector kv(std::vector<double>(knots, knots + nknots), degree);
    const iga::BasisTable t = iga::eval_basis(kv, x, nderiv);
    std::copy(t.rows.begin(), t.rows.end(), out);
    if (span) *span = t.span;
  });
}

int iga_unclamp_knots(const double* knots, size_t nknots, int degree, int k, double* out) {
  return guard([&] {
    need(knots, "knots");
    need(out, "out");
    const iga::KnotVector kv(std::vector<double>(knots, knots + nknots), degree);
    const iga::KnotVector u = iga::unclamp_knots(kv, k);
    std::copy(u.knots().begin(), u.knots().end(), out);
  });
}

int iga_patch_read(const char* path, iga_patch** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new iga_patch{iga::read_patch_file(path)};
  });
}

int iga_patch_write(const iga_patch* patch, const char* path) {
  return guard([&] {
    need(patch, "patch");
    need(path, "path");
    iga::write_patch_file(path, patch->patch);
  });
}

int iga_patch_box(int dim, const int* elements, int degree, int continuity, const int* periodic,
                  iga_patch** out) {
  return guard([&] {
    need(elements, "elements");
    need(out, "out");
    if (dim < 1 || dim > iga::kMaxDim) iga::fail(iga::ErrorCode::kParameter, "dim must be 1..3");
    std::vector<iga::AxisSpec> axes;
    for (int d = 0; d < dim; ++d) {
      const bool per = periodic && periodic[d] != 0;
      axes.push_back(iga::AxisSpec{elements[d], degree, continuity, 0.0, 1.0, per, continuity});
    }
    const iga::TensorSpace s = iga::TensorSpace::build(axes, 1);
    const std::vector<double> lo(static_cast<size_t>(dim), 0.0), hi(static_cast<size_t>(dim), 1.0);
    *out = new iga_patch{iga::box_patch(s, lo, hi)};
  });
}

int iga_patch_annulus(int radial_elements, int angular_elements, iga_patch** out) {
  return guard([&] {
    need(out, "out");
    *out = new iga_patch{iga::quarter_annulus(radial_elements, angular_elements)};
  });
}

int iga_patch_dim(const iga_patch* patch, int* dim) {
  return guard([&] {
    need(patch, "patch");
    need(dim, "dim");
    *dim = patch->patch.dim;
  });
}

int iga_patch_map(const iga_patch* patch, const double* xi, double* x) {
  return guard([&] {
    need(patch, "patch");
    need(xi, "xi");
    need(x, "x");
    const iga::Vec3 p = iga::map_point(
        patch->patch, std::span<const double>(xi, static_cast<size_t>(patch->patch.dim)));
    std::copy(p.begin(), p.end(), x);
  });
}

void iga_patch_free(iga_patch* patch) { delete patch; }

int iga_space_from_patch(const iga_patch* patch, int dof_per_node, iga_space** out) {
  return guard([&] {
    need(patch, "patch");
    need(out, "out");
    if (dof_per_node < 1) iga::fail(iga::ErrorCode::kParameter, "dof_per_node must be positive");
    *out = new iga_space{iga::TensorSpace::from_patch(patch->patch, dof_per_node)};
  });
}

int iga_space_dof_count(const iga_space* space, int* count) {
  return guard([&] {
    need(space, "space");
    need(count, "count");
    *count = space->space.dof_count();
  });
}

int iga_space_element_count(const iga_space* space, int* count) {
  return guard([&] {
    need(space, "space");
    need(count, "count");
    *count = space->space.element_count();
  });
}

void iga_space_free(iga_space* space) { delete space; }

void iga_run_options_init(iga_run_options* o) {
  if (!o) return;
  *o = iga_run_options{};
  o->elements = o->degree = o->continuity = o->steps = -1;
  o->rho_inf = o->dt = -1.0;
  o->workers = 1;
  o->samples = 33;
}

int iga_run(const char* problem, const iga_run_options* o, iga_report** out) {
  return guard([&] {
    need(problem, "problem");
    need(out, "out");
    iga::RunOptions opt;
    if (o) {
      opt.elements = o->elements;
      opt.degree = o->degree;
      opt.continuity = o->continuity;
      opt.periodic = o->periodic != 0;
      opt.rho_inf = o->rho_inf;
      opt.dt = o->dt;
      opt.steps = o->steps;
      opt.workers = o->workers;
      if (o->patch) opt.patch = o->patch;
      if (o->geometry) opt.geometry = o->geometry;
      if (o->out_dir) opt.out = o->out_dir;
      opt.dump_matrix = o->dump_matrix != 0;
      opt.fixed_iterations = o->fixed_iterations != 0;
      opt.samples = o->samples;
    }
    auto* r = new iga_report{iga::run_problem(problem, opt), {}};
    for (const auto& kv : r->report.values) r->keys.push_back(kv.first);
    *out = r;
  });
}

const char* iga_report_summary(const iga_report* report) {
  return report ? report->report.summary.c_str() : "";
}

int iga_report_value(const iga_report* report, const char* key, double* value) {
  return guard([&] {
    need(report, "report");
    need(key, "key");
    need(value, "value");
    const auto it = report->report.values.find(key);
    if (it == report->report.values.end())
      iga::fail(iga::ErrorCode::kIndex, std::string("no report value '") + key + "'");
    *value = it->second;
  });
}

size_t iga_report_value_count(const iga_report* report) { return report ? report->keys.size() : 0; }

const char* iga_report_value_key(const iga_report* report, size_t i) {
  return report && i < report->keys.size() ? report->keys[i].c_str() : nullptr;
}

size_t iga_report_file_count(const iga_report* report) {
  return report ? report->report.files.size() : 0;
}

const char* iga_report_file(const iga_report* report, size_t i) {
  return report && i < report->report.files.size() ? report->report.files[i].c_str() : nullptr;
}

void iga_report_free(iga_report* report) { delete report; }

}  // extern "C"
