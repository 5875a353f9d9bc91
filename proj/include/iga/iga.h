/* Copyright 2026 The iga Authors.
 * SPDX-License-Identifier: Apache-2.0 */

/* C interface to the iga library. Functions return IGA_OK or an error
 * category; iga_last_error() holds the message of the most recent failure
 * on the calling thread. Handles are opaque and released with the matching
 * _free function (passing NULL is allowed). */

#ifndef IGA_IGA_H_
#define IGA_IGA_H_

#include <stddef.h>

#if defined(_WIN32)
#define IGA_API __declspec(dllexport)
#else
#define IGA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum iga_status {
  IGA_OK = 0,
  IGA_ERR_DOMAIN = 1,
  IGA_ERR_PARAMETER = 2,
  IGA_ERR_PRECONDITION = 3,
  IGA_ERR_DEGENERATE = 4,
  IGA_ERR_INDEX = 5,
  IGA_ERR_SINGULAR_MAPPING = 6,
  IGA_ERR_CONTRACT = 7,
  IGA_ERR_ASSEMBLY = 8,
  IGA_ERR_PREALLOCATION = 9,
  IGA_ERR_CONVERGENCE = 10,
  IGA_ERR_PARSE = 11,
  IGA_ERR_IO = 12,
  IGA_ERR_INTERNAL = 13
} iga_status;

typedef struct iga_patch iga_patch;
typedef struct iga_space iga_space;
typedef struct iga_report iga_report;

IGA_API const char* iga_version(void);
IGA_API const char* iga_status_name(int status);
IGA_API const char* iga_last_error(void);

/* ---- knot vectors and basis functions ---- */

/* Nonzero basis functions and derivatives at x. out receives
 * (nderiv + 1) x (degree + 1) values, derivative-major; *span the knot span. */
IGA_API int iga_basis_eval(const double* knots, size_t nknots, int degree, double x,
                           int nderiv, int* span, double* out);
/* Unclamps an open knot vector to continuity k across the ends; out has
 * nknots entries. */
IGA_API int iga_unclamp_knots(const double* knots, size_t nknots, int degree, int k,
                              double* out);

/* ---- patches ---- */

IGA_API int iga_patch_read(const char* path, iga_patch** out);
IGA_API int iga_patch_write(const iga_patch* patch, const char* path);
/* Unit box [0,1]^dim with uniform open knots (periodic[d] != 0 unclamps axis d
 * to the interior continuity). periodic may be NULL. */
IGA_API int iga_patch_box(int dim, const int* elements, int degree, int continuity,
                          const int* periodic, iga_patch** out);
/* Quarter annulus 1 <= r <= 2, exact quadratic NURBS. */
IGA_API int iga_patch_annulus(int radial_elements, int angular_elements, iga_patch** out);
IGA_API int iga_patch_dim(const iga_patch* patch, int* dim);
/* Physical point of parametric coordinates xi (dim entries); x has 3 entries. */
IGA_API int iga_patch_map(const iga_patch* patch, const double* xi, double* x);
IGA_API void iga_patch_free(iga_patch* patch);

/* ---- spaces ---- */

IGA_API int iga_space_from_patch(const iga_patch* patch, int dof_per_node, iga_space** out);
IGA_API int iga_space_dof_count(const iga_space* space, int* count);
IGA_API int iga_space_element_count(const iga_space* space, int* count);
IGA_API void iga_space_free(iga_space* space);

/* ---- problem runs ---- */

/* Negative numeric fields select the problem default. */
typedef struct iga_run_options {
  int elements;
  int degree;
  int continuity;
  int periodic;
  double rho_inf;
  double dt;
  int steps;
  int workers;
  const char* patch;     /* may be NULL */
  const char* geometry;  /* may be NULL */
  const char* out_dir;   /* may be NULL: no files */
  int dump_matrix;
  int fixed_iterations;
  int samples;
} iga_run_options;

IGA_API void iga_run_options_init(iga_run_options* options);
/* problem: "poisson", "cahn-hilliard", "hyperelastic" or "bench". */
IGA_API int iga_run(const char* problem, const iga_run_options* options, iga_report** out);
IGA_API const char* iga_report_summary(const iga_report* report);
/* IGA_ERR_INDEX if the key is absent. */
IGA_API int iga_report_value(const iga_report* report, const char* key, double* value);
IGA_API size_t iga_report_value_count(const iga_report* report);
IGA_API const char* iga_report_value_key(const iga_report* report, size_t i);
IGA_API size_t iga_report_file_count(const iga_report* report);
IGA_API const char* iga_report_file(const iga_report* report, size_t i);
IGA_API void iga_report_free(iga_report* report);

#ifdef __cplusplus
}
#endif

#endif /* IGA_IGA_H_ */
