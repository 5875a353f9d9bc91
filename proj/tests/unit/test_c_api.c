/* Copyright 2026 The iga Authors.
 * SPDX-License-Identifier: Apache-2.0 */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "iga/iga.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(int argc, char** argv) {
  const char* dir = argc > 1 ? argv[1] : ".";
  char path[1024];

  /* basis */
  const double U[] = {0, 0, 0, 1, 2, 3, 3, 3};
  double N[6];
  int span = -1;
  EXPECT(iga_basis_eval(U, 8, 2, 1.5, 1, &span, N) == IGA_OK);
  EXPECT(span == 3);
  EXPECT(fabs(N[0] + N[1] + N[2] - 1.0) < 1e-15);
  EXPECT(fabs(N[3] + N[4] + N[5]) < 1e-14);
  EXPECT(iga_basis_eval(U, 8, 2, 3.5, 0, &span, N) == IGA_ERR_DOMAIN);
  EXPECT(strlen(iga_last_error()) > 0);
  EXPECT(strcmp(iga_status_name(IGA_ERR_DOMAIN), "domain") == 0);

  const double K[] = {0, 0, 0, 0, 0.2, 0.4, 0.6, 0.8, 1, 1, 1, 1};
  double W[12];
  EXPECT(iga_unclamp_knots(K, 12, 3, 2, W) == IGA_OK);
  EXPECT(fabs(W[0] + 0.6) < 1e-12);
  EXPECT(fabs(W[11] - 1.6) < 1e-12);

  /* patches and spaces */
  iga_patch* ann = NULL;
  EXPECT(iga_patch_annulus(2, 3, &ann) == IGA_OK);
  int dim = 0;
  EXPECT(iga_patch_dim(ann, &dim) == IGA_OK && dim == 2);
  const double xi[] = {0.5, 0.25};
  double x[3];
  EXPECT(iga_patch_map(ann, xi, x) == IGA_OK);
  EXPECT(fabs(sqrt(x[0] * x[0] + x[1] * x[1]) - 1.5) < 1e-12);
  snprintf(path, sizeof path, "%s/c_api_annulus.json", dir);
  EXPECT(iga_patch_write(ann, path) == IGA_OK);
  iga_patch* back = NULL;
  EXPECT(iga_patch_read(path, &back) == IGA_OK);
  double y[3];
  EXPECT(iga_patch_map(back, xi, y) == IGA_OK);
  EXPECT(x[0] == y[0] && x[1] == y[1]);
  iga_space* space = NULL;
  EXPECT(iga_space_from_patch(back, 1, &space) == IGA_OK);
  int dofs = 0, elems = 0;
  EXPECT(iga_space_dof_count(space, &dofs) == IGA_OK && dofs == 4 * 5);
  EXPECT(iga_space_element_count(space, &elems) == IGA_OK && elems == 6);
  iga_space_free(space);
  iga_patch_free(back);
  iga_patch_free(ann);
  EXPECT(iga_patch_read("/nonexistent/patch.json", &back) == IGA_ERR_IO);
  EXPECT(iga_patch_dim(NULL, &dim) == IGA_ERR_PARAMETER);

  const int elements[] = {4, 4};
  const int periodic[] = {1, 0};
  iga_patch* box = NULL;
  EXPECT(iga_patch_box(2, elements, 2, 1, periodic, &box) == IGA_OK);
  EXPECT(iga_space_from_patch(box, 1, &space) == IGA_OK);
  EXPECT(iga_space_dof_count(space, &dofs) == IGA_OK && dofs == 4 * 6);
  iga_space_free(space);
  iga_patch_free(box);

  /* runs */
  iga_run_options o;
  iga_run_options_init(&o);
  o.elements = 8;
  o.out_dir = dir;
  iga_report* rep = NULL;
  EXPECT(iga_run("poisson", &o, &rep) == IGA_OK);
  double l2 = -1;
  EXPECT(iga_report_value(rep, "l2_error", &l2) == IGA_OK);
  EXPECT(l2 > 0 && l2 < 1e-3);
  EXPECT(iga_report_value(rep, "missing", &l2) == IGA_ERR_INDEX);
  EXPECT(iga_report_value_count(rep) >= 3);
  EXPECT(iga_report_file_count(rep) == 1);
  EXPECT(strstr(iga_report_summary(rep), "poisson") != NULL);
  iga_report_free(rep);

  o.periodic = 1;
  EXPECT(iga_run("poisson", &o, &rep) == IGA_ERR_PARAMETER);
  o.periodic = 0;
  EXPECT(iga_run("unknown", &o, &rep) == IGA_ERR_PARAMETER);

  iga_run_options_init(&o);
  o.elements = 4;
  o.steps = 2;
  EXPECT(iga_run("hyperelastic", &o, &rep) == IGA_OK);
  double worst = 0;
  EXPECT(iga_report_value(rep, "max_newton_per_step", &worst) == IGA_OK && worst <= 8);
  iga_report_free(rep);

  iga_run_options_init(&o);
  o.elements = 8;
  o.steps = 2;
  EXPECT(iga_run("cahn-hilliard", &o, &rep) == IGA_OK);
  double drift = 1;
  EXPECT(iga_report_value(rep, "mass_drift", &drift) == IGA_OK && drift < 1e-10);
  iga_report_free(rep);

  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  else printf("c api: all checks passed\n");
  return failures ? 1 : 0;
}
