#ifndef ALLEE_H
#define ALLEE_H

/* Generated with cbindgen:0.29.4 */

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AlleeRuleKind {
  ALLEE_RULE_KIND_HEBBIAN = 0,
  ALLEE_RULE_KIND_OJA = 1,
  ALLEE_RULE_KIND_ALLEE = 2,
  ALLEE_RULE_KIND_STDP_PAIR = 3,
  ALLEE_RULE_KIND_STDP_WEIGHT = 4,
  ALLEE_RULE_KIND_STDP_ADDMUL = 5,
  ALLEE_RULE_KIND_STDP_POWER = 6,
  ALLEE_RULE_KIND_STDP_CONTINUOUS = 7,
  ALLEE_RULE_KIND_ALLEE_TEMPORAL = 8,
} AlleeRuleKind;

/**
 * Return code of every fallible call.
 */
typedef enum AlleeStatus {
  ALLEE_STATUS_OK = 0,
  ALLEE_STATUS_NULL_POINTER = 1,
  ALLEE_STATUS_INVALID_PARAMETER = 2,
  ALLEE_STATUS_DOMAIN = 3,
  ALLEE_STATUS_STEP_FAILURE = 4,
  ALLEE_STATUS_NO_FIXED_POINT = 5,
  ALLEE_STATUS_NO_STABLE_TARGET = 6,
  ALLEE_STATUS_SHAPE_MISMATCH = 7,
  ALLEE_STATUS_OUT_OF_RANGE = 8,
  ALLEE_STATUS_PANIC = 99,
} AlleeStatus;

typedef enum AlleeBranch {
  ALLEE_BRANCH_ALLEE = 0,
  ALLEE_BRANCH_INTERACTION = 1,
} AlleeBranch;

typedef enum AlleeStability {
  ALLEE_STABILITY_STABLE_NODE = 0,
  ALLEE_STABILITY_UNSTABLE_NODE = 1,
  ALLEE_STABILITY_SADDLE = 2,
  ALLEE_STABILITY_STABLE_FOCUS = 3,
  ALLEE_STABILITY_UNSTABLE_FOCUS = 4,
  ALLEE_STABILITY_CENTER_CANDIDATE = 5,
  ALLEE_STABILITY_NONHYPERBOLIC = 6,
} AlleeStability;

typedef struct AlleeFixedPoints AlleeFixedPoints;

/**
 * Model parameters and gain function.
 */
typedef struct AlleeModel AlleeModel;

/**
 * Trained weights together with the stored patterns.
 */
typedef struct AlleeNetwork AlleeNetwork;

typedef struct AlleeScan AlleeScan;

typedef struct AlleeTrajectory AlleeTrajectory;

/**
 * Learning rule settings. `k = INFINITY` means unbounded.
 */
typedef struct AlleeRuleParams {
  enum AlleeRuleKind kind;
  double a;
  double k;
  double eta;
  double b_plus;
  double b_minus;
  double tau_plus;
  double tau_minus;
  double gamma;
  double b;
  double delta_t;
  double kappa;
  double lambda;
  double tau1;
  double tau2;
} AlleeRuleParams;

/**
 * Network and run settings for `allee_network_train`.
 */
typedef struct AlleeNetworkConfig {
  size_t layers;
  size_t n_u;
  size_t n_v;
  size_t patterns;
  uint64_t pattern_seed;
  uint64_t init_seed;
  size_t epochs;
  /**
   * Output pattern equals the input pattern.
   */
  bool auto_associative;
} AlleeNetworkConfig;

/**
 * Plain-data copy of one fixed point.
 */
typedef struct AlleeFixedPoint {
  double x;
  double y;
  enum AlleeBranch branch;
  double eig1_re;
  double eig1_im;
  double eig2_re;
  double eig2_im;
  enum AlleeStability stability;
  bool collision;
} AlleeFixedPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Defaults for `kind`: eta 0.01, A 1, K 5, the STDP and trace constants of
 * the comparison runs. A and K are reset to 0 and INFINITY where the rule
 * family requires it.
 */
struct AlleeRuleParams allee_rule_params_default(enum AlleeRuleKind kind);

/**
 * Draw patterns and train one network.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AlleeStatus allee_network_train(const struct AlleeNetworkConfig *config,
                                     const struct AlleeRuleParams *rule,
                                     struct AlleeNetwork **out);

/**
 * Rows (`L N_u`) and columns (`L N_v`) of the weight matrix.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AlleeStatus allee_network_dims(const struct AlleeNetwork *net, size_t *rows, size_t *cols);

/**
 * Row-major weights, valid until the network is freed.
 *
 * # Safety
 * `net` must come from `allee_network_train` or be NULL.
 */
const double *allee_network_weights(const struct AlleeNetwork *net);

/**
 * # Safety
 * `net` must come from `allee_network_train` or be NULL.
 */
size_t allee_network_pattern_count(const struct AlleeNetwork *net);

/**
 * Copy stored pattern `index` into `u` (`rows` entries) and `v` (`cols`).
 *
 * # Safety
 * `u` and `v` must have room for `rows` and `cols` bytes.
 */
enum AlleeStatus allee_network_pattern(const struct AlleeNetwork *net,
                                       size_t index,
                                       int8_t *u,
                                       int8_t *v);

/**
 * Recall from cue `u` (length `u_len`) and score against `v_expected`.
 * Writes the recalled pattern to `v_out` (length `v_len`).
 *
 * # Safety
 * Buffer lengths must match the pointers.
 */
enum AlleeStatus allee_network_retrieve(const struct AlleeNetwork *net,
                                        const int8_t *u,
                                        size_t u_len,
                                        const int8_t *v_expected,
                                        size_t v_len,
                                        size_t max_iters,
                                        int8_t *v_out,
                                        double *accuracy,
                                        bool *converged);

/**
 * # Safety
 * `net` must come from `allee_network_train` or be NULL.
 */
void allee_network_free(struct AlleeNetwork *net);

/**
 * `k = INFINITY` selects the unbounded regulator. Time scales default to 1
 * and the gain to the logistic sigmoid.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum AlleeStatus allee_model_new(double a, double k, double u, double m, struct AlleeModel **out);

/**
 * # Safety
 * `model` must come from `allee_model_new`.
 */
enum AlleeStatus allee_model_set_time_scales(struct AlleeModel *model, double tau_v, double tau_w);

/**
 * Switch to the Soboleva gain `(e^{az} - e^{-bz}) / (e^{cz} + e^{-dz})`.
 *
 * # Safety
 * `model` must come from `allee_model_new`.
 */
enum AlleeStatus allee_model_set_soboleva(struct AlleeModel *model,
                                          double a,
                                          double b,
                                          double c,
                                          double d);

/**
 * # Safety
 * `model` must come from `allee_model_new` or be NULL.
 */
void allee_model_free(struct AlleeModel *model);

/**
 * Right-hand side at `(x, y)`; `y` must be positive.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AlleeStatus allee_rhs(const struct AlleeModel *model,
                           double x,
                           double y,
                           double *dx,
                           double *dy);

/**
 * Jacobian at `(x, y)` in row-major order: `[df/dx, df/dy, dg/dx, dg/dy]`.
 *
 * # Safety
 * `out` must point to 4 writable doubles.
 */
enum AlleeStatus allee_jacobian(const struct AlleeModel *model, double x, double y, double *out);

/**
 * Fixed-step RK4 from `(x0, y0)` to `t_end`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AlleeStatus allee_integrate(const struct AlleeModel *model,
                                 double x0,
                                 double y0,
                                 double t_end,
                                 double dt,
                                 struct AlleeTrajectory **out);

/**
 * Number of samples, 0 for NULL.
 *
 * # Safety
 * `traj` must come from `allee_integrate` or be NULL.
 */
size_t allee_trajectory_len(const struct AlleeTrajectory *traj);

/**
 * # Safety
 * Pointers must be valid.
 */
enum AlleeStatus allee_trajectory_get(const struct AlleeTrajectory *traj,
                                      size_t index,
                                      double *t,
                                      double *x,
                                      double *y);

/**
 * Writes the extinction time and returns true, or returns false if `y`
 * never reached the floor.
 *
 * # Safety
 * Pointers must be valid.
 */
bool allee_trajectory_extinct_at(const struct AlleeTrajectory *traj, double *t);

/**
 * # Safety
 * `traj` must come from `allee_integrate` or be NULL.
 */
void allee_trajectory_free(struct AlleeTrajectory *traj);

/**
 * # Safety
 * Pointers must be valid.
 */
enum AlleeStatus allee_fixed_points(const struct AlleeModel *model, struct AlleeFixedPoints **out);

/**
 * # Safety
 * `fps` must come from `allee_fixed_points` or be NULL.
 */
size_t allee_fixed_points_len(const struct AlleeFixedPoints *fps);

/**
 * # Safety
 * Pointers must be valid.
 */
enum AlleeStatus allee_fixed_points_get(const struct AlleeFixedPoints *fps,
                                        size_t index,
                                        struct AlleeFixedPoint *out);

/**
 * # Safety
 * `fps` must come from `allee_fixed_points` or be NULL.
 */
void allee_fixed_points_free(struct AlleeFixedPoints *fps);

/**
 * Sign scan of trace and determinant over `[x_min, x_max] x [y_min, y_max]`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AlleeStatus allee_scan_region(const struct AlleeModel *model,
                                   double x_min,
                                   double x_max,
                                   double y_min,
                                   double y_max,
                                   size_t nx,
                                   size_t ny,
                                   struct AlleeScan **out);

/**
 * # Safety
 * `scan` must come from `allee_scan_region` or be NULL.
 */
size_t allee_scan_hopf_count(const struct AlleeScan *scan);

/**
 * # Safety
 * `scan` must come from `allee_scan_region` or be NULL.
 */
size_t allee_scan_tb_count(const struct AlleeScan *scan);

/**
 * Mean cell centre of the Hopf cells; `OUT_OF_RANGE` when there are none.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AlleeStatus allee_scan_hopf_centroid(const struct AlleeScan *scan, double *x, double *y);

/**
 * # Safety
 * `scan` must come from `allee_scan_region` or be NULL.
 */
void allee_scan_free(struct AlleeScan *scan);

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call into the library from the same thread.
 */
const char *allee_last_error_message(void);

/**
 * Static, NUL-terminated version string.
 */
const char *allee_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALLEE_H */
