/* Generated by cbindgen from crates/ffi. Do not edit. */

#ifndef VCPC_H
#define VCPC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VcpcStatus {
  VCPC_STATUS_OK = 0,
  VCPC_STATUS_NULL_POINTER = 1,
  VCPC_STATUS_DIMENSION = 2,
  VCPC_STATUS_INDEX = 3,
  VCPC_STATUS_CAPACITY = 4,
  VCPC_STATUS_CONFIG = 5,
  VCPC_STATUS_DOMAIN = 6,
  VCPC_STATUS_INFEASIBLE = 7,
  VCPC_STATUS_SCORING = 8,
  VCPC_STATUS_PARSE = 9,
  VCPC_STATUS_IO = 10,
  VCPC_STATUS_INVALID_UTF8 = 11,
  VCPC_STATUS_PANIC = 12,
} VcpcStatus;

/**
 * Immutable energy model.
 */
typedef struct VcpcModel VcpcModel;

/**
 * Model under construction.
 */
typedef struct VcpcModelBuilder VcpcModelBuilder;

/**
 * Update groups of a model.
 */
typedef struct VcpcPlan VcpcPlan;

/**
 * Outcome of a solver run.
 */
typedef struct VcpcResult VcpcResult;

/**
 * Simulated-annealing settings: `steps` inverse temperatures spaced
 * linearly from `beta_start` to `beta_end`, `iters_per_step` group updates
 * at each.
 */
typedef struct VcpcSaConfig {
  double beta_start;
  double beta_end;
  size_t steps;
  size_t iters_per_step;
  size_t repeats;
  uint64_t seed;
} VcpcSaConfig;

/**
 * Parallel-tempering settings.
 */
typedef struct VcpcPtConfig {
  double beta_start;
  double beta_end;
  size_t replicas;
  size_t iters;
  size_t swap_interval;
  size_t repeats;
  uint64_t seed;
} VcpcPtConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *vcpc_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *vcpc_version(void);

/**
 * New builder for a model over `num_vars` binary variables.
 */
struct VcpcModelBuilder *vcpc_builder_new(size_t num_vars);

/**
 * Adds `coeff · Π s_v` over the `len` indices in `vars`. Repeated indices
 * collapse (`s² = s`); repeated terms accumulate.
 *
 * # Safety
 * `builder` must come from [`vcpc_builder_new`]; `vars` must point to `len`
 * readable indices.
 */
enum VcpcStatus vcpc_builder_add_term(struct VcpcModelBuilder *builder,
                                      double coeff,
                                      const uint32_t *vars,
                                      size_t len);

/**
 * # Safety
 * `builder` must come from [`vcpc_builder_new`].
 */
enum VcpcStatus vcpc_builder_add_constant(struct VcpcModelBuilder *builder, double c);

/**
 * Finishes the model and frees the builder, whatever the outcome.
 *
 * # Safety
 * `builder` must come from [`vcpc_builder_new`] and not be used afterwards.
 */
enum VcpcStatus vcpc_builder_build(struct VcpcModelBuilder *builder, struct VcpcModel **out);

/**
 * # Safety
 * `builder` must come from [`vcpc_builder_new`] or be null.
 */
void vcpc_builder_free(struct VcpcModelBuilder *builder);

/**
 * Parses the plain-text model format.
 *
 * # Safety
 * `text` must be a NUL-terminated string.
 */
enum VcpcStatus vcpc_model_parse(const char *text, struct VcpcModel **out);

/**
 * # Safety
 * `model` must be a live model handle.
 */
size_t vcpc_model_num_vars(const struct VcpcModel *model);

/**
 * # Safety
 * `model` must be a live model handle.
 */
size_t vcpc_model_num_terms(const struct VcpcModel *model);

/**
 * Energy of the 0/1 state `s` of length `len`.
 *
 * # Safety
 * `model` must be a live model handle; `s` must point to `len` bytes.
 */
enum VcpcStatus vcpc_model_energy(const struct VcpcModel *model,
                                  const uint8_t *s,
                                  size_t len,
                                  double *out);

/**
 * Update drive `E(s | s_k = 0) − E(s | s_k = 1)`.
 *
 * # Safety
 * `model` must be a live model handle; `s` must point to `len` bytes.
 */
enum VcpcStatus vcpc_model_update_drive(const struct VcpcModel *model,
                                        const uint8_t *s,
                                        size_t len,
                                        size_t k,
                                        double *out);

/**
 * # Safety
 * `model` must come from this library or be null.
 */
void vcpc_model_free(struct VcpcModel *model);

/**
 * Greedy colouring of every variable of `model` into update groups.
 *
 * # Safety
 * `model` must be a live model handle.
 */
enum VcpcStatus vcpc_plan_new(const struct VcpcModel *model, struct VcpcPlan **out);

/**
 * # Safety
 * `plan` must be a live plan handle.
 */
size_t vcpc_plan_num_groups(const struct VcpcPlan *plan);

/**
 * # Safety
 * `plan` must be a live plan handle.
 */
double vcpc_plan_avg_group_size(const struct VcpcPlan *plan);

/**
 * Size of group `g`, or 0 when out of range.
 *
 * # Safety
 * `plan` must be a live plan handle.
 */
size_t vcpc_plan_group_len(const struct VcpcPlan *plan, size_t g);

/**
 * Copies the members of group `g` into `out`, which holds `cap` entries.
 *
 * # Safety
 * `plan` must be a live plan handle; `out` must have room for `cap` indices.
 */
enum VcpcStatus vcpc_plan_group(const struct VcpcPlan *plan, size_t g, uint32_t *out, size_t cap);

/**
 * # Safety
 * `plan` must come from this library or be null.
 */
void vcpc_plan_free(struct VcpcPlan *plan);

/**
 * Runs simulated annealing with `plan`'s groups.
 *
 * # Safety
 * All pointers must be live handles or valid for reads and writes.
 */
enum VcpcStatus vcpc_solve_sa(const struct VcpcModel *model,
                              const struct VcpcPlan *plan,
                              const struct VcpcSaConfig *config,
                              struct VcpcResult **out);

/**
 * Runs parallel tempering with `plan`'s groups.
 *
 * # Safety
 * All pointers must be live handles or valid for reads and writes.
 */
enum VcpcStatus vcpc_solve_pt(const struct VcpcModel *model,
                              const struct VcpcPlan *plan,
                              const struct VcpcPtConfig *config,
                              struct VcpcResult **out);

/**
 * # Safety
 * `result` must be a live result handle.
 */
double vcpc_result_best_energy(const struct VcpcResult *result);

/**
 * # Safety
 * `result` must be a live result handle.
 */
uint64_t vcpc_result_total_iterations(const struct VcpcResult *result);

/**
 * # Safety
 * `result` must be a live result handle.
 */
size_t vcpc_result_num_vars(const struct VcpcResult *result);

/**
 * Copies the best state into `out`, which holds `cap` bytes.
 *
 * # Safety
 * `result` must be a live result handle; `out` must have room for `cap` bytes.
 */
enum VcpcStatus vcpc_result_best_state(const struct VcpcResult *result, uint8_t *out, size_t cap);

/**
 * Number of points in the best-so-far trajectory.
 *
 * # Safety
 * `result` must be a live result handle.
 */
size_t vcpc_result_trajectory_len(const struct VcpcResult *result);

/**
 * Point `i` of the trajectory: the iteration and the best energy up to it.
 *
 * # Safety
 * `result` must be a live result handle; the out pointers must be writable.
 */
enum VcpcStatus vcpc_result_trajectory_point(const struct VcpcResult *result,
                                             size_t i,
                                             uint64_t *iteration,
                                             double *best_energy);

/**
 * # Safety
 * `result` must come from this library or be null.
 */
void vcpc_result_free(struct VcpcResult *result);

/**
 * Seconds for `adjusted_iters` group iterations on an `n`-variable machine
 * clocked at `f_hz`, with `log2(n) + overhead_cycles` cycles per iteration.
 *
 * # Safety
 * `out` must be writable.
 */
enum VcpcStatus vcpc_estimate_tts(double adjusted_iters,
                                  size_t n,
                                  double f_hz,
                                  double overhead_cycles,
                                  double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VCPC_H */
