#ifndef IMMUNET_H
#define IMMUNET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ImmunetStatus {
  IMMUNET_STATUS_OK = 0,
  IMMUNET_STATUS_NULL_POINTER = 1,
  IMMUNET_STATUS_INVALID_PARAMETER = 2,
  IMMUNET_STATUS_NUMERICAL = 3,
  IMMUNET_STATUS_IO = 4,
  IMMUNET_STATUS_PARSE = 5,
  IMMUNET_STATUS_NO_DATA = 6,
  IMMUNET_STATUS_BUFFER_TOO_SMALL = 7,
  IMMUNET_STATUS_PANIC = 8,
} ImmunetStatus;

typedef struct ImmunetExperiment ImmunetExperiment;

typedef struct ImmunetGraph ImmunetGraph;

typedef struct ImmunetPmf ImmunetPmf;

typedef struct ImmunetReport ImmunetReport;

/**
 * Headline numbers of an analytic report.
 */
typedef struct ImmunetReportScalars {
  double gcc;
  double gin;
  double gout;
  double gcc_v;
  double gin_over_gcc;
  double gout_over_gcc;
  double spread;
  double vulnerability;
} ImmunetReportScalars;

/**
 * Experiment parameters. `dmax == 0` means `n - 1`; `threads == 0` means
 * the default pool.
 */
typedef struct ImmunetExperimentConfig {
  size_t n;
  const double *tau_values;
  size_t tau_count;
  const double *alpha_values;
  size_t alpha_count;
  size_t num_graphs;
  size_t trials_per_graph;
  size_t overlay_samples_per_graph;
  uint64_t master_seed;
  size_t dmax;
  size_t threads;
  bool analytic;
  double tolerance;
  size_t max_iterations;
} ImmunetExperimentConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *immunet_last_error(void);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void immunet_string_free(char *s);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum ImmunetStatus immunet_pmf_power_law(double tau, size_t dmax, struct ImmunetPmf **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum ImmunetStatus immunet_pmf_poisson(double z, size_t dmax, struct ImmunetPmf **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum ImmunetStatus immunet_pmf_point_mass(size_t k, struct ImmunetPmf **out);

/**
 * Normalizes `weights[0..len]` (index = degree) into a PMF.
 *
 * # Safety
 * `weights` must point to `len` doubles; `out` must be valid for writes.
 */
enum ImmunetStatus immunet_pmf_from_weights(const double *weights,
                                            size_t len,
                                            struct ImmunetPmf **out);

/**
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum ImmunetStatus immunet_pmf_read(const char *path, struct ImmunetPmf **out);

/**
 * # Safety
 * `pmf` must come from this library, or be null.
 */
void immunet_pmf_free(struct ImmunetPmf *pmf);

/**
 * Largest degree in the support range, or 0 for a null handle.
 *
 * # Safety
 * `pmf` must be a live handle or null.
 */
size_t immunet_pmf_dmax(const struct ImmunetPmf *pmf);

/**
 * # Safety
 * `pmf` must be a live handle; `out` must be valid for writes.
 */
enum ImmunetStatus immunet_pmf_mean_degree(const struct ImmunetPmf *pmf, double *out);

/**
 * # Safety
 * `pmf` must be a live handle; `branching` and `above` must be valid for writes.
 */
enum ImmunetStatus immunet_pmf_phase(const struct ImmunetPmf *pmf, double *branching, bool *above);

/**
 * Forwarding probability of the tanh heuristic.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ImmunetStatus immunet_tanh_heuristic(double alpha, uint32_t a, uint32_t b, double *out);

/**
 * Samples a configuration-model graph on `n` nodes.
 *
 * # Safety
 * `pmf` must be a live handle; `out` must be valid for writes.
 */
enum ImmunetStatus immunet_graph_generate(const struct ImmunetPmf *pmf,
                                          size_t n,
                                          uint64_t seed,
                                          struct ImmunetGraph **out);

/**
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum ImmunetStatus immunet_graph_read(const char *path, struct ImmunetGraph **out);

/**
 * # Safety
 * `graph` must be a live handle; `path` a NUL-terminated string.
 */
enum ImmunetStatus immunet_graph_write(const struct ImmunetGraph *graph, const char *path);

/**
 * # Safety
 * `graph` must be a live handle or null.
 */
size_t immunet_graph_node_count(const struct ImmunetGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle or null.
 */
size_t immunet_graph_edge_count(const struct ImmunetGraph *graph);

/**
 * Copies the edge list as `(u, v)` pairs into `pairs[0..2*capacity]`.
 *
 * # Safety
 * `graph` must be a live handle; `pairs` must hold `2 * capacity` u32s.
 */
enum ImmunetStatus immunet_graph_edges(const struct ImmunetGraph *graph,
                                       uint32_t *pairs,
                                       size_t capacity);

/**
 * # Safety
 * `graph` must come from this library, or be null.
 */
void immunet_graph_free(struct ImmunetGraph *graph);

/**
 * Floods the tanh heuristic from `originator` and writes the number of
 * nodes reached. If `mask` is non-null it receives one byte per node
 * (1 = immunized).
 *
 * # Safety
 * `graph` must be a live handle; `reached` must be valid for writes;
 * `mask`, if non-null, must hold `node_count` bytes.
 */
enum ImmunetStatus immunet_flood(const struct ImmunetGraph *graph,
                                 double alpha,
                                 size_t originator,
                                 uint64_t seed,
                                 size_t *reached,
                                 uint8_t *mask);

/**
 * Solves the fixed-point model for the tanh heuristic. Non-positive
 * `tolerance` or zero `max_iterations` select the defaults.
 *
 * # Safety
 * `pmf` must be a live handle; `out` must be valid for writes.
 */
enum ImmunetStatus immunet_analyze(const struct ImmunetPmf *pmf,
                                   double alpha,
                                   double tolerance,
                                   size_t max_iterations,
                                   struct ImmunetReport **out);

/**
 * # Safety
 * `report` must be a live handle; `out` must be valid for writes.
 */
enum ImmunetStatus immunet_report_scalars(const struct ImmunetReport *report,
                                          struct ImmunetReportScalars *out);

/**
 * JSON rendering of the report; `full` adds the per-degree vectors.
 *
 * # Safety
 * `report` must be a live handle; `out` must be valid for writes.
 */
enum ImmunetStatus immunet_report_json(const struct ImmunetReport *report, bool full, char **out);

/**
 * # Safety
 * `report` must come from this library, or be null.
 */
void immunet_report_free(struct ImmunetReport *report);

/**
 * Runs a full tau × alpha sweep.
 *
 * # Safety
 * `config` must be valid and its arrays must hold the stated counts;
 * `out` must be valid for writes.
 */
enum ImmunetStatus immunet_experiment_run(const struct ImmunetExperimentConfig *config,
                                          struct ImmunetExperiment **out);

/**
 * Result table in CSV form.
 *
 * # Safety
 * `experiment` must be a live handle; `out` must be valid for writes.
 */
enum ImmunetStatus immunet_experiment_csv(const struct ImmunetExperiment *experiment, char **out);

/**
 * Full summary with diagnostics in JSON form.
 *
 * # Safety
 * `experiment` must be a live handle; `out` must be valid for writes.
 */
enum ImmunetStatus immunet_experiment_json(const struct ImmunetExperiment *experiment, char **out);

/**
 * # Safety
 * `experiment` must come from this library, or be null.
 */
void immunet_experiment_free(struct ImmunetExperiment *experiment);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IMMUNET_H */
