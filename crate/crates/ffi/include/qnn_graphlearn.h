#ifndef QNN_GRAPHLEARN_H
#define QNN_GRAPHLEARN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QnnStatus {
  QNN_STATUS_OK = 0,
  QNN_STATUS_NULL_POINTER = 1,
  QNN_STATUS_INVALID_ARGUMENT = 2,
  QNN_STATUS_DIMENSION_MISMATCH = 3,
  QNN_STATUS_NUMERICAL = 4,
  QNN_STATUS_SERIALIZATION = 5,
  QNN_STATUS_IO = 6,
  QNN_STATUS_PANIC = 7,
} QnnStatus;

/**
 * Dataset handle.
 */
typedef struct QnnDataset QnnDataset;

/**
 * Network handle.
 */
typedef struct QnnNetwork QnnNetwork;

/**
 * Result of [`qnn_train`].
 */
typedef struct QnnTrainingTrace QnnTrainingTrace;

typedef struct QnnHyperparams {
  double epsilon;
  double eta;
  double gamma_graph;
  size_t rounds;
} QnnHyperparams;

/**
 * Losses at one step. `l_sv` and `l_usv` are meaningful only when the
 * matching `has_*` flag is set.
 */
typedef struct QnnLossRecord {
  size_t step_index;
  double l_sv;
  double l_graph;
  double l_combined;
  double l_usv;
  bool has_l_sv;
  bool has_l_usv;
} QnnLossRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *qnn_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void qnn_string_free(char *s);

/**
 * Haar-random network with the given layer widths.
 *
 * # Safety
 * `widths` must point to `num_layers` values; `out` must be writable.
 */
enum QnnStatus qnn_network_new(const size_t *widths,
                               size_t num_layers,
                               uint64_t seed,
                               struct QnnNetwork **out);

/**
 * # Safety
 * `network` must be NULL or a handle from this library, not yet freed.
 */
void qnn_network_free(struct QnnNetwork *network);

/**
 * # Safety
 * `network` must be a live handle; `out` must be writable. Free the result with [`qnn_string_free`].
 */
enum QnnStatus qnn_network_to_json(const struct QnnNetwork *network,
                                   char **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum QnnStatus qnn_network_from_json(const char *json, struct QnnNetwork **out);

/**
 * Output density matrix for a pure input state.
 *
 * `input` holds `2 * 2^n_in` doubles; `output` receives `2 * 4^n_out` doubles, row-major.
 *
 * # Safety
 * Pointers must be valid for the given lengths.
 */
enum QnnStatus qnn_network_output(const struct QnnNetwork *network,
                                  const double *input,
                                  size_t input_len,
                                  double *output,
                                  size_t output_len);

/**
 * Builtin example dataset ("clusters" or "line") with seeded random inputs.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum QnnStatus qnn_dataset_builtin(const char *name, uint64_t seed, struct QnnDataset **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum QnnStatus qnn_dataset_from_json(const char *json, struct QnnDataset **out);

/**
 * # Safety
 * `dataset` must be a live handle; `out` must be writable. Free the result with [`qnn_string_free`].
 */
enum QnnStatus qnn_dataset_to_json(const struct QnnDataset *dataset,
                                   char **out);

/**
 * Vertex count, or 0 for NULL.
 *
 * # Safety
 * `dataset` must be NULL or a live handle.
 */
size_t qnn_dataset_num_vertices(const struct QnnDataset *dataset);

/**
 * Undirected edge count, or 0 for NULL.
 *
 * # Safety
 * `dataset` must be NULL or a live handle.
 */
size_t qnn_dataset_num_edges(const struct QnnDataset *dataset);

/**
 * # Safety
 * `dataset` must be NULL or a handle from this library, not yet freed.
 */
void qnn_dataset_free(struct QnnDataset *dataset);

/**
 * Trains a copy of `network`; the input handle is left unchanged.
 *
 * # Safety
 * `supervised` must point to `num_supervised` vertex indices; other pointers must be live.
 */
enum QnnStatus qnn_train(const struct QnnNetwork *network,
                         const struct QnnDataset *dataset,
                         const size_t *supervised,
                         size_t num_supervised,
                         const struct QnnHyperparams *hyper,
                         struct QnnTrainingTrace **out);

/**
 * Number of loss records (rounds + 1), or 0 for NULL.
 *
 * # Safety
 * `trace` must be NULL or a live handle.
 */
size_t qnn_trace_len(const struct QnnTrainingTrace *trace);

/**
 * # Safety
 * `trace` must be a live handle; `out` must be writable.
 */
enum QnnStatus qnn_trace_record(const struct QnnTrainingTrace *trace,
                                size_t index,
                                struct QnnLossRecord *out);

/**
 * Copy of the trained network as a new handle.
 *
 * # Safety
 * `trace` must be a live handle; `out` must be writable.
 */
enum QnnStatus qnn_trace_final_network(const struct QnnTrainingTrace *trace,
                                       struct QnnNetwork **out);

/**
 * # Safety
 * `trace` must be NULL or a handle from this library, not yet freed.
 */
void qnn_trace_free(struct QnnTrainingTrace *trace);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QNN_GRAPHLEARN_H */
