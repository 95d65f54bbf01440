/* C interface to the IDNC broadcast-delay simulator. All entry points return
 * an idnc_status; on failure idnc_last_error_message() carries the detail for
 * the calling thread. Handles are opaque and single-owner. */
#ifndef IDNC_IDNC_H
#define IDNC_IDNC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define IDNC_DEADLINE_NONE UINT64_MAX

typedef enum idnc_status {
  IDNC_OK = 0,
  IDNC_ERROR_INVALID_ARGUMENT = 1,
  IDNC_ERROR_CONTRACT_VIOLATION = 2,
  IDNC_ERROR_RESOURCE_LIMIT = 3,
  IDNC_ERROR_INTERNAL = 4
} idnc_status;

typedef enum idnc_policy {
  IDNC_POLICY_MDD_GREEDY = 0, /* minimize the maximum decoding delay (multilayer greedy) */
  IDNC_POLICY_SDD_GREEDY = 1, /* minimize the sum decoding delay (single-layer greedy) */
  IDNC_POLICY_MDD_EXACT = 2,  /* exhaustive maximal-clique search, max-delay objective */
  IDNC_POLICY_SDD_EXACT = 3   /* exhaustive maximal-clique search, sum-delay objective */
} idnc_policy;

typedef struct idnc_sim_config {
  uint32_t receivers;
  uint32_t packets;
  double avg_erasure;         /* frame-average erasure probability, in [0, 1] */
  uint64_t deadline;          /* IDNC_DEADLINE_NONE disables the deadline */
  uint32_t frames;            /* Monte-Carlo iterations */
  uint64_t seed;
  int32_t policy;             /* one of idnc_policy */
  uint64_t max_transmissions; /* 0 selects the default cap of 100 * packets */
} idnc_sim_config;

typedef struct idnc_experiment_stats {
  double mean_sum_delay;
  double mean_max_delay;
  double mean_served_fraction;
  double mean_recovery_transmissions;
  uint64_t frames;
} idnc_experiment_stats;

typedef struct idnc_frame_result {
  uint64_t sum_delay;
  uint64_t max_delay;
  uint32_t served_count;
  uint64_t recovery_transmissions;
  int32_t completed; /* 0 iff the transmission cap cut the frame short */
} idnc_frame_result;

typedef struct idnc_experiment idnc_experiment;

/* Validates the configuration and allocates an experiment handle. */
idnc_status idnc_experiment_create(const idnc_sim_config* config,
                                   idnc_experiment** out_experiment);

/* Runs every frame and fills the averaged statistics. Results are a pure
 * function of the configuration; reruns are bit-identical. */
idnc_status idnc_experiment_run(idnc_experiment* experiment,
                                idnc_experiment_stats* out_stats);

/* Runs a single frame by index (independent of other frames). */
idnc_status idnc_experiment_run_frame(idnc_experiment* experiment, uint64_t frame_index,
                                      idnc_frame_result* out_result);

void idnc_experiment_destroy(idnc_experiment* experiment);

const char* idnc_status_name(idnc_status status);
const char* idnc_last_error_message(void);
const char* idnc_version(void);

#ifdef __cplusplus
}
#endif

#endif /* IDNC_IDNC_H */
