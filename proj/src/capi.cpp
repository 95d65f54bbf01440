#include "idnc/idnc.h"

#include <limits>
#include <new>
#include <stdexcept>
#include <string>

#include "channel_sim.hpp"

struct idnc_experiment {
  idnc::SimConfig config;
};

namespace {

thread_local std::string g_last_error;

idnc_status fail(idnc_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <typename Fn>
idnc_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return IDNC_OK;
  } catch (const idnc::ResourceLimitError& e) {
    return fail(IDNC_ERROR_RESOURCE_LIMIT, e.what());
  } catch (const idnc::ContractViolation& e) {
    return fail(IDNC_ERROR_CONTRACT_VIOLATION, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(IDNC_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(IDNC_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(IDNC_ERROR_INTERNAL, "unknown error");
  }
}

idnc::SimConfig to_core_config(const idnc_sim_config& c) {
  idnc::SimConfig config;
  config.receivers = c.receivers;
  config.packets = c.packets;
  config.avg_erasure = c.avg_erasure;
  config.deadline = c.deadline;
  config.frames = c.frames;
  config.seed = c.seed;
  config.max_transmissions = c.max_transmissions;
  switch (c.policy) {
    case IDNC_POLICY_MDD_GREEDY:
      config.policy = idnc::PolicyKind::kMddGreedy;
      break;
    case IDNC_POLICY_SDD_GREEDY:
      config.policy = idnc::PolicyKind::kSddGreedy;
      break;
    case IDNC_POLICY_MDD_EXACT:
      config.policy = idnc::PolicyKind::kMddExact;
      break;
    case IDNC_POLICY_SDD_EXACT:
      config.policy = idnc::PolicyKind::kSddExact;
      break;
    default:
      throw std::invalid_argument("unknown policy value " + std::to_string(c.policy));
  }
  return config;
}

}  // namespace

extern "C" {

idnc_status idnc_experiment_create(const idnc_sim_config* config,
                                   idnc_experiment** out_experiment) {
  if (config == nullptr || out_experiment == nullptr)
    return fail(IDNC_ERROR_INVALID_ARGUMENT, "null pointer argument");
  *out_experiment = nullptr;
  return guarded([&] {
    const idnc::SimConfig core = to_core_config(*config);
    core.validate();
    *out_experiment = new idnc_experiment{core};
  });
}

idnc_status idnc_experiment_run(idnc_experiment* experiment,
                                idnc_experiment_stats* out_stats) {
  if (experiment == nullptr || out_stats == nullptr)
    return fail(IDNC_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const idnc::ExperimentStats stats = idnc::run_experiment(experiment->config);
    out_stats->mean_sum_delay = stats.mean_sum_delay;
    out_stats->mean_max_delay = stats.mean_max_delay;
    out_stats->mean_served_fraction = stats.mean_served_fraction;
    out_stats->mean_recovery_transmissions = stats.mean_recovery_transmissions;
    out_stats->frames = stats.frame_count;
  });
}

idnc_status idnc_experiment_run_frame(idnc_experiment* experiment, uint64_t frame_index,
                                      idnc_frame_result* out_result) {
  if (experiment == nullptr || out_result == nullptr)
    return fail(IDNC_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const idnc::FrameResult frame = idnc::run_frame(experiment->config, frame_index);
    out_result->sum_delay = frame.sum_delay;
    out_result->max_delay = frame.max_delay;
    out_result->served_count = frame.served_count;
    out_result->recovery_transmissions = frame.recovery_transmissions;
    out_result->completed = frame.completed ? 1 : 0;
  });
}

void idnc_experiment_destroy(idnc_experiment* experiment) { delete experiment; }

const char* idnc_status_name(idnc_status status) {
  switch (status) {
    case IDNC_OK:
      return "ok";
    case IDNC_ERROR_INVALID_ARGUMENT:
      return "invalid argument";
    case IDNC_ERROR_CONTRACT_VIOLATION:
      return "contract violation";
    case IDNC_ERROR_RESOURCE_LIMIT:
      return "resource limit exceeded";
    case IDNC_ERROR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* idnc_last_error_message(void) { return g_last_error.c_str(); }

const char* idnc_version(void) { return "1.0.0"; }

}  // extern "C"
