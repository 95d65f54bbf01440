// Command-line front end for the IDNC delay simulator. Talks to the core
// exclusively through the C API; everything here is argument handling,
// sweep expansion and CSV/summary output.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "idnc/idnc.h"

namespace {

constexpr const char* kCsvHeader =
    "policy,M,N,P,T,frames,seed,mean_sum_delay,mean_max_delay,mean_served_fraction,"
    "mean_recovery_transmissions";

struct SweepSpec {
  std::string parameter;  // receivers | packets | erasure | deadline
  double start = 0.0;
  double step = 0.0;
  double end = 0.0;
};

std::optional<idnc_policy> parse_policy_name(const std::string& name) {
  if (name == "mdd") return IDNC_POLICY_MDD_GREEDY;
  if (name == "sdd") return IDNC_POLICY_SDD_GREEDY;
  if (name == "mdd-exact") return IDNC_POLICY_MDD_EXACT;
  if (name == "sdd-exact") return IDNC_POLICY_SDD_EXACT;
  return std::nullopt;
}

const char* policy_name(idnc_policy policy) {
  switch (policy) {
    case IDNC_POLICY_MDD_GREEDY:
      return "mdd";
    case IDNC_POLICY_SDD_GREEDY:
      return "sdd";
    case IDNC_POLICY_MDD_EXACT:
      return "mdd-exact";
    case IDNC_POLICY_SDD_EXACT:
      return "sdd-exact";
  }
  return "?";
}

// Fixed 6 significant digits, locale-independent, round-trips through parse.
std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value,
                                       std::chars_format::general, 6);
  return std::string(buf, ptr);
}

std::string format_deadline(std::uint64_t deadline) {
  return deadline == IDNC_DEADLINE_NONE ? "inf" : std::to_string(deadline);
}

bool parse_sweep(const std::string& text, SweepSpec& out, std::string& error) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    error = "expected <param>=<start>:<step>:<end>";
    return false;
  }
  out.parameter = text.substr(0, eq);
  const std::string rest = text.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = rest.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    error = "expected <param>=<start>:<step>:<end>";
    return false;
  }
  try {
    out.start = std::stod(rest.substr(0, c1));
    out.step = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
    out.end = std::stod(rest.substr(c2 + 1));
  } catch (const std::exception&) {
    error = "sweep bounds are not numeric";
    return false;
  }
  if (out.parameter != "receivers" && out.parameter != "packets" &&
      out.parameter != "erasure" && out.parameter != "deadline") {
    error = "sweep parameter must be one of receivers, packets, erasure, deadline";
    return false;
  }
  if (!(out.step > 0.0)) {
    error = "sweep step must be positive";
    return false;
  }
  if (out.start > out.end) {
    error = "sweep start must not exceed its end";
    return false;
  }
  const bool integral_param = out.parameter != "erasure";
  auto is_integral = [](double v) { return std::abs(v - std::round(v)) < 1e-9; };
  if (integral_param &&
      (!is_integral(out.start) || !is_integral(out.step) || !is_integral(out.end))) {
    error = "sweep over " + out.parameter + " requires integer bounds";
    return false;
  }
  if (out.parameter == "erasure" && (out.start < 0.0 || out.end > 1.0)) {
    error = "erasure sweep must stay within [0, 1]";
    return false;
  }
  if ((out.parameter == "receivers" || out.parameter == "packets") && out.start < 1.0) {
    error = out.parameter + " sweep must start at 1 or above";
    return false;
  }
  return true;
}

std::vector<double> sweep_points(const SweepSpec& sweep) {
  const auto count =
      static_cast<std::size_t>(std::floor((sweep.end - sweep.start) / sweep.step + 1e-9)) + 1;
  std::vector<double> points;
  points.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    points.push_back(sweep.start + static_cast<double>(k) * sweep.step);
  return points;
}

idnc_sim_config apply_point(idnc_sim_config config, const std::string& parameter, double value) {
  if (parameter == "receivers")
    config.receivers = static_cast<std::uint32_t>(std::llround(value));
  else if (parameter == "packets")
    config.packets = static_cast<std::uint32_t>(std::llround(value));
  else if (parameter == "erasure")
    config.avg_erasure = value;
  else if (parameter == "deadline")
    config.deadline = static_cast<std::uint64_t>(std::llround(value));
  return config;
}

struct ResultRow {
  idnc_sim_config config;
  idnc_policy policy;
  idnc_experiment_stats stats;
};

std::string csv_line(const ResultRow& row) {
  std::string line;
  line += policy_name(row.policy);
  line += ',';
  line += std::to_string(row.config.receivers);
  line += ',';
  line += std::to_string(row.config.packets);
  line += ',';
  line += format_number(row.config.avg_erasure);
  line += ',';
  line += format_deadline(row.config.deadline);
  line += ',';
  line += std::to_string(row.config.frames);
  line += ',';
  line += std::to_string(row.config.seed);
  line += ',';
  line += format_number(row.stats.mean_sum_delay);
  line += ',';
  line += format_number(row.stats.mean_max_delay);
  line += ',';
  line += format_number(row.stats.mean_served_fraction);
  line += ',';
  line += format_number(row.stats.mean_recovery_transmissions);
  return line;
}

void print_summary(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << "policy      M     N       P      T  frames      sum_delay      max_delay"
        "   served  transmissions\n";
  for (const ResultRow& row : rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-9s %5u %5u %7s %6s %7u %14s %14s %8s %14s\n",
                  policy_name(row.policy), row.config.receivers, row.config.packets,
                  format_number(row.config.avg_erasure).c_str(),
                  format_deadline(row.config.deadline).c_str(), row.config.frames,
                  format_number(row.stats.mean_sum_delay).c_str(),
                  format_number(row.stats.mean_max_delay).c_str(),
                  format_number(row.stats.mean_served_fraction).c_str(),
                  format_number(row.stats.mean_recovery_transmissions).c_str());
    os << buf;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Broadcast erasure-channel simulator for instantly decodable network coding"};
  app.set_version_flag("--version", idnc_version());

  idnc_sim_config base{};
  base.receivers = 20;
  base.packets = 20;
  base.avg_erasure = 0.25;
  base.deadline = IDNC_DEADLINE_NONE;
  base.frames = 1000;
  base.seed = 0;
  base.policy = IDNC_POLICY_MDD_GREEDY;
  base.max_transmissions = 0;

  std::string deadline_text = "inf";
  std::string policy_text = "mdd";
  std::string sweep_text;
  std::string output_path;

  app.add_option("--receivers", base.receivers, "Number of receivers")
      ->check(CLI::Range(1u, 1000000u))
      ->capture_default_str();
  app.add_option("--packets", base.packets, "Packets per frame")
      ->check(CLI::Range(1u, 1000000u))
      ->capture_default_str();
  app.add_option("--erasure", base.avg_erasure, "Average packet erasure probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--deadline", deadline_text,
                 "Decoding-delay deadline for the served statistic (integer or 'inf')")
      ->capture_default_str();
  app.add_option("--frames", base.frames, "Monte-Carlo frames per experiment")
      ->check(CLI::Range(1u, 100000000u))
      ->capture_default_str();
  app.add_option("--seed", base.seed, "Base RNG seed, echoed into the CSV")
      ->capture_default_str();
  app.add_option("--policy", policy_text,
                 "Comma-separated policies: mdd, sdd, mdd-exact, sdd-exact")
      ->capture_default_str();
  app.add_option("--sweep", sweep_text, "Parameter sweep <param>=<start>:<step>:<end>");
  app.add_option("--output", output_path, "CSV output path (default: stdout)");
  app.add_option("--max-transmissions", base.max_transmissions,
                 "Recovery transmission cap per frame (0 = 100 * packets)");

  CLI11_PARSE(app, argc, argv);

  if (deadline_text == "inf") {
    base.deadline = IDNC_DEADLINE_NONE;
  } else {
    try {
      base.deadline = std::stoull(deadline_text);
    } catch (const std::exception&) {
      std::cerr << "error: --deadline expects a non-negative integer or 'inf'\n";
      return 2;
    }
  }

  std::vector<idnc_policy> policies;
  for (std::size_t pos = 0; pos <= policy_text.size();) {
    const auto comma = std::min(policy_text.find(',', pos), policy_text.size());
    const std::string name = policy_text.substr(pos, comma - pos);
    const auto policy = parse_policy_name(name);
    if (!policy) {
      std::cerr << "error: unknown policy '" << name
                << "' (expected mdd, sdd, mdd-exact or sdd-exact)\n";
      return 2;
    }
    policies.push_back(*policy);
    pos = comma + 1;
  }

  std::vector<double> points{0.0};
  SweepSpec sweep;
  const bool sweeping = !sweep_text.empty();
  if (sweeping) {
    std::string error;
    if (!parse_sweep(sweep_text, sweep, error)) {
      std::cerr << "error: --sweep " << sweep_text << ": " << error << "\n";
      return 2;
    }
    points = sweep_points(sweep);
  }

  std::vector<ResultRow> rows;
  rows.reserve(policies.size() * points.size());
  for (const idnc_policy policy : policies) {
    for (const double point : points) {
      idnc_sim_config config =
          sweeping ? apply_point(base, sweep.parameter, point) : base;
      config.policy = policy;

      idnc_experiment* experiment = nullptr;
      idnc_status status = idnc_experiment_create(&config, &experiment);
      if (status != IDNC_OK) {
        std::cerr << "error: " << idnc_status_name(status) << ": "
                  << idnc_last_error_message() << "\n";
        return 2;
      }
      idnc_experiment_stats stats{};
      status = idnc_experiment_run(experiment, &stats);
      idnc_experiment_destroy(experiment);
      if (status != IDNC_OK) {
        std::cerr << "error: " << idnc_status_name(status) << ": "
                  << idnc_last_error_message() << "\n";
        return 1;
      }
      rows.push_back({config, policy, stats});
    }
  }

  std::string csv = kCsvHeader;
  csv += '\n';
  for (const ResultRow& row : rows) {
    csv += csv_line(row);
    csv += '\n';
  }

  if (output_path.empty()) {
    std::cout << csv;
    print_summary(std::cerr, rows);
  } else {
    std::ofstream out(output_path, std::ios::binary);
    if (!out || !(out << csv) || !out.flush()) {
      std::cerr << "error: cannot write CSV to '" << output_path << "'\n";
      return 1;
    }
    print_summary(std::cout, rows);
  }
  return 0;
}
