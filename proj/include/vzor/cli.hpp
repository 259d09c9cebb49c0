#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

// Command implementations behind the `vzor` binary. They return process exit
// codes and write diagnostics to `err`, so tests can drive them in-process.
namespace vzor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitParse = 2;     // config parse error, corrupt trace
inline constexpr int kExitInvalid = 3;   // scenario validation, bad sweep request
inline constexpr int kExitMismatch = 4;  // trace replay disagrees with recorded outcomes

// Files written by `run` into the output directory.
inline constexpr const char* kTraceFile = "trace.jsonl";
inline constexpr const char* kEpochsFile = "epochs.csv";
inline constexpr const char* kMetricsFile = "metrics.json";
inline constexpr const char* kConfigFile = "config.effective";
inline constexpr const char* kPulsesFile = "pulses.csv";
inline constexpr const char* kSweepFile = "sweep.csv";

struct RunOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

int cmd_verify_trace(const std::string& trace_path, std::ostream& out, std::ostream& err);

struct SweepOptions {
  std::string config_path;
  std::string param;  // n, f_min, delta_net, t_prove, fraud_period, b
  std::vector<std::string> values;
  std::string out_dir;
};

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);

std::vector<std::string> split_values(std::string_view csv);

/// Writes to a sibling temporary file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace vzor::cli
