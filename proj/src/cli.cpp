#include "vzor/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "vzor/errors.hpp"
#include "vzor/netsim.hpp"
#include "vzor/scenario.hpp"
#include "vzor/trace.hpp"

namespace vzor::cli {

namespace fs = std::filesystem;

std::vector<std::string> split_values(std::string_view csv) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
    cur.clear();
  };
  for (const char c : csv) {
    if (c == ',') flush();
    else cur.push_back(c);
  }
  flush();
  return out;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

namespace {

void write_run(const fs::path& dir, const RunTrace& trace) {
  fs::create_directories(dir);
  write_file_atomic(dir / kConfigFile, canonical_text(trace.config));
  write_file_atomic(dir / kTraceFile, trace_text(trace));
  write_file_atomic(dir / kEpochsFile, epochs_csv(trace));
  write_file_atomic(dir / kMetricsFile, metrics_json(trace));
  write_file_atomic(dir / kPulsesFile, pulses_csv(trace));
}

// Loads the config; prints the diagnostic and returns the exit code on failure.
std::optional<ScenarioConfig> load(const std::string& path, std::ostream& err, int& code) {
  try {
    return load_scenario(path);
  } catch (const Error& e) {
    err << "config error: " << e.what() << "\n";
    code = kExitParse;
  }
  return std::nullopt;
}

bool validate(const ScenarioConfig& c, std::ostream& err) {
  try {
    c.validate();
    return true;
  } catch (const Error& e) {
    err << "invalid scenario: " << e.what() << "\n";
    return false;
  }
}

// Sweep parameter -> config mutation.
void apply_sweep_value(ScenarioConfig& c, const std::string& param, const std::string& value) {
  if (param == "n") apply_setting(c, "committee_size", value);
  else if (param == "f_min") apply_setting(c, "quorum", value);
  else if (param == "delta_net") apply_setting(c, "delta_net_max_s", value);
  else if (param == "t_prove") {
    apply_setting(c, "proving_model", "constant");
    apply_setting(c, "t_prove_s", value);
  } else if (param == "fraud_period") apply_setting(c, "fraud_period", value);
  else if (param == "b") {
    ScenarioConfig probe;
    apply_setting(probe, "seed", value);  // reuse the integer parser
    c.adversary.controlled.clear();
    for (ReporterId id = 0; id < probe.seed; ++id) c.adversary.controlled.push_back(id);
  } else {
    throw Error(Errc::UnknownParameter, "unknown sweep parameter '" + param + "'");
  }
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(9) << x;
  return s.str();
}

}  // namespace

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  auto config = load(options.config_path, err, code);
  if (!config) return code;
  if (options.seed) config->seed = *options.seed;
  if (!validate(*config, err)) return kExitInvalid;
  try {
    const RunTrace trace = run(*config);
    write_run(options.out_dir, trace);
    const MetricsSummary m = metrics(trace);
    out << "epochs " << m.epochs << ", accepted " << m.accepted_packets << ", fraud injected "
        << m.fraud_injected << ", slash reports " << m.slash_reports << ", mean latency "
        << fmt(m.mean_latency_s) << " s\n"
        << "wrote " << (fs::path(options.out_dir) / kTraceFile).string() << "\n";
  } catch (const Error& e) {
    err << "run failed: " << e.what() << "\n";
    return e.code() == Errc::InvalidScenario ? kExitInvalid : kExitIo;
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int cmd_verify_trace(const std::string& trace_path, std::ostream& out, std::ostream& err) {
  std::ifstream in(trace_path, std::ios::binary);
  if (!in) {
    err << "cannot read trace " << trace_path << "\n";
    return kExitParse;
  }
  const TraceVerification v = verify_trace(in);
  switch (v.status) {
    case TraceStatus::Ok:
      out << "trace ok: " << v.records << " records, " << v.packets_checked << " receipts and "
          << v.adjudications_checked << " adjudications replayed\n";
      return kExitOk;
    case TraceStatus::Corrupt:
      err << "corrupt trace: " << (v.problems.empty() ? "unreadable" : v.problems.front()) << "\n";
      return kExitParse;
    case TraceStatus::Mismatch:
      err << "mismatched epochs:";
      for (const auto e : v.mismatched_epochs) err << ' ' << e;
      err << "\n";
      for (const auto& p : v.problems) err << "  " << p << "\n";
      return kExitMismatch;
  }
  return kExitIo;
}

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> kParams{"n", "f_min", "delta_net", "t_prove", "fraud_period", "b"};
  if (std::find(kParams.begin(), kParams.end(), options.param) == kParams.end()) {
    err << "unknown sweep parameter '" << options.param << "' (expected n, f_min, delta_net, t_prove, "
        << "fraud_period or b)\n";
    return kExitInvalid;
  }
  if (options.values.empty()) {
    err << "empty values list\n";
    return kExitInvalid;
  }
  int code = kExitOk;
  const auto base = load(options.config_path, err, code);
  if (!base) return code;

  std::vector<ScenarioConfig> configs;
  for (const auto& value : options.values) {
    ScenarioConfig c = *base;
    try {
      apply_sweep_value(c, options.param, value);
    } catch (const Error& e) {
      err << options.param << "=" << value << ": " << e.what() << "\n";
      return kExitInvalid;
    }
    if (!validate(c, err)) {
      err << "  (at " << options.param << "=" << value << ")\n";
      return kExitInvalid;
    }
    configs.push_back(std::move(c));
  }

  std::ostringstream csv;
  csv << "param,value,epochs,packets_built,accepted_packets,fraud_injected,slash_reports,mean_latency_s,"
         "sd_latency_s,throughput_packets_per_s,mean_slash_latency_s";
  for (const auto& c : base->chains) csv << ",verify_gas_" << c.chain_id;
  csv << ",safety_violations,liveness_violations\n";
  try {
    for (std::size_t i = 0; i < configs.size(); ++i) {
      const RunTrace trace = run(configs[i]);
      write_run(fs::path(options.out_dir) / (options.param + "_" + options.values[i]), trace);
      const MetricsSummary m = metrics(trace);
      csv << options.param << ',' << options.values[i] << ',' << m.epochs << ',' << m.packets_built << ','
          << m.accepted_packets << ',' << m.fraud_injected << ',' << m.slash_reports << ','
          << fmt(m.mean_latency_s) << ',' << fmt(m.sd_latency_s) << ',' << fmt(m.throughput_pps) << ','
          << fmt(m.mean_slash_latency_s);
      for (const auto& c : base->chains) csv << ',' << m.verify_gas_per_packet.at(c.chain_id);
      csv << ',' << m.safety_violations << ',' << m.liveness_violations << '\n';
      out << options.param << "=" << options.values[i] << ": " << m.accepted_packets << "/" << m.epochs
          << " accepted, mean latency " << fmt(m.mean_latency_s) << " s\n";
    }
    fs::create_directories(options.out_dir);
    write_file_atomic(fs::path(options.out_dir) / kSweepFile, csv.str());
  } catch (const std::exception& e) {
    err << "sweep failed: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace vzor::cli
