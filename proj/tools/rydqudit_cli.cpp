// Copyright 2026 The rydqudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Talks to the library only through the C API.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rydqudit/rydqudit.h"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfigError = 2;

struct ResultDeleter {
  void operator()(rq_result* r) const { rq_result_destroy(r); }
};
struct ScheduleDeleter {
  void operator()(rq_schedule* s) const { rq_schedule_destroy(s); }
};
using ResultPtr = std::unique_ptr<rq_result, ResultDeleter>;
using SchedulePtr = std::unique_ptr<rq_schedule, ScheduleDeleter>;

int exit_code_for(rq_status s) {
  switch (s) {
    case RQ_OK: return kPass;
    case RQ_ERR_CONFIG:
    case RQ_ERR_NOT_FOUND:
    case RQ_ERR_INVALID_ARGUMENT: return kConfigError;
    default: return kFail;
  }
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream os;
  os << in.rdbuf();
  out = os.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') c = '_';
  }
  return s;
}

struct RunJob {
  std::string target;
  ResultPtr result;
  rq_status status = RQ_OK;
  std::string error;
};

void run_job(RunJob& job, unsigned threads) {
  rq_result* out = nullptr;
  const bool looks_like_file = std::filesystem::path(job.target).extension() == ".json";
  if (looks_like_file || std::filesystem::is_regular_file(job.target)) {
    std::string text;
    if (!read_file(job.target, text)) {
      job.status = RQ_ERR_CONFIG;
      job.error = "cannot read " + job.target;
      return;
    }
    const std::string base = std::filesystem::path(job.target).parent_path().string();
    job.status = rq_scenario_run_config(text.c_str(), base.empty() ? "." : base.c_str(), threads, &out);
  } else {
    job.status = rq_scenario_run_builtin(job.target.c_str(), threads, &out);
  }
  if (job.status != RQ_OK) {
    job.error = rq_last_error();
  } else {
    job.result.reset(out);
  }
}

int cmd_list() {
  for (size_t i = 0; i < rq_scenario_count(); ++i) std::cout << rq_scenario_name(i) << "\n";
  return kPass;
}

int cmd_describe(const std::string& name) {
  const char* text = nullptr;
  const rq_status s = rq_scenario_describe(name.c_str(), &text);
  if (s != RQ_OK) {
    std::cerr << "error: " << rq_last_error() << "\n";
    return exit_code_for(s);
  }
  std::cout << text;
  return kPass;
}

struct RunArgs {
  std::vector<std::string> targets;
  unsigned jobs = 1;
  unsigned threads = 1;
  std::string trace_path;
  std::string summary_path;
  std::string tables_dir;
};

int cmd_run(RunArgs args) {
  if (args.targets.size() == 1 && args.targets[0] == "all") {
    args.targets.clear();
    for (size_t i = 0; i < rq_scenario_count(); ++i) args.targets.push_back(rq_scenario_name(i));
  }
  if (args.targets.size() > 1 && !args.trace_path.empty()) {
    std::cerr << "error: --trace needs a single scenario\n";
    return kConfigError;
  }
  std::vector<RunJob> jobs(args.targets.size());
  for (size_t i = 0; i < jobs.size(); ++i) jobs[i].target = args.targets[i];

  // Each job owns its result; scheduling order does not affect the output.
  std::atomic<size_t> next{0};
  const unsigned workers = std::max(1u, std::min<unsigned>(args.jobs, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < jobs.size(); i = next++) run_job(jobs[i], args.threads);
    });
  }
  for (auto& t : pool) t.join();

  int code = kPass;
  std::string summaries = "[\n";
  bool first = true;
  for (auto& job : jobs) {
    if (job.status != RQ_OK) {
      std::cout << "ERROR " << job.target << ": " << job.error << "\n";
      code = std::max(code, exit_code_for(job.status));
      continue;
    }
    rq_result* r = job.result.get();
    std::cout << rq_result_summary_line(r) << "\n";
    if (!rq_result_passed(r)) code = std::max(code, kFail);
    summaries += (first ? "" : ",\n");
    summaries += rq_result_summary_json(r);
    first = false;
    if (!args.trace_path.empty() && !write_file(args.trace_path, rq_result_trace_csv(r))) {
      std::cerr << "error: cannot write " << args.trace_path << "\n";
      code = std::max(code, kConfigError);
    }
    if (!args.tables_dir.empty()) {
      std::filesystem::create_directories(args.tables_dir);
      for (size_t t = 0; t < rq_result_table_count(r); ++t) {
        const std::string file = args.tables_dir + "/" + sanitize(rq_result_name(r)) + "_" +
                                 sanitize(rq_result_table_name(r, t)) + ".csv";
        if (!write_file(file, rq_result_table_csv(r, t))) {
          std::cerr << "error: cannot write " << file << "\n";
          code = std::max(code, kConfigError);
        }
      }
    }
  }
  summaries += "]\n";
  if (!args.summary_path.empty() && !write_file(args.summary_path, summaries)) {
    std::cerr << "error: cannot write " << args.summary_path << "\n";
    code = std::max(code, kConfigError);
  }
  return code;
}

struct CompileArgs {
  std::string unitary_path;
  int nbar = 0;
  std::string strategy;
  std::string tau_p;
  bool align = false;
  std::string output;
};

int cmd_compile(const CompileArgs& a) {
  std::string text;
  if (!read_file(a.unitary_path, text)) {
    std::cerr << "error: cannot read " << a.unitary_path << "\n";
    return kConfigError;
  }
  std::string options = "{";
  auto add = [&](const std::string& kv) { options += (options.size() > 1 ? "," : "") + kv; };
  if (!a.strategy.empty()) add("\"strategy\":\"" + a.strategy + "\"");
  if (!a.tau_p.empty()) add("\"tau_p\":\"" + a.tau_p + "\"");
  if (a.align) add("\"align_to_revival\":true");
  options += "}";
  rq_schedule* raw = nullptr;
  const rq_status s = rq_compile_unitary(text.c_str(), a.nbar, options.c_str(), &raw);
  if (s != RQ_OK) {
    std::cerr << "error: " << rq_last_error() << "\n";
    return exit_code_for(s);
  }
  SchedulePtr sched(raw);
  if (a.output.empty()) {
    std::cout << rq_schedule_json(sched.get());
  } else if (!write_file(a.output, rq_schedule_json(sched.get()))) {
    std::cerr << "error: cannot write " << a.output << "\n";
    return kConfigError;
  } else {
    std::cout << "wrote " << a.output << " (" << rq_schedule_pulse_count(sched.get())
              << " pulses)\n";
  }
  return kPass;
}

struct VerifyArgs {
  std::string schedule_path;
  std::string unitary_path;
  std::string model = "full";
  std::string spectrum = "exact";
  double threshold = 0.9;
  unsigned threads = 0;
};

int cmd_verify(const VerifyArgs& a) {
  std::string sched_text, unitary_text;
  if (!read_file(a.schedule_path, sched_text)) {
    std::cerr << "error: cannot read " << a.schedule_path << "\n";
    return kConfigError;
  }
  if (!read_file(a.unitary_path, unitary_text)) {
    std::cerr << "error: cannot read " << a.unitary_path << "\n";
    return kConfigError;
  }
  rq_schedule* raw = nullptr;
  rq_status s = rq_schedule_from_json(sched_text.c_str(), &raw);
  if (s != RQ_OK) {
    std::cerr << "error: " << rq_last_error() << "\n";
    return exit_code_for(s);
  }
  SchedulePtr sched(raw);
  const std::string options = "{\"model\":\"" + a.model + "\",\"spectrum\":\"" + a.spectrum +
                              "\",\"threads\":" + std::to_string(a.threads) + "}";
  double fidelity = 0.0;
  s = rq_verify(sched.get(), unitary_text.c_str(), options.c_str(), &fidelity);
  if (s != RQ_OK) {
    std::cerr << "error: " << rq_last_error() << "\n";
    return exit_code_for(s);
  }
  const bool ok = fidelity >= a.threshold;
  std::ostringstream os;
  os.precision(10);
  os << (ok ? "PASS" : "FAIL") << " verify: process_fidelity=" << fidelity
     << " threshold=" << a.threshold << " model=" << a.model << " spectrum=" << a.spectrum;
  std::cout << os.str() << "\n";
  return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rydqudit: qudit wave-packet simulation and gate compilation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rq_version()));

  app.add_subcommand("list", "List built-in scenarios");

  std::string describe_name;
  auto* describe = app.add_subcommand("describe", "Describe a built-in scenario");
  describe->add_option("name", describe_name, "Scenario name")->required();

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run scenarios by name, 'all', or config file path");
  run->add_option("targets", run_args.targets, "Scenario names or JSON config files")->required();
  run->add_option("-j,--jobs", run_args.jobs, "Scenarios run in parallel")->check(CLI::PositiveNumber);
  run->add_option("-t,--threads", run_args.threads, "Threads inside each scenario")
      ->check(CLI::PositiveNumber);
  run->add_option("--trace", run_args.trace_path, "Write the trace CSV (single scenario)");
  run->add_option("--summary", run_args.summary_path, "Write the JSON summaries");
  run->add_option("--tables", run_args.tables_dir, "Directory for auxiliary table CSVs");

  CompileArgs compile_args;
  auto* compile = app.add_subcommand("compile", "Compile a unitary file into a pulse schedule");
  compile->add_option("unitary", compile_args.unitary_path, "Unitary JSON file")->required();
  compile->add_option("--nbar", compile_args.nbar, "Principal quantum number (overrides file)");
  compile->add_option("--strategy", compile_args.strategy, "chain | fragments");
  compile->add_option("--tau-p", compile_args.tau_p, "Pulse FWHM with unit, e.g. '27 ps'");
  compile->add_flag("--align-revival", compile_args.align, "Pad to a multiple of T_rev");
  compile->add_option("-o,--output", compile_args.output, "Schedule output file");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Simulate a schedule and report process fidelity");
  verify->add_option("schedule", verify_args.schedule_path, "Schedule JSON file")->required();
  verify->add_option("unitary", verify_args.unitary_path, "Unitary JSON file")->required();
  verify->add_option("--model", verify_args.model, "full | ideal");
  verify->add_option("--spectrum", verify_args.spectrum, "exact | taylor1 | taylor2 | taylor3");
  verify->add_option("--threshold", verify_args.threshold, "Pass threshold");
  verify->add_option("-t,--threads", verify_args.threads, "Worker threads (0 = one per column)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }

  if (app.got_subcommand("list")) return cmd_list();
  if (app.got_subcommand("describe")) return cmd_describe(describe_name);
  if (app.got_subcommand("run")) return cmd_run(run_args);
  if (app.got_subcommand("compile")) return cmd_compile(compile_args);
  return cmd_verify(verify_args);
}
