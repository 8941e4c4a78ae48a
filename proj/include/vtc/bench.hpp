#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vtc/engine.hpp"

namespace vtc {

struct BenchTask {
  std::string task_id;
  std::string question;
  std::string gold_answer;
  size_t samples = 1;  // n; 16 for small competition sets, 1 elsewhere
};

/// Line-delimited {id, question, answer, n?}; missing n falls back to
/// `default_samples`.
std::vector<BenchTask> load_bench_tasks(const std::string& path, size_t default_samples);

/// Normalized comparison: trims, unwraps \boxed{...}, then exact rational
/// equality for integers/decimals/simple fractions, else case-folded string
/// equality.
bool check_answer(std::string_view predicted, std::string_view gold);

enum class EngineMode { kVtc, kOnePass };
EngineMode parse_engine_mode(const std::string& s);
std::string to_string(EngineMode m);

struct SampleRecord {
  std::string task_id;
  size_t sample_index = 0;  // 0-based within the task
  std::optional<std::string> answer;
  bool correct = false;
  RequestStatus status = RequestStatus::kActive;
  size_t iterations = 0;
  size_t completion_tokens = 0;
  size_t images = 0;
  std::string error;
};

struct BenchReport {
  double accuracy = 0.0;   // ACC: mean per-sample correctness
  double mean_tokens = 0.0;  // TOK: mean generated tokens per sample
  double latency_s = 0.0;    // LAT: wall clock / generations
  size_t problems = 0;       // m
  size_t samples_per_problem = 0;  // n when uniform across tasks, else 0
  size_t generations = 0;
  int64_t t1_ms = 0;
  int64_t t2_ms = 0;
  std::vector<SampleRecord> records;
};

/// LAT = (t2 - t1) / (m * n), timestamps in seconds.
double latency_seconds(double t1_s, double t2_s, size_t problems, size_t samples_per_problem);

/// Runs every task n times (one batched engine run for the iterative mode),
/// scores with check_answer, and computes ACC/TOK/LAT. Per-sample failures
/// score zero and are flagged; the report always emits.
BenchReport evaluate(const std::vector<BenchTask>& tasks, EngineMode mode, Backend& backend,
                     const EngineConfig& config, int max_in_flight);

std::string sample_record_json(const SampleRecord& rec);
std::string report_summary_json(const BenchReport& report);
std::string report_table(const BenchReport& report);

}  // namespace vtc
