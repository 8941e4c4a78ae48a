#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vtc/backend.hpp"
#include "vtc/prompts.hpp"
#include "vtc/render_config.hpp"

namespace vtc {

struct EngineConfig {
  std::string system_prompt = kVtcSystemPrompt;
  std::string baseline_system_prompt = kBaselineSystemPrompt;
  size_t max_iterations = 8;  // T
  SamplingParams sampling;
  RenderConfig render;
};

enum class RequestStatus { kActive, kAnswered, kExhausted, kFailed };

std::string to_string(RequestStatus s);

struct IterationRecord {
  size_t iteration = 0;  // 1-based
  int64_t start_ms = 0;
  int64_t end_ms = 0;
  size_t images_sent = 0;
  size_t completion_tokens = 0;
  FinishReason finish_reason = FinishReason::kStop;
  bool answered = false;
  size_t pages_rendered = 0;
  std::string output_text;
  std::string reasoning_text;  // extracted LR_i
};

struct RunResult {
  std::string request_id;
  std::string question;
  RequestStatus status = RequestStatus::kActive;
  std::optional<std::string> answer;
  bool answer_via_fallback = false;
  std::vector<IterationRecord> iterations;
  size_t total_images = 0;
  std::string error;
  size_t failed_iteration = 0;

  size_t total_completion_tokens() const;
};

/// Content of the first well-formed <answer>...</answer> span, trimmed.
std::optional<std::string> extract_answer(std::string_view text);

/// Iteration-limit fallback: the last \boxed{...} expression, else the final
/// number in the text.
std::optional<std::string> extract_answer_fallback(std::string_view text);

/// Iterative loop: generate, return on an answer span, otherwise render the
/// extracted reasoning, append it to the image set and continue; after T
/// iterations fall back to extracting from the last output. Backend or
/// render failures mark the result failed with the iteration index; the
/// accumulated log is preserved.
RunResult run_request(const std::string& question, Backend& backend, const EngineConfig& config);

/// One-pass baseline: a single call under the baseline system prompt with no
/// images; span extraction first, then fallback.
RunResult run_one_pass(const std::string& question, Backend& backend, const EngineConfig& config);

struct BatchResult {
  std::vector<RunResult> results;        // input order
  std::vector<size_t> active_per_round;  // |S| at the start of each round run
};

/// Lock-step batched variant: one round issues prompts for every active
/// request (up to max_in_flight concurrently), applies the same per-request
/// transition as run_request and removes finished requests from the active
/// set. Per-request failures are isolated. With a deterministic backend the
/// results equal sequential run_request calls.
BatchResult run_batch(const std::vector<std::string>& questions, Backend& backend,
                      const EngineConfig& config, int max_in_flight);

/// One run-log line per (request, iteration).
std::string iteration_log_json(const RunResult& result, const IterationRecord& record);

}  // namespace vtc
