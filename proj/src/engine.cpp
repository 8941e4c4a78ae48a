#include "vtc/engine.hpp"

#include <atomic>
#include <cctype>
#include <chrono>
#include <nlohmann/json.hpp>
#include <thread>

#include "vtc/errors.hpp"
#include "vtc/render.hpp"
#include "vtc/util.hpp"

namespace vtc {

namespace {

int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::optional<std::string> last_boxed(std::string_view text) {
  const std::string_view marker = "\\boxed{";
  size_t pos = text.rfind(marker);
  if (pos == std::string_view::npos) return std::nullopt;
  size_t start = pos + marker.size();
  int depth = 1;
  for (size_t i = start; i < text.size(); ++i) {
    if (text[i] == '{') ++depth;
    else if (text[i] == '}') {
      if (--depth == 0) return std::string(trim(text.substr(start, i - start)));
    }
  }
  return std::nullopt;
}

std::optional<std::string> last_number(std::string_view text) {
  // Rightmost integer or decimal, with optional sign.
  for (size_t i = text.size(); i-- > 0;) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) continue;
    size_t end = i + 1;
    size_t begin = i;
    bool seen_dot = false;
    while (begin > 0) {
      char c = text[begin - 1];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        --begin;
      } else if (c == '.' && !seen_dot && begin >= 2 &&
                 std::isdigit(static_cast<unsigned char>(text[begin - 2]))) {
        seen_dot = true;
        begin -= 2;
      } else {
        break;
      }
    }
    if (begin > 0 && (text[begin - 1] == '-' || text[begin - 1] == '+')) {
      char before = begin >= 2 ? text[begin - 2] : ' ';
      if (!std::isalnum(static_cast<unsigned char>(before))) --begin;
    }
    return std::string(text.substr(begin, end - begin));
  }
  return std::nullopt;
}

struct TransitionOutcome {
  bool finished = false;  // answered or failed
};

// One Algorithm-1 step shared by the sequential and batched drivers:
// call the backend, stop on an answer span, otherwise render the reasoning
// and grow the image set (except on the final iteration, whose output only
// feeds fallback extraction).
TransitionOutcome run_iteration(RunResult& res, std::vector<PageImage>& images, size_t iteration,
                                const std::string& question, Backend& backend,
                                const EngineConfig& cfg) {
  IterationRecord rec;
  rec.iteration = iteration;
  rec.images_sent = images.size();
  rec.start_ms = now_ms();

  Prompt prompt;
  prompt.system_prompt = cfg.system_prompt;
  prompt.question = question;
  prompt.images = std::span<const PageImage>(images.data(), images.size());
  prompt.sampling = cfg.sampling;

  BackendOutput out;
  try {
    out = backend.complete(prompt);
  } catch (const std::exception& e) {
    res.status = RequestStatus::kFailed;
    res.error = e.what();
    res.failed_iteration = iteration;
    return {true};
  }
  rec.end_ms = now_ms();
  rec.completion_tokens = out.completion_tokens;
  rec.finish_reason = out.finish_reason;
  rec.output_text = out.text;
  rec.reasoning_text = std::string(extract_reasoning(out.text));

  if (auto answer = extract_answer(out.text)) {
    rec.answered = true;
    res.answer = std::move(answer);
    res.status = RequestStatus::kAnswered;
    res.iterations.push_back(std::move(rec));
    return {true};
  }

  if (iteration < cfg.max_iterations) {
    try {
      std::vector<PageImage> pages = render_document(rec.reasoning_text, cfg.render);
      backend.register_rendered(rec.reasoning_text, pages);
      rec.pages_rendered = pages.size();
      for (PageImage& p : pages) images.push_back(std::move(p));
    } catch (const std::exception& e) {
      res.status = RequestStatus::kFailed;
      res.error = e.what();
      res.failed_iteration = iteration;
      res.iterations.push_back(std::move(rec));
      return {true};
    }
  }
  res.iterations.push_back(std::move(rec));
  return {false};
}

void finish_exhausted(RunResult& res) {
  // Iteration limit reached: fall back to extracting from the last output.
  std::string last;
  if (!res.iterations.empty()) last = res.iterations.back().output_text;
  if (auto answer = extract_answer_fallback(last)) {
    res.answer = std::move(answer);
    res.answer_via_fallback = true;
    res.status = RequestStatus::kAnswered;
  } else {
    res.status = RequestStatus::kExhausted;
  }
}

}  // namespace

std::string to_string(RequestStatus s) {
  switch (s) {
    case RequestStatus::kActive: return "active";
    case RequestStatus::kAnswered: return "answered";
    case RequestStatus::kExhausted: return "exhausted";
    case RequestStatus::kFailed: return "failed";
  }
  return "failed";
}

size_t RunResult::total_completion_tokens() const {
  size_t total = 0;
  for (const IterationRecord& rec : iterations) total += rec.completion_tokens;
  return total;
}

std::optional<std::string> extract_answer(std::string_view text) {
  const std::string_view open = kAnswerOpen;
  const std::string_view close = kAnswerClose;
  size_t begin = text.find(open);
  if (begin == std::string_view::npos) return std::nullopt;
  size_t end = text.find(close, begin + open.size());
  if (end == std::string_view::npos) return std::nullopt;
  return std::string(trim(text.substr(begin + open.size(), end - begin - open.size())));
}

std::optional<std::string> extract_answer_fallback(std::string_view text) {
  if (auto boxed = last_boxed(text)) return boxed;
  return last_number(text);
}

RunResult run_request(const std::string& question, Backend& backend, const EngineConfig& cfg) {
  if (cfg.max_iterations < 1) throw UsageError("engine: max_iterations must be >= 1");

  RunResult res;
  res.request_id = question;
  res.question = question;
  std::vector<PageImage> images;

  for (size_t i = 1; i <= cfg.max_iterations; ++i) {
    if (run_iteration(res, images, i, question, backend, cfg).finished) {
      res.total_images = images.size();
      return res;
    }
  }
  res.total_images = images.size();
  finish_exhausted(res);
  return res;
}

RunResult run_one_pass(const std::string& question, Backend& backend, const EngineConfig& cfg) {
  RunResult res;
  res.request_id = question;
  res.question = question;

  IterationRecord rec;
  rec.iteration = 1;
  rec.start_ms = now_ms();

  Prompt prompt;
  prompt.system_prompt = cfg.baseline_system_prompt;
  prompt.question = question;
  prompt.sampling = cfg.sampling;

  try {
    BackendOutput out = backend.complete(prompt);
    rec.end_ms = now_ms();
    rec.completion_tokens = out.completion_tokens;
    rec.finish_reason = out.finish_reason;
    rec.output_text = out.text;
    rec.reasoning_text = std::string(extract_reasoning(out.text));
    if (auto answer = extract_answer(out.text)) {
      rec.answered = true;
      res.answer = std::move(answer);
      res.status = RequestStatus::kAnswered;
    } else if (auto fallback = extract_answer_fallback(out.text)) {
      res.answer = std::move(fallback);
      res.answer_via_fallback = true;
      res.status = RequestStatus::kAnswered;
    } else {
      res.status = RequestStatus::kExhausted;
    }
    res.iterations.push_back(std::move(rec));
  } catch (const std::exception& e) {
    res.status = RequestStatus::kFailed;
    res.error = e.what();
    res.failed_iteration = 1;
  }
  return res;
}

BatchResult run_batch(const std::vector<std::string>& questions, Backend& backend,
                      const EngineConfig& cfg, int max_in_flight) {
  if (questions.empty()) throw UsageError("run_batch: need at least one question");
  if (cfg.max_iterations < 1) throw UsageError("engine: max_iterations must be >= 1");
  if (max_in_flight < 1) max_in_flight = 1;

  struct Slot {
    RunResult res;
    std::vector<PageImage> images;
    bool done = false;
  };
  std::vector<Slot> slots(questions.size());
  for (size_t k = 0; k < questions.size(); ++k) {
    slots[k].res.request_id = "req-" + std::to_string(k);
    slots[k].res.question = questions[k];
  }

  BatchResult batch;
  std::vector<size_t> active;
  for (size_t k = 0; k < questions.size(); ++k) active.push_back(k);

  for (size_t round = 1; round <= cfg.max_iterations && !active.empty(); ++round) {
    batch.active_per_round.push_back(active.size());

    // Per-request work is slot-isolated; workers pull indices off a shared
    // cursor up to the in-flight cap.
    std::atomic<size_t> cursor{0};
    auto work = [&]() {
      for (;;) {
        size_t idx = cursor.fetch_add(1);
        if (idx >= active.size()) return;
        size_t k = active[idx];
        Slot& slot = slots[k];
        if (run_iteration(slot.res, slot.images, round, questions[k], backend, cfg).finished)
          slot.done = true;
      }
    };
    size_t workers = std::min<size_t>(static_cast<size_t>(max_in_flight), active.size());
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (size_t t = 0; t < workers; ++t) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }

    std::vector<size_t> survivors;
    for (size_t k : active)
      if (!slots[k].done) survivors.push_back(k);
    active = std::move(survivors);
  }

  // Time-out handling for whatever is still active.
  for (size_t k : active) finish_exhausted(slots[k].res);

  for (Slot& slot : slots) {
    slot.res.total_images = slot.images.size();
    batch.results.push_back(std::move(slot.res));
  }
  return batch;
}

std::string iteration_log_json(const RunResult& result, const IterationRecord& rec) {
  nlohmann::json j;
  j["request_id"] = result.request_id;
  j["iteration"] = rec.iteration;
  j["start_ms"] = rec.start_ms;
  j["end_ms"] = rec.end_ms;
  j["images_sent"] = rec.images_sent;
  j["completion_tokens"] = rec.completion_tokens;
  j["finish_reason"] = to_string(rec.finish_reason);
  j["answered"] = rec.answered;
  j["pages_rendered"] = rec.pages_rendered;
  return j.dump();
}

}  // namespace vtc
