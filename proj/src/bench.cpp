#include "vtc/bench.hpp"

#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "vtc/errors.hpp"
#include "vtc/util.hpp"

namespace vtc {

using nlohmann::json;

namespace {

int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string unwrap_markup(std::string_view s) {
  std::string out(trim(s));
  const std::string_view boxed = "\\boxed{";
  size_t pos = out.rfind(boxed);
  if (pos != std::string::npos) {
    size_t start = pos + boxed.size();
    int depth = 1;
    for (size_t i = start; i < out.size(); ++i) {
      if (out[i] == '{') ++depth;
      else if (out[i] == '}' && --depth == 0) {
        out = std::string(trim(std::string_view(out).substr(start, i - start)));
        break;
      }
    }
  }
  if (out.size() >= 2 && out.front() == '$' && out.back() == '$')
    out = std::string(trim(std::string_view(out).substr(1, out.size() - 2)));
  return out;
}

// Exact rational value: sign * digits [. digits] or sign * a/b.
struct Rational {
  long long num = 0;
  long long den = 1;
};

bool parse_decimal(std::string_view s, long long& num, long long& den) {
  num = 0;
  den = 1;
  bool seen_digit = false;
  bool seen_dot = false;
  for (char c : s) {
    if (c == ',') continue;  // thousands separator
    if (c == '.') {
      if (seen_dot) return false;
      seen_dot = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    if (num > (1LL << 60) / 10 || (seen_dot && den > (1LL << 60) / 10)) return false;
    num = num * 10 + (c - '0');
    if (seen_dot) den *= 10;
    seen_digit = true;
  }
  return seen_digit;
}

std::optional<Rational> parse_rational(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  long long sign = 1;
  if (s.front() == '+' || s.front() == '-') {
    if (s.front() == '-') sign = -1;
    s.remove_prefix(1);
    s = trim(s);
  }
  size_t slash = s.find('/');
  Rational r;
  if (slash == std::string_view::npos) {
    if (!parse_decimal(s, r.num, r.den)) return std::nullopt;
  } else {
    long long bn, bd;
    long long an, ad;
    if (!parse_decimal(trim(s.substr(0, slash)), an, ad)) return std::nullopt;
    if (!parse_decimal(trim(s.substr(slash + 1)), bn, bd)) return std::nullopt;
    if (bn == 0) return std::nullopt;
    // (an/ad) / (bn/bd) = an*bd / (ad*bn)
    r.num = an * bd;
    r.den = ad * bn;
  }
  r.num *= sign;
  if (r.den == 0) return std::nullopt;
  return r;
}

bool rationals_equal(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
}

}  // namespace

std::vector<BenchTask> load_bench_tasks(const std::string& path, size_t default_samples) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open task file: " + path);
  std::vector<BenchTask> tasks;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw IoError("task file line " + std::to_string(lineno) + ": bad JSON");
    BenchTask t;
    t.task_id = j.value("id", "task-" + std::to_string(lineno));
    t.question = j.at("question").get<std::string>();
    t.gold_answer = j.at("answer").get<std::string>();
    t.samples = j.value("n", default_samples);
    if (t.samples < 1) throw UsageError("task " + t.task_id + ": n must be >= 1");
    tasks.push_back(std::move(t));
  }
  return tasks;
}

bool check_answer(std::string_view predicted, std::string_view gold) {
  std::string p = unwrap_markup(predicted);
  std::string g = unwrap_markup(gold);
  if (p.empty() || g.empty()) return false;

  auto pr = parse_rational(p);
  auto gr = parse_rational(g);
  if (pr && gr) return rationals_equal(*pr, *gr);

  return to_lower(p) == to_lower(g);
}

EngineMode parse_engine_mode(const std::string& s) {
  std::string v = to_lower(s);
  if (v == "vtc") return EngineMode::kVtc;
  if (v == "onepass" || v == "one-pass") return EngineMode::kOnePass;
  throw UsageError("unknown mode '" + s + "' (want: vtc, onepass)");
}

std::string to_string(EngineMode m) { return m == EngineMode::kVtc ? "vtc" : "onepass"; }

double latency_seconds(double t1_s, double t2_s, size_t problems, size_t samples_per_problem) {
  if (problems == 0 || samples_per_problem == 0)
    throw UsageError("latency: m and n must be >= 1");
  return (t2_s - t1_s) / static_cast<double>(problems * samples_per_problem);
}

BenchReport evaluate(const std::vector<BenchTask>& tasks, EngineMode mode, Backend& backend,
                     const EngineConfig& cfg, int max_in_flight) {
  if (tasks.empty()) throw UsageError("evaluate: no tasks");

  struct Expanded {
    size_t task;
    size_t sample;
  };
  std::vector<Expanded> expanded;
  std::vector<std::string> questions;
  for (size_t t = 0; t < tasks.size(); ++t) {
    for (size_t s = 0; s < tasks[t].samples; ++s) {
      expanded.push_back({t, s});
      questions.push_back(tasks[t].question);
    }
  }

  BenchReport report;
  report.problems = tasks.size();
  report.generations = expanded.size();
  report.samples_per_problem = tasks.front().samples;
  for (const BenchTask& t : tasks)
    if (t.samples != report.samples_per_problem) report.samples_per_problem = 0;

  report.t1_ms = now_ms();
  std::vector<RunResult> results;
  if (mode == EngineMode::kVtc) {
    results = run_batch(questions, backend, cfg, max_in_flight).results;
  } else {
    results.resize(questions.size());
    std::atomic<size_t> cursor{0};
    auto work = [&]() {
      for (;;) {
        size_t i = cursor.fetch_add(1);
        if (i >= questions.size()) return;
        results[i] = run_one_pass(questions[i], backend, cfg);
      }
    };
    size_t workers = std::min<size_t>(std::max(1, max_in_flight), questions.size());
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (size_t w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
  }
  report.t2_ms = now_ms();

  size_t correct = 0;
  size_t token_total = 0;
  for (size_t i = 0; i < expanded.size(); ++i) {
    const BenchTask& task = tasks[expanded[i].task];
    const RunResult& run = results[i];
    SampleRecord rec;
    rec.task_id = task.task_id;
    rec.sample_index = expanded[i].sample;
    rec.answer = run.answer;
    rec.status = run.status;
    rec.iterations = run.iterations.size();
    rec.completion_tokens = run.total_completion_tokens();
    rec.images = run.total_images;
    rec.error = run.error;
    rec.correct = run.answer.has_value() && check_answer(*run.answer, task.gold_answer);
    if (rec.correct) ++correct;
    token_total += rec.completion_tokens;
    report.records.push_back(std::move(rec));
  }

  report.accuracy = static_cast<double>(correct) / static_cast<double>(report.generations);
  report.mean_tokens = static_cast<double>(token_total) / static_cast<double>(report.generations);
  size_t n_eff = report.samples_per_problem ? report.samples_per_problem : 1;
  size_t m_eff = report.samples_per_problem ? report.problems : report.generations;
  report.latency_s =
      latency_seconds(report.t1_ms / 1000.0, report.t2_ms / 1000.0, m_eff, n_eff);
  return report;
}

std::string sample_record_json(const SampleRecord& rec) {
  json j;
  j["task_id"] = rec.task_id;
  j["sample_index"] = rec.sample_index;
  if (rec.answer)
    j["answer"] = *rec.answer;
  else
    j["answer"] = nullptr;
  j["correct"] = rec.correct;
  j["status"] = to_string(rec.status);
  j["iterations"] = rec.iterations;
  j["completion_tokens"] = rec.completion_tokens;
  j["images"] = rec.images;
  if (!rec.error.empty()) j["error"] = rec.error;
  return j.dump();
}

std::string report_summary_json(const BenchReport& report) {
  json j;
  j["type"] = "summary";
  j["accuracy"] = report.accuracy;
  j["mean_tokens"] = report.mean_tokens;
  j["latency_s"] = report.latency_s;
  j["problems"] = report.problems;
  j["samples_per_problem"] = report.samples_per_problem;
  j["generations"] = report.generations;
  j["t1_ms"] = report.t1_ms;
  j["t2_ms"] = report.t2_ms;
  return j.dump();
}

std::string report_table(const BenchReport& report) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-12s %8s %10s %10s\n", "metric", "ACC", "TOK", "LAT(s)");
  out << buf;
  std::snprintf(buf, sizeof(buf), "%-12s %8.4f %10.1f %10.3f\n", "overall", report.accuracy,
                report.mean_tokens, report.latency_s);
  out << buf;
  std::snprintf(buf, sizeof(buf), "problems=%zu samples/problem=%zu generations=%zu\n",
                report.problems, report.samples_per_problem, report.generations);
  out << buf;
  return out.str();
}

}  // namespace vtc
