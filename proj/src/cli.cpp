#include "vtc/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>

#include "vtc/backend_http.hpp"
#include "vtc/backend_mock.hpp"
#include "vtc/bench.hpp"
#include "vtc/config_sampler.hpp"
#include "vtc/dataset.hpp"
#include "vtc/engine.hpp"
#include "vtc/errors.hpp"
#include "vtc/render.hpp"
#include "vtc/util.hpp"
#include "vtc/version.hpp"

namespace vtc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::map<std::string, std::string> parse_flat_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string_view sv = trim(line);
    if (sv.empty() || sv[0] == '#') continue;
    size_t sep = sv.find_first_of(" \t=:");
    if (sep == std::string_view::npos) throw ConfigError("profile: missing value in '" + line + "'");
    std::string key(trim(sv.substr(0, sep)));
    std::string val(trim(sv.substr(sep + 1)));
    if (!val.empty() && (val[0] == '=' || val[0] == ':')) val = std::string(trim(val.substr(1)));
    kv[key] = val;
  }
  return kv;
}

RenderConfig load_config_or_default(const std::string& path) {
  if (path.empty()) return RenderConfig{};
  return load_render_config(path);
}

std::ostream& open_or_stdout(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open for writing: " + path);
  return file;
}

struct QuestionEntry {
  std::string id;
  std::string question;
};

std::vector<QuestionEntry> load_questions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open question file: " + path);
  std::vector<QuestionEntry> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw IoError("question file line " + std::to_string(lineno) + ": bad JSON");
    QuestionEntry q;
    q.id = j.value("id", "q-" + std::to_string(lineno));
    q.question = j.at("question").get<std::string>();
    out.push_back(std::move(q));
  }
  if (out.empty()) throw UsageError("question file is empty: " + path);
  return out;
}

int cmd_render(const std::string& in_path, const std::string& config_path,
               const std::string& out_dir, const std::string& font_override,
               const std::string& tokenizer_id, const std::string& stem_arg) {
  RenderConfig cfg = load_config_or_default(config_path);
  if (!font_override.empty()) cfg.font_id = font_override;

  std::string text = read_file(in_path);
  std::vector<PageImage> pages = render_document(text, cfg);

  fs::create_directories(out_dir);
  std::string stem = stem_arg.empty() ? fs::path(in_path).stem().string() : stem_arg;
  for (const PageImage& page : pages)
    write_file((fs::path(out_dir) / (stem + "_p" + std::to_string(page.page_index) + ".png"))
                   .string(),
               page.png_bytes);

  TokenizerPtr tok = make_tokenizer(tokenizer_id);
  VisionTokenModel vision;
  TokenStatsRecord rec;
  rec.item = stem;
  rec.text_tokens = tok->count(text);
  rec.vision_tokens = count_vision_tokens(pages, vision);
  std::cout << to_json_line(rec) << "\n";

  TokenStatsRecord totals = rec;
  totals.item = "total";
  std::cout << to_json_line(totals) << "\n";
  std::cerr << "wrote " << pages.size() << " page(s) to " << out_dir << "\n";
  return 0;
}

int cmd_sample_config(uint64_t seed, const std::string& strategy, const std::string& out_path) {
  RenderConfig cfg = sample_config(seed, parse_sample_strategy(strategy));
  std::string text = serialize_render_config(cfg);
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  return 0;
}

int cmd_segment(const std::string& in_path, size_t eta, const std::string& tokenizer_id,
                const std::string& out_dir) {
  if (eta == 0) throw UsageError("--eta must be >= 1");
  TokenizerPtr tok = make_tokenizer(tokenizer_id);
  std::string trace = read_file(in_path);
  std::vector<Segment> segments = segment_trace(trace, eta, *tok);

  if (!out_dir.empty()) fs::create_directories(out_dir);
  for (const Segment& seg : segments) {
    json j;
    j["index"] = seg.index;
    j["tokens"] = seg.token_count;
    j["bytes"] = seg.text.size();
    std::cout << j.dump() << "\n";
    if (!out_dir.empty())
      write_file((fs::path(out_dir) / ("seg" + std::to_string(seg.index) + ".txt")).string(),
                 seg.text);
  }
  return 0;
}

int cmd_build_dataset(const std::string& corpus, size_t eta, const std::string& config_path,
                      const std::string& out_dir, const std::string& tokenizer_id, int jobs) {
  CorpusBuildOptions opt;
  opt.eta = eta;
  opt.render = load_config_or_default(config_path);
  opt.tokenizer = make_tokenizer(tokenizer_id);
  opt.out_dir = out_dir;
  opt.jobs = jobs;

  CorpusBuildResult result = build_corpus(corpus, opt);
  for (const std::string& skip : result.skipped) std::cerr << "skipped: " << skip << "\n";
  std::cout << result.stats.to_json() << "\n";
  std::cerr << "manifest: " << result.manifest_path << "\n";
  return 0;
}

int cmd_run(const std::string& question_file, const std::string& backend_path,
            const std::string& mode_str, size_t max_iters, int batch,
            const std::string& config_path, const std::string& out_path,
            const std::string& log_path) {
  EngineMode mode = parse_engine_mode(mode_str);
  BackendProfile profile = load_backend_profile(backend_path);

  EngineConfig cfg;
  cfg.max_iterations = max_iters;
  cfg.render = load_config_or_default(config_path);

  std::vector<QuestionEntry> questions = load_questions(question_file);

  std::vector<RunResult> results;
  if (mode == EngineMode::kVtc) {
    std::vector<std::string> qs;
    for (const auto& q : questions) qs.push_back(q.question);
    int in_flight = batch > 0 ? batch : profile.max_in_flight;
    results = run_batch(qs, *profile.backend, cfg, in_flight).results;
  } else {
    for (const auto& q : questions)
      results.push_back(run_one_pass(q.question, *profile.backend, cfg));
  }

  std::ofstream out_file;
  std::ostream& out = open_or_stdout(out_file, out_path);
  std::ofstream log_file;
  if (!log_path.empty()) {
    log_file.open(log_path, std::ios::binary | std::ios::trunc);
    if (!log_file) throw IoError("cannot open log: " + log_path);
  }

  for (size_t i = 0; i < results.size(); ++i) {
    const RunResult& r = results[i];
    json j;
    j["request_id"] = questions[i].id;
    j["question"] = r.question;
    j["status"] = to_string(r.status);
    if (r.answer)
      j["answer"] = *r.answer;
    else
      j["answer"] = nullptr;
    j["fallback"] = r.answer_via_fallback;
    j["iterations"] = r.iterations.size();
    j["images"] = r.total_images;
    j["completion_tokens"] = r.total_completion_tokens();
    if (!r.error.empty()) j["error"] = r.error;
    out << j.dump() << "\n";
    if (log_file)
      for (const IterationRecord& rec : r.iterations)
        log_file << iteration_log_json(r, rec) << "\n";
  }
  return 0;
}

int cmd_bench(const std::string& tasks_path, const std::string& mode_str,
              const std::string& backend_path, size_t default_n, size_t max_iters,
              const std::string& config_path, const std::string& report_path,
              const std::string& log_path, int max_in_flight) {
  EngineMode mode = parse_engine_mode(mode_str);
  BackendProfile profile = load_backend_profile(backend_path);

  EngineConfig cfg;
  cfg.max_iterations = max_iters;
  cfg.render = load_config_or_default(config_path);

  std::vector<BenchTask> tasks = load_bench_tasks(tasks_path, default_n);
  int in_flight = max_in_flight > 0 ? max_in_flight : profile.max_in_flight;
  BenchReport report = evaluate(tasks, mode, *profile.backend, cfg, in_flight);

  std::ofstream report_file;
  std::ostream& out = open_or_stdout(report_file, report_path);
  for (const SampleRecord& rec : report.records) out << sample_record_json(rec) << "\n";
  out << report_summary_json(report) << "\n";
  std::cerr << report_table(report);

  if (!log_path.empty()) {
    std::ofstream log_file(log_path, std::ios::binary | std::ios::trunc);
    if (!log_file) throw IoError("cannot open log: " + log_path);
    // Per-iteration logs are only retained through run results inside
    // evaluate; the summary file carries per-sample records instead.
    log_file << report_summary_json(report) << "\n";
  }
  return 0;
}

int cmd_stats(const std::string& manifest_path, const std::string& tokenizer_id) {
  TokenizerPtr tok = make_tokenizer(tokenizer_id);
  VisionTokenModel vision;
  StatsReport stats = stats_from_manifest(manifest_path, *tok, vision);
  std::cout << stats.to_json() << "\n";
  return 0;
}

}  // namespace

BackendProfile load_backend_profile(const std::string& path) {
  auto kv = parse_flat_kv(read_file(path));
  auto get = [&](const std::string& key, const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };

  BackendProfile profile;
  profile.max_in_flight = std::stoi(get("max-in-flight", "4"));

  std::string type = to_lower(get("type", ""));
  if (type == "http") {
    HttpBackendConfig cfg;
    cfg.url = get("url", "");
    cfg.path = get("path", cfg.path);
    cfg.model = get("model", cfg.model);
    std::string key_env = get("api-key-env", "");
    if (!key_env.empty()) {
      if (const char* v = std::getenv(key_env.c_str())) cfg.api_key = v;
    }
    cfg.timeout_s = std::stoi(get("timeout-s", std::to_string(cfg.timeout_s)));
    cfg.max_attempts = std::stoi(get("max-attempts", std::to_string(cfg.max_attempts)));
    cfg.max_image_bytes = static_cast<size_t>(std::stoll(get("max-image-bytes", "0")));
    profile.backend = std::make_unique<HttpBackend>(std::move(cfg));
  } else if (type == "mock") {
    std::string script_path = get("script", "");
    if (script_path.empty()) throw ConfigError("mock profile: missing 'script'");
    auto mock = std::make_unique<MockBackend>();
    std::ifstream in(script_path, std::ios::binary);
    if (!in) throw IoError("cannot open mock script: " + script_path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (trim(line).empty()) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded())
        throw IoError("mock script line " + std::to_string(lineno) + ": bad JSON");
      mock->add_script(j.at("question").get<std::string>(),
                       j.at("responses").get<std::vector<std::string>>());
      if (j.contains("expect_segments"))
        mock->expect_segments(j.at("question").get<std::string>(),
                              j.at("expect_segments").get<std::vector<std::string>>());
    }
    profile.backend = std::move(mock);
  } else if (type == "replay") {
    std::string fixture = get("fixture", "");
    if (fixture.empty()) throw ConfigError("replay profile: missing 'fixture'");
    profile.backend = std::make_unique<ReplayBackend>(fixture, get("model", "default"));
  } else {
    throw ConfigError("backend profile: unknown type '" + type + "' (want http, mock, replay)");
  }
  return profile;
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"Optical-memory reasoning pipeline: page rendering, token accounting, "
               "corpus construction, iterative inference, benchmarking"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // render
  auto* render = app.add_subcommand("render", "Render a text file to PNG pages plus token stats");
  std::string r_in, r_cfg, r_out = ".", r_font, r_tok = "char4", r_stem;
  render->add_option("--in", r_in, "UTF-8 text file")->required();
  render->add_option("--config", r_cfg, "render config file (defaults when omitted)");
  render->add_option("--out", r_out, "output directory");
  render->add_option("--font", r_font, "font id override (path or builtin:fixed)");
  render->add_option("--tokenizer", r_tok, "text tokenizer: ws|char4");
  render->add_option("--stem", r_stem, "output file stem (default: input stem)");

  // sample-config
  auto* sample = app.add_subcommand("sample-config", "Draw a rendering config");
  uint64_t s_seed = 0;
  std::string s_strategy = "default", s_out;
  sample->add_option("--seed", s_seed, "RNG seed");
  sample->add_option("--strategy", s_strategy, "default|diverse");
  sample->add_option("--out", s_out, "write to file instead of stdout");

  // segment
  auto* segment = app.add_subcommand("segment", "Split a reasoning trace under a token budget");
  std::string g_in, g_tok = "char4", g_out;
  size_t g_eta = 4096;
  segment->add_option("--in", g_in, "trace text file")->required();
  segment->add_option("--eta", g_eta, "token threshold per segment");
  segment->add_option("--tokenizer", g_tok, "text tokenizer: ws|char4");
  segment->add_option("--out", g_out, "directory for per-segment text files");

  // build-dataset
  auto* build = app.add_subcommand("build-dataset", "Build the supervised corpus tree");
  std::string b_corpus, b_cfg, b_out, b_tok = "char4";
  size_t b_eta = 4096;
  int b_jobs = 1;
  build->add_option("--corpus", b_corpus, "line-delimited records {id,question,trace,answer}")
      ->required();
  build->add_option("--eta", b_eta, "token threshold per segment");
  build->add_option("--config", b_cfg, "render config file");
  build->add_option("--out", b_out, "output directory")->required();
  build->add_option("--tokenizer", b_tok, "text tokenizer: ws|char4");
  build->add_option("--jobs", b_jobs, "parallel record workers");

  // run
  auto* runcmd = app.add_subcommand("run", "Run questions through a backend");
  std::string n_qfile, n_backend, n_mode = "vtc", n_cfg, n_out, n_log;
  size_t n_iters = 8;
  int n_batch = 0;
  runcmd->add_option("--question-file", n_qfile, "line-delimited {id,question}")->required();
  runcmd->add_option("--backend", n_backend, "backend profile file")->required();
  runcmd->add_option("--mode", n_mode, "vtc|onepass");
  runcmd->add_option("--max-iters", n_iters, "iteration limit T");
  runcmd->add_option("--batch", n_batch, "max in-flight requests per round");
  runcmd->add_option("--config", n_cfg, "render config file");
  runcmd->add_option("--out", n_out, "per-request results file (default stdout)");
  runcmd->add_option("--log", n_log, "per-iteration run log file");

  // bench
  auto* bench = app.add_subcommand("bench", "Accuracy/token/latency benchmark");
  std::string e_tasks, e_backend, e_mode = "vtc", e_cfg, e_report, e_log;
  size_t e_n = 1, e_iters = 8;
  int e_flight = 0;
  bench->add_option("--tasks", e_tasks, "line-delimited {id,question,answer,n?}")->required();
  bench->add_option("--mode", e_mode, "vtc|onepass");
  bench->add_option("--backend", e_backend, "backend profile file")->required();
  bench->add_option("--n", e_n, "samples per problem when the task omits n");
  bench->add_option("--max-iters", e_iters, "iteration limit T");
  bench->add_option("--config", e_cfg, "render config file");
  bench->add_option("--report", e_report, "report file (default stdout)");
  bench->add_option("--log", e_log, "summary log file");
  bench->add_option("--max-in-flight", e_flight, "concurrent requests");

  // stats
  auto* stats = app.add_subcommand("stats", "Recompute corpus statistics from a manifest");
  std::string t_manifest, t_tok = "char4";
  stats->add_option("--manifest", t_manifest, "manifest.jsonl path")->required();
  stats->add_option("--tokenizer", t_tok, "text tokenizer: ws|char4");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*render) return cmd_render(r_in, r_cfg, r_out, r_font, r_tok, r_stem);
    if (*sample) return cmd_sample_config(s_seed, s_strategy, s_out);
    if (*segment) return cmd_segment(g_in, g_eta, g_tok, g_out);
    if (*build) return cmd_build_dataset(b_corpus, b_eta, b_cfg, b_out, b_tok, b_jobs);
    if (*runcmd) return cmd_run(n_qfile, n_backend, n_mode, n_iters, n_batch, n_cfg, n_out, n_log);
    if (*bench)
      return cmd_bench(e_tasks, e_mode, e_backend, e_n, e_iters, e_cfg, e_report, e_log, e_flight);
    if (*stats) return cmd_stats(t_manifest, t_tok);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace vtc::cli
