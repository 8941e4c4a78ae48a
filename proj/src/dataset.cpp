#include "vtc/dataset.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <thread>

#include "vtc/errors.hpp"
#include "vtc/prompts.hpp"
#include "vtc/render.hpp"
#include "vtc/util.hpp"
#include "vtc/version.hpp"

namespace vtc {

namespace fs = std::filesystem;
using nlohmann::json;

void CorpusRecord::validate() const {
  if (question.empty()) throw UsageError("record " + record_id + ": empty question");
  if (answer.empty()) throw UsageError("record " + record_id + ": empty answer");
}

std::string image_ref(const std::string& record_id, size_t segment_index, int page_index) {
  return "images/" + record_id + "/seg" + std::to_string(segment_index) + "_p" +
         std::to_string(page_index) + ".png";
}

BuiltRecord build_instances(const CorpusRecord& record, size_t eta, const RenderConfig& config,
                            const Tokenizer& tok) {
  record.validate();

  BuiltRecord out;
  out.segments = segment_trace(record.trace, eta, tok);
  const size_t n = out.segments.size();

  // Render segments 1..n-1 exactly once; the final segment never renders.
  out.rendered.reserve(n - 1);
  FontPtr font;
  try {
    if (n > 1) font = load_font(config.font_id);
    for (size_t j = 1; j < n; ++j)
      out.rendered.push_back(render_document(out.segments[j - 1].text, config, font));
  } catch (const std::exception& e) {
    throw RecordBuildError(record.record_id, e.what());
  }

  std::vector<std::string> refs;  // accumulated image refs, segment order
  for (size_t j = 1; j < n; ++j)
    for (const PageImage& page : out.rendered[j - 1])
      refs.push_back(image_ref(record.record_id, j, page.page_index));

  out.instances.reserve(n);
  size_t ref_cursor = 0;
  for (size_t i = 1; i <= n; ++i) {
    TrainingInstance inst;
    inst.record_id = record.record_id;
    inst.step_index = i;
    inst.total_steps = n;
    inst.system_prompt = kVtcSystemPrompt;
    inst.question = record.question;
    inst.is_final = i == n;

    if (i > 1) {
      // Images of segments 1..i-1.
      ref_cursor = 0;
      for (size_t j = 1; j < i; ++j) ref_cursor += out.rendered[j - 1].size();
      inst.image_refs.assign(refs.begin(), refs.begin() + static_cast<long>(ref_cursor));
    }

    const std::string& lr = out.segments[i - 1].text;
    std::string target = kThinkOpen;
    if (i > 1) target += kContinuationPrefix;
    target += lr;
    target += kThinkClose;
    if (i == n) target += std::string(kAnswerOpen) + record.answer + kAnswerClose;
    inst.target_text = std::move(target);

    out.instances.push_back(std::move(inst));
  }
  return out;
}

IngestResult ingest_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus: " + path);

  IngestResult out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    json j = json::parse(sv, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      out.skipped.push_back("line " + std::to_string(lineno) + ": not a JSON object");
      continue;
    }
    CorpusRecord rec;
    try {
      rec.record_id = j.at("id").get<std::string>();
      rec.question = j.at("question").get<std::string>();
      rec.trace = j.value("trace", std::string());
      rec.answer = j.at("answer").get<std::string>();
      rec.validate();
    } catch (const std::exception& e) {
      out.skipped.push_back("line " + std::to_string(lineno) + ": " + e.what());
      continue;
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

std::string corpus_record_to_json(const CorpusRecord& rec) {
  json j;
  j["id"] = rec.record_id;
  j["question"] = rec.question;
  j["trace"] = rec.trace;
  j["answer"] = rec.answer;
  return j.dump();
}

double StatsReport::ratio() const { return compression_ratio(text_tokens, vision_tokens); }

std::string StatsReport::to_json() const {
  json j;
  j["records"] = records;
  j["instances"] = instances;
  j["rendered_segments"] = rendered_segments;
  j["rendered_images"] = rendered_images;
  j["text_tokens"] = text_tokens;
  j["vision_tokens"] = vision_tokens;
  if (has_ratio())
    j["ratio"] = ratio();
  else
    j["ratio"] = nullptr;  // no rendered content
  j["step_histogram"] = step_histogram;
  return j.dump();
}

namespace {

json instance_to_json(const TrainingInstance& inst) {
  json j;
  j["type"] = "instance";
  j["record_id"] = inst.record_id;
  j["step_index"] = inst.step_index;
  j["total_steps"] = inst.total_steps;
  j["system_prompt"] = inst.system_prompt;
  j["question"] = inst.question;
  j["images"] = inst.image_refs;
  j["target"] = inst.target_text;
  j["is_final"] = inst.is_final;
  return j;
}

TrainingInstance instance_from_json(const json& j) {
  TrainingInstance inst;
  inst.record_id = j.at("record_id").get<std::string>();
  inst.step_index = j.at("step_index").get<size_t>();
  inst.total_steps = j.at("total_steps").get<size_t>();
  inst.system_prompt = j.at("system_prompt").get<std::string>();
  inst.question = j.at("question").get<std::string>();
  inst.image_refs = j.at("images").get<std::vector<std::string>>();
  inst.target_text = j.at("target").get<std::string>();
  inst.is_final = j.at("is_final").get<bool>();
  return inst;
}

void accumulate_stats(StatsReport& stats, const BuiltRecord& built, const Tokenizer& tok,
                      const VisionTokenModel& vision) {
  stats.records += 1;
  stats.instances += built.instances.size();
  const size_t n = built.instances.size();
  stats.rendered_segments += n - 1;
  for (size_t j = 0; j + 1 < n; ++j) {
    stats.rendered_images += built.rendered[j].size();
    stats.text_tokens += tok.count(built.segments[j].text);
    for (const PageImage& p : built.rendered[j])
      stats.vision_tokens += vision.tokens_for(p.width_px, p.height_px);
  }
  for (const TrainingInstance& inst : built.instances) {
    if (stats.step_histogram.size() < inst.step_index)
      stats.step_histogram.resize(inst.step_index, 0);
    stats.step_histogram[inst.step_index - 1] += 1;
  }
}

}  // namespace

CorpusBuildResult build_corpus(const std::string& corpus_path, const CorpusBuildOptions& options) {
  if (!options.tokenizer) throw UsageError("build_corpus: no tokenizer configured");
  if (options.eta == 0) throw UsageError("build_corpus: eta must be >= 1");
  options.render.validate();

  IngestResult ingest = ingest_corpus(corpus_path);

  // Records are independent; build them in parallel, then emit in input
  // order so the manifest is deterministic.
  const size_t count = ingest.records.size();
  std::vector<BuiltRecord> built(count);
  std::vector<std::string> failures(count);
  std::atomic<size_t> next{0};
  int jobs = std::max(1, options.jobs);
  if (static_cast<size_t>(jobs) > count && count > 0) jobs = static_cast<int>(count);

  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        built[i] = build_instances(ingest.records[i], options.eta, options.render,
                                   *options.tokenizer);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  fs::create_directories(options.out_dir);

  CorpusBuildResult result;
  result.skipped = std::move(ingest.skipped);
  result.manifest_path = (fs::path(options.out_dir) / "manifest.jsonl").string();

  std::ofstream manifest(result.manifest_path, std::ios::binary | std::ios::trunc);
  if (!manifest) throw IoError("cannot write manifest: " + result.manifest_path);

  json header;
  header["type"] = "header";
  header["eta"] = options.eta;
  header["config_hash"] = render_config_hash(options.render);
  header["render_config"] = serialize_render_config(options.render);
  header["tokenizer"] = options.tokenizer->id();
  header["builder"] = kVersion;
  manifest << header.dump() << "\n";

  for (size_t i = 0; i < count; ++i) {
    if (!failures[i].empty()) {
      result.skipped.push_back("record " + ingest.records[i].record_id + ": " + failures[i]);
      continue;
    }
    const BuiltRecord& rec = built[i];
    if (!rec.rendered.empty()) {
      fs::path rec_dir = fs::path(options.out_dir) / "images" / ingest.records[i].record_id;
      fs::create_directories(rec_dir);
      for (size_t j = 0; j < rec.rendered.size(); ++j)
        for (const PageImage& page : rec.rendered[j])
          write_file((fs::path(options.out_dir) /
                      image_ref(ingest.records[i].record_id, j + 1, page.page_index))
                         .string(),
                     page.png_bytes);
    }
    for (const TrainingInstance& inst : rec.instances)
      manifest << instance_to_json(inst).dump() << "\n";
    accumulate_stats(result.stats, rec, *options.tokenizer, options.vision);
  }
  manifest.flush();
  if (!manifest) throw IoError("manifest write failed: " + result.manifest_path);
  return result;
}

StatsReport stats_from_manifest(const std::string& manifest_path, const Tokenizer& tok,
                                const VisionTokenModel& vision) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest: " + manifest_path);
  fs::path base = fs::path(manifest_path).parent_path();

  StatsReport stats;
  std::set<std::string> seen_records;
  std::set<std::string> seen_images;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw IoError("manifest line " + std::to_string(lineno) + ": bad JSON");
    if (j.value("type", "") != "instance") continue;
    TrainingInstance inst = instance_from_json(j);

    stats.instances += 1;
    if (seen_records.insert(inst.record_id).second) stats.records += 1;
    if (stats.step_histogram.size() < inst.step_index)
      stats.step_histogram.resize(inst.step_index, 0);
    stats.step_histogram[inst.step_index - 1] += 1;

    // Non-final steps are exactly the rendered segments; their reasoning
    // text is the think content of the target.
    if (inst.step_index < inst.total_steps) {
      stats.rendered_segments += 1;
      stats.text_tokens += tok.count(extract_reasoning(inst.target_text));
    }
    for (const std::string& ref : inst.image_refs) {
      if (!seen_images.insert(ref).second) continue;
      stats.rendered_images += 1;
      std::string png = read_file((base / ref).string());
      PngHeader hdr = png_peek_header(
          std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(png.data()), png.size()));
      stats.vision_tokens += vision.tokens_for(hdr.width, hdr.height);
    }
  }
  return stats;
}

}  // namespace vtc
