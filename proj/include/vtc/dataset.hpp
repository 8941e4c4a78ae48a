#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vtc/page_image.hpp"
#include "vtc/render_config.hpp"
#include "vtc/segmenter.hpp"
#include "vtc/tokenizer.hpp"
#include "vtc/vision_tokens.hpp"

namespace vtc {

struct CorpusRecord {
  std::string record_id;
  std::string question;
  std::string trace;  // may be empty (degenerate single-step record)
  std::string answer;

  /// Throws UsageError when question or answer is empty.
  void validate() const;
};

/// One supervised instance: images of the segments before `step_index`,
/// target text for the step itself. Only the final step carries the answer
/// span.
struct TrainingInstance {
  std::string record_id;
  size_t step_index = 1;  // 1-based
  size_t total_steps = 1;
  std::string system_prompt;
  std::string question;
  std::vector<std::string> image_refs;  // relative paths, segment order
  std::string target_text;
  bool is_final = false;
};

/// Record-level failure; no partial instance lists escape.
class RecordBuildError : public std::runtime_error {
 public:
  RecordBuildError(std::string record_id, const std::string& msg)
      : std::runtime_error("record " + record_id + ": " + msg), record_id_(std::move(record_id)) {}
  const std::string& record_id() const { return record_id_; }

 private:
  std::string record_id_;
};

/// Everything built from one record. `rendered[j]` holds the pages of segment
/// j+1; the final segment is never rendered.
struct BuiltRecord {
  std::vector<Segment> segments;
  std::vector<TrainingInstance> instances;
  std::vector<std::vector<PageImage>> rendered;  // size = total_steps - 1
};

/// Relative path of one rendered page within a corpus output tree.
std::string image_ref(const std::string& record_id, size_t segment_index, int page_index);

/// Three-case instance construction: step 1 has no images and a bare think
/// target; intermediate steps carry prior-segment images and the continuation
/// prefix; the final step appends the answer span. Single-step records
/// collapse to one instance holding both think and answer.
BuiltRecord build_instances(const CorpusRecord& record, size_t eta, const RenderConfig& config,
                            const Tokenizer& tok);

// ---------------------------------------------------------------------------
// Corpus ingestion: line-delimited JSON {id, question, trace, answer}.

struct IngestResult {
  std::vector<CorpusRecord> records;
  std::vector<std::string> skipped;  // "line N: reason"
};

IngestResult ingest_corpus(const std::string& path);
std::string corpus_record_to_json(const CorpusRecord& rec);

// ---------------------------------------------------------------------------
// Corpus building and statistics.

struct StatsReport {
  size_t records = 0;
  size_t instances = 0;
  size_t rendered_segments = 0;
  size_t rendered_images = 0;
  size_t text_tokens = 0;    // over rendered segments
  size_t vision_tokens = 0;  // over rendered images
  std::vector<size_t> step_histogram;  // [0] = first-segment instances

  bool has_ratio() const { return vision_tokens > 0; }
  double ratio() const;
  std::string to_json() const;
};

struct CorpusBuildOptions {
  size_t eta = 4096;
  RenderConfig render;
  TokenizerPtr tokenizer;
  VisionTokenModel vision;
  std::string out_dir;
  int jobs = 1;
};

struct CorpusBuildResult {
  StatsReport stats;
  std::vector<std::string> skipped;
  std::string manifest_path;
};

/// Builds the full corpus tree: `manifest.jsonl` plus
/// `images/<record_id>/seg<j>_p<k>.png`. Deterministic: same inputs produce
/// byte-identical manifests and images. Manifest rows are ordered by record
/// then step regardless of worker scheduling.
CorpusBuildResult build_corpus(const std::string& corpus_path, const CorpusBuildOptions& options);

/// Recomputes a Table-2-shaped report from a manifest (and the image files it
/// references, for vision token counts).
StatsReport stats_from_manifest(const std::string& manifest_path, const Tokenizer& tok,
                                const VisionTokenModel& vision);

}  // namespace vtc
