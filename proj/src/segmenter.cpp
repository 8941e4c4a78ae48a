#include "vtc/segmenter.hpp"

#include <deque>

#include "vtc/errors.hpp"

namespace vtc {

namespace {

// Paragraphs keep their trailing newline; sentences keep trailing spaces.
// Both are exact partitions of their input.
std::vector<std::string_view> split_paragraph_units(std::string_view text) {
  std::vector<std::string_view> out;
  size_t start = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') {
      out.push_back(text.substr(start, i - start + 1));
      start = i + 1;
    }
  }
  if (start < text.size()) out.push_back(text.substr(start));
  return out;
}

std::vector<std::string_view> split_sentence_units(std::string_view text) {
  std::vector<std::string_view> out;
  size_t start = 0;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      size_t j = i + 1;
      while (j < text.size() && (text[j] == ' ' || text[j] == '\t')) ++j;
      if (j > i + 1 || j == text.size()) {
        out.push_back(text.substr(start, j - start));
        start = j;
        i = j;
        continue;
      }
    }
    ++i;
  }
  if (start < text.size()) out.push_back(text.substr(start));
  return out;
}

}  // namespace

std::vector<Segment> segment_trace(std::string_view trace, size_t eta, const Tokenizer& tok) {
  if (eta == 0) throw UsageError("segment_trace: eta must be >= 1");

  std::vector<Segment> segments;
  auto close_segment = [&](std::string&& text) {
    Segment s;
    s.index = segments.size() + 1;
    s.token_count = tok.count(text);
    s.text = std::move(text);
    segments.push_back(std::move(s));
  };

  if (trace.empty()) {
    close_segment(std::string());
    return segments;
  }

  struct Unit {
    std::string text;
    bool splittable;  // paragraph that may still break into sentences
  };
  std::deque<Unit> queue;
  for (std::string_view p : split_paragraph_units(trace))
    queue.push_back(Unit{std::string(p), true});

  std::string cur;
  size_t cur_count = 0;

  auto flush = [&]() {
    if (!cur.empty()) {
      close_segment(std::move(cur));
      cur.clear();
      cur_count = 0;
    }
  };

  while (!queue.empty()) {
    Unit unit = std::move(queue.front());
    queue.pop_front();

    size_t joined = tok.count(cur + unit.text);
    if (joined <= eta) {
      cur += unit.text;
      cur_count = joined;
      continue;
    }

    // Prefer finer boundaries before hard-splitting.
    if (unit.splittable) {
      auto sentences = split_sentence_units(unit.text);
      if (sentences.size() > 1) {
        for (auto it = sentences.rbegin(); it != sentences.rend(); ++it)
          queue.push_front(Unit{std::string(*it), false});
        continue;
      }
    }

    if (cur_count > eta / 2) {
      // Segment is filled enough; retry this unit in a fresh one.
      flush();
      queue.push_front(std::move(unit));
      continue;
    }

    // Top up the current segment with a token-boundary split. Walk the
    // budget down if a tokenizer merges tokens across the seam.
    bool consumed = false;
    for (size_t budget = eta - cur_count; budget >= 1; --budget) {
      auto [prefix, suffix] = tok.split(unit.text, budget);
      if (prefix.empty()) break;
      if (tok.count(cur + prefix) <= eta) {
        cur += prefix;
        if (!suffix.empty()) queue.push_front(Unit{std::move(suffix), false});
        consumed = true;
        break;
      }
    }
    if (consumed) {
      flush();
      continue;
    }
    if (!cur.empty()) {
      // Could not top up; close what we have and retry the unit alone.
      flush();
      queue.push_front(std::move(unit));
      continue;
    }
    // Degenerate: a lone unit that defeats even a 1-token split. Emit it
    // whole rather than lose text.
    cur = std::move(unit.text);
    flush();
  }
  flush();

  if (segments.empty()) close_segment(std::string());
  return segments;
}

}  // namespace vtc
