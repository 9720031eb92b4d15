#include "techmap/sections.hpp"

#include <algorithm>

#include "techmap/wordlists.hpp"

namespace techmap::sections {

namespace {

constexpr std::size_t kMaxHeadingTokens = 8;

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\n'; }

struct Line {
  std::size_t begin = 0;  // first char
  std::size_t end = 0;    // one past last char (excludes the newline)
};

std::vector<Line> split_lines(const std::string& s) {
  std::vector<Line> lines;
  std::size_t b = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == '\n') {
      lines.push_back(Line{b, i});
      b = i + 1;
    }
  }
  return lines;
}

std::string line_text(const std::string& s, const Line& l) {
  return s.substr(l.begin, l.end - l.begin);
}

bool is_headingish(const std::string& s, const Line& l) {
  return text::tokenize(line_text(s, l)).size() <= kMaxHeadingTokens &&
         l.end > l.begin;
}

// Consumes "\s* \d+ [.\s]*" from pos; reports whether any digit was seen.
std::size_t skip_heading_number(const std::string& s, std::size_t pos, std::size_t end,
                                bool* saw_digit) {
  while (pos < end && s[pos] == ' ') ++pos;
  *saw_digit = false;
  while (pos < end && is_digit(s[pos])) {
    *saw_digit = true;
    ++pos;
  }
  if (*saw_digit) {
    while (pos < end && (s[pos] == '.' || s[pos] == ' ')) ++pos;
  }
  return pos;
}

// Matches ^\s*(\d+[.\s]*)?<keyword>\b within the line; returns the offset
// just past the keyword, or npos.
std::size_t match_keyword_heading(const std::string& s, const Line& l, const std::string& kw) {
  bool saw_digit = false;
  std::size_t pos = skip_heading_number(s, l.begin, l.end, &saw_digit);
  if (l.end - pos < kw.size()) return std::string::npos;
  if (s.compare(pos, kw.size(), kw) != 0) return std::string::npos;
  const std::size_t after = pos + kw.size();
  if (after < l.end) {
    const char c = s[after];
    if ((c >= 'a' && c <= 'z') || is_digit(c)) return std::string::npos;  // word boundary
  }
  return after;
}

// ^\s*\d+[.\s]*.*\b(keyword)\b — a numbered heading containing a keyword token.
bool match_method_heading(const std::string& s, const Line& l,
                          const std::vector<std::string>& keywords) {
  bool saw_digit = false;
  const std::size_t pos = skip_heading_number(s, l.begin, l.end, &saw_digit);
  if (!saw_digit) return false;
  for (const auto& tok : text::tokenize(s.substr(pos, l.end - pos))) {
    if (std::find(keywords.begin(), keywords.end(), tok.surface) != keywords.end()) return true;
  }
  return false;
}

// ^\s*\d+[.\s] — any numbered heading; terminates a method section.
bool match_numbered_heading(const std::string& s, const Line& l) {
  std::size_t pos = l.begin;
  while (pos < l.end && s[pos] == ' ') ++pos;
  bool saw_digit = false;
  while (pos < l.end && is_digit(s[pos])) {
    saw_digit = true;
    ++pos;
  }
  return saw_digit && pos < l.end && (s[pos] == '.' || s[pos] == ' ');
}

text::CharSpan trimmed(const std::string& s, std::size_t begin, std::size_t end) {
  while (begin < end && is_space(s[begin])) ++begin;
  while (end > begin && is_space(s[end - 1])) --end;
  return text::CharSpan{begin, end};
}

std::string trimmed_text(const std::string& s, const Line& l) {
  const auto t = trimmed(s, l.begin, l.end);
  return s.substr(t.begin, t.end - t.begin);
}

}  // namespace

std::optional<text::CharSpan> find_abstract_span(const std::string& normalized) {
  const auto lines = split_lines(normalized);
  std::size_t content_start = std::string::npos;
  std::size_t abstract_line = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!is_headingish(normalized, lines[i])) continue;
    const std::size_t after = match_keyword_heading(normalized, lines[i], "abstract");
    if (after != std::string::npos) {
      content_start = after;
      abstract_line = i;
      break;
    }
  }
  if (content_start == std::string::npos) return std::nullopt;
  for (std::size_t i = abstract_line + 1; i < lines.size(); ++i) {
    if (!is_headingish(normalized, lines[i])) continue;
    if (match_keyword_heading(normalized, lines[i], "introduction") == std::string::npos) continue;
    const auto span = trimmed(normalized, content_start, lines[i].begin);
    if (span.begin >= span.end) return std::nullopt;
    return span;
  }
  return std::nullopt;
}

std::vector<SectionSpan> find_method_spans(const std::string& normalized,
                                           const std::vector<std::string>& keywords) {
  const auto lines = split_lines(normalized);
  std::vector<SectionSpan> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!is_headingish(normalized, lines[i])) continue;
    if (!match_method_heading(normalized, lines[i], keywords)) continue;
    // Body runs from the line after the heading to the next numbered heading.
    std::size_t body_begin = std::min(lines[i].end + 1, normalized.size());
    std::size_t body_end = normalized.size();
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (is_headingish(normalized, lines[j]) && match_numbered_heading(normalized, lines[j])) {
        body_end = lines[j].begin;
        break;
      }
    }
    const auto span = trimmed(normalized, body_begin, body_end);
    if (span.begin >= span.end) continue;
    out.push_back(SectionSpan{Kind::Method, span, trimmed_text(normalized, lines[i])});
  }
  return out;
}

std::vector<SectionSpan> find_method_spans(const std::string& normalized) {
  return find_method_spans(normalized, wordlists::method_section_keywords());
}

std::optional<SectionSpan> find_method_span(const std::string& normalized) {
  auto all = find_method_spans(normalized);
  if (all.empty()) return std::nullopt;
  return all.front();
}

bool in_any(const std::vector<SectionSpan>& spans, std::size_t offset) {
  return std::any_of(spans.begin(), spans.end(),
                     [offset](const SectionSpan& s) { return s.span.contains(offset); });
}

std::vector<text::CharSpan> heading_line_spans(const std::string& normalized) {
  std::vector<text::CharSpan> out;
  for (const auto& l : split_lines(normalized)) {
    if (!is_headingish(normalized, l)) continue;
    if (match_numbered_heading(normalized, l) ||
        match_keyword_heading(normalized, l, "abstract") != std::string::npos ||
        match_keyword_heading(normalized, l, "introduction") != std::string::npos) {
      out.push_back(text::CharSpan{l.begin, l.end});
    }
  }
  return out;
}

}  // namespace techmap::sections
