#ifndef TECHMAP_SECTIONS_HPP
#define TECHMAP_SECTIONS_HPP

// Locates the abstract span and the method section(s) in normalized full
// text. Headings are detected line-wise: a heading is a line of at most 8
// tokens; numbered headings carry a leading digit run.

#include <optional>
#include <string>
#include <vector>

#include "techmap/text.hpp"

namespace techmap::sections {

enum class Kind { Abstract, Method };

struct SectionSpan {
  Kind kind = Kind::Method;
  text::CharSpan span;
  std::string heading;  // the matched heading line, trimmed

  bool operator==(const SectionSpan&) const = default;
};

// Content between the first heading matching (digits?) "abstract" and the
// first later heading matching (digits?) "introduction"; absent when either
// anchor is missing or nothing lies between them. Text on the abstract
// heading line after the keyword is part of the span.
std::optional<text::CharSpan> find_abstract_span(const std::string& normalized);

// Every section opened by a numbered heading containing a method keyword,
// each running to the next numbered heading (or end of text). Multiple
// method-like sections ("3 approach" ... "5 model details") all count for
// citation attribution.
std::vector<SectionSpan> find_method_spans(const std::string& normalized);
std::vector<SectionSpan> find_method_spans(const std::string& normalized,
                                           const std::vector<std::string>& keywords);

// First method span only.
std::optional<SectionSpan> find_method_span(const std::string& normalized);

inline bool contains(const text::CharSpan& span, std::size_t offset) {
  return span.contains(offset);
}

bool in_any(const std::vector<SectionSpan>& spans, std::size_t offset);

// Line spans (newline excluded) that look like section headings: numbered
// heading lines plus abstract/introduction keyword lines, all capped at the
// heading token limit. Citation-context extraction masks these so a heading
// never glues onto the sentence that follows it.
std::vector<text::CharSpan> heading_line_spans(const std::string& normalized);

}  // namespace techmap::sections

#endif
