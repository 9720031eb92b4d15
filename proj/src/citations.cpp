#include "techmap/citations.hpp"

#include <algorithm>
#include <unordered_set>

#include "techmap/parallel.hpp"
#include "techmap/sections.hpp"
#include "techmap/text.hpp"
#include "techmap/wordlists.hpp"

namespace techmap::citations {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

const std::unordered_set<std::string>& function_words() {
  static const std::unordered_set<std::string> words(wordlists::stopwords().begin(),
                                                     wordlists::stopwords().end());
  return words;
}

struct Candidate {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t pattern = 0;
  std::string surname;
  std::string year;
};

// Disambiguation letters ("2004a") are not part of the year value.
std::string strip_year_suffix(std::string y) {
  if (!y.empty() && y.back() >= 'a' && y.back() <= 'd') y.pop_back();
  return y;
}

std::string lower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

std::string last_token(const std::string& s) {
  const auto pos = s.find_last_of(" \t");
  return pos == std::string::npos ? s : s.substr(pos + 1);
}

// Sentence spans for context extraction: heading lines are masked out first
// so "2 method" never becomes the start of the following sentence.
std::vector<text::CharSpan> context_sentences(const std::string& t) {
  const auto headings = sections::heading_line_spans(t);
  std::vector<text::CharSpan> out;
  std::size_t pos = 0;
  const auto emit = [&](std::size_t b, std::size_t e) {
    if (b >= e) return;
    for (const auto& s : text::split_sentences(t.substr(b, e - b))) {
      out.push_back(text::CharSpan{s.begin + b, s.end + b});
    }
  };
  for (const auto& h : headings) {
    emit(pos, h.begin);
    pos = h.end;
  }
  emit(pos, t.size());
  return out;
}

// Collapse every whitespace run to one space and trim the ends.
std::string squeeze(const std::string& s) {
  std::string out;
  bool in_ws = true;  // swallows leading whitespace
  for (const char c : s) {
    if (c == ' ' || c == '\n' || c == '\t') {
      in_ws = true;
      continue;
    }
    if (in_ws && !out.empty()) out.push_back(' ');
    in_ws = false;
    out.push_back(c);
  }
  return out;
}

}  // namespace

MentionScanner::MentionScanner() : MentionScanner(wordlists::citation_patterns()) {}

MentionScanner::MentionScanner(const std::vector<std::string>& patterns) {
  for (const auto& p : patterns) {
    try {
      regexes_.emplace_back(p, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw FatalError("bad citation pattern '" + p + "': " + e.what());
    }
    if (regexes_.back().mark_count() < 2) {
      throw FatalError("citation pattern needs capture groups (surname, year): " + p);
    }
  }
  if (regexes_.empty()) throw FatalError("citation pattern list is empty");
}

std::vector<CitationMention> MentionScanner::scan(const std::string& normalized) const {
  std::vector<Candidate> candidates;
  for (std::size_t pi = 0; pi < regexes_.size(); ++pi) {
    auto it = std::sregex_iterator(normalized.begin(), normalized.end(), regexes_[pi]);
    const auto end = std::sregex_iterator();
    for (; it != end; ++it) {
      const auto& m = *it;
      Candidate c;
      c.begin = static_cast<std::size_t>(m.position(0));
      c.end = c.begin + static_cast<std::size_t>(m.length(0));
      c.pattern = pi;
      c.surname = m.str(1);
      c.year = m.str(2);
      if (function_words().count(c.surname)) continue;
      candidates.push_back(std::move(c));
    }
  }
  // Earliest start wins; at the same start the longest match wins, then the
  // earlier pattern. Later overlapping candidates are discarded.
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    if (a.end != b.end) return a.end > b.end;
    return a.pattern < b.pattern;
  });
  std::vector<CitationMention> out;
  std::size_t last_end = 0;
  for (const auto& c : candidates) {
    if (!out.empty() && c.begin < last_end) continue;
    CitationMention m;
    m.offset = c.begin;
    m.surface = normalized.substr(c.begin, c.end - c.begin);
    m.surname = c.surname;
    m.year_raw = strip_year_suffix(c.year);
    m.two_digit = m.year_raw.size() == 2;
    const int y = std::stoi(m.year_raw);
    m.year = m.two_digit ? (y >= 50 ? 1900 + y : 2000 + y) : y;
    last_end = c.end;
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<CitationMention> find_citation_mentions(const std::string& normalized) {
  static const MentionScanner scanner;
  return scanner.scan(normalized);
}

std::optional<std::string> resolve_mention(const CitationMention& mention,
                                           const corpus::Corpus& corpus, bool* ambiguous) {
  if (ambiguous) *ambiguous = false;
  std::vector<std::string> hits;
  for (const auto& cited : corpus.cited_ids(mention.citing_id)) {
    const auto* paper = corpus.find(cited);
    if (paper == nullptr || paper->authors.empty()) continue;
    const std::string first = lower(paper->authors.front());
    if (first != mention.surname && last_token(first) != mention.surname) continue;
    if (mention.two_digit) {
      if (paper->year % 100 != mention.year % 100) continue;
    } else if (paper->year != mention.year) {
      continue;
    }
    hits.push_back(cited);
  }
  if (hits.size() == 1) return hits.front();
  if (hits.size() > 1 && ambiguous) *ambiguous = true;
  return std::nullopt;
}

std::vector<CitationContext> extract_contexts(const corpus::Corpus& corpus,
                                              const MentionScanner& scanner,
                                              DiagnosticList& diags, int jobs,
                                              const std::vector<std::string>& method_keywords) {
  struct Slot {
    std::vector<CitationContext> contexts;
    DiagnosticList diags;
  };
  const auto& papers = corpus.papers();
  std::vector<Slot> slots(papers.size());
  parallel_for(jobs, papers.size(), [&](std::size_t i) {
    const auto& p = papers[i];
    if (!p.has_text || p.text.empty()) return;
    auto mentions = scanner.scan(p.text);
    if (mentions.empty()) return;
    const auto sentences = context_sentences(p.text);
    const auto method_spans = method_keywords.empty()
                                  ? sections::find_method_spans(p.text)
                                  : sections::find_method_spans(p.text, method_keywords);
    for (auto& m : mentions) {
      m.citing_id = p.id;
      m.in_method_section = sections::in_any(method_spans, m.offset);
      bool ambiguous = false;
      const auto cited = resolve_mention(m, corpus, &ambiguous);
      if (!cited) {
        slots[i].diags.push_back(
            warn(p.id, std::string(ambiguous ? "ambiguous" : "unresolved") +
                           " citation mention '" + m.surface + "' at offset " +
                           std::to_string(m.offset)));
        continue;
      }
      const auto sent = std::find_if(sentences.begin(), sentences.end(),
                                     [&](const text::CharSpan& s) { return s.contains(m.offset); });
      if (sent == sentences.end()) continue;
      // Splice the mention's surface out of its sentence.
      const std::size_t cut_begin = std::max(m.offset, sent->begin);
      const std::size_t cut_end = std::min(m.offset + m.surface.size(), sent->end);
      const std::string spliced =
          squeeze(p.text.substr(sent->begin, cut_begin - sent->begin) + " " +
                  p.text.substr(cut_end, sent->end - cut_end));
      if (std::none_of(spliced.begin(), spliced.end(), is_alnum)) continue;
      slots[i].contexts.push_back(
          CitationContext{p.id, *cited, m.offset, spliced, m.in_method_section});
    }
  });
  std::vector<CitationContext> out;
  for (auto& s : slots) {
    out.insert(out.end(), std::make_move_iterator(s.contexts.begin()),
               std::make_move_iterator(s.contexts.end()));
    diags.insert(diags.end(), std::make_move_iterator(s.diags.begin()),
                 std::make_move_iterator(s.diags.end()));
  }
  return out;
}

std::vector<CitationContext> extract_contexts(const corpus::Corpus& corpus,
                                              DiagnosticList& diags, int jobs) {
  const MentionScanner scanner;
  return extract_contexts(corpus, scanner, diags, jobs);
}

CitationStats citation_stats(const std::string& paper_id,
                             const std::vector<CitationContext>& contexts) {
  CitationStats st;
  for (const auto& c : contexts) {
    if (c.cited_id != paper_id) continue;
    ++st.total;
    if (c.in_method_section) ++st.in_method;
  }
  st.method_fraction = st.total == 0 ? 0.0 : static_cast<double>(st.in_method) / st.total;
  return st;
}

std::map<std::string, CitationStats> citation_stats_all(
    const corpus::Corpus& corpus, const std::vector<CitationContext>& contexts) {
  std::map<std::string, CitationStats> out;
  for (const auto& p : corpus.papers()) out.emplace(p.id, CitationStats{});
  for (const auto& c : contexts) {
    auto it = out.find(c.cited_id);
    if (it == out.end()) continue;
    ++it->second.total;
    if (c.in_method_section) ++it->second.in_method;
  }
  for (auto& [id, st] : out) {
    st.method_fraction = st.total == 0 ? 0.0 : static_cast<double>(st.in_method) / st.total;
  }
  return out;
}

}  // namespace techmap::citations
