#ifndef TECHMAP_CORPUS_HPP
#define TECHMAP_CORPUS_HPP

// Corpus ingestion, validation, and persistence. Input layout: a corpus
// directory holds metadata.tsv (id, year, venue, title, ;-joined authors),
// texts/<id>.txt (one UTF-8 plain file per paper), and citations.tsv
// (from_id, to_id). The built Corpus is immutable and safe for concurrent
// readers; all downstream stages work from it.

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "techmap/diagnostics.hpp"
#include "techmap/text.hpp"

namespace techmap::corpus {

struct PaperRecord {
  std::string id;
  std::string title;
  int year = 0;  // validated into [1900, 2100]
  std::string venue;
  std::vector<std::string> authors;  // surnames, citation order
  std::string text;                  // normalized full text; empty when has_text is false
  bool has_text = false;
  std::optional<text::CharSpan> abstract_span;  // into text

  bool operator==(const PaperRecord&) const = default;

  // Abstract body if detected, else empty.
  std::string abstract_text() const {
    return abstract_span ? text.substr(abstract_span->begin, abstract_span->length())
                         : std::string{};
  }
};

struct CitationEdge {
  std::string from_id;  // citing paper
  std::string to_id;    // cited paper

  auto operator<=>(const CitationEdge&) const = default;
};

struct MetadataRow {
  std::string title;
  int year = 0;
  std::string venue;
  std::vector<std::string> authors;

  bool operator==(const MetadataRow&) const = default;
};

class Corpus {
 public:
  Corpus() = default;
  // Sorts papers by id, sorts and dedupes edges, drops edges with unknown
  // endpoints, and builds the adjacency index.
  Corpus(std::vector<PaperRecord> papers, std::vector<CitationEdge> edges);

  const std::vector<PaperRecord>& papers() const { return papers_; }
  const std::vector<CitationEdge>& edges() const { return edges_; }
  const PaperRecord* find(const std::string& id) const;
  bool contains(const std::string& id) const { return find(id) != nullptr; }

  // Sorted unique venue strings.
  std::vector<std::string> venues() const;

  // Ids this paper cites (edge from_id == id), sorted.
  const std::vector<std::string>& cited_ids(const std::string& id) const;
  // Ids citing this paper (edge to_id == id), sorted.
  const std::vector<std::string>& citing_ids(const std::string& id) const;

  bool operator==(const Corpus& other) const {
    return papers_ == other.papers_ && edges_ == other.edges_;
  }

 private:
  std::vector<PaperRecord> papers_;  // sorted by id
  std::vector<CitationEdge> edges_;  // sorted, unique, endpoints resolved
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::string, std::vector<std::string>> out_;
  std::unordered_map<std::string, std::vector<std::string>> in_;
};

// Parses the metadata TSV. Malformed rows (wrong column count, bad year) are
// rejected with a diagnostic naming the row; a duplicate paper id is fatal,
// naming both rows; an unreadable file is fatal.
std::map<std::string, MetadataRow> load_metadata(const std::filesystem::path& path,
                                                 DiagnosticList& diags);

struct FulltextResult {
  std::map<std::string, std::string> texts;  // id -> raw (un-normalized) text
  std::vector<std::string> missing;          // ids with no texts/<id>.txt
};

// Reads texts/<id>.txt for every requested id. Missing files are listed and
// warned about; an empty file yields an empty text with a warning; finding no
// file at all is fatal.
FulltextResult load_fulltext(const std::filesystem::path& dir, const std::set<std::string>& ids,
                             DiagnosticList& diags);

// Parses the citations TSV. Keeps edges whose endpoints are both known;
// rejects self-edges, dangling endpoints, and malformed lines with a
// diagnostic each; exact duplicate lines collapse to one edge with a warning.
std::vector<CitationEdge> load_citations(const std::filesystem::path& path,
                                         const std::set<std::string>& known_ids,
                                         DiagnosticList& diags);

// Assembles the Corpus: normalizes each text (papers without text are kept,
// flagged, and left empty), detects abstract spans, and validates edges.
// `jobs` > 1 parallelizes the per-paper normalization.
Corpus build_corpus(const std::map<std::string, MetadataRow>& metadata,
                    const std::map<std::string, std::string>& fulltexts,
                    std::vector<CitationEdge> edges, int jobs = 1);

// One-call ingest of a corpus directory (metadata.tsv, texts/, citations.tsv).
Corpus ingest_dir(const std::filesystem::path& corpus_dir, DiagnosticList& diags, int jobs = 1);

// Persistence to a stage directory as corpus.jsonl + edges.jsonl. Reloading
// yields a field-by-field identical Corpus; rewriting identical content is
// byte-identical.
void save_corpus(const Corpus& corpus, const std::filesystem::path& dir);
Corpus load_corpus(const std::filesystem::path& dir);

}  // namespace techmap::corpus

#endif
