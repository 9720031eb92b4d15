#include "techmap/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "techmap/jsonl.hpp"
#include "techmap/parallel.hpp"
#include "techmap/sections.hpp"

namespace techmap::corpus {

namespace {

const std::vector<std::string> kNoIds;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t b = 0;
  while (true) {
    const std::size_t e = s.find(sep, b);
    if (e == std::string::npos) {
      out.push_back(s.substr(b));
      return out;
    }
    out.push_back(s.substr(b, e - b));
    b = e + 1;
  }
}

std::string rstrip_cr(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
  return s;
}

bool parse_year(const std::string& s, int* year) {
  if (s.empty() || s.size() > 5) return false;
  long v = 0;
  for (const char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  if (v < 1900 || v > 2100) return false;
  *year = static_cast<int>(v);
  return true;
}

std::string row_ref(const std::filesystem::path& path, std::size_t row) {
  return path.filename().string() + ":" + std::to_string(row);
}

}  // namespace

Corpus::Corpus(std::vector<PaperRecord> papers, std::vector<CitationEdge> edges)
    : papers_(std::move(papers)), edges_(std::move(edges)) {
  std::sort(papers_.begin(), papers_.end(),
            [](const PaperRecord& a, const PaperRecord& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < papers_.size(); ++i) index_[papers_[i].id] = i;
  std::erase_if(edges_, [this](const CitationEdge& e) {
    return !index_.count(e.from_id) || !index_.count(e.to_id);
  });
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const auto& e : edges_) {
    out_[e.from_id].push_back(e.to_id);
    in_[e.to_id].push_back(e.from_id);
  }
  // Edge order already yields sorted out-lists; in-lists need their own sort.
  for (auto& [id, v] : in_) std::sort(v.begin(), v.end());
}

const PaperRecord* Corpus::find(const std::string& id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? nullptr : &papers_[it->second];
}

std::vector<std::string> Corpus::venues() const {
  std::vector<std::string> out;
  for (const auto& p : papers_) out.push_back(p.venue);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const std::vector<std::string>& Corpus::cited_ids(const std::string& id) const {
  const auto it = out_.find(id);
  return it == out_.end() ? kNoIds : it->second;
}

const std::vector<std::string>& Corpus::citing_ids(const std::string& id) const {
  const auto it = in_.find(id);
  return it == in_.end() ? kNoIds : it->second;
}

std::map<std::string, MetadataRow> load_metadata(const std::filesystem::path& path,
                                                 DiagnosticList& diags) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FatalError("cannot read metadata file: " + path.string());
  std::map<std::string, MetadataRow> out;
  std::map<std::string, std::size_t> first_row;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    line = rstrip_cr(line);
    if (line.empty()) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 5) {
      diags.push_back(error(row_ref(path, row),
                            "expected 5 tab-separated columns, got " +
                                std::to_string(cols.size())));
      continue;
    }
    const std::string& id = cols[0];
    if (id.empty()) {
      diags.push_back(error(row_ref(path, row), "empty paper id"));
      continue;
    }
    int year = 0;
    if (!parse_year(cols[1], &year)) {
      diags.push_back(error(row_ref(path, row),
                            "bad year '" + cols[1] + "' (need integer in [1900, 2100])"));
      continue;
    }
    if (const auto it = first_row.find(id); it != first_row.end()) {
      throw FatalError("duplicate paper id '" + id + "' in " + path.filename().string() +
                       " at rows " + std::to_string(it->second) + " and " +
                       std::to_string(row));
    }
    first_row[id] = row;
    MetadataRow rec;
    rec.title = cols[3];
    rec.year = year;
    rec.venue = cols[2];
    for (auto& a : split(cols[4], ';')) {
      if (!a.empty()) rec.authors.push_back(std::move(a));
    }
    out.emplace(id, std::move(rec));
  }
  return out;
}

FulltextResult load_fulltext(const std::filesystem::path& dir, const std::set<std::string>& ids,
                             DiagnosticList& diags) {
  FulltextResult result;
  for (const auto& id : ids) {
    const auto file = dir / (id + ".txt");
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      result.missing.push_back(id);
      diags.push_back(warn(id, "no full-text file " + file.filename().string()));
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();
    if (content.empty()) diags.push_back(warn(id, "full-text file is empty"));
    result.texts.emplace(id, std::move(content));
  }
  if (!ids.empty() && result.texts.empty()) {
    throw FatalError("no full-text files found under " + dir.string());
  }
  return result;
}

std::vector<CitationEdge> load_citations(const std::filesystem::path& path,
                                         const std::set<std::string>& known_ids,
                                         DiagnosticList& diags) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FatalError("cannot read citations file: " + path.string());
  std::vector<CitationEdge> out;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    line = rstrip_cr(line);
    if (line.empty()) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 2 || cols[0].empty() || cols[1].empty()) {
      diags.push_back(error(row_ref(path, row), "expected from_id<TAB>to_id"));
      continue;
    }
    const std::string& from = cols[0];
    const std::string& to = cols[1];
    if (from == to) {
      diags.push_back(error(row_ref(path, row), "self-edge " + from + " -> " + to));
      continue;
    }
    if (!known_ids.count(from) || !known_ids.count(to)) {
      const std::string& dangling = known_ids.count(from) ? to : from;
      diags.push_back(error(row_ref(path, row),
                            "edge " + from + " -> " + to + " references unknown paper '" +
                                dangling + "'"));
      continue;
    }
    if (!seen.emplace(from, to).second) {
      diags.push_back(warn(row_ref(path, row),
                           "duplicate edge " + from + " -> " + to + " collapsed"));
      continue;
    }
    out.push_back(CitationEdge{from, to});
  }
  return out;
}

Corpus build_corpus(const std::map<std::string, MetadataRow>& metadata,
                    const std::map<std::string, std::string>& fulltexts,
                    std::vector<CitationEdge> edges, int jobs) {
  std::vector<PaperRecord> papers;
  papers.reserve(metadata.size());
  std::vector<const std::string*> raw;  // parallel to papers; null when absent
  raw.reserve(metadata.size());
  for (const auto& [id, meta] : metadata) {
    PaperRecord p;
    p.id = id;
    p.title = meta.title;
    p.year = meta.year;
    p.venue = meta.venue;
    p.authors = meta.authors;
    const auto it = fulltexts.find(id);
    p.has_text = it != fulltexts.end();
    raw.push_back(p.has_text ? &it->second : nullptr);
    papers.push_back(std::move(p));
  }
  parallel_for(jobs, papers.size(), [&](std::size_t i) {
    if (raw[i] == nullptr) return;
    papers[i].text = text::normalize_ocr(*raw[i]);
    papers[i].abstract_span = sections::find_abstract_span(papers[i].text);
  });
  return Corpus(std::move(papers), std::move(edges));
}

Corpus ingest_dir(const std::filesystem::path& corpus_dir, DiagnosticList& diags, int jobs) {
  const auto metadata = load_metadata(corpus_dir / "metadata.tsv", diags);
  std::set<std::string> ids;
  for (const auto& [id, meta] : metadata) ids.insert(id);
  const auto texts = load_fulltext(corpus_dir / "texts", ids, diags);
  auto edges = load_citations(corpus_dir / "citations.tsv", ids, diags);
  return build_corpus(metadata, texts.texts, std::move(edges), jobs);
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::vector<jsonl::json> rows;
  rows.reserve(corpus.papers().size());
  for (const auto& p : corpus.papers()) {
    jsonl::json j;
    j["id"] = p.id;
    j["year"] = p.year;
    j["venue"] = p.venue;
    j["title"] = p.title;
    j["authors"] = p.authors;
    j["has_text"] = p.has_text;
    j["text"] = p.text;
    if (p.abstract_span) {
      j["abstract_begin"] = p.abstract_span->begin;
      j["abstract_end"] = p.abstract_span->end;
    } else {
      j["abstract_begin"] = nullptr;
      j["abstract_end"] = nullptr;
    }
    rows.push_back(std::move(j));
  }
  jsonl::write_file((dir / "corpus.jsonl").string(), rows);

  std::vector<jsonl::json> edge_rows;
  edge_rows.reserve(corpus.edges().size());
  for (const auto& e : corpus.edges()) {
    edge_rows.push_back(jsonl::json{{"from", e.from_id}, {"to", e.to_id}});
  }
  jsonl::write_file((dir / "edges.jsonl").string(), edge_rows);
}

Corpus load_corpus(const std::filesystem::path& dir) {
  std::vector<PaperRecord> papers;
  for (const auto& j : jsonl::read_file((dir / "corpus.jsonl").string())) {
    PaperRecord p;
    p.id = j.at("id").get<std::string>();
    p.year = j.at("year").get<int>();
    p.venue = j.at("venue").get<std::string>();
    p.title = j.at("title").get<std::string>();
    p.authors = j.at("authors").get<std::vector<std::string>>();
    p.has_text = j.at("has_text").get<bool>();
    p.text = j.at("text").get<std::string>();
    if (!j.at("abstract_begin").is_null()) {
      p.abstract_span = text::CharSpan{j.at("abstract_begin").get<std::size_t>(),
                                       j.at("abstract_end").get<std::size_t>()};
    }
    papers.push_back(std::move(p));
  }
  std::vector<CitationEdge> edges;
  for (const auto& j : jsonl::read_file((dir / "edges.jsonl").string())) {
    edges.push_back(CitationEdge{j.at("from").get<std::string>(), j.at("to").get<std::string>()});
  }
  return Corpus(std::move(papers), std::move(edges));
}

}  // namespace techmap::corpus
