#ifndef TECHMAP_JSONL_HPP
#define TECHMAP_JSONL_HPP

// Line-delimited JSON artifact I/O. All artifacts use ordered_json so key
// order is the insertion order and serialization is byte-stable across runs.

#include <string>
#include <vector>

#include <json.hpp>

namespace techmap::jsonl {

using json = nlohmann::ordered_json;

// Reads one JSON value per non-empty line. Throws FatalError on unreadable
// files or unparseable lines (artifacts are machine-written; damage is fatal).
std::vector<json> read_file(const std::string& path);

// Writes one compact JSON document per line, creating parent directories.
void write_file(const std::string& path, const std::vector<json>& rows);

bool file_exists(const std::string& path);

// Whole-file helpers for golden/byte-comparison work.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace techmap::jsonl

#endif
