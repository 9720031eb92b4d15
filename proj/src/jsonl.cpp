#include "techmap/jsonl.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "techmap/diagnostics.hpp"

namespace techmap::jsonl {

std::vector<json> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FatalError("cannot read artifact: " + path);
  std::vector<json> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw FatalError(path + ":" + std::to_string(lineno) + ": bad JSON line: " + e.what());
    }
  }
  return rows;
}

void write_file(const std::string& path, const std::vector<json>& rows) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FatalError("cannot write artifact: " + path);
  for (const auto& row : rows) out << row.dump() << '\n';
  if (!out) throw FatalError("write failed: " + path);
}

bool file_exists(const std::string& path) {
  return std::filesystem::exists(path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FatalError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FatalError("cannot write file: " + path);
  out << content;
  if (!out) throw FatalError("write failed: " + path);
}

}  // namespace techmap::jsonl
