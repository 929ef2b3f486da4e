#ifndef STYLOBENCH_IO_H_
#define STYLOBENCH_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace stylobench {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

std::string ReadFile(const std::filesystem::path& path);

// Writes through a temporary sibling file and renames, so readers never see a
// half-written output.
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// One JSON value per non-empty line. Errors carry the 1-based line number.
std::vector<Json> ParseJsonl(std::string_view text, const std::string& origin);
std::vector<Json> ReadJsonl(const std::filesystem::path& path);
// Same, keeping object keys in file order.
std::vector<OrderedJson> ReadOrderedJsonl(const std::filesystem::path& path);

template <typename JsonT>
std::string DumpJsonl(const std::vector<JsonT>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

template <typename JsonT>
void WriteJsonl(const std::filesystem::path& path,
                const std::vector<JsonT>& records) {
  WriteFile(path, DumpJsonl(records));
}

// Hex SHA-256 of `data`.
std::string Sha256Hex(std::string_view data);

}  // namespace stylobench

#endif  // STYLOBENCH_IO_H_
