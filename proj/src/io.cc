#include "stylobench/io.h"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <sstream>

#include "stylobench/errors.h"

namespace stylobench {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

template <typename JsonT>
std::vector<JsonT> ParseLines(std::string_view text, const std::string& origin) {
  std::vector<JsonT> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    try {
      out.push_back(JsonT::parse(line));
    } catch (const Json::parse_error& e) {
      throw MalformedInput(origin + ":" + std::to_string(line_no) + ": " +
                           e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<Json> ParseJsonl(std::string_view text, const std::string& origin) {
  return ParseLines<Json>(text, origin);
}

std::vector<Json> ReadJsonl(const std::filesystem::path& path) {
  return ParseLines<Json>(ReadFile(path), path.string());
}

std::vector<OrderedJson> ReadOrderedJsonl(const std::filesystem::path& path) {
  return ParseLines<OrderedJson>(ReadFile(path), path.string());
}

std::string Sha256Hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(),
             nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace stylobench
