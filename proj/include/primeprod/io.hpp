#ifndef PRIMEPROD_IO_HPP
#define PRIMEPROD_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace primeprod {

using Json = nlohmann::ordered_json;

// All numeric output carries 12 significant digits.
std::string fmt12(double v);
// Round to 12 significant digits (for values embedded in JSON).
double sig12(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string str() const;  // header row mandatory, '\n' line ends
};

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

// Write via temp file + rename so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace primeprod

#endif
