#pragma once

// Compares two output trees while ignoring timing fields: JSON keys ending
// in "_seconds", and Markdown table columns whose header ends in "(s)".

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace artifacts {

namespace fs = std::filesystem;

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json strip_timing(const nlohmann::json& j) {
  if (j.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      if (key.size() >= 8 && key.compare(key.size() - 8, 8, "_seconds") == 0) continue;
      out[key] = strip_timing(it.value());
    }
    return out;
  }
  if (j.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : j) out.push_back(strip_timing(v));
    return out;
  }
  return j;
}

inline std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == '|') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  cells.push_back(cur);
  return cells;
}

inline std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(' ');
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(' ') - a + 1);
}

inline std::string mask_markdown(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::set<std::size_t> timing;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] != '|') {
      timing.clear();
      out << line << '\n';
      continue;
    }
    auto cells = split_cells(line);
    bool header = false;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      auto c = trim(cells[i]);
      if (c.size() >= 3 && c.compare(c.size() - 3, 3, "(s)") == 0) {
        if (!header) timing.clear();
        header = true;
        timing.insert(i);
      }
    }
    if (!header) {
      for (auto i : timing) {
        if (i < cells.size() && trim(cells[i]).rfind("---", 0) != 0) cells[i] = "*";
      }
    }
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "|" : "") << cells[i];
    out << '\n';
  }
  return out.str();
}

inline std::string normalized(const fs::path& p) {
  auto text = slurp(p);
  if (p.extension() == ".json") return strip_timing(nlohmann::json::parse(text)).dump();
  if (p.extension() == ".md") return mask_markdown(text);
  return text;
}

inline std::set<std::string> relative_files(const fs::path& root) {
  std::set<std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out.insert(fs::relative(e.path(), root).generic_string());
  }
  return out;
}

/// Relative paths that differ (or exist on one side only).
inline std::vector<std::string> diff_modulo_timing(const fs::path& a, const fs::path& b) {
  auto fa = relative_files(a), fb = relative_files(b);
  std::vector<std::string> out;
  for (const auto& f : fa) {
    if (!fb.count(f) || normalized(a / f) != normalized(b / f)) out.push_back(f);
  }
  for (const auto& f : fb) {
    if (!fa.count(f)) out.push_back(f);
  }
  return out;
}

}  // namespace artifacts
