#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "hfg/poly.hpp"

namespace hfg::text {

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

struct LineError {
  int line;
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("line " + std::to_string(line) + ": " + msg);
  }
};

}  // namespace hfg::text
