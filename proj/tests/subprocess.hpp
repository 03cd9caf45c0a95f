#pragma once

// Minimal subprocess capture for driving the CLI from tests.

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace subprocess {

struct Result {
  int rc = -1;
  std::string out;
};

inline Result run(const std::string& command) {
  Result res;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
  int status = pclose(pipe);
  res.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace subprocess
