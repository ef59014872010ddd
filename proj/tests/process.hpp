#pragma once

// Runs the CLI binary in a shell and captures its streams and exit status.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace requisite::testing {

struct Invocation {
  int status = -1;
  std::string out;
  std::string err;
};

inline Invocation invoke(const std::string& args) {
  static int counter = 0;
  const auto err_path =
      std::filesystem::temp_directory_path() / ("requisite_stderr_" + std::to_string(::getpid()) + "_" +
                                                std::to_string(counter++));
  const std::string cmd = std::string("NO_COLOR=1 '") + REQUISITE_CLI + "' " + args + " 2>'" + err_path.string() + "'";

  Invocation r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;

  std::ifstream in(err_path);
  std::stringstream e;
  e << in.rdbuf();
  r.err = e.str();
  std::filesystem::remove(err_path);
  return r;
}

}  // namespace requisite::testing
