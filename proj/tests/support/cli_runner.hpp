#pragma once

#include <sys/wait.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <fmt/format.h>

#include "psikit/classify.hpp"

namespace psikit::testing {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::filesystem::path scratch_dir() {
  static const auto dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             fmt::format("psikit-test-{}", ::getpid());
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::filesystem::path write_file(const std::string& name,
                                        const std::string& contents) {
  const auto path = scratch_dir() / name;
  std::ofstream(path, std::ios::binary) << contents;
  return path;
}

inline std::filesystem::path write_series(const std::string& name,
                                          const SeriesPair& pair) {
  std::string csv = "period,actual,forecast\n";
  for (std::size_t i = 0; i < pair.actual.size(); ++i) {
    const std::string period =
        pair.periods.empty() ? std::to_string(2000 + i) : pair.periods[i];
    csv += i == 0 ? fmt::format("{},{},\n", period, pair.actual[i])
                  : fmt::format("{},{},{}\n", period, pair.actual[i],
                                pair.forecast[i - 1]);
  }
  return write_file(name, csv);
}

inline CliResult run_cli(const std::string& args) {
  static std::atomic<int> counter{0};
  const auto err_path = scratch_dir() / fmt::format("stderr-{}.txt", counter++);
  const std::string cmd =
      fmt::format("\"{}\" {} 2>\"{}\"", PSIKIT_CLI_PATH, args, err_path.string());
  CliResult result;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.out.append(buffer, got);
  }
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.err = slurp(err_path);
  return result;
}

}  // namespace psikit::testing
