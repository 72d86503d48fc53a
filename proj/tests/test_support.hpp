#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "woadiv/woadiv.hpp"

namespace woadiv::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("woadiv_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const BenchmarkSuite& loaded_suite() {
  static const BenchmarkSuite suite = BenchmarkSuite::load(default_cec_data_dir());
  return suite;
}

inline ObjectiveFunction sphere(std::size_t dims, double lo = -100.0, double hi = 100.0) {
  return ObjectiveFunction("sphere", Bounds::uniform(dims, lo, hi),
                           [](std::span<const double> x, RngStream&) { return classical::sphere(x); },
                           0.0);
}

}  // namespace woadiv::testing
