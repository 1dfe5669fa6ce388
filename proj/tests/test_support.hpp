#pragma once

// Shared plumbing for tests that touch files or the CLI binary.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace testsup {

namespace fs = std::filesystem;

class TempDir {
public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("chansel_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

private:
  fs::path path_;
};

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

inline const char* cli_path() { return std::getenv("CHANSEL_CLI"); }

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Run the CLI through the shell with stdout/stderr captured in `dir`.
inline CmdResult run_cli(const std::string& args, const fs::path& dir,
                         const std::string& stdin_file = "") {
  const fs::path out_file = dir / "_stdout.txt";
  const fs::path err_file = dir / "_stderr.txt";
  std::string cmd = "cd \"" + dir.string() + "\" && \"" + std::string(cli_path()) + "\" " +
                    args + " > \"" + out_file.string() + "\" 2> \"" + err_file.string() + "\"";
  if (!stdin_file.empty()) cmd += " < \"" + stdin_file + "\"";
  const int status = std::system(cmd.c_str());
  CmdResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_file);
  result.err = read_file(err_file);
  return result;
}

}  // namespace testsup
