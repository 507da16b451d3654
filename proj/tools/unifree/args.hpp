#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace unifree::cli {

enum class CommandKind { Analyze, Lift, Certify, Laws, ElloneLift, Universal };

struct Command {
  CommandKind kind = CommandKind::Analyze;
  std::string input;        // analyze: description file; certify: certificate file
  std::string source;       // lift
  std::string target;       // lift: self-map file; ellone lift: matrix file
  std::string points;       // ellone lift
  std::size_t depth = 5;
  std::string category;     // laws, universal
  std::string mode = "surjective";
  std::string monoid;       // laws (optional), universal: file
  std::string action;       // universal (optional)
  bool json = false;
  std::uint64_t seed = 0;
  std::optional<std::size_t> bound;
};

// Raised for --help (exit 0) and usage errors (exit 2); message holds the
// text to print.
class ArgsError : public std::runtime_error {
 public:
  ArgsError(const std::string& message, int exit_code) : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

Command parse_args(int argc, const char* const* argv);

}  // namespace unifree::cli
