#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "args.hpp"
#include "unifree/unifree.h"

namespace {

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Inputs {
  std::string first, second, third;
};

int run(const unifree::cli::Command& cmd) {
  using unifree::cli::CommandKind;
  unifree_options opts{cmd.seed, cmd.bound ? 1 : 0, cmd.bound.value_or(0)};

  auto load = [](const std::string& path, std::string& into) {
    if (path.empty()) return true;
    auto text = slurp(path);
    if (!text) {
      std::cerr << "error: cannot read " << path << "\n";
      return false;
    }
    into = std::move(*text);
    return true;
  };

  Inputs in;
  unifree_report* report = nullptr;
  unifree_status status = UNIFREE_INPUT_ERROR;
  switch (cmd.kind) {
    case CommandKind::Analyze:
      if (!load(cmd.input, in.first)) return 2;
      status = unifree_analyze(in.first.c_str(), &opts, &report);
      break;
    case CommandKind::Lift:
      if (!load(cmd.source, in.first) || !load(cmd.target, in.second)) return 2;
      status = unifree_lift(in.first.c_str(), in.second.c_str(), cmd.depth, &opts, &report);
      break;
    case CommandKind::Certify:
      if (!load(cmd.input, in.first)) return 2;
      status = unifree_certify(in.first.c_str(), &opts, &report);
      break;
    case CommandKind::Laws:
      if (!load(cmd.monoid, in.first)) return 2;
      status = unifree_laws(cmd.category.c_str(), cmd.mode.c_str(), cmd.monoid.empty() ? nullptr : in.first.c_str(),
                            &opts, &report);
      break;
    case CommandKind::ElloneLift:
      if (!load(cmd.target, in.first) || !load(cmd.points, in.second)) return 2;
      status = unifree_ellone_lift(in.first.c_str(), in.second.c_str(), cmd.depth, &opts, &report);
      break;
    case CommandKind::Universal:
      if (!load(cmd.monoid, in.first) || !load(cmd.action, in.second)) return 2;
      status = unifree_universal(cmd.category.c_str(), in.first.c_str(), cmd.action.empty() ? nullptr : in.second.c_str(),
                                 &opts, &report);
      break;
  }

  if (status != UNIFREE_OK && status != UNIFREE_CHECK_FAILED) {
    std::cerr << "error: " << unifree_last_error() << "\n";
    return 2;
  }
  if (cmd.json)
    std::cout << unifree_report_json(report, 2) << "\n";
  else
    std::cout << unifree_report_text(report);
  unifree_report_free(report);
  return status == UNIFREE_OK ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(unifree::cli::parse_args(argc, argv));
  } catch (const unifree::cli::ArgsError& e) {
    (e.exit_code() == 0 ? std::cout : std::cerr) << e.what();
    return e.exit_code();
  }
}
