#include "args.hpp"

#include <CLI11.hpp>

namespace unifree::cli {

Command parse_args(int argc, const char* const* argv) {
  Command cmd;
  std::size_t bound = 0;

  CLI::App app{"Universal self-maps, free monoid actions and l1 liftings", "unifree"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", cmd.json, "Print the report as JSON");
  app.add_option("--seed", cmd.seed, "Seed for randomized sampling")->default_val(0);
  auto* bound_opt = app.add_option("--bound", bound, "Verification bound (meaning depends on the command)");

  auto* analyze = app.add_subcommand("analyze", "Decide universality of a self-map description");
  analyze->add_option("description", cmd.input, "Description JSON file")->required();

  auto* lift = app.add_subcommand("lift", "Lift a finite self-map through a description");
  lift->add_option("--source", cmd.source, "Description JSON file")->required();
  lift->add_option("--target", cmd.target, "Target self-map JSON file")->required();
  lift->add_option("--depth", cmd.depth, "Truncation depth")->default_val(5);

  auto* certify = app.add_subcommand("certify", "Re-verify a certificate or a report carrying one");
  certify->add_option("certificate", cmd.input, "Certificate JSON file")->required();

  auto* laws = app.add_subcommand("laws", "Check the free-object and nice-epimorphism laws");
  laws->add_option("--category", cmd.category, "ens, monounary or finvecq")
      ->required()
      ->check(CLI::IsMember({"ens", "monounary", "finvecq"}));
  laws->add_option("--mode", cmd.mode, "surjective or right_invertible")
      ->check(CLI::IsMember({"surjective", "right_invertible"}));
  laws->add_option("--monoid", cmd.monoid, "Monoid JSON file for the free M-action laws");

  auto* ellone = app.add_subcommand("ellone", "l1 liftings of rational operators");
  ellone->require_subcommand(1);
  auto* ellone_lift = ellone->add_subcommand("lift", "Lift a non-expansive matrix through l1(nu)");
  ellone_lift->add_option("--target", cmd.target, "Matrix JSON file")->required();
  ellone_lift->add_option("--seed", cmd.points, "Seed points JSON file")->required();
  ellone_lift->add_option("--depth", cmd.depth, "Closure depth")->default_val(5);

  auto* universal = app.add_subcommand("universal", "The universal action on a free object");
  universal->add_option("--category", cmd.category, "ens, monounary or finvecq")
      ->required()
      ->check(CLI::IsMember({"ens", "monounary", "finvecq"}));
  universal->add_option("--monoid", cmd.monoid, "Monoid JSON file")->required();
  universal->add_option("--action", cmd.action, "Action JSON file to lift");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw ArgsError(app.help(), 0);
  } catch (const CLI::ParseError& e) {
    const CLI::App* at = &app;
    for (auto* sub : {analyze, lift, certify, laws, ellone_lift, universal})
      if (sub->parsed()) at = sub;
    if (ellone->parsed() && !ellone_lift->parsed()) at = ellone;
    throw ArgsError(std::string("error: ") + e.what() + "\n\n" + at->help(), 2);
  }

  if (*bound_opt) cmd.bound = bound;
  if (analyze->parsed()) cmd.kind = CommandKind::Analyze;
  if (lift->parsed()) cmd.kind = CommandKind::Lift;
  if (certify->parsed()) cmd.kind = CommandKind::Certify;
  if (laws->parsed()) cmd.kind = CommandKind::Laws;
  if (ellone_lift->parsed()) cmd.kind = CommandKind::ElloneLift;
  if (universal->parsed()) cmd.kind = CommandKind::Universal;
  return cmd;
}

}  // namespace unifree::cli
