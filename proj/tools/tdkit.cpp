// tdkit: verify, reduce and generate (mock) tridiagonal systems.
//
//   tdkit check [--level mtd|td] [--format human|machine] [--jobs N] FILE...
//   tdkit quotient [--format human|machine] [--jobs N] FILE...
//   tdkit diameter2 [--field Q|GF(p)] [--out FILE] [--expect] [--level mtd|td]
//                   [--format human|machine] th0 th1 th2 ths0 ths1 ths2 z0 z1 z2

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "tdkit/commands.hpp"

int main(int argc, char** argv) {
  using namespace tdkit;
  CLI::App app{"Exact verification of mock tridiagonal and tridiagonal systems"};
  app.require_subcommand(1);

  const std::map<std::string, Level> levels{{"mtd", Level::Mtd}, {"td", Level::Td}};
  const std::map<std::string, Format> formats{{"human", Format::Human}, {"machine", Format::Machine}};
  auto level_option = [&](CLI::App* cmd, Level& target, const std::string& help) {
    cmd->add_option("--level", target, help)
        ->transform(CLI::CheckedTransformer(levels, CLI::ignore_case).description(""))
        ->option_text("{mtd,td}");
  };
  auto format_option = [&](CLI::App* cmd, Format& target) {
    cmd->add_option("--format", target, "Human report or JSON verdict")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
        ->option_text("{human,machine}");
  };

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Check the MTD axioms, sharpness, parameter array and TD verdict");
  check_cmd->add_option("files", check.paths, "System documents")->required();
  level_option(check_cmd, check.level, "Level that decides the exit code");
  format_option(check_cmd, check.format);
  check_cmd->add_option("--jobs,-j", check.jobs, "Worker threads for multi-file batches")
      ->check(CLI::PositiveNumber);

  QuotientOptions quotient;
  auto* quotient_cmd = app.add_subcommand("quotient", "Reduce a sharp MTD system to a TD system");
  quotient_cmd->add_option("files", quotient.paths, "System documents")->required();
  format_option(quotient_cmd, quotient.format);
  quotient_cmd->add_option("--jobs,-j", quotient.jobs, "Worker threads for multi-file batches")->check(CLI::PositiveNumber);

  Diameter2Options d2;
  std::vector<std::string> scalars;
  auto* d2_cmd = app.add_subcommand("diameter2", "Build and check the explicit diameter-2 family on F^4");
  d2_cmd->add_option("params", scalars, "theta_0..2 theta*_0..2 zeta_0..2")->required()->expected(9);
  d2_cmd->add_option("--field", d2.field, "Q or GF(p)")->capture_default_str();
  d2_cmd->add_option("--out,-o", d2.out_path, "Where to write the system document")->capture_default_str();
  d2_cmd->add_flag("--expect", d2.expect, "Cross-check against the closed forms");
  level_option(d2_cmd, d2.level, "Level of the embedded check");
  format_option(d2_cmd, d2.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  if (*check_cmd) return run_check(check, std::cout);
  if (*quotient_cmd) return run_quotient(quotient, std::cout);
  std::copy(scalars.begin(), scalars.end(), d2.scalars.begin());
  return run_diameter2(d2, std::cout);
}
