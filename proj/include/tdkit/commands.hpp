#ifndef TDKIT_COMMANDS_HPP
#define TDKIT_COMMANDS_HPP

// The check / quotient / diameter2 pipelines behind the command-line tool.
// Each produces an ordered JSON verdict; the human format is rendered from
// that same verdict. Exit codes: 0 pass, 1 axiom or validation failure,
// 2 parse error.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdkit/document.hpp"

namespace tdkit {

using Verdict = nlohmann::ordered_json;

enum class Level { Mtd, Td };
enum class Format { Human, Machine };

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitParse = 2;

/// Verdict for one system document. `source` is echoed as "input".
Verdict check_document(const SystemDocument& doc, Level level, const std::string& source);
Verdict quotient_document(const SystemDocument& doc, const std::string& source);

/// Reads the file, then check_document / quotient_document; parse failures
/// become an exit-2 verdict instead of an exception.
Verdict check_file(const std::string& path, Level level);
Verdict quotient_file(const std::string& path);

int exit_code_of(const Verdict& v);
std::string render_human(const Verdict& v);

struct CheckOptions {
  std::vector<std::string> paths;
  Level level = Level::Mtd;
  Format format = Format::Human;
  unsigned jobs = 1;
};

struct QuotientOptions {
  std::vector<std::string> paths;
  Format format = Format::Human;
  unsigned jobs = 1;
};

struct Diameter2Options {
  std::string field = "Q";
  /// theta_0..2, theta*_0..2, zeta_0..2
  std::array<std::string, 9> scalars;
  std::string out_path = "diameter2-system.json";
  bool expect = false;
  Level level = Level::Mtd;
  Format format = Format::Human;
};

/// Verdict for the explicit diameter-2 family; writes the system document to
/// opts.out_path when the parameters validate.
Verdict diameter2_verdict(const Diameter2Options& opts);

int run_check(const CheckOptions& opts, std::ostream& out);
int run_quotient(const QuotientOptions& opts, std::ostream& out);
int run_diameter2(const Diameter2Options& opts, std::ostream& out);

}  // namespace tdkit

#endif  // TDKIT_COMMANDS_HPP
