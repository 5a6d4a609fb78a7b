#include "tdkit/commands.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "tdkit/diameter2.hpp"

namespace tdkit {

namespace {

using json = Verdict;

const char* level_name(Level level) { return level == Level::Mtd ? "mtd" : "td"; }

template <ExactScalar S>
json scalar_list(const std::vector<S>& v) {
  json out = json::array();
  for (const S& x : v) out.push_back(render(x));
  return out;
}

template <ExactScalar S>
json vector_json(const Vector<S>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(render(v(i)));
  return out;
}

template <ExactScalar S>
json matrix_json(const Matrix<S>& m) {
  json out = json::array();
  for (const auto& row : render_rows(m)) out.push_back(row);
  return out;
}

template <ExactScalar S>
json matrices_json(const std::vector<Matrix<S>>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(matrix_json(m));
  return out;
}

template <ExactScalar S>
json subspace_json(const Subspace<S>& w) {
  return json{{"dim", w.dim()}, {"basis", matrix_json(w.basis())}};
}

template <ExactScalar S>
json parameter_array_json(const ParameterArray<S>& pa) {
  return json{{"thetas", scalar_list(pa.thetas)}, {"theta_stars", scalar_list(pa.theta_stars)},
              {"zetas", scalar_list(pa.zetas)}};
}

json clause_json(const ClauseReport& c) {
  json violations = json::array();
  for (auto [i, j] : c.violations) violations.push_back({i, j});
  return json{{"clause", c.clause},
              {"statement", c.statement},
              {"status", c.vacuous ? "vacuous" : c.passed ? "pass" : "fail"},
              {"violations", violations},
              {"witness", c.witness}};
}

json skipped_clause(std::string clause, std::string statement) {
  return json{{"clause", std::move(clause)},
              {"statement", std::move(statement)},
              {"status", "skipped"},
              {"violations", json::array()},
              {"witness", "not evaluated"}};
}

json error_json(const Error& e) {
  json out{{"kind", std::string(to_string(e.kind()))}, {"message", e.detail()}};
  if (const auto* doc = dynamic_cast<const DocumentError*>(&e)) out["location"] = doc->location();
  return out;
}

json& finish(json& v, int code) {
  v["result"] = code == kExitPass ? "pass" : code == kExitParse ? "parse-error" : "fail";
  v["exit_code"] = code;
  return v;
}

json header(const char* command, const std::string& source, const SystemDocument& doc) {
  return json{{"command", command},
              {"input", source},
              {"field", doc.field.name()},
              {"dimension", doc.dimension},
              {"diameter", doc.thetas.empty() ? 0 : doc.thetas.size() - 1}};
}

const char* const kShapeDual = "E_i A* E_j = 0 whenever |i-j| > 1";
const char* const kShapePrimary = "E*_i A E*_j = 0 whenever |i-j| > 1";
const char* const kCorner = "E*_0 E_0 E*_0 != 0 and E*_0 E_d E*_0 != 0";
const char* const kDiag = "A and A* are diagonalizable with the given eigenvalue orderings";

template <ExactScalar S>
std::optional<MtdSystem<S>> build_or_report(const SystemDocument& doc, json& axioms) {
  const SystemInput<S> in = decode<S>(doc);
  try {
    return make_system(in.a, in.thetas, in.a_star, in.theta_stars);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    json diag = skipped_clause("MTD (i)", kDiag);
    diag["status"] = "fail";
    diag["witness"] = e.detail();
    diag["error"] = error_json(e);
    axioms.push_back(std::move(diag));
    axioms.push_back(skipped_clause("MTD (ii)", kShapeDual));
    axioms.push_back(skipped_clause("MTD (iii)", kShapePrimary));
    axioms.push_back(skipped_clause("MTD (iv)", kCorner));
    return std::nullopt;
  }
}

template <ExactScalar S>
json td_json(const TdVerdict<S>& t) {
  return json{{"td", t.td},
              {"tridiagonal_shape", t.tridiagonal_shape},
              {"irreducible", t.irreducible},
              {"principal_module", subspace_json(t.principal)},
              {"maximal_submodule", subspace_json(t.maximal)},
              {"witness", t.witness ? subspace_json(*t.witness) : json(nullptr)},
              {"explanation", t.explanation}};
}

template <ExactScalar S>
json check_typed(const SystemDocument& doc, Level level, const std::string& source) {
  json v = header("check", source, doc);
  v["level"] = level_name(level);
  json axioms = json::array();
  const std::optional<MtdSystem<S>> sys = build_or_report<S>(doc, axioms);
  if (!sys) {
    v["axioms"] = std::move(axioms);
    v["sharp"] = nullptr;
    v["parameter_array"] = nullptr;
    v["constraints"] = nullptr;
    v["constraint_sum"] = nullptr;
    v["td"] = nullptr;
    return finish(v, kExitFail);
  }

  const MtdReport<S> report = verify_mtd(*sys);
  axioms.push_back(clause_json(report.diagonalizable));
  axioms.push_back(clause_json(report.shape.dual_on_primary));
  axioms.push_back(clause_json(report.shape.primary_on_dual));
  axioms.push_back(clause_json(report.corner.clause));
  v["axioms"] = std::move(axioms);

  const bool sharp = is_sharp(*sys);
  v["sharp"] = sharp;
  v["e_star_0_rank"] = rank(sys->e_star(0));
  v["parameter_array"] = nullptr;
  v["constraints"] = nullptr;
  v["constraint_sum"] = nullptr;
  if (sharp) {
    const ParameterArray<S> pa = parameter_array(*sys);
    const ConstraintReport<S> cr = check_constraints(pa);
    v["parameter_array"] = parameter_array_json(pa);
    v["constraints"] = json::array({clause_json(cr.distinct), clause_json(cr.split), clause_json(cr.ratios)});
    v["constraint_sum"] = render(cr.weighted_sum);
  }

  const bool shape = report.diagonalizable.passed && report.shape.passed();
  bool irreducible = false;
  if (!shape) {
    v["td"] = json{{"td", false}, {"explanation", "tridiagonal shape fails"}};
  } else if (!sharp) {
    v["td"] = json{{"td", nullptr},
                   {"explanation", "irreducibility is only decided for sharp systems; dim E*_0 V = " +
                                       std::to_string(rank(sys->e_star(0)))}};
  } else {
    const TdVerdict<S> t = is_td(*sys);
    irreducible = t.irreducible;
    v["td"] = td_json(t);
  }

  const bool passed = level == Level::Mtd ? report.passed() : shape && irreducible;
  return finish(v, passed ? kExitPass : kExitFail);
}

template <ExactScalar S>
json quotient_typed(const SystemDocument& doc, const std::string& source) {
  json v = header("quotient", source, doc);
  json axioms = json::array();
  const std::optional<MtdSystem<S>> sys = build_or_report<S>(doc, axioms);
  std::optional<MtdReport<S>> report;
  if (sys) {
    report = verify_mtd(*sys);
    axioms.push_back(clause_json(report->diagonalizable));
    axioms.push_back(clause_json(report->shape.dual_on_primary));
    axioms.push_back(clause_json(report->shape.primary_on_dual));
    axioms.push_back(clause_json(report->corner.clause));
  }
  v["axioms"] = std::move(axioms);
  if (!sys || !report->passed()) {
    v["error"] = json{{"kind", "NotMtd"}, {"message", "input is not an MTD system"}};
    return finish(v, kExitFail);
  }
  v["sharp"] = is_sharp(*sys);
  try {
    const QuotientReport<S> q = quotient_system(*sys);
    v["principal_module"] = subspace_json(q.principal_module);
    v["corner_kernel"] = subspace_json(q.corner_kernel);
    v["maximal_submodule"] = subspace_json(q.maximal_submodule);
    v["quotient_dim"] = q.quotient_dim;
    json transversal = json::array();
    for (const auto& t : q.transversal) transversal.push_back(vector_json(t));
    v["transversal"] = std::move(transversal);
    v["induced"] = json{{"A", matrix_json(q.induced_a)},
                        {"A_star", matrix_json(q.induced_a_star)},
                        {"idempotents", matrices_json(q.induced_idempotents)},
                        {"idempotents_star", matrices_json(q.induced_idempotents_star)}};
    v["support"] = q.support;
    v["support_star"] = q.support_star;
    v["r"] = q.r;
    v["t"] = q.t;
    v["k"] = q.k;
    v["k_star"] = q.k_star;
    v["parent_parameter_array"] = parameter_array_json(q.parent_parameter_array);
    v["induced_parameter_array"] = parameter_array_json(q.induced_parameter_array);
    v["parameter_arrays_equal"] = q.parent_parameter_array == q.induced_parameter_array;
    v["induced_is_td"] = is_td(q.induced_system).td;
    v["induced_document"] = json::parse(write_system_document(encode(q.induced_system)));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    v["error"] = error_json(e);
    return finish(v, kExitFail);
  }
  return finish(v, kExitPass);
}

json failure(const char* command, const std::string& source, json error, int code) {
  json v{{"command", command}};
  if (!source.empty()) v["input"] = source;
  v["error"] = std::move(error);
  return finish(v, code);
}

json parse_failure(const char* command, const std::string& source, const Error& e) {
  return failure(command, source, error_json(e), kExitParse);
}

// -------------------------------------------------------------- diameter 2

template <ExactScalar S>
std::array<S, 3> triple(const std::array<std::string, 9>& raw, std::size_t offset, const FieldSpec& f,
                        const char* name) {
  std::array<S, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    try {
      out[i] = S::parse(raw[offset + i], f);
    } catch (const Error& e) {
      throw DocumentError(std::string(name) + "_" + std::to_string(i), e.detail());
    }
  }
  return out;
}

template <ExactScalar S>
json expectation_json(const Diameter2Params<S>& p, const MtdSystem<S>& sys) {
  json out = json::object();
  bool all = true;
  auto record = [&](const char* key, bool ok) {
    out[key] = ok;
    all = all && ok;
  };

  const IdempotentSet<S> closed = closed_form_idempotents(p);
  bool idem = true;
  for (std::size_t i = 0; i < 3; ++i) {
    idem = idem && closed.e[i] == sys.e(i) && closed.e_star[i] == sys.e_star(i);
  }
  record("idempotents_closed_form", idem);
  record("parameter_array_round_trip", parameter_array(sys) == p.parameter_array());
  const bool td = is_td(sys).td;
  record("td_criterion_agrees", td == vidar_is_td(p));

  if (vidar_is_td(p)) {
    out["degenerate_golden"] = nullptr;
  } else {
    const DegenerateGolden<S> g = degenerate_expected(p);
    const QuotientReport<S> q = quotient_system(sys);
    bool idem3 = true;
    for (std::size_t i = 0; i < 3; ++i) {
      idem3 = idem3 && q.induced_idempotents[i] == g.induced.e[i] &&
              q.induced_idempotents_star[i] == g.induced.e_star[i];
    }
    json golden{{"principal_module_full", q.principal_module.is_full()},
                {"maximal_submodule", q.maximal_submodule == Subspace<S>::span(p.field, 4, {g.m_vector})},
                {"quotient_dim", q.quotient_dim == 3},
                {"induced_a", q.induced_a == g.induced_a},
                {"induced_a_star", q.induced_a_star == g.induced_a_star},
                {"induced_idempotents", idem3}};
    for (const auto& [key, ok] : golden.items()) all = all && ok.template get<bool>();
    out["degenerate_golden"] = std::move(golden);
  }
  out["passed"] = all;
  return out;
}

template <ExactScalar S>
json diameter2_typed(const Diameter2Options& opts, const FieldSpec& f, json& v) {
  const auto thetas = triple<S>(opts.scalars, 0, f, "theta");
  const auto theta_stars = triple<S>(opts.scalars, 3, f, "theta*");
  const auto zetas = triple<S>(opts.scalars, 6, f, "zeta");
  v["parameters"] = json{{"thetas", scalar_list(std::vector<S>(thetas.begin(), thetas.end()))},
                         {"theta_stars", scalar_list(std::vector<S>(theta_stars.begin(), theta_stars.end()))},
                         {"zetas", scalar_list(std::vector<S>(zetas.begin(), zetas.end()))}};
  Diameter2Params<S> p;
  try {
    p = validate_params(thetas, theta_stars, zetas);
  } catch (const Error& e) {
    v["error"] = error_json(e);
    return finish(v, kExitFail);
  }
  v["zeta1_times"] = render(p.zeta1_times);
  v["admissibility_value"] = render(admissibility_value(p.thetas, p.theta_stars, p.zetas));
  v["td_criterion"] = vidar_is_td(p);

  const MtdSystem<S> sys = build_system(p);
  const SystemDocument doc = encode(sys);
  v["document"] = opts.out_path;
  try {
    write_system_file(opts.out_path, doc);
  } catch (const DocumentError& e) {
    v["error"] = json{{"kind", "WriteFailed"}, {"message", e.what()}};
    return finish(v, kExitFail);
  }

  json check = check_document(parse_system_document(write_system_document(doc)), opts.level, opts.out_path);
  int code = exit_code_of(check);
  v["check"] = std::move(check);
  if (opts.expect) {
    json expect = expectation_json(p, sys);
    if (!expect["passed"].get<bool>()) code = kExitFail;
    v["expect"] = std::move(expect);
  }
  return finish(v, code);
}

// ------------------------------------------------------------------- human

std::string join(const json& items, const char* sep = ", ") {
  std::string out;
  for (const auto& x : items) {
    if (!out.empty()) out += sep;
    out += x.is_string() ? x.get<std::string>() : x.dump();
  }
  return out;
}

std::string row_list(const json& rows) {
  std::string out;
  for (const auto& r : rows) out += (out.empty() ? "[" : ", [") + join(r) + "]";
  return out.empty() ? "(none)" : out;
}

void render_clause(std::ostream& os, const json& c) {
  std::string label = c["clause"].get<std::string>();
  label.resize(std::max<std::size_t>(label.size(), 18), ' ');
  os << "  " << label << ' ' << c["status"].get<std::string>() << "  " << c["statement"].get<std::string>() << '\n';
  const auto& w = c["witness"].get_ref<const std::string&>();
  if (!w.empty() && c["status"] != "skipped") os << "  " << std::string(18, ' ') << "   " << w << '\n';
}

void render_parameter_array(std::ostream& os, const json& pa, const char* label) {
  os << "  " << label << ": theta = (" << join(pa["thetas"]) << "); theta* = (" << join(pa["theta_stars"])
     << "); zeta = (" << join(pa["zetas"]) << ")\n";
}

void render_error(std::ostream& os, const json& e) {
  os << "  error: " << e["kind"].get<std::string>() << ": " << e["message"].get<std::string>() << '\n';
}

void render_check_body(std::ostream& os, const json& v) {
  for (const auto& c : v["axioms"]) render_clause(os, c);
  if (v["sharp"].is_null()) return;
  os << "  sharp: " << (v["sharp"].get<bool>() ? "yes" : "no") << " (rank E*_0 = " << v["e_star_0_rank"] << ")\n";
  if (!v["parameter_array"].is_null()) {
    render_parameter_array(os, v["parameter_array"], "parameter array");
    for (const auto& c : v["constraints"]) render_clause(os, c);
  }
  const json& td = v["td"];
  os << "  TD: " << (td["td"].is_null() ? "undetermined" : td["td"].get<bool>() ? "yes" : "no") << " ("
     << td["explanation"].get<std::string>() << ")\n";
  if (td.contains("witness") && !td["witness"].is_null()) {
    os << "  invariant subspace witness: " << row_list(td["witness"]["basis"]) << '\n';
  }
}

void render_quotient_body(std::ostream& os, const json& v) {
  for (const auto& c : v["axioms"]) render_clause(os, c);
  if (v.contains("error")) return;
  os << "  dim T E*_0 V = " << v["principal_module"]["dim"] << ", dim K = " << v["corner_kernel"]["dim"]
     << ", dim M = " << v["maximal_submodule"]["dim"] << ", dim L = " << v["quotient_dim"] << '\n';
  os << "  M basis: " << row_list(v["maximal_submodule"]["basis"]) << '\n';
  os << "  transversal: " << row_list(v["transversal"]) << '\n';
  os << "  induced A: " << row_list(v["induced"]["A"]) << '\n';
  os << "  induced A*: " << row_list(v["induced"]["A_star"]) << '\n';
  for (std::size_t i = 0; i < v["induced"]["idempotents"].size(); ++i) {
    os << "  induced E_" << i << ": " << row_list(v["induced"]["idempotents"][i]) << '\n';
  }
  for (std::size_t i = 0; i < v["induced"]["idempotents_star"].size(); ++i) {
    os << "  induced E*_" << i << ": " << row_list(v["induced"]["idempotents_star"][i]) << '\n';
  }
  render_parameter_array(os, v["parent_parameter_array"], "parent parameter array");
  render_parameter_array(os, v["induced_parameter_array"], "induced parameter array");
  os << "  parameter arrays equal: " << (v["parameter_arrays_equal"].get<bool>() ? "yes" : "no")
     << "; induced system TD: " << (v["induced_is_td"].get<bool>() ? "yes" : "no") << '\n';
}

void render_diameter2_body(std::ostream& os, const json& v) {
  if (v.contains("parameters")) {
    const json& p = v["parameters"];
    os << "  theta = (" << join(p["thetas"]) << "); theta* = (" << join(p["theta_stars"]) << "); zeta = ("
       << join(p["zetas"]) << ")\n";
  }
  if (!v.contains("zeta1_times")) return;
  os << "  zeta_1^x = " << v["zeta1_times"].get<std::string>()
     << "; admissibility value = " << v["admissibility_value"].get<std::string>() << '\n';
  os << "  zeta_1 zeta_1^x != zeta_2: " << (v["td_criterion"].get<bool>() ? "yes (TD)" : "no (not TD)") << '\n';
  os << "  system written to " << v["document"].get<std::string>() << '\n';
  if (v.contains("check")) {
    os << "  check --level " << v["check"]["level"].get<std::string>() << ":\n";
    std::ostringstream inner;
    render_check_body(inner, v["check"]);
    std::istringstream lines(inner.str());
    for (std::string line; std::getline(lines, line);) os << "  " << line << '\n';
    os << "    result: " << v["check"]["result"].get<std::string>() << '\n';
  }
  if (v.contains("expect")) {
    os << "  expected closed forms:\n";
    for (const auto& [key, value] : v["expect"].items()) {
      if (key == "passed") continue;
      if (value.is_object()) {
        for (const auto& [k2, ok] : value.items()) os << "    " << key << "." << k2 << ": " << (ok.get<bool>() ? "match" : "MISMATCH") << '\n';
      } else if (value.is_boolean()) {
        os << "    " << key << ": " << (value.get<bool>() ? "match" : "MISMATCH") << '\n';
      }
    }
  }
}

template <class Fn>
std::vector<json> run_batch(const std::vector<std::string>& paths, unsigned jobs, Fn fn) {
  std::vector<json> out(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < paths.size();) out[i] = fn(paths[i]);
  };
  const unsigned n = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(paths.size(), 1)));
  std::vector<std::jthread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  return out;
}

int emit(const std::vector<json>& verdicts, Format format, std::ostream& out) {
  int code = kExitPass;
  for (const auto& v : verdicts) code = std::max(code, exit_code_of(v));
  if (format == Format::Machine) {
    out << (verdicts.size() == 1 ? verdicts.front() : json(verdicts)).dump(2) << '\n';
  } else {
    for (const auto& v : verdicts) out << render_human(v);
  }
  return code;
}

template <class Fn>
json guarded(const char* command, const std::string& source, Fn fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::NotPrime) return parse_failure(command, source, e);
    return failure(command, source, error_json(e), kExitFail);
  } catch (const std::exception& e) {
    return failure(command, source, json{{"kind", "Internal"}, {"message", e.what()}}, kExitFail);
  }
}

}  // namespace

Verdict check_document(const SystemDocument& doc, Level level, const std::string& source) {
  return guarded("check", source, [&] {
    return visit_field(doc.field, [&](auto tag) { return check_typed<decltype(tag)>(doc, level, source); });
  });
}

Verdict quotient_document(const SystemDocument& doc, const std::string& source) {
  return guarded("quotient", source, [&] {
    return visit_field(doc.field, [&](auto tag) { return quotient_typed<decltype(tag)>(doc, source); });
  });
}

Verdict check_file(const std::string& path, Level level) {
  return guarded("check", path, [&] { return check_document(read_system_file(path), level, path); });
}

Verdict quotient_file(const std::string& path) {
  return guarded("quotient", path, [&] { return quotient_document(read_system_file(path), path); });
}

int exit_code_of(const Verdict& v) { return v.at("exit_code").get<int>(); }

std::string render_human(const Verdict& v) {
  std::ostringstream os;
  const auto command = v["command"].get<std::string>();
  os << command;
  if (v.contains("input")) os << ' ' << v["input"].get<std::string>();
  if (v.contains("field")) {
    os << "  [" << v["field"].get<std::string>();
    if (v.contains("dimension")) os << ", n = " << v["dimension"] << ", d = " << v["diameter"];
    if (v.contains("level")) os << ", level " << v["level"].get<std::string>();
    os << ']';
  }
  os << '\n';
  if (v.contains("axioms")) {
    if (command == "check") render_check_body(os, v);
    if (command == "quotient") render_quotient_body(os, v);
  }
  if (command == "diameter2") render_diameter2_body(os, v);
  if (v.contains("error")) render_error(os, v["error"]);
  os << "result: " << v["result"].get<std::string>() << " (exit " << v["exit_code"] << ")\n";
  return os.str();
}

Verdict diameter2_verdict(const Diameter2Options& opts) {
  return guarded("diameter2", "", [&] {
    json v{{"command", "diameter2"}};
    FieldSpec f;
    try {
      f = parse_field_descriptor(opts.field);
    } catch (const Error& e) {
      return parse_failure("diameter2", "", e);
    }
    v["field"] = f.name();
    return visit_field(f, [&](auto tag) { return diameter2_typed<decltype(tag)>(opts, f, v); });
  });
}

int run_check(const CheckOptions& opts, std::ostream& out) {
  return emit(run_batch(opts.paths, opts.jobs, [&](const std::string& p) { return check_file(p, opts.level); }),
              opts.format, out);
}

int run_quotient(const QuotientOptions& opts, std::ostream& out) {
  return emit(run_batch(opts.paths, opts.jobs, [](const std::string& p) { return quotient_file(p); }), opts.format,
              out);
}

int run_diameter2(const Diameter2Options& opts, std::ostream& out) {
  return emit({diameter2_verdict(opts)}, opts.format, out);
}

}  // namespace tdkit
