#include "tdkit/document.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace tdkit {

namespace {

using nlohmann::json;

std::string canonical_scalar(const json& node, const FieldSpec& f, const std::string& where) {
  if (!node.is_string()) throw DocumentError(where, "scalar must be a JSON string");
  const auto text = node.get<std::string>();
  try {
    return visit_field(f, [&](auto tag) { return render(decltype(tag)::parse(text, f)); });
  } catch (const DocumentError&) {
    throw;
  } catch (const Error& e) {
    throw DocumentError(where, e.detail());
  }
}

const json& member(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DocumentError(key, "missing field");
  return *it;
}

FieldSpec parse_field_node(const json& node) {
  if (!node.is_object()) throw DocumentError("field", "expected an object");
  const json& kind = member(node, "kind");
  if (kind == "Q") return FieldSpec::rationals();
  if (kind == "GFp") {
    const json& p = member(node, "p");
    if (!p.is_number_integer()) throw DocumentError("field.p", "expected an integer");
    try {
      return FieldSpec::prime(p.get<std::int64_t>());
    } catch (const Error& e) {
      throw DocumentError("field.p", e.detail());
    }
  }
  throw DocumentError("field.kind", "expected \"Q\" or \"GFp\"");
}

StringGrid parse_grid(const json& node, const char* name, std::size_t n, const FieldSpec& f) {
  if (!node.is_array() || node.size() != n) {
    throw DocumentError(name, "expected " + std::to_string(n) + " rows");
  }
  StringGrid grid;
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = node[i];
    const std::string where = std::string(name) + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != n) throw DocumentError(where, "expected " + std::to_string(n) + " entries");
    auto& out = grid.emplace_back();
    for (std::size_t j = 0; j < n; ++j) out.push_back(canonical_scalar(row[j], f, where + "[" + std::to_string(j) + "]"));
  }
  return grid;
}

std::vector<std::string> parse_list(const json& node, const char* name, const FieldSpec& f) {
  if (!node.is_array() || node.empty()) throw DocumentError(name, "expected a nonempty array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(canonical_scalar(node[i], f, std::string(name) + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void write_list(std::ostream& os, const std::vector<std::string>& items) {
  os << '[';
  for (std::size_t k = 0; k < items.size(); ++k) os << (k ? ", " : "") << json(items[k]).dump();
  os << ']';
}

void write_grid(std::ostream& os, const StringGrid& grid) {
  os << "[\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << "    ";
    write_list(os, grid[i]);
    os << (i + 1 < grid.size() ? ",\n" : "\n");
  }
  os << "  ]";
}

}  // namespace

FieldSpec parse_field_descriptor(std::string_view text) {
  if (text == "Q") return FieldSpec::rationals();
  static const std::regex gf(R"(GF(?:p:|\()?([0-9]+)\)?)");
  std::cmatch m;
  if (!std::regex_match(text.begin(), text.end(), m, gf)) {
    throw Error(ErrorKind::Parse, "field descriptor '" + std::string(text) + "': expected Q or GF(p)");
  }
  const std::string digits = m[1].str();
  if (digits.size() > 10) throw Error(ErrorKind::NotPrime, digits + " is not a prime below 2^31");
  return FieldSpec::prime(std::stoll(digits));
}

SystemDocument parse_system_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DocumentError("byte " + std::to_string(e.byte), e.what());
  }
  if (!root.is_object()) throw DocumentError("document", "expected a JSON object");

  SystemDocument doc;
  doc.field = parse_field_node(member(root, "field"));
  const json& dim = member(root, "dimension");
  if (!dim.is_number_integer() || dim.get<std::int64_t>() <= 0) {
    throw DocumentError("dimension", "expected a positive integer");
  }
  doc.dimension = dim.get<std::size_t>();
  doc.a = parse_grid(member(root, "A"), "A", doc.dimension, doc.field);
  doc.a_star = parse_grid(member(root, "A_star"), "A_star", doc.dimension, doc.field);
  doc.thetas = parse_list(member(root, "thetas"), "thetas", doc.field);
  doc.theta_stars = parse_list(member(root, "theta_stars"), "theta_stars", doc.field);
  if (doc.thetas.size() != doc.theta_stars.size()) {
    throw DocumentError("theta_stars", "expected " + std::to_string(doc.thetas.size()) +
                                           " entries to match thetas");
  }
  return doc;
}

std::string write_system_document(const SystemDocument& doc) {
  std::ostringstream os;
  os << "{\n  \"field\": ";
  if (doc.field.is_prime_field()) {
    os << "{\"kind\": \"GFp\", \"p\": " << doc.field.modulus << "}";
  } else {
    os << "{\"kind\": \"Q\"}";
  }
  os << ",\n  \"dimension\": " << doc.dimension << ",\n  \"A\": ";
  write_grid(os, doc.a);
  os << ",\n  \"A_star\": ";
  write_grid(os, doc.a_star);
  os << ",\n  \"thetas\": ";
  write_list(os, doc.thetas);
  os << ",\n  \"theta_stars\": ";
  write_list(os, doc.theta_stars);
  os << "\n}\n";
  return os.str();
}

SystemDocument read_system_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system_document(buf.str());
}

void write_system_file(const std::string& path, const SystemDocument& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DocumentError(path, "cannot write file");
  out << write_system_document(doc);
}

}  // namespace tdkit
