#ifndef TDKIT_DOCUMENT_HPP
#define TDKIT_DOCUMENT_HPP

// System documents: JSON text with scalars stored as strings in the
// canonical grammar, so exact values survive any JSON host.
//
//   {
//     "field": {"kind": "GFp", "p": 7},
//     "dimension": 2,
//     "A": [
//       ["2", "0"],
//       ["0", "3"]
//     ],
//     "A_star": [...],
//     "thetas": ["2", "3"],
//     "theta_stars": [...]
//   }

#include <string>
#include <string_view>
#include <vector>

#include "tdkit/tdcore.hpp"

namespace tdkit {

/// Parse failure with the location inside the document ("A[1][2]", "line 3").
class DocumentError : public Error {
 public:
  DocumentError(std::string location, const std::string& what)
      : Error(ErrorKind::Parse, location + ": " + what), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

using StringGrid = std::vector<std::vector<std::string>>;

struct SystemDocument {
  FieldSpec field;
  std::size_t dimension = 0;
  StringGrid a;
  StringGrid a_star;
  std::vector<std::string> thetas;
  std::vector<std::string> theta_stars;

  friend bool operator==(const SystemDocument&, const SystemDocument&) = default;
};

/// Validates structure and scalar grammar; scalars are canonicalized.
SystemDocument parse_system_document(std::string_view text);
/// Canonical text; parse_system_document(write_system_document(d)) == d.
std::string write_system_document(const SystemDocument& doc);

SystemDocument read_system_file(const std::string& path);
void write_system_file(const std::string& path, const SystemDocument& doc);

/// "Q", "GF(7)", "GF7" or "GFp:7".
FieldSpec parse_field_descriptor(std::string_view text);

template <ExactScalar S>
struct SystemInput {
  Matrix<S> a;
  Matrix<S> a_star;
  std::vector<S> thetas;
  std::vector<S> theta_stars;
};

template <ExactScalar S>
Matrix<S> decode_grid(const StringGrid& grid, const FieldSpec& f) {
  const auto rows = static_cast<Index>(grid.size());
  const auto cols = rows == 0 ? Index{0} : static_cast<Index>(grid.front().size());
  Matrix<S> m = zero_matrix<S>(rows, cols, f);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      m(i, j) = S::parse(grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], f);
  return m;
}

template <ExactScalar S>
std::vector<S> decode_list(const std::vector<std::string>& items, const FieldSpec& f) {
  std::vector<S> out;
  for (const auto& s : items) out.push_back(S::parse(s, f));
  return out;
}

template <ExactScalar S>
std::vector<std::string> encode_list(const std::vector<S>& items) {
  std::vector<std::string> out;
  for (const S& x : items) out.push_back(render(x));
  return out;
}

template <ExactScalar S>
SystemInput<S> decode(const SystemDocument& doc) {
  return {decode_grid<S>(doc.a, doc.field), decode_grid<S>(doc.a_star, doc.field),
          decode_list<S>(doc.thetas, doc.field), decode_list<S>(doc.theta_stars, doc.field)};
}

template <ExactScalar S>
SystemDocument encode(const FieldSpec& f, const Matrix<S>& a, const std::vector<S>& thetas, const Matrix<S>& a_star,
                      const std::vector<S>& theta_stars) {
  return {f, static_cast<std::size_t>(a.rows()), render_rows(a), render_rows(a_star), encode_list(thetas),
          encode_list(theta_stars)};
}

template <ExactScalar S>
SystemDocument encode(const MtdSystem<S>& sys) {
  return encode(sys.field, sys.a, sys.thetas(), sys.a_star, sys.theta_stars());
}

}  // namespace tdkit

#endif  // TDKIT_DOCUMENT_HPP
