#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "latq/lattice.hpp"

namespace latq {

// Matrix file grammar (canonical on output, whitespace-liberal on input):
//   matrix := '[' row+ ']'
//   row    := '[' entry (WS entry)* ']'
//   entry  := integer | integer '/' positive-integer

namespace detail {

class MatrixLexer {
 public:
  explicit MatrixLexer(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      advance();
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c, const char* what) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(line_, col_, std::string("expected ") + what);
    advance();
  }
  bool peek_entry_start() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '-' || std::isdigit(static_cast<unsigned char>(c));
  }

  Rational entry() {
    skip_ws();
    const int el = line_, ec = col_;
    const std::string num = integer_token();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      advance();
      const int dl = line_, dc = col_;
      const std::string den = integer_token();
      if (den.empty() || den[0] == '-' || den == "0" ||
          den.find_first_not_of('0') == std::string::npos)
        throw ParseError(dl, dc, "denominator must be a positive integer");
      Rational q(num + "/" + den);
      q.canonicalize();
      return q;
    }
    if (num.empty()) throw ParseError(el, ec, "expected an integer");
    return Rational(num);
  }

  int line() {
    skip_ws();
    return line_;
  }
  int col() {
    skip_ws();
    return col_;
  }

 private:
  std::string integer_token() {
    const int el = line_, ec = col_;
    std::string tok;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      tok += '-';
      advance();
    }
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      tok += text_[pos_];
      advance();
    }
    if (tok.empty() || tok == "-")
      throw ParseError(el, ec, "expected an integer");
    return tok;
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

}  // namespace detail

/// Parses the bracketed matrix grammar into an exact rational matrix.
/// Throws ParseError with line/column on malformed input.
inline RationalMatrix parse_matrix_text(std::string_view text) {
  detail::MatrixLexer lex(text);
  lex.expect('[', "'[' opening the matrix");
  std::vector<std::vector<Rational>> rows;
  while (lex.peek_is('[')) {
    lex.expect('[', "'[' opening a row");
    std::vector<Rational> row;
    while (lex.peek_entry_start()) row.push_back(lex.entry());
    if (row.empty())
      throw ParseError(lex.line(), lex.col(), "row has no entries");
    lex.expect(']', "']' closing the row");
    if (!rows.empty() && rows.front().size() != row.size())
      throw ParseError(lex.line(), lex.col(), "rows differ in length");
    rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw ParseError(lex.line(), lex.col(), "matrix has no rows");
  lex.expect(']', "']' closing the matrix");
  if (!lex.at_end())
    throw ParseError(lex.line(), lex.col(), "trailing content after matrix");

  RationalMatrix m(static_cast<Index>(rows.size()),
                   static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

/// parse + rank check; rank-deficient inputs are rejected with the exact zero
/// determinant as certificate.
inline Basis<Rational> parse_basis(std::string_view text) {
  return make_basis(parse_matrix_text(text));
}

/// Canonical text: single spaces, one row per line, no trailing newline.
/// parse(serialize(B)) == B exactly; double entries are serialized through
/// their exact binary expansion so the grammar stays closed.
template <class Scalar>
std::string serialize_matrix(const MatrixX<Scalar>& m) {
  std::string out = "[";
  for (Index i = 0; i < m.rows(); ++i) {
    if (i > 0) out += "\n";
    out += "[";
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += " ";
      if constexpr (is_exact_v<Scalar>)
        out += format_scalar(m(i, j));
      else
        out += format_scalar(rational_from_double(m(i, j)));
    }
    out += "]";
  }
  out += "]";
  return out;
}

template <class Scalar>
std::string serialize_matrix(const Basis<Scalar>& b) {
  return serialize_matrix(b.rows);
}

}  // namespace latq
