// Reader for the s-expression TBox format.
//
//   (define-primitive-concept A C)   A [= C
//   (define-concept A C)             A == C
//   (implies C D)                    C [= D
//   (equal C D)                      C == D
//
// Concepts: top | bottom | NAME | (not C) | (and C ...) | (or C ...)
//           | (some R C) | (all R C), with roles NAME | (inv NAME).
// A ';' starts a comment that runs to the end of the line.

#ifndef DLR_PARSER_HPP
#define DLR_PARSER_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "dlr/concept.hpp"

namespace dlr {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

TBox parse_tbox(std::string_view text);
Concept parse_concept(std::string_view text);

}  // namespace dlr

#endif  // DLR_PARSER_HPP
