// ============================================================================
// vl/parser.hpp — Concrete text syntax
// ============================================================================
//
// Grammar (whitespace insensitive):
//
//   formula  := or_expr ( "->" formula )?          right-assoc, loosest
//   or_expr  := and_expr ( "|" and_expr )*         left-assoc
//   and_expr := unary ( "&" unary )*               left-assoc
//   unary    := "~" unary | R<digits> unary | D<digits> unary | atom
//   atom     := identifier | "true" | "false" | "(" formula ")"
//
// Identifiers are [a-zA-Z_][a-zA-Z0-9_]*, excluding "true", "false" and
// anything of the form R<digits>/D<digits>, which lex as modal operator
// tokens with the agent index attached ("R1", "D12").
//
// This grammar is the normative format for CLI arguments, corpus files
// (one formula per line, '#' comments) and "formula" JSON fields.
//
// ============================================================================

#ifndef VL_PARSER_HPP
#define VL_PARSER_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "vl/formula.hpp"

namespace vl {

// Half-open range of 0-based character offsets into the parsed input.
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(SourceSpan span, std::string expected, const std::string& what)
        : std::runtime_error(what), span_(span), expected_(std::move(expected)) {}

    SourceSpan span() const noexcept { return span_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    SourceSpan span_;
    std::string expected_;
};

// Throws ParseError on malformed input (including trailing tokens).
Formula parse(std::string_view text);

// Minimal-parentheses rendering; parse(render(f)) == f.
std::string render(const Formula& f);

}  // namespace vl

#endif  // VL_PARSER_HPP
