#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hahnlog {

/// An atom or a parenthesized list, with its source span.
struct SExpr {
    bool is_list{false};
    std::string atom;
    std::vector<SExpr> items;
    std::size_t offset{0};
    std::size_t length{0};

    bool is_atom(std::string_view name) const { return !is_list && atom == name; }
    /// Head symbol of a non-empty list whose first item is an atom, else "".
    std::string head() const;
    std::string to_string() const;
};

/// Every top-level expression of `text`. Comments run from ';' to the end of
/// the line. A first line "hahnlog-v1" is accepted as a format header.
std::vector<SExpr> parse_sexprs(std::string_view text);

/// Exactly one expression.
SExpr parse_sexpr(std::string_view text);

/// Removes the "hahnlog-v1" header line, if present; ParseError when a
/// different version tag is found.
std::string_view strip_header(std::string_view text);

}  // namespace hahnlog
