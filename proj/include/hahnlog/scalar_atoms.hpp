#pragma once

#include "hahnlog/infix.hpp"
#include "hahnlog/scalars.hpp"

namespace hahnlog {

/// Named scalar atoms: log(x), exp(x), rpow(x,q) and registered constants.
/// `arg` parses one argument expression and returns it as a scalar.
template <class ArgFn>
SymbolicReal parse_scalar_atom(std::string_view name, std::size_t offset, Lexer& lex, ArgFn arg) {
    if (name == "log" || name == "exp") {
        lex.expect('(');
        SymbolicReal x = arg();
        lex.expect(')');
        auto r = name == "log" ? log_symbolic(x) : exp_symbolic(x);
        if (!r) throw ParseError(std::string(name) + "(" + x.to_string() + ") is not representable", offset, name.size());
        return *r;
    }
    if (name == "rpow") {
        lex.expect('(');
        SymbolicReal x = arg();
        lex.expect(',');
        std::size_t at = lex.peek().offset;
        SymbolicReal e = arg();
        lex.expect(')');
        if (!e.is_rational()) throw ParseError("rpow exponent must be rational", at);
        try {
            return power(x, e.rational_part());
        } catch (const DomainError& err) {
            throw ParseError(err.what(), offset, name.size());
        }
    }
    if (auto sym = ConstantRegistry::instance().find(name)) {
        if (sym->kind() == ConstantKind::Adjoined) return SymbolicReal::constant(sym);
    }
    throw ParseError("unknown constant '" + std::string(name) + "'", offset, name.size());
}

}  // namespace hahnlog
