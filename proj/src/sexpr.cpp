#include "hahnlog/sexpr.hpp"

#include "hahnlog/errors.hpp"

#include <cctype>

namespace hahnlog {

std::string SExpr::head() const {
    if (!is_list || items.empty() || items[0].is_list) return {};
    return items[0].atom;
}

std::string SExpr::to_string() const {
    if (!is_list) return atom;
    std::string out = "(";
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? " " : "") + items[i].to_string();
    return out + ")";
}

std::string_view strip_header(std::string_view text) {
    std::size_t start = 0;
    while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
    if (text.substr(start, 8) != "hahnlog-") return text;
    std::size_t end = text.find('\n', start);
    std::string_view tag = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    while (!tag.empty() && std::isspace(static_cast<unsigned char>(tag.back()))) tag.remove_suffix(1);
    if (tag != "hahnlog-v1") throw ParseError("unsupported format header '" + std::string(tag) + "'", start, tag.size());
    return end == std::string_view::npos ? std::string_view() : text.substr(end);
}

namespace {

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {
        std::string_view body = strip_header(text);
        pos_ = text.size() - body.size();
    }

    bool at_end() {
        skip();
        return pos_ >= text_.size();
    }

    SExpr read() {
        skip();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        SExpr e;
        e.offset = pos_;
        char c = text_[pos_];
        if (c == ')') throw ParseError("unbalanced ')'", pos_);
        if (c == '(') {
            e.is_list = true;
            ++pos_;
            for (;;) {
                skip();
                if (pos_ >= text_.size()) throw ParseError("missing ')'", e.offset);
                if (text_[pos_] == ')') {
                    ++pos_;
                    break;
                }
                e.items.push_back(read());
            }
        } else {
            while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
                   text_[pos_] != ')' && text_[pos_] != ';')
                ++pos_;
            e.atom = std::string(text_.substr(e.offset, pos_ - e.offset));
        }
        e.length = pos_ - e.offset;
        return e;
    }

private:
    void skip() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else if (text_[pos_] == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_{0};
};

}  // namespace

std::vector<SExpr> parse_sexprs(std::string_view text) {
    Reader r(text);
    std::vector<SExpr> out;
    while (!r.at_end()) out.push_back(r.read());
    return out;
}

SExpr parse_sexpr(std::string_view text) {
    auto all = parse_sexprs(text);
    if (all.empty()) throw ParseError("empty input", 0);
    if (all.size() > 1) throw ParseError("trailing input after the expression", all[1].offset, all[1].length);
    return all[0];
}

}  // namespace hahnlog
