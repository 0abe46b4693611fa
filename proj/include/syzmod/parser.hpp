#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "syzmod/expr.hpp"

namespace syzmod {

using BundleRegistry = std::map<std::string, std::shared_ptr<const OpaqueBundle>, std::less<>>;

/// Grammar (whitespace-insensitive):
///
///   expr := O | O(int)
///         | sum(expr [,int] {, expr [,int]})
///         | dual(expr) | twist(expr, int) | syz(expr, int)
///         | tensor(expr, expr) | opaque(name)
class ExprParser {
  public:
    ExprParser(std::string_view text, const BundleRegistry* registry) : text_(text), registry_(registry) {}

    SheafExpr parse() {
        SheafExpr e = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

  private:
    std::string_view text_;
    const BundleRegistry* registry_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("bundle expression, column " + std::to_string(pos_ + 1) + ": " + msg + " in \"" +
                         std::string(text_) + "\"");
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool at_integer() {
        skip();
        if (pos_ >= text_.size()) return false;
        std::size_t p = pos_;
        if (text_[p] == '-' || text_[p] == '+') ++p;
        return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
    }

    std::int64_t integer() {
        if (!at_integer()) fail("expected an integer");
        const std::size_t start = pos_;
        if (text_[pos_] == '-' || text_[pos_] == '+') ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string digits(text_.substr(start, pos_ - start));
        if (digits.size() > 18) fail("integer out of range");
        return std::stoll(digits);
    }

    std::string identifier() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '-' ||
                text_[pos_] == '.'))
            ++pos_;
        if (start == pos_) fail("expected a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    SheafExpr expr() {
        skip();
        const std::size_t start = pos_;
        const std::string head = identifier();
        try {
            if (head == "O") {
                if (!peek('(')) return line(0);
                expect('(');
                const auto d = integer();
                expect(')');
                return line(d);
            }
            if (head == "sum") {
                expect('(');
                std::vector<std::pair<SheafExpr, std::int64_t>> terms;
                do {
                    SheafExpr e = expr();
                    std::int64_t k = 1;
                    if (peek(',')) {
                        const std::size_t save = pos_;
                        ++pos_;
                        if (at_integer()) k = integer();
                        else pos_ = save;
                    }
                    terms.emplace_back(std::move(e), k);
                } while (peek(',') && (++pos_, true));
                expect(')');
                return direct_sum(std::move(terms));
            }
            if (head == "dual") {
                expect('(');
                SheafExpr e = expr();
                expect(')');
                return dual(std::move(e));
            }
            if (head == "twist" || head == "syz") {
                expect('(');
                SheafExpr e = expr();
                expect(',');
                const auto k = integer();
                expect(')');
                return head == "twist" ? twist(std::move(e), k) : syz(std::move(e), k);
            }
            if (head == "tensor") {
                expect('(');
                SheafExpr a = expr();
                expect(',');
                SheafExpr b = expr();
                expect(')');
                return tensor(std::move(a), std::move(b));
            }
            if (head == "opaque") {
                expect('(');
                const std::string name = identifier();
                expect(')');
                if (!registry_) fail("opaque(" + name + ") needs an --input file defining it");
                auto it = registry_->find(name);
                if (it == registry_->end()) fail("no bundle named '" + name + "' in the input file");
                return opaque(it->second);
            }
        } catch (const StructuralError& e) {
            throw ParseError("bundle expression, column " + std::to_string(start + 1) + ": " + e.what());
        }
        pos_ = start;
        fail("unknown constructor '" + head + "'");
    }
};

inline SheafExpr parse_expr(std::string_view text, const BundleRegistry* registry = nullptr) {
    return ExprParser(text, registry).parse();
}

}  // namespace syzmod
