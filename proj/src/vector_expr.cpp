#include "charspace/vector_expr.hpp"

#include <algorithm>
#include <cctype>

#include "charspace/errors.hpp"

namespace charspace {

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    VectorExpr run() {
        VectorExpr e;
        skip();
        if (peek() == '0') {
            ++pos_;
            skip();
            if (pos_ != s_.size()) fail("unexpected input after 0");
            return e;
        }
        e.toggle(term());
        skip();
        while (pos_ < s_.size()) {
            expect('+');
            skip();
            e.toggle(term());
            skip();
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::size_t nat() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
        std::size_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            if (v > 1'000'000) fail("number too large");
            v = v * 10 + static_cast<std::size_t>(s_[pos_++] - '0');
        }
        return v;
    }

    VectorTerm term() {
        VectorTerm t;
        if (peek() == 'f') {
            ++pos_;
            t.power = 1;
            skip();
            if (peek() == '^') {
                ++pos_;
                skip();
                t.power = nat();
                skip();
            }
        }
        expect('u');
        const std::size_t at = pos_;
        const std::size_t b = nat();
        if (b == 0) throw ParseError("generator indices start at u1", at);
        t.block = b - 1;
        return t;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

VectorExpr VectorExpr::parse(std::string_view text) { return Parser(text).run(); }

VectorExpr VectorExpr::from_vector(const ModuleSpace& v, const BitVector& x) {
    if (x.dim() != v.dim()) throw DimensionMismatch("vector does not live in this module");
    VectorExpr e;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (!x.get(i)) continue;
        const std::size_t b = v.block_of(i);
        e.terms_.insert({b, i - v.offset(b)});
    }
    return e;
}

void VectorExpr::toggle(VectorTerm t) {
    if (!terms_.erase(t)) terms_.insert(t);
}

BitVector VectorExpr::evaluate(const ModuleSpace& v) const {
    BitVector x = v.zero();
    for (const auto& t : terms_) {
        if (t.block >= v.blocks()) {
            throw InvalidArgument("u" + std::to_string(t.block + 1) + " does not exist in " +
                                  v.segre().to_string());
        }
        if (t.power >= v.block_size(t.block)) {
            throw InvalidArgument("f^" + std::to_string(t.power) + " u" + std::to_string(t.block + 1) +
                                  " is zero: power must be below " + std::to_string(v.block_size(t.block)));
        }
        x.flip(v.offset(t.block) + t.power);
    }
    return x;
}

std::string VectorExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
        if (!out.empty()) out += " + ";
        if (t.power == 1) out += "f ";
        if (t.power > 1) out += "f^" + std::to_string(t.power) + " ";
        out += "u" + std::to_string(t.block + 1);
    }
    return out;
}

SegreInput parse_segre(std::string_view text) {
    std::vector<std::size_t> parts;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    for (;;) {
        skip();
        const std::size_t start = i;
        std::size_t value = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            value = value * 10 + static_cast<std::size_t>(text[i] - '0');
            if (value > 4096) throw ParseError("block size too large", start);
            ++i;
        }
        if (i == start) throw ParseError("expected a block size", start);
        if (value == 0) throw ParseError("block sizes must be positive", start);
        parts.push_back(value);
        skip();
        if (i == text.size()) break;
        if (text[i] != ',') throw ParseError("expected ','", i);
        ++i;
    }
    SegreInput out;
    out.resorted = !std::is_sorted(parts.begin(), parts.end());
    out.segre = SegreChar::sorted(std::move(parts));
    return out;
}

}  // namespace charspace
