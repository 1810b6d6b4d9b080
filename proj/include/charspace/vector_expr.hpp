#ifndef CHARSPACE_VECTOR_EXPR_HPP
#define CHARSPACE_VECTOR_EXPR_HPP

// Text form of module vectors: "u1 + f u2 + f^2 u3".
//
//   expr := "0" | term ("+" term)*
//   term := ("f" ("^" nat)?)? "u" nat
//
// Blocks are 1-based in text and 0-based in VectorTerm. Repeated terms
// cancel in pairs.

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>

#include "charspace/gf2.hpp"
#include "charspace/nilmod.hpp"

namespace charspace {

struct VectorTerm {
    std::size_t block = 0;
    std::size_t power = 0;
    friend auto operator<=>(const VectorTerm&, const VectorTerm&) = default;
};

class VectorExpr {
public:
    VectorExpr() = default;

    // Throws ParseError with the offending character position.
    static VectorExpr parse(std::string_view text);
    static VectorExpr from_vector(const ModuleSpace& v, const BitVector& x);

    const std::set<VectorTerm>& terms() const noexcept { return terms_; }
    void toggle(VectorTerm t);

    // Throws InvalidArgument for a missing block or a power >= t_block.
    BitVector evaluate(const ModuleSpace& v) const;
    std::string to_string() const;

    friend bool operator==(const VectorExpr&, const VectorExpr&) = default;

private:
    std::set<VectorTerm> terms_;
};

// "1,3,7,7". Parts must be positive; an unsorted list is sorted and
// reported through `resorted`. Throws ParseError with a position.
struct SegreInput {
    SegreChar segre;
    bool resorted = false;
};
SegreInput parse_segre(std::string_view text);

}  // namespace charspace

#endif
