#ifndef CHARSPACE_GF2_HPP
#define CHARSPACE_GF2_HPP

// Bit-packed linear algebra over GF(2).
//
// Coordinates are 0-based; coordinate i lives in bit (i % 64) of word (i / 64).
// Bits past dim() are always zero, so word-wise equality is set equality.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace charspace {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t dim) : dim_(dim), words_(words_for(dim), 0) {}

    static BitVector unit(std::size_t dim, std::size_t i);
    // "1010" -> e1 + e3 (character k is coordinate k).
    static BitVector from_string(std::string_view bits);

    std::size_t dim() const noexcept { return dim_; }
    bool get(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool value = true) noexcept;
    void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

    bool is_zero() const noexcept;
    std::size_t popcount() const noexcept;
    // Lowest set coordinate, the pivot position in echelon form.
    std::optional<std::size_t> lowest() const noexcept;
    // Parity of the coordinatewise product.
    bool dot(const BitVector& other) const noexcept;

    BitVector& operator^=(const BitVector& other);
    BitVector& operator&=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

    std::span<const Word> words() const noexcept { return words_; }
    std::span<Word> words() noexcept { return words_; }

    std::string to_string() const;
    std::size_t hash() const noexcept;

    friend bool operator==(const BitVector&, const BitVector&) = default;
    friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b);

private:
    std::size_t dim_ = 0;
    std::vector<Word> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(std::vector<BitVector> rows, std::size_t cols);
    // Matrix whose j-th column is columns[j].
    static BitMatrix from_columns(const std::vector<BitVector>& columns, std::size_t rows);

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    const BitVector& row(std::size_t i) const noexcept { return rows_[i]; }
    BitVector& row(std::size_t i) noexcept { return rows_[i]; }
    const std::vector<BitVector>& row_data() const noexcept { return rows_; }

    bool get(std::size_t i, std::size_t j) const noexcept { return rows_[i].get(j); }
    void set(std::size_t i, std::size_t j, bool value = true) noexcept { rows_[i].set(j, value); }

    // M * v with v a column vector.
    BitVector apply(const BitVector& v) const;
    BitVector column(std::size_t j) const;
    BitMatrix transpose() const;
    bool is_zero() const noexcept;

    friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
    BitMatrix& operator^=(const BitMatrix& other);
    friend BitMatrix operator^(BitMatrix a, const BitMatrix& b) { return a ^= b; }

    // Row-major flattening into rows()*cols() coordinates.
    BitVector vectorize() const;

    std::size_t hash() const noexcept;
    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

BitMatrix power(const BitMatrix& m, std::size_t k);

struct RrefResult {
    BitMatrix matrix;  // same shape as the input, zero rows last
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

RrefResult rref(BitMatrix m);
std::size_t rank(BitMatrix m);
// Square matrices only; single-word rows take an in-register path.
bool is_invertible(const BitMatrix& m);

// A subspace of GF(2)^ambient stored as its reduced row echelon basis.
// The basis is canonical, so == and <=> compare subspaces as sets.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : basis_(0, ambient) {}

    static Subspace full(std::size_t ambient);

    std::size_t ambient() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }
    bool is_zero() const noexcept { return basis_.rows() == 0; }
    const BitMatrix& basis() const noexcept { return basis_; }
    const std::vector<BitVector>& basis_vectors() const noexcept { return basis_.row_data(); }
    std::vector<std::size_t> pivots() const;

    BitVector reduce(BitVector x) const;
    bool contains(const BitVector& x) const;
    bool is_subspace_of(const Subspace& other) const;
    // All 2^dim members; refuses dim > 24.
    std::vector<BitVector> elements() const;

    std::size_t hash() const noexcept { return basis_.hash(); }
    friend bool operator==(const Subspace&, const Subspace&) = default;
    friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

private:
    friend class EchelonBuilder;
    friend Subspace from_rref_rows(std::vector<BitVector> rows, std::size_t ambient);
    BitMatrix basis_;
};

// Incremental echelon basis. insert() reports whether the vector was new.
class EchelonBuilder {
public:
    explicit EchelonBuilder(std::size_t ambient) : ambient_(ambient), by_pivot_(ambient) {}
    explicit EchelonBuilder(const Subspace& start);

    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return dim_; }
    bool insert(BitVector v);
    bool contains(const BitVector& v) const;
    Subspace build() const;

private:
    BitVector reduce(BitVector v) const;

    std::size_t ambient_;
    std::size_t dim_ = 0;
    std::vector<std::optional<BitVector>> by_pivot_;
};

Subspace span(std::span<const BitVector> vectors, std::size_t ambient);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
Subspace kernel_basis(const BitMatrix& m);
Subspace image_basis(const BitMatrix& m);
bool contains(const Subspace& s, const BitVector& x);
// Image of s under m.
Subspace map_subspace(const BitMatrix& m, const Subspace& s);

}  // namespace charspace

template <>
struct std::hash<charspace::BitVector> {
    std::size_t operator()(const charspace::BitVector& v) const noexcept { return v.hash(); }
};

template <>
struct std::hash<charspace::BitMatrix> {
    std::size_t operator()(const charspace::BitMatrix& m) const noexcept { return m.hash(); }
};

template <>
struct std::hash<charspace::Subspace> {
    std::size_t operator()(const charspace::Subspace& s) const noexcept { return s.hash(); }
};

#endif
