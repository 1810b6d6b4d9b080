#include "charspace/gf2.hpp"

#include <algorithm>
#include <bit>

#include "charspace/errors.hpp"

namespace charspace {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) + " vs " +
                                std::to_string(b));
    }
}

// splitmix64 finaliser
std::size_t mix(std::size_t h, Word w) {
    Word z = h ^ (w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(z ^ (z >> 31));
}

}  // namespace

// ---------------------------------------------------------------------------
// BitVector

BitVector BitVector::unit(std::size_t dim, std::size_t i) {
    if (i >= dim) {
        throw InvalidArgument("unit vector index " + std::to_string(i) + " outside dimension " +
                              std::to_string(dim));
    }
    BitVector v(dim);
    v.set(i);
    return v;
}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i);
        } else if (bits[i] != '0') {
            throw ParseError("expected '0' or '1'", i);
        }
    }
    return v;
}

void BitVector::set(std::size_t i, bool value) noexcept {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
        words_[i / kWordBits] |= mask;
    } else {
        words_[i / kWordBits] &= ~mask;
    }
}

bool BitVector::is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::size_t BitVector::popcount() const noexcept {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::optional<std::size_t> BitVector::lowest() const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) {
        if (words_[k] != 0) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[k]));
    }
    return std::nullopt;
}

bool BitVector::dot(const BitVector& other) const noexcept {
    Word acc = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & other.words_[k];
    return (std::popcount(acc) & 1) != 0;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    require_same_dim(dim_, other.dim_, "vector addition");
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
    return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
    require_same_dim(dim_, other.dim_, "vector product");
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
}

std::string BitVector::to_string() const {
    std::string s(dim_, '0');
    for (std::size_t i = 0; i < dim_; ++i) {
        if (get(i)) s[i] = '1';
    }
    return s;
}

std::size_t BitVector::hash() const noexcept {
    std::size_t h = dim_;
    for (Word w : words_) h = mix(h, w);
    return h;
}

std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    return a.words_ <=> b.words_;
}

// ---------------------------------------------------------------------------
// BitMatrix

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BitMatrix BitMatrix::from_rows(std::vector<BitVector> rows, std::size_t cols) {
    for (const auto& r : rows) require_same_dim(r.dim(), cols, "matrix row");
    BitMatrix m;
    m.cols_ = cols;
    m.rows_ = std::move(rows);
    return m;
}

BitMatrix BitMatrix::from_columns(const std::vector<BitVector>& columns, std::size_t rows) {
    BitMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        require_same_dim(columns[j].dim(), rows, "matrix column");
        for (std::size_t i = 0; i < rows; ++i) {
            if (columns[j].get(i)) m.set(i, j);
        }
    }
    return m;
}

BitVector BitMatrix::apply(const BitVector& v) const {
    require_same_dim(v.dim(), cols_, "matrix-vector product");
    BitVector out(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].dot(v)) out.set(i);
    }
    return out;
}

BitVector BitMatrix::column(std::size_t j) const {
    BitVector c(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].get(j)) c.set(i);
    }
    return c;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (rows_[i].get(j)) t.set(j, i);
        }
    }
    return t;
}

bool BitMatrix::is_zero() const noexcept {
    return std::all_of(rows_.begin(), rows_.end(), [](const BitVector& r) { return r.is_zero(); });
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
    require_same_dim(a.cols(), b.rows(), "matrix product");
    BitMatrix out(a.rows(), b.cols());
    // Row i of the product is the XOR of the rows of b selected by row i of a.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const BitVector& ar = a.row(i);
        BitVector& acc = out.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (ar.get(k)) acc ^= b.row(k);
        }
    }
    return out;
}

BitMatrix& BitMatrix::operator^=(const BitMatrix& other) {
    require_same_dim(rows(), other.rows(), "matrix addition (rows)");
    require_same_dim(cols_, other.cols_, "matrix addition (cols)");
    for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i] ^= other.rows_[i];
    return *this;
}

BitVector BitMatrix::vectorize() const {
    BitVector v(rows_.size() * cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (rows_[i].get(j)) v.set(i * cols_ + j);
        }
    }
    return v;
}

std::size_t BitMatrix::hash() const noexcept {
    std::size_t h = mix(rows_.size(), cols_);
    for (const auto& r : rows_) {
        for (Word w : r.words()) h = mix(h, w);
    }
    return h;
}

BitMatrix power(const BitMatrix& m, std::size_t k) {
    require_same_dim(m.rows(), m.cols(), "matrix power");
    BitMatrix result = BitMatrix::identity(m.rows());
    BitMatrix base = m;
    while (k > 0) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k > 0) base = base * base;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Elimination

RrefResult rref(BitMatrix m) {
    RrefResult res;
    const std::size_t nrows = m.rows();
    std::size_t next = 0;
    for (std::size_t col = 0; col < m.cols() && next < nrows; ++col) {
        std::size_t pick = next;
        while (pick < nrows && !m.get(pick, col)) ++pick;
        if (pick == nrows) continue;
        std::swap(m.row(pick), m.row(next));
        const BitVector pivot_row = m.row(next);
        for (std::size_t r = 0; r < nrows; ++r) {
            if (r != next && m.get(r, col)) m.row(r) ^= pivot_row;
        }
        res.pivots.push_back(col);
        ++next;
    }
    res.rank = next;
    res.matrix = std::move(m);
    return res;
}

std::size_t rank(BitMatrix m) { return rref(std::move(m)).rank; }

bool is_invertible(const BitMatrix& m) {
    require_same_dim(m.rows(), m.cols(), "invertibility test");
    const std::size_t n = m.rows();
    if (n > kWordBits) return rank(m) == n;
    Word rows[kWordBits];
    for (std::size_t i = 0; i < n; ++i) rows[i] = m.row(i).words()[0];
    for (std::size_t col = 0; col < n; ++col) {
        const Word bit = Word{1} << col;
        std::size_t pick = col;
        while (pick < n && !(rows[pick] & bit)) ++pick;
        if (pick == n) return false;
        std::swap(rows[pick], rows[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (rows[r] & bit) rows[r] ^= rows[col];
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace from_rref_rows(std::vector<BitVector> rows, std::size_t ambient) {
    Subspace s;
    s.basis_ = BitMatrix::from_rows(std::move(rows), ambient);
    return s;
}

Subspace Subspace::full(std::size_t ambient) {
    std::vector<BitVector> rows;
    rows.reserve(ambient);
    for (std::size_t i = 0; i < ambient; ++i) rows.push_back(BitVector::unit(ambient, i));
    return from_rref_rows(std::move(rows), ambient);
}

std::vector<std::size_t> Subspace::pivots() const {
    std::vector<std::size_t> p;
    p.reserve(dim());
    for (const auto& r : basis_.row_data()) p.push_back(*r.lowest());
    return p;
}

BitVector Subspace::reduce(BitVector x) const {
    require_same_dim(x.dim(), ambient(), "subspace reduction");
    for (const auto& r : basis_.row_data()) {
        if (x.get(*r.lowest())) x ^= r;
    }
    return x;
}

bool Subspace::contains(const BitVector& x) const { return reduce(x).is_zero(); }

bool Subspace::is_subspace_of(const Subspace& other) const {
    require_same_dim(ambient(), other.ambient(), "subspace inclusion");
    return std::all_of(basis_.row_data().begin(), basis_.row_data().end(),
                       [&](const BitVector& b) { return other.contains(b); });
}

std::vector<BitVector> Subspace::elements() const {
    if (dim() > 24) throw BudgetExceeded("refusing to list 2^" + std::to_string(dim()) + " elements");
    std::vector<BitVector> out;
    out.reserve(std::size_t{1} << dim());
    BitVector cur(ambient());
    out.push_back(cur);
    // Gray code walk
    for (std::size_t i = 1; i < (std::size_t{1} << dim()); ++i) {
        cur ^= basis_.row(static_cast<std::size_t>(std::countr_zero(i)));
        out.push_back(cur);
    }
    return out;
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.ambient() <=> b.ambient(); c != 0) return c;
    if (auto c = a.dim() <=> b.dim(); c != 0) return c;
    return a.basis_vectors() <=> b.basis_vectors();
}

// ---------------------------------------------------------------------------
// EchelonBuilder

EchelonBuilder::EchelonBuilder(const Subspace& start) : EchelonBuilder(start.ambient()) {
    for (const auto& b : start.basis_vectors()) insert(b);
}

BitVector EchelonBuilder::reduce(BitVector v) const {
    // Rows only carry bits at or above their pivot, so one increasing sweep suffices.
    for (std::size_t p = 0; p < ambient_; ++p) {
        if (by_pivot_[p] && v.get(p)) v ^= *by_pivot_[p];
    }
    return v;
}

bool EchelonBuilder::insert(BitVector v) {
    require_same_dim(v.dim(), ambient_, "echelon insert");
    v = reduce(std::move(v));
    auto p = v.lowest();
    if (!p) return false;
    by_pivot_[*p] = std::move(v);
    ++dim_;
    return true;
}

bool EchelonBuilder::contains(const BitVector& v) const {
    require_same_dim(v.dim(), ambient_, "echelon membership");
    return reduce(v).is_zero();
}

Subspace EchelonBuilder::build() const {
    std::vector<BitVector> rows;
    rows.reserve(dim_);
    for (std::size_t p = 0; p < ambient_; ++p) {
        if (by_pivot_[p]) rows.push_back(*by_pivot_[p]);
    }
    // Back-substitution: clear every pivot column above and below its row.
    for (std::size_t i = rows.size(); i-- > 0;) {
        const std::size_t piv = *rows[i].lowest();
        for (std::size_t j = 0; j < i; ++j) {
            if (rows[j].get(piv)) rows[j] ^= rows[i];
        }
    }
    return from_rref_rows(std::move(rows), ambient_);
}

// ---------------------------------------------------------------------------
// Free functions

Subspace span(std::span<const BitVector> vectors, std::size_t ambient) {
    EchelonBuilder b(ambient);
    for (const auto& v : vectors) b.insert(v);
    return b.build();
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    require_same_dim(a.ambient(), b.ambient(), "subspace sum");
    EchelonBuilder eb(a);
    for (const auto& v : b.basis_vectors()) eb.insert(v);
    return eb.build();
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    require_same_dim(a.ambient(), b.ambient(), "subspace intersection");
    const std::size_t n = a.ambient();
    // Zassenhaus: rows (x | x) for x in A and (y | 0) for y in B. After
    // elimination the rows with zero left half span A ∩ B in their right half.
    BitMatrix stacked(a.dim() + b.dim(), 2 * n);
    std::size_t r = 0;
    for (const auto& x : a.basis_vectors()) {
        for (std::size_t j = 0; j < n; ++j) {
            if (x.get(j)) {
                stacked.set(r, j);
                stacked.set(r, n + j);
            }
        }
        ++r;
    }
    for (const auto& y : b.basis_vectors()) {
        for (std::size_t j = 0; j < n; ++j) {
            if (y.get(j)) stacked.set(r, j);
        }
        ++r;
    }
    auto red = rref(std::move(stacked));
    std::vector<BitVector> meet;
    for (std::size_t i = 0; i < red.rank; ++i) {
        if (red.pivots[i] < n) continue;
        BitVector v(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (red.matrix.get(i, n + j)) v.set(j);
        }
        meet.push_back(std::move(v));
    }
    return span(meet, n);
}

Subspace kernel_basis(const BitMatrix& m) {
    const std::size_t n = m.cols();
    auto red = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : red.pivots) is_pivot[p] = true;
    std::vector<BitVector> gens;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        BitVector x(n);
        x.set(free);
        for (std::size_t r = 0; r < red.rank; ++r) {
            if (red.matrix.get(r, free)) x.set(red.pivots[r]);
        }
        gens.push_back(std::move(x));
    }
    return span(gens, n);
}

Subspace image_basis(const BitMatrix& m) {
    const BitMatrix t = m.transpose();
    return span(t.row_data(), m.rows());
}

bool contains(const Subspace& s, const BitVector& x) { return s.contains(x); }

Subspace map_subspace(const BitMatrix& m, const Subspace& s) {
    require_same_dim(m.cols(), s.ambient(), "subspace image");
    EchelonBuilder b(m.rows());
    for (const auto& v : s.basis_vectors()) b.insert(m.apply(v));
    return b.build();
}

}  // namespace charspace
