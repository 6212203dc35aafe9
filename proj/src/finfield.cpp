#include "grassmann/finfield.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>
#include <utility>
#include <sstream>

#include "grassmann/errors.hpp"

namespace grassmann {

bool is_prime(unsigned value) {
    if (value < 2) return false;
    for (unsigned d = 2; d * d <= value; ++d)
        if (value % d == 0) return false;
    return true;
}

void require_supported_prime(unsigned p) {
    if (!is_prime(p)) throw DomainError("modulus " + std::to_string(p) + " is not prime");
    if (p > kMaxModulus)
        throw DomainError("modulus " + std::to_string(p) + " exceeds supported maximum " +
                          std::to_string(kMaxModulus));
}

unsigned inverse_mod(unsigned a, unsigned p) {
    if (a % p == 0) throw DomainError("zero has no inverse");
    int t = 0, new_t = 1;
    int r = static_cast<int>(p), new_r = static_cast<int>(a % p);
    while (new_r != 0) {
        int q = r / new_r;
        std::tie(t, new_t) = std::pair{new_t, t - q * new_t};
        std::tie(r, new_r) = std::pair{new_r, r - q * new_r};
    }
    if (t < 0) t += static_cast<int>(p);
    return static_cast<unsigned>(t);
}

char digit_char(unsigned d) {
    return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + (d - 10));
}

std::optional<unsigned> digit_value(char c) {
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'z') return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'Z') return static_cast<unsigned>(c - 'A' + 10);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(unsigned value, unsigned modulus) : value_(0), modulus_(modulus) {
    require_supported_prime(modulus);
    value_ = value % modulus;
}

void FieldElement::require_same_field(FieldElement other) const {
    if (other.modulus_ != modulus_) throw DomainError("mixed moduli in field arithmetic");
}

FieldElement FieldElement::operator+(FieldElement other) const {
    require_same_field(other);
    return {(value_ + other.value_) % modulus_, modulus_, Unchecked{}};
}

FieldElement FieldElement::operator-(FieldElement other) const {
    require_same_field(other);
    return {(value_ + modulus_ - other.value_) % modulus_, modulus_, Unchecked{}};
}

FieldElement FieldElement::operator*(FieldElement other) const {
    require_same_field(other);
    return {(value_ * other.value_) % modulus_, modulus_, Unchecked{}};
}

FieldElement FieldElement::operator/(FieldElement other) const {
    require_same_field(other);
    return *this * other.inverse();
}

FieldElement FieldElement::operator-() const {
    return {(modulus_ - value_) % modulus_, modulus_, Unchecked{}};
}

FieldElement FieldElement::inverse() const {
    return {inverse_mod(value_, modulus_), modulus_, Unchecked{}};
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(unsigned p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    require_supported_prime(p);
}

Matrix Matrix::identity(unsigned p, std::size_t n) {
    Matrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
}

Matrix Matrix::from_rows(unsigned p, std::size_t cols, std::span<const Vector> rows) {
    Matrix m(p, 0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

Matrix Matrix::from_strings(unsigned p, std::span<const std::string> rows) {
    std::vector<Vector> parsed;
    parsed.reserve(rows.size());
    for (const auto& s : rows) parsed.push_back(parse_digits(p, s));
    const std::size_t cols = parsed.empty() ? 0 : parsed.front().size();
    return from_rows(p, cols, parsed);
}

Matrix Matrix::parse(unsigned p, std::string_view text) {
    std::vector<std::string> lines;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
                   line.end());
        if (!line.empty()) lines.push_back(line);
    }
    return from_strings(p, lines);
}

void Matrix::set(std::size_t r, std::size_t c, unsigned v) {
    data_[r * cols_ + c] = static_cast<std::uint8_t>(v % p_);
}

Vector Matrix::row_vector(std::size_t r) const {
    auto s = row(r);
    return {s.begin(), s.end()};
}

std::vector<Vector> Matrix::row_vectors() const {
    std::vector<Vector> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_vector(r));
    return out;
}

void Matrix::append_row(std::span<const std::uint8_t> values) {
    if (values.size() != cols_)
        throw DomainError("row of length " + std::to_string(values.size()) + " appended to matrix with " +
                          std::to_string(cols_) + " columns");
    for (auto v : values) {
        if (v >= p_) throw DomainError("entry " + std::to_string(v) + " out of range for GF(" + std::to_string(p_) + ")");
        data_.push_back(v);
    }
    ++rows_;
}

Matrix Matrix::stacked(const Matrix& below) const {
    if (below.p_ != p_ || below.cols_ != cols_) throw DomainError("stacking incompatible matrices");
    Matrix out = *this;
    out.data_.insert(out.data_.end(), below.data_.begin(), below.data_.end());
    out.rows_ += below.rows_;
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = get(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (rhs.p_ != p_ || rhs.rows_ != cols_) throw DomainError("matrix product dimension mismatch");
    Matrix out(p_, rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < rhs.cols_; ++c) {
            unsigned acc = 0;
            for (std::size_t i = 0; i < cols_; ++i) acc += unsigned{get(r, i)} * rhs.get(i, c);
            out.data_[r * rhs.cols_ + c] = static_cast<std::uint8_t>(acc % p_);
        }
    return out;
}

std::vector<std::string> Matrix::row_strings() const {
    std::vector<std::string> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(to_digits(row(r)));
    return out;
}

std::string Matrix::to_text() const {
    std::string out;
    for (const auto& s : row_strings()) {
        out += s;
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Elimination

namespace {

// In-place Gauss-Jordan elimination on a row-major buffer. Returns pivot columns.
// Only the first `pivot_cols` columns are eligible as pivots.
std::vector<std::size_t> eliminate(std::vector<std::uint8_t>& a, std::size_t rows, std::size_t cols, unsigned p,
                                   std::size_t pivot_cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && a[sel * cols + c] == 0) ++sel;
        if (sel == rows) continue;
        if (sel != r)
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(sel * cols),
                             a.begin() + static_cast<std::ptrdiff_t>((sel + 1) * cols),
                             a.begin() + static_cast<std::ptrdiff_t>(r * cols));
        const unsigned inv = inverse_mod(a[r * cols + c], p);
        if (inv != 1)
            for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = static_cast<std::uint8_t>(a[r * cols + j] * inv % p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const unsigned f = a[i * cols + c];
            if (f == 0) continue;
            const unsigned neg = p - f;
            for (std::size_t j = c; j < cols; ++j)
                a[i * cols + j] = static_cast<std::uint8_t>((a[i * cols + j] + neg * a[r * cols + j]) % p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

RrefResult rref(const Matrix& m) {
    std::vector<std::uint8_t> buf = m.data();
    auto pivots = eliminate(buf, m.rows(), m.cols(), m.modulus(), m.cols());
    Matrix out(m.modulus(), 0, m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        out.append_row(std::span<const std::uint8_t>(buf.data() + r * m.cols(), m.cols()));
    const std::size_t rk = pivots.size();
    return {std::move(out), rk, std::move(pivots)};
}

std::size_t rank(const Matrix& m) {
    std::vector<std::uint8_t> buf = m.data();
    return eliminate(buf, m.rows(), m.cols(), m.modulus(), m.cols()).size();
}

Matrix kernel(const Matrix& m) {
    const unsigned p = m.modulus();
    const auto reduced = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : reduced.pivots) is_pivot[c] = true;

    Matrix basis(p, 0, m.cols());
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < reduced.rank; ++r) {
            const unsigned entry = reduced.matrix.get(r, free);
            v[reduced.pivots[r]] = static_cast<std::uint8_t>((p - entry) % p);
        }
        basis.append_row(v);
    }
    return rref(basis).matrix;
}

std::optional<Vector> row_combination(const Matrix& rows, std::span<const std::uint8_t> target) {
    if (target.size() != rows.cols()) throw DomainError("target length does not match row length");
    const unsigned p = rows.modulus();
    const std::size_t n = rows.rows();
    // Columns of the augmented system are the given rows, plus the target.
    const std::size_t cols = n + 1;
    std::vector<std::uint8_t> a(rows.cols() * cols, 0);
    for (std::size_t i = 0; i < rows.cols(); ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i * cols + j] = rows.get(j, i);
        a[i * cols + n] = target[i];
    }
    auto pivots = eliminate(a, rows.cols(), cols, p, cols);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;
    Vector coeffs(n, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) coeffs[pivots[r]] = a[r * cols + n];
    return coeffs;
}

Vector apply(std::span<const std::uint8_t> v, const Matrix& m) {
    if (v.size() != m.rows()) throw DomainError("vector length does not match matrix rows");
    const unsigned p = m.modulus();
    Vector out(m.cols(), 0);
    for (std::size_t c = 0; c < m.cols(); ++c) {
        unsigned acc = 0;
        for (std::size_t i = 0; i < v.size(); ++i) acc += unsigned{v[i]} * m.get(i, c);
        out[c] = static_cast<std::uint8_t>(acc % p);
    }
    return out;
}

bool is_m_independent(const Matrix& vectors, std::size_t m) {
    if (m > vectors.rows())
        throw DomainError("m = " + std::to_string(m) + " exceeds the number of vectors " +
                          std::to_string(vectors.rows()));
    if (m > vectors.cols()) return false;
    if (m == 0) return true;

    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    const std::size_t total = vectors.rows();
    while (true) {
        Matrix sub(vectors.modulus(), 0, vectors.cols());
        for (auto i : idx) sub.append_row(vectors.row(i));
        if (rank(sub) != m) return false;
        // next combination
        std::size_t pos = m;
        while (pos > 0 && idx[pos - 1] == total - m + (pos - 1)) --pos;
        if (pos == 0) return true;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
}

Vector normalized(std::span<const std::uint8_t> v, unsigned p) {
    Vector out(v.begin(), v.end());
    auto lead = std::find_if(out.begin(), out.end(), [](std::uint8_t x) { return x != 0; });
    if (lead == out.end()) return out;
    const unsigned inv = inverse_mod(*lead, p);
    for (auto& x : out) x = static_cast<std::uint8_t>(x * inv % p);
    return out;
}

bool is_zero(std::span<const std::uint8_t> v) {
    return std::all_of(v.begin(), v.end(), [](std::uint8_t x) { return x == 0; });
}

std::string to_digits(std::span<const std::uint8_t> v) {
    std::string s;
    s.reserve(v.size());
    for (auto x : v) s.push_back(digit_char(x));
    return s;
}

Vector parse_digits(unsigned p, std::string_view digits) {
    Vector v;
    v.reserve(digits.size());
    for (char c : digits) {
        auto d = digit_value(c);
        if (!d || *d >= p)
            throw DomainError(std::string("invalid digit '") + c + "' for GF(" + std::to_string(p) + ")");
        v.push_back(static_cast<std::uint8_t>(*d));
    }
    return v;
}

}  // namespace grassmann
