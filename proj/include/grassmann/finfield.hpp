#pragma once

// Exact arithmetic over prime fields GF(p) and dense matrices over them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace grassmann {

/// Coordinates of a vector over GF(p); every entry lies in [0, p).
using Vector = std::vector<std::uint8_t>;

/// Largest modulus accepted. Entries are printed as single base-36 digits.
inline constexpr unsigned kMaxModulus = 31;

bool is_prime(unsigned value);

/// Throws DomainError unless p is a prime no larger than kMaxModulus.
void require_supported_prime(unsigned p);

unsigned inverse_mod(unsigned a, unsigned p);

char digit_char(unsigned d);
/// Parses one base-36 digit; returns nullopt for anything else.
std::optional<unsigned> digit_value(char c);

class FieldElement {
public:
    FieldElement(unsigned value, unsigned modulus);

    unsigned value() const { return value_; }
    unsigned modulus() const { return modulus_; }

    FieldElement operator+(FieldElement other) const;
    FieldElement operator-(FieldElement other) const;
    FieldElement operator*(FieldElement other) const;
    FieldElement operator/(FieldElement other) const;
    FieldElement operator-() const;
    FieldElement inverse() const;

    bool operator==(const FieldElement&) const = default;

private:
    struct Unchecked {};
    FieldElement(unsigned value, unsigned modulus, Unchecked) : value_(value), modulus_(modulus) {}
    void require_same_field(FieldElement other) const;

    unsigned value_;
    unsigned modulus_;
};

/// Dense row-major matrix over GF(p).
class Matrix {
public:
    Matrix(unsigned p, std::size_t rows, std::size_t cols);

    static Matrix identity(unsigned p, std::size_t n);
    static Matrix from_rows(unsigned p, std::size_t cols, std::span<const Vector> rows);
    /// Rows given as digit strings such as "1100".
    static Matrix from_strings(unsigned p, std::span<const std::string> rows);
    /// One row per line; blank lines are ignored.
    static Matrix parse(unsigned p, std::string_view text);

    unsigned modulus() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    std::uint8_t get(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, unsigned v);
    FieldElement at(std::size_t r, std::size_t c) const { return FieldElement(get(r, c), p_); }

    std::span<const std::uint8_t> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<std::uint8_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    Vector row_vector(std::size_t r) const;
    std::vector<Vector> row_vectors() const;

    void append_row(std::span<const std::uint8_t> values);
    Matrix stacked(const Matrix& below) const;
    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;

    std::vector<std::string> row_strings() const;
    std::string to_text() const;

    const std::vector<std::uint8_t>& data() const { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    unsigned p_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint8_t> data_;
};

struct RrefResult {
    Matrix matrix;  // reduced row echelon form, zero rows removed
    std::size_t rank;
    std::vector<std::size_t> pivots;  // pivot column of each row
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Basis (in RREF) of { v : m * v^T = 0 }.
Matrix kernel(const Matrix& m);

/// Coefficients c with sum_i c_i * rows.row(i) == target, if any exist.
std::optional<Vector> row_combination(const Matrix& rows, std::span<const std::uint8_t> target);

/// v * m for a row vector v.
Vector apply(std::span<const std::uint8_t> v, const Matrix& m);

/// True iff every m-element subset of the rows is linearly independent.
/// An m larger than the ambient dimension can never be met and yields false.
bool is_m_independent(const Matrix& vectors, std::size_t m);

/// Scales v so its first nonzero entry is 1.
Vector normalized(std::span<const std::uint8_t> v, unsigned p);
bool is_zero(std::span<const std::uint8_t> v);

std::string to_digits(std::span<const std::uint8_t> v);
Vector parse_digits(unsigned p, std::string_view digits);

}  // namespace grassmann
