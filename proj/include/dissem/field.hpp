#pragma once
// Exact arithmetic and dense linear algebra over prime fields GF(q).
//
// Entries are stored one byte each, so the modulus is limited to primes below
// 256. Matrices are immutable values: every operation returns a new matrix.
// Row reduction uses forward elimination with the lowest-index pivot, so the
// reduced row-echelon form is a canonical representative of a row space.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dissem {

using FieldVector = std::vector<std::uint8_t>;

bool is_prime(std::uint32_t q);

/// Throws InputError unless q is a prime in [2, 256).
void require_field(std::uint32_t q);

std::uint8_t field_add(std::uint8_t a, std::uint8_t b, std::uint32_t q);
std::uint8_t field_sub(std::uint8_t a, std::uint8_t b, std::uint32_t q);
std::uint8_t field_mul(std::uint8_t a, std::uint8_t b, std::uint32_t q);
std::uint8_t field_neg(std::uint8_t a, std::uint32_t q);
std::uint8_t field_inv(std::uint8_t a, std::uint32_t q);

class FieldElement {
 public:
  FieldElement(std::uint32_t value, std::uint32_t modulus);

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement inverse() const;
  bool operator==(const FieldElement&) const = default;

 private:
  std::uint32_t value_;
  std::uint32_t modulus_;
};

class FieldMatrix {
 public:
  /// Zero matrix.
  FieldMatrix(std::uint32_t q, std::size_t rows, std::size_t cols);
  /// Row-major data; every entry must already be reduced below q.
  FieldMatrix(std::uint32_t q, std::size_t rows, std::size_t cols, FieldVector data);

  /// Entries are reduced mod q. `cols` fixes the width when `rows` is empty.
  static FieldMatrix from_rows(std::uint32_t q, std::size_t cols,
                               const std::vector<std::vector<std::int64_t>>& rows);
  static FieldMatrix identity(std::uint32_t q, std::size_t n);
  /// 1 x n matrix holding the unit vector e_i (0-indexed).
  static FieldMatrix unit_row(std::uint32_t q, std::size_t n, std::size_t i);
  static FieldMatrix row_vector(std::uint32_t q, std::span<const std::uint8_t> v);

  std::uint32_t modulus() const { return q_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  std::uint8_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  FieldElement element(std::size_t r, std::size_t c) const { return {at(r, c), q_}; }
  std::span<const std::uint8_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  const FieldVector& data() const { return data_; }

  bool is_zero() const;
  FieldMatrix transpose() const;
  /// Rows [begin, end).
  FieldMatrix row_range(std::size_t begin, std::size_t end) const;
  /// Drops all-zero rows.
  FieldMatrix nonzero_rows() const;

  bool operator==(const FieldMatrix&) const = default;

  std::string to_string() const;

 private:
  std::uint32_t q_;
  std::size_t rows_;
  std::size_t cols_;
  FieldVector data_;
};

struct Echelon {
  FieldMatrix reduced;               // RREF with zero rows removed
  std::vector<std::size_t> pivots;   // pivot column of each reduced row
};

std::size_t rank(const FieldMatrix& m);
Echelon rref(const FieldMatrix& m);

/// Coefficients c with c * M = v, or nullopt when v is outside the row space.
/// Free variables are set to zero, so the answer is deterministic.
std::optional<FieldVector> solve_in_row_space(const FieldMatrix& m,
                                              std::span<const std::uint8_t> v);
bool in_row_space(const FieldMatrix& m, std::span<const std::uint8_t> v);

/// c * M for a length-rows coefficient vector.
FieldVector combine(std::span<const std::uint8_t> coeffs, const FieldMatrix& m);
FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b);

/// Vertical concatenation. `cols` is the width of the result when `blocks` is empty.
FieldMatrix stack(std::span<const FieldMatrix> blocks, std::size_t cols, std::uint32_t q);
FieldMatrix stack(std::initializer_list<FieldMatrix> blocks);

FieldVector unit_vector(std::size_t n, std::size_t i);

/// Incrementally maintained reduced row-echelon basis of a subspace of GF(q)^n.
class RowSpace {
 public:
  RowSpace(std::uint32_t q, std::size_t n);

  std::uint32_t modulus() const { return q_; }
  std::size_t ambient() const { return n_; }
  std::size_t dimension() const { return pivots_.size(); }

  /// Adds v; returns false when v was already in the span.
  bool insert(std::span<const std::uint8_t> v);
  void insert_all(const FieldMatrix& m);
  bool contains(std::span<const std::uint8_t> v) const;
  /// v minus its projection onto the span along the pivot coordinates.
  FieldVector reduce(std::span<const std::uint8_t> v) const;

  /// Basis in RREF, rows ordered by pivot column.
  FieldMatrix basis() const;
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  void reduce_in_place(std::span<std::uint8_t> v) const;

  std::uint32_t q_;
  std::size_t n_;
  FieldVector rows_;                 // dimension() x n_, row-major, sorted by pivot
  std::vector<std::size_t> pivots_;
};

}  // namespace dissem
