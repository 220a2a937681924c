#pragma once
// Matrices over F u {*}, where * marks an entry that may take any field value.
// A StarMatrix therefore denotes a whole family of field matrices. The algebra
// extends field addition and multiplication so that products of integer
// matrices with families describe how possession spreads through a network.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dissem/field.hpp"

namespace dissem {

class StarEntry {
 public:
  static StarEntry star() { return StarEntry(std::nullopt); }
  static StarEntry fixed(FieldElement e) { return StarEntry(e); }

  bool is_star() const { return !value_.has_value(); }
  /// Throws when the entry is *.
  const FieldElement& value() const;
  bool is_zero() const { return value_ && value_->is_zero(); }

  bool operator==(const StarEntry&) const = default;

 private:
  explicit StarEntry(std::optional<FieldElement> v) : value_(v) {}
  std::optional<FieldElement> value_;
};

/// a + b: field sum when both fixed, * otherwise.
StarEntry star_add(const StarEntry& a, const StarEntry& b);
/// a * b: 0 absorbs everything (including *), nonzero * * = *, fixed * fixed = field product.
StarEntry star_mul(const StarEntry& a, const StarEntry& b);

/// Nonnegative integer matrix (adjacency matrices, Kronecker factors).
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint64_t> data);
  static IntMatrix from_rows(const std::vector<std::vector<std::uint64_t>>& rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix all_ones(std::size_t rows, std::size_t cols);
  /// diag(v): square matrix with v on the diagonal.
  static IntMatrix diag(const std::vector<std::uint64_t>& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::vector<std::uint64_t> row(std::size_t r) const;

  IntMatrix operator*(const IntMatrix& o) const;
  /// Product with every positive entry clamped to 1.
  IntMatrix boolean_product(const IntMatrix& o) const;
  IntMatrix transpose() const;
  bool all_positive() const;

  bool operator==(const IntMatrix&) const = default;
  std::string to_string() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> data_;
};

class StarMatrix {
 public:
  /// All entries fixed to zero.
  StarMatrix(std::uint32_t q, std::size_t rows, std::size_t cols);
  StarMatrix(std::uint32_t q, std::size_t rows, std::size_t cols, std::vector<StarEntry> entries);

  /// Literal rows; each entry is "*" or a decimal field value.
  static StarMatrix parse(std::uint32_t q, const std::vector<std::vector<std::string>>& rows);
  /// Nonzero integers map to 1, zero to 0.
  static StarMatrix from_int(std::uint32_t q, const IntMatrix& m);
  static StarMatrix from_field(const FieldMatrix& m);

  std::uint32_t modulus() const { return q_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  StarEntry at(std::size_t r, std::size_t c) const;
  bool is_star(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c] == kStar; }
  std::size_t star_count() const;
  std::size_t star_count_in_row(std::size_t r) const;
  /// Columns holding * in row r, ascending.
  std::vector<std::size_t> star_columns(std::size_t r) const;
  /// True when every fixed entry is zero.
  bool zero_fixed() const;

  /// Rows [begin, end).
  StarMatrix row_range(std::size_t begin, std::size_t end) const;

  bool operator==(const StarMatrix&) const = default;
  std::string to_string() const;

 private:
  static constexpr std::uint8_t kStar = 0xFF;

  std::uint32_t q_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> cells_;  // field value, or kStar
};

/// B * A after mapping every nonzero integer of B to the field element 1.
StarMatrix int_mul_star(const IntMatrix& b, const StarMatrix& a);
StarMatrix star_mul(const StarMatrix& a, const StarMatrix& b);

IntMatrix tensor(const IntMatrix& a, const IntMatrix& b);
StarMatrix tensor(const StarMatrix& a, const StarMatrix& b);

/// compact (k x n) -> full (kn x n): each row repeated n times, i.e. compact (x) 1_n.
StarMatrix expand_rows(const StarMatrix& compact, std::size_t copies);

/// Greedy canonical completion of a square block: row r takes e_c for the
/// smallest * column c of row r not used by an earlier row; other rows are zero.
FieldMatrix gamma(const StarMatrix& block);

/// Maximum rank over all completions. Only zero-fixed families are accepted;
/// for those the answer is the term rank (maximum matching on * positions).
std::size_t maxrank(const StarMatrix& a);
/// A completion attaining maxrank: ones on a maximum matching, zeros elsewhere.
FieldMatrix maxrank_completion(const StarMatrix& a);

bool member(const StarMatrix& a, const FieldMatrix& m);
/// Uniform completion from a seeded generator.
FieldMatrix sample(const StarMatrix& a, std::uint64_t seed);

}  // namespace dissem
