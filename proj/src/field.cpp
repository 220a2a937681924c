#include "dissem/field.hpp"

#include <algorithm>
#include <sstream>

#include "dissem/errors.hpp"
#include "dissem/kernels.hpp"

namespace dissem {

bool is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

void require_field(std::uint32_t q) {
  if (q >= 256 || !is_prime(q)) {
    throw InputError("field order " + std::to_string(q) + " is not a prime below 256");
  }
}

std::uint8_t field_add(std::uint8_t a, std::uint8_t b, std::uint32_t q) {
  return static_cast<std::uint8_t>((static_cast<std::uint32_t>(a) + b) % q);
}

std::uint8_t field_sub(std::uint8_t a, std::uint8_t b, std::uint32_t q) {
  return static_cast<std::uint8_t>((static_cast<std::uint32_t>(a) + q - b) % q);
}

std::uint8_t field_mul(std::uint8_t a, std::uint8_t b, std::uint32_t q) {
  return static_cast<std::uint8_t>((static_cast<std::uint32_t>(a) * b) % q);
}

std::uint8_t field_neg(std::uint8_t a, std::uint32_t q) {
  return static_cast<std::uint8_t>((q - a) % q);
}

std::uint8_t field_inv(std::uint8_t a, std::uint32_t q) {
  if (a == 0) throw InputError("inverse of zero");
  // a^(q-2) by square-and-multiply
  std::uint32_t result = 1;
  std::uint32_t base = a;
  for (std::uint32_t e = q - 2; e > 0; e >>= 1) {
    if (e & 1u) result = result * base % q;
    base = base * base % q;
  }
  return static_cast<std::uint8_t>(result);
}

FieldElement::FieldElement(std::uint32_t value, std::uint32_t modulus)
    : value_(value), modulus_(modulus) {
  require_field(modulus);
  if (value >= modulus) {
    throw InputError("field element " + std::to_string(value) + " out of range for GF(" +
                     std::to_string(modulus) + ")");
  }
}

namespace {

void require_same(const FieldElement& a, const FieldElement& b) {
  if (a.modulus() != b.modulus()) throw InputError("field modulus mismatch");
}

}  // namespace

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same(*this, o);
  return {field_add(static_cast<std::uint8_t>(value_), static_cast<std::uint8_t>(o.value_), modulus_),
          modulus_};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same(*this, o);
  return {field_sub(static_cast<std::uint8_t>(value_), static_cast<std::uint8_t>(o.value_), modulus_),
          modulus_};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same(*this, o);
  return {field_mul(static_cast<std::uint8_t>(value_), static_cast<std::uint8_t>(o.value_), modulus_),
          modulus_};
}

FieldElement FieldElement::inverse() const {
  return {field_inv(static_cast<std::uint8_t>(value_), modulus_), modulus_};
}

// ---------------------------------------------------------------------------

FieldMatrix::FieldMatrix(std::uint32_t q, std::size_t rows, std::size_t cols)
    : q_(q), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  require_field(q);
}

FieldMatrix::FieldMatrix(std::uint32_t q, std::size_t rows, std::size_t cols, FieldVector data)
    : q_(q), rows_(rows), cols_(cols), data_(std::move(data)) {
  require_field(q);
  if (data_.size() != rows * cols) throw InputError("matrix data size mismatch");
  for (auto x : data_) {
    if (x >= q) throw InputError("matrix entry out of field range");
  }
}

FieldMatrix FieldMatrix::from_rows(std::uint32_t q, std::size_t cols,
                                   const std::vector<std::vector<std::int64_t>>& rows) {
  require_field(q);
  FieldVector data;
  data.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw InputError("ragged rows in matrix literal");
    for (auto x : r) {
      const auto m = static_cast<std::int64_t>(q);
      data.push_back(static_cast<std::uint8_t>(((x % m) + m) % m));
    }
  }
  return {q, rows.size(), cols, std::move(data)};
}

FieldMatrix FieldMatrix::identity(std::uint32_t q, std::size_t n) {
  FieldVector data(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1;
  return {q, n, n, std::move(data)};
}

FieldMatrix FieldMatrix::unit_row(std::uint32_t q, std::size_t n, std::size_t i) {
  return {q, 1, n, unit_vector(n, i)};
}

FieldMatrix FieldMatrix::row_vector(std::uint32_t q, std::span<const std::uint8_t> v) {
  return {q, 1, v.size(), FieldVector(v.begin(), v.end())};
}

bool FieldMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](auto x) { return x == 0; });
}

FieldMatrix FieldMatrix::transpose() const {
  FieldVector t(data_.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t[c * rows_ + r] = data_[r * cols_ + c];
  }
  return {q_, cols_, rows_, std::move(t)};
}

FieldMatrix FieldMatrix::row_range(std::size_t begin, std::size_t end) const {
  if (begin > end || end > rows_) throw InputError("row range out of bounds");
  return {q_, end - begin, cols_,
          FieldVector(data_.begin() + static_cast<std::ptrdiff_t>(begin * cols_),
                      data_.begin() + static_cast<std::ptrdiff_t>(end * cols_))};
}

FieldMatrix FieldMatrix::nonzero_rows() const {
  FieldVector out;
  std::size_t kept = 0;
  for (std::size_t r = 0; r < rows_; ++r) {
    auto rv = row(r);
    if (std::any_of(rv.begin(), rv.end(), [](auto x) { return x != 0; })) {
      out.insert(out.end(), rv.begin(), rv.end());
      ++kept;
    }
  }
  return {q_, kept, cols_, std::move(out)};
}

std::string FieldMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ' ';
      os << static_cast<unsigned>(at(r, c));
    }
    os << "]\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

// In-place RREF of a rows x cols row-major buffer. Returns pivot columns of
// the leading rank() rows; rows below them are zero afterwards. When
// `stop_col` is smaller than cols, pivots are searched only in [0, stop_col).
std::vector<std::size_t> eliminate(FieldVector& a, std::size_t rows, std::size_t cols,
                                   std::uint32_t q, std::size_t stop_col) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < stop_col && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(p * cols),
                       a.begin() + static_cast<std::ptrdiff_t>((p + 1) * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
    std::span<std::uint8_t> prow(a.data() + r * cols, cols);
    kernels::scale_mod(prow, field_inv(prow[c], q), q);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const std::uint8_t f = a[i * cols + c];
      if (f == 0) continue;
      kernels::axpy_mod({a.data() + i * cols, cols}, prow, field_neg(f, q), q);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Echelon rref(const FieldMatrix& m) {
  FieldVector a = m.data();
  auto pivots = eliminate(a, m.rows(), m.cols(), m.modulus(), m.cols());
  a.resize(pivots.size() * m.cols());
  return {FieldMatrix(m.modulus(), pivots.size(), m.cols(), std::move(a)), std::move(pivots)};
}

std::size_t rank(const FieldMatrix& m) {
  FieldVector a = m.data();
  return eliminate(a, m.rows(), m.cols(), m.modulus(), m.cols()).size();
}

std::optional<FieldVector> solve_in_row_space(const FieldMatrix& m,
                                              std::span<const std::uint8_t> v) {
  if (v.size() != m.cols()) {
    throw InputError("solve_in_row_space: vector length " + std::to_string(v.size()) +
                     " does not match " + std::to_string(m.cols()) + " columns");
  }
  // Solve M^T c^T = v^T on the augmented system [M^T | v].
  const std::size_t rows = m.cols();
  const std::size_t cols = m.rows() + 1;
  const std::uint32_t q = m.modulus();
  FieldVector a(rows * cols, 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a[j * cols + i] = m.at(i, j);
  }
  for (std::size_t j = 0; j < rows; ++j) a[j * cols + cols - 1] = v[j] % q;
  const auto pivots = eliminate(a, rows, cols, q, cols - 1);
  for (std::size_t r = pivots.size(); r < rows; ++r) {
    if (a[r * cols + cols - 1] != 0) return std::nullopt;
  }
  FieldVector c(m.rows(), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) c[pivots[r]] = a[r * cols + cols - 1];
  return c;
}

bool in_row_space(const FieldMatrix& m, std::span<const std::uint8_t> v) {
  RowSpace s(m.modulus(), m.cols());
  s.insert_all(m);
  return s.contains(v);
}

FieldVector combine(std::span<const std::uint8_t> coeffs, const FieldMatrix& m) {
  if (coeffs.size() != m.rows()) throw InputError("combine: coefficient count mismatch");
  FieldVector out(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    kernels::axpy_mod(out, m.row(i), static_cast<std::uint8_t>(coeffs[i] % m.modulus()),
                      m.modulus());
  }
  return out;
}

FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols() != b.rows() || a.modulus() != b.modulus()) {
    throw InputError("multiply: shape or modulus mismatch");
  }
  FieldVector out;
  out.reserve(a.rows() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = combine(a.row(i), b);
    out.insert(out.end(), r.begin(), r.end());
  }
  return {a.modulus(), a.rows(), b.cols(), std::move(out)};
}

FieldMatrix stack(std::span<const FieldMatrix> blocks, std::size_t cols, std::uint32_t q) {
  FieldVector data;
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) {
      throw InputError("stack: block has " + std::to_string(b.cols()) + " columns, expected " +
                       std::to_string(cols));
    }
    if (b.modulus() != q) throw InputError("stack: modulus mismatch");
    data.insert(data.end(), b.data().begin(), b.data().end());
    rows += b.rows();
  }
  return {q, rows, cols, std::move(data)};
}

FieldMatrix stack(std::initializer_list<FieldMatrix> blocks) {
  if (blocks.size() == 0) throw InputError("stack: empty block list needs explicit width");
  const auto& first = *blocks.begin();
  return stack(std::span<const FieldMatrix>(blocks.begin(), blocks.size()), first.cols(),
               first.modulus());
}

FieldVector unit_vector(std::size_t n, std::size_t i) {
  FieldVector v(n, 0);
  v.at(i) = 1;
  return v;
}

// ---------------------------------------------------------------------------

RowSpace::RowSpace(std::uint32_t q, std::size_t n) : q_(q), n_(n) { require_field(q); }

void RowSpace::reduce_in_place(std::span<std::uint8_t> v) const {
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const std::uint8_t f = v[pivots_[i]];
    if (f == 0) continue;
    kernels::axpy_mod(v, {rows_.data() + i * n_, n_}, field_neg(f, q_), q_);
  }
}

FieldVector RowSpace::reduce(std::span<const std::uint8_t> v) const {
  if (v.size() != n_) throw InputError("RowSpace: vector length mismatch");
  FieldVector w(v.begin(), v.end());
  reduce_in_place(w);
  return w;
}

bool RowSpace::contains(std::span<const std::uint8_t> v) const {
  const auto w = reduce(v);
  return std::all_of(w.begin(), w.end(), [](auto x) { return x == 0; });
}

bool RowSpace::insert(std::span<const std::uint8_t> v) {
  auto w = reduce(v);
  auto lead = std::find_if(w.begin(), w.end(), [](auto x) { return x != 0; });
  if (lead == w.end()) return false;
  const auto p = static_cast<std::size_t>(lead - w.begin());
  kernels::scale_mod(w, field_inv(*lead, q_), q_);
  // Clear the new pivot column from the existing rows.
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    std::span<std::uint8_t> row(rows_.data() + i * n_, n_);
    const std::uint8_t f = row[p];
    if (f != 0) kernels::axpy_mod(row, w, field_neg(f, q_), q_);
  }
  const auto pos = static_cast<std::size_t>(
      std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin());
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), p);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos * n_), w.begin(), w.end());
  return true;
}

void RowSpace::insert_all(const FieldMatrix& m) {
  if (m.cols() != n_ || m.modulus() != q_) throw InputError("RowSpace: shape mismatch");
  for (std::size_t r = 0; r < m.rows(); ++r) insert(m.row(r));
}

FieldMatrix RowSpace::basis() const { return {q_, pivots_.size(), n_, rows_}; }

}  // namespace dissem
