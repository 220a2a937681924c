#include "dissem/star_algebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "dissem/errors.hpp"
#include "dissem/rng.hpp"

namespace dissem {

const FieldElement& StarEntry::value() const {
  if (!value_) throw InputError("star entry has no fixed value");
  return *value_;
}

StarEntry star_add(const StarEntry& a, const StarEntry& b) {
  if (a.is_star() || b.is_star()) return StarEntry::star();
  return StarEntry::fixed(a.value() + b.value());
}

StarEntry star_mul(const StarEntry& a, const StarEntry& b) {
  if (!a.is_star() && !b.is_star()) return StarEntry::fixed(a.value() * b.value());
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  return StarEntry::star();
}

// ---------------------------------------------------------------------------

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint64_t> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw InputError("integer matrix data size mismatch");
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::uint64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<std::uint64_t> data;
  for (const auto& r : rows) {
    if (r.size() != cols) throw InputError("ragged rows in integer matrix literal");
    data.insert(data.end(), r.begin(), r.end());
  }
  return {rows.size(), cols, std::move(data)};
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

IntMatrix IntMatrix::all_ones(std::size_t rows, std::size_t cols) {
  return {rows, cols, std::vector<std::uint64_t>(rows * cols, 1)};
}

IntMatrix IntMatrix::diag(const std::vector<std::uint64_t>& v) {
  IntMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m.data_[i * v.size() + i] = v[i];
  return m;
}

std::vector<std::uint64_t> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw InputError("integer matrix product: dimension mismatch");
  IntMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t l = 0; l < cols_; ++l) {
      const auto a = at(i, l);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out.data_[i * o.cols_ + j] += a * o.at(l, j);
    }
  }
  return out;
}

IntMatrix IntMatrix::boolean_product(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw InputError("integer matrix product: dimension mismatch");
  IntMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < o.cols_; ++j) {
      for (std::size_t l = 0; l < cols_; ++l) {
        if (at(i, l) != 0 && o.at(l, j) != 0) {
          out.data_[i * o.cols_ + j] = 1;
          break;
        }
      }
    }
  }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  }
  return t;
}

bool IntMatrix::all_positive() const {
  return std::all_of(data_.begin(), data_.end(), [](auto x) { return x > 0; });
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c);
    os << "]\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

StarMatrix::StarMatrix(std::uint32_t q, std::size_t rows, std::size_t cols)
    : q_(q), rows_(rows), cols_(cols), cells_(rows * cols, 0) {
  require_field(q);
}

StarMatrix::StarMatrix(std::uint32_t q, std::size_t rows, std::size_t cols,
                       std::vector<StarEntry> entries)
    : q_(q), rows_(rows), cols_(cols) {
  require_field(q);
  if (entries.size() != rows * cols) throw InputError("star matrix data size mismatch");
  cells_.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.is_star()) {
      cells_.push_back(kStar);
    } else {
      if (e.value().modulus() != q) throw InputError("star matrix entry modulus mismatch");
      cells_.push_back(static_cast<std::uint8_t>(e.value().value()));
    }
  }
}

StarMatrix StarMatrix::parse(std::uint32_t q, const std::vector<std::vector<std::string>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<StarEntry> entries;
  for (const auto& r : rows) {
    if (r.size() != cols) throw InputError("ragged rows in star matrix literal");
    for (const auto& s : r) {
      if (s == "*") {
        entries.push_back(StarEntry::star());
      } else {
        entries.push_back(StarEntry::fixed(FieldElement(static_cast<std::uint32_t>(std::stoul(s)), q)));
      }
    }
  }
  return {q, rows.size(), cols, std::move(entries)};
}

StarMatrix StarMatrix::from_int(std::uint32_t q, const IntMatrix& m) {
  StarMatrix out(q, m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out.cells_[r * m.cols() + c] = m.at(r, c) ? 1 : 0;
  }
  return out;
}

StarMatrix StarMatrix::from_field(const FieldMatrix& m) {
  StarMatrix out(m.modulus(), m.rows(), m.cols());
  out.cells_ = m.data();
  return out;
}

StarEntry StarMatrix::at(std::size_t r, std::size_t c) const {
  const auto v = cells_[r * cols_ + c];
  if (v == kStar) return StarEntry::star();
  return StarEntry::fixed(FieldElement(v, q_));
}

std::size_t StarMatrix::star_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), kStar));
}

std::size_t StarMatrix::star_count_in_row(std::size_t r) const {
  const auto first = cells_.begin() + static_cast<std::ptrdiff_t>(r * cols_);
  return static_cast<std::size_t>(std::count(first, first + static_cast<std::ptrdiff_t>(cols_), kStar));
}

std::vector<std::size_t> StarMatrix::star_columns(std::size_t r) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (is_star(r, c)) out.push_back(c);
  }
  return out;
}

bool StarMatrix::zero_fixed() const {
  return std::all_of(cells_.begin(), cells_.end(), [](auto v) { return v == 0 || v == kStar; });
}

StarMatrix StarMatrix::row_range(std::size_t begin, std::size_t end) const {
  if (begin > end || end > rows_) throw InputError("row range out of bounds");
  StarMatrix out(q_, end - begin, cols_);
  std::copy(cells_.begin() + static_cast<std::ptrdiff_t>(begin * cols_),
            cells_.begin() + static_cast<std::ptrdiff_t>(end * cols_), out.cells_.begin());
  return out;
}

std::string StarMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ' ';
      if (is_star(r, c)) {
        os << '*';
      } else {
        os << static_cast<unsigned>(cells_[r * cols_ + c]);
      }
    }
    os << "]\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

StarMatrix star_mul(const StarMatrix& a, const StarMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("star product: dimension mismatch");
  if (a.modulus() != b.modulus()) throw InputError("star product: modulus mismatch");
  const auto q = a.modulus();
  std::vector<StarEntry> out;
  out.reserve(a.rows() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      StarEntry acc = StarEntry::fixed(FieldElement(0, q));
      for (std::size_t l = 0; l < a.cols(); ++l) acc = star_add(acc, star_mul(a.at(i, l), b.at(l, j)));
      out.push_back(acc);
    }
  }
  return {q, a.rows(), b.cols(), std::move(out)};
}

StarMatrix int_mul_star(const IntMatrix& b, const StarMatrix& a) {
  if (b.cols() != a.rows()) {
    throw InputError("int_mul_star: " + std::to_string(b.cols()) + " columns against " +
                     std::to_string(a.rows()) + " rows");
  }
  return star_mul(StarMatrix::from_int(a.modulus(), b), a);
}

IntMatrix tensor(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  std::vector<std::uint64_t> data(out.rows() * out.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          data[(i * b.rows() + k) * out.cols() + j * b.cols() + l] = a.at(i, j) * b.at(k, l);
        }
      }
    }
  }
  return {out.rows(), out.cols(), std::move(data)};
}

StarMatrix tensor(const StarMatrix& a, const StarMatrix& b) {
  if (a.modulus() != b.modulus()) throw InputError("tensor: modulus mismatch");
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  std::vector<StarEntry> out(rows * cols, StarEntry::star());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out[(i * b.rows() + k) * cols + j * b.cols() + l] = star_mul(a.at(i, j), b.at(k, l));
        }
      }
    }
  }
  return {a.modulus(), rows, cols, std::move(out)};
}

StarMatrix expand_rows(const StarMatrix& compact, std::size_t copies) {
  return tensor(compact, StarMatrix::from_int(compact.modulus(), IntMatrix::all_ones(copies, 1)));
}

FieldMatrix gamma(const StarMatrix& block) {
  FieldVector data(block.rows() * block.cols(), 0);
  std::vector<bool> used(block.cols(), false);
  for (std::size_t r = 0; r < block.rows(); ++r) {
    for (std::size_t c = 0; c < block.cols(); ++c) {
      if (block.is_star(r, c) && !used[c]) {
        used[c] = true;
        data[r * block.cols() + c] = 1;
        break;
      }
    }
  }
  return {block.modulus(), block.rows(), block.cols(), std::move(data)};
}

namespace {

// Kuhn's augmenting-path matching of rows to columns over * positions.
std::vector<long> match_rows(const StarMatrix& a) {
  if (!a.zero_fixed()) {
    throw InputError("maxrank: family has nonzero fixed entries (only zero-fixed families supported)");
  }
  std::vector<long> col_owner(a.cols(), -1);
  std::vector<bool> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (!a.is_star(r, c) || seen[c]) continue;
      seen[c] = true;
      if (col_owner[c] < 0 || augment(static_cast<std::size_t>(col_owner[c]))) {
        col_owner[c] = static_cast<long>(r);
        return true;
      }
    }
    return false;
  };
  for (std::size_t r = 0; r < a.rows(); ++r) {
    seen.assign(a.cols(), false);
    augment(r);
  }
  return col_owner;
}

}  // namespace

std::size_t maxrank(const StarMatrix& a) {
  const auto owner = match_rows(a);
  return static_cast<std::size_t>(std::count_if(owner.begin(), owner.end(), [](long r) { return r >= 0; }));
}

FieldMatrix maxrank_completion(const StarMatrix& a) {
  const auto owner = match_rows(a);
  FieldVector data(a.rows() * a.cols(), 0);
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (owner[c] >= 0) data[static_cast<std::size_t>(owner[c]) * a.cols() + c] = 1;
  }
  return {a.modulus(), a.rows(), a.cols(), std::move(data)};
}

bool member(const StarMatrix& a, const FieldMatrix& m) {
  if (a.rows() != m.rows() || a.cols() != m.cols() || a.modulus() != m.modulus()) {
    throw InputError("member: shape or modulus mismatch");
  }
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (!a.is_star(r, c) && a.at(r, c).value().value() != m.at(r, c)) return false;
    }
  }
  return true;
}

FieldMatrix sample(const StarMatrix& a, std::uint64_t seed) {
  Rng rng(seed);
  FieldVector data(a.rows() * a.cols(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      data[r * a.cols() + c] = a.is_star(r, c)
                                   ? static_cast<std::uint8_t>(uniform_below(rng, a.modulus()))
                                   : static_cast<std::uint8_t>(a.at(r, c).value().value());
    }
  }
  return {a.modulus(), a.rows(), a.cols(), std::move(data)};
}

}  // namespace dissem
