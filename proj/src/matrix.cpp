#include "spfq/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace spfq {

SparseMatrix::SparseMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), cols_(cols), rows_(rows) {}

SparseMatrix SparseMatrix::from_rows(Field field, std::size_t cols, std::vector<SparseRow> rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SparseRow& r = rows[i];
    for (std::size_t t = 0; t < r.size(); ++t) {
      if (r[t].col >= cols) throw Error(Errc::InvalidArgument, "column index out of range in row " + std::to_string(i));
      if (t > 0 && r[t].col <= r[t - 1].col)
        throw Error(Errc::InvalidArgument, "columns not strictly increasing in row " + std::to_string(i));
      if (r[t].val == 0) throw Error(Errc::InvalidArgument, "stored zero in row " + std::to_string(i));
      if (r[t].val >= field.q()) throw Error(Errc::ValueOutOfRange, "entry outside the field in row " + std::to_string(i));
    }
  }
  return SparseMatrix(std::move(field), cols, std::move(rows), true);
}

SparseMatrix SparseMatrix::from_dense(Field field, std::size_t rows, std::size_t cols,
                                      const std::vector<Element>& data) {
  if (data.size() != rows * cols) throw Error(Errc::ShapeMismatch, "dense data has the wrong size");
  std::vector<SparseRow> out(rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const Element v = data[i * cols + j];
      if (v >= field.q()) throw Error(Errc::ValueOutOfRange, "entry outside the field");
      if (v) out[i].push_back({static_cast<std::uint32_t>(j), v});
    }
  return SparseMatrix(std::move(field), cols, std::move(out), true);
}

SparseMatrix SparseMatrix::identity(Field field, std::size_t n) {
  std::vector<SparseRow> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].push_back({static_cast<std::uint32_t>(i), 1});
  return SparseMatrix(std::move(field), n, std::move(out), true);
}

std::size_t SparseMatrix::nnz() const {
  std::size_t s = 0;
  for (const auto& r : rows_) s += r.size();
  return s;
}

Element SparseMatrix::at(std::size_t i, std::size_t j) const {
  const SparseRow& r = rows_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
  return (it != r.end() && it->col == j) ? it->val : 0;
}

std::vector<Element> SparseMatrix::dense() const {
  std::vector<Element> d(rows() * cols_, 0);
  for (std::size_t i = 0; i < rows(); ++i)
    for (const auto& e : rows_[i]) d[i * cols_ + e.col] = e.val;
  return d;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.field_ == b.field_ && a.cols_ == b.cols_ && a.rows_ == b.rows_;
}

namespace {

// r <- r - f * piv, both sorted sparse rows.
SparseRow axpy(const Field& F, const SparseRow& r, Element f, const SparseRow& piv) {
  SparseRow out;
  out.reserve(r.size() + piv.size());
  std::size_t a = 0, b = 0;
  const Element nf = F.neg(f);
  while (a < r.size() || b < piv.size()) {
    if (b == piv.size() || (a < r.size() && r[a].col < piv[b].col)) {
      out.push_back(r[a++]);
    } else if (a == r.size() || piv[b].col < r[a].col) {
      out.push_back({piv[b].col, F.mul(nf, piv[b].val)});
      ++b;
    } else {
      const Element v = F.add(r[a].val, F.mul(nf, piv[b].val));
      if (v) out.push_back({r[a].col, v});
      ++a;
      ++b;
    }
  }
  return out;
}

std::size_t dense_rank_gf2(const std::vector<SparseRow>& rows, std::size_t c0, std::size_t width) {
  const std::size_t words = (width + 63) / 64;
  const std::size_t R = rows.size();
  std::vector<std::uint64_t> a(R * words, 0);
  for (std::size_t i = 0; i < R; ++i)
    for (const auto& e : rows[i]) {
      const std::size_t j = e.col - c0;
      a[i * words + j / 64] |= 1ULL << (j % 64);
    }
  std::size_t rank = 0;
  for (std::size_t j = 0; j < width && rank < R; ++j) {
    const std::size_t w = j / 64;
    const std::uint64_t bit = 1ULL << (j % 64);
    std::size_t piv = R;
    for (std::size_t i = rank; i < R; ++i)
      if (a[i * words + w] & bit) {
        piv = i;
        break;
      }
    if (piv == R) continue;
    if (piv != rank)
      std::swap_ranges(a.begin() + piv * words, a.begin() + (piv + 1) * words, a.begin() + rank * words);
    const std::uint64_t* pr = &a[rank * words];
    for (std::size_t i = piv + 1; i < R; ++i) {
      std::uint64_t* ri = &a[i * words];
      if (ri[w] & bit)
        for (std::size_t t = w; t < words; ++t) ri[t] ^= pr[t];
    }
    ++rank;
  }
  return rank;
}

// Prime field with lazy reduction: updates accumulate unreduced and a value
// is reduced only when it is inspected. T must hold R*(p-1)^2 + p.
template <typename T>
std::size_t dense_rank_prime(const Field& F, const std::vector<SparseRow>& rows, std::size_t c0,
                             std::size_t width) {
  const T p = static_cast<T>(F.p());
  const std::size_t R = rows.size();
  std::vector<T> a(R * width, 0);
  for (std::size_t i = 0; i < R; ++i)
    for (const auto& e : rows[i]) a[i * width + (e.col - c0)] = static_cast<T>(e.val);
  std::size_t rank = 0;
  for (std::size_t j = 0; j < width && rank < R; ++j) {
    std::size_t piv = R;
    for (std::size_t i = rank; i < R; ++i) {
      T& v = a[i * width + j];
      v %= p;
      if (v && piv == R) piv = i;
    }
    if (piv == R) continue;
    if (piv != rank)
      std::swap_ranges(a.begin() + piv * width + j, a.begin() + (piv + 1) * width, a.begin() + rank * width + j);
    T* pr = &a[rank * width];
    for (std::size_t t = j; t < width; ++t) pr[t] %= p;
    const T inv = static_cast<T>(F.inv(pr[j]));
    for (std::size_t i = rank + 1; i < R; ++i) {
      T* ri = &a[i * width];
      const T v = ri[j];
      if (v == 0) continue;
      const T f = static_cast<T>((static_cast<std::uint64_t>(p - v) * inv) % p);
      for (std::size_t t = j; t < width; ++t) ri[t] += f * pr[t];
    }
    ++rank;
  }
  return rank;
}

std::size_t dense_rank_generic(const Field& F, const std::vector<SparseRow>& rows, std::size_t c0,
                               std::size_t width) {
  const std::size_t R = rows.size();
  std::vector<Element> a(R * width, 0);
  for (std::size_t i = 0; i < R; ++i)
    for (const auto& e : rows[i]) a[i * width + (e.col - c0)] = e.val;
  std::size_t rank = 0;
  for (std::size_t j = 0; j < width && rank < R; ++j) {
    std::size_t piv = R;
    for (std::size_t i = rank; i < R; ++i)
      if (a[i * width + j]) {
        piv = i;
        break;
      }
    if (piv == R) continue;
    if (piv != rank)
      std::swap_ranges(a.begin() + piv * width + j, a.begin() + (piv + 1) * width, a.begin() + rank * width + j);
    const Element* pr = &a[rank * width];
    const Element inv = F.inv(pr[j]);
    for (std::size_t i = rank + 1; i < R; ++i) {
      Element* ri = &a[i * width];
      if (ri[j] == 0) continue;
      const Element f = F.neg(F.mul(ri[j], inv));
      for (std::size_t t = j; t < width; ++t)
        if (pr[t]) ri[t] = F.add(ri[t], F.mul(f, pr[t]));
    }
    ++rank;
  }
  return rank;
}

std::size_t dense_rank(const Field& F, const std::vector<SparseRow>& rows, std::size_t c0, std::size_t width) {
  if (rows.empty() || width == 0) return 0;
  if (F.q() == 2) return dense_rank_gf2(rows, c0, width);
  if (F.is_prime_field() && F.p() <= kTableLimit) {
    const double bound = static_cast<double>(rows.size() + 1) * static_cast<double>(F.p() - 1) *
                             static_cast<double>(F.p() - 1) +
                         static_cast<double>(F.p());
    if (bound < 4.0e9) return dense_rank_prime<std::uint32_t>(F, rows, c0, width);
    if (bound < 9.0e18) return dense_rank_prime<std::uint64_t>(F, rows, c0, width);
  }
  return dense_rank_generic(F, rows, c0, width);
}

}  // namespace

std::size_t matrix_rank(const SparseMatrix& m) {
  const Field& F = m.field();
  const std::size_t cols = m.cols();
  std::vector<SparseRow> act;
  act.reserve(m.rows());
  std::size_t nnz = 0;
  for (const auto& r : m.row_data())
    if (!r.empty()) {
      act.push_back(r);
      nnz += r.size();
    }
  std::size_t rank = 0;
  std::size_t c = 0;
  for (; c < cols && !act.empty(); ++c) {
    const double density = static_cast<double>(nnz) / (static_cast<double>(act.size()) * static_cast<double>(cols - c));
    if (density > 0.2) break;
    std::size_t piv = act.size();
    for (std::size_t i = 0; i < act.size(); ++i)
      if (act[i].front().col == c) {
        piv = i;
        break;
      }
    if (piv == act.size()) continue;
    SparseRow pr = std::move(act[piv]);
    act.erase(act.begin() + static_cast<std::ptrdiff_t>(piv));
    nnz -= pr.size();
    const Element inv = F.inv(pr.front().val);
    std::vector<SparseRow> next;
    next.reserve(act.size());
    for (auto& r : act) {
      if (r.front().col != c) {
        next.push_back(std::move(r));
        continue;
      }
      nnz -= r.size();
      SparseRow reduced = axpy(F, r, F.mul(r.front().val, inv), pr);
      nnz += reduced.size();
      if (!reduced.empty()) next.push_back(std::move(reduced));
    }
    act = std::move(next);
    ++rank;
  }
  if (act.empty() || c >= cols) return rank;
  return rank + dense_rank(F, act, c, cols - c);
}

std::size_t dense_rank_reference(const SparseMatrix& m) {
  return dense_rank_generic(m.field(), m.row_data(), 0, m.cols());
}

SparseMatrix matrix_stack(const SparseMatrix& top, const SparseMatrix& bottom) {
  if (top.field() != bottom.field()) throw Error(Errc::FieldMismatch, "stacked matrices are over different fields");
  if (top.cols() != bottom.cols()) throw Error(Errc::ShapeMismatch, "stacked matrices have different column counts");
  std::vector<SparseRow> rows = top.row_data();
  rows.insert(rows.end(), bottom.row_data().begin(), bottom.row_data().end());
  return SparseMatrix::from_rows(top.field(), top.cols(), std::move(rows));
}

SparseMatrix permute(const SparseMatrix& m, const std::vector<std::size_t>& row_perm,
                     const std::vector<std::size_t>& col_perm) {
  if (row_perm.size() != m.rows() || col_perm.size() != m.cols())
    throw Error(Errc::ShapeMismatch, "permutation size mismatch");
  std::vector<std::size_t> col_inv(m.cols());
  for (std::size_t j = 0; j < col_perm.size(); ++j) col_inv.at(col_perm[j]) = j;
  std::vector<SparseRow> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (const auto& e : m.row(row_perm[i])) rows[i].push_back({static_cast<std::uint32_t>(col_inv[e.col]), e.val});
    std::sort(rows[i].begin(), rows[i].end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
  }
  return SparseMatrix::from_rows(m.field(), m.cols(), std::move(rows));
}

namespace {

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

SparseMatrix read_sms(std::istream& in, const Field& field) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  bool terminated = false;
  std::uint64_t rows = 0, cols = 0;
  std::vector<SparseRow> data;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    if (terminated) throw ParseError(lineno, "content after terminator");
    std::istringstream ls(line);
    if (!have_header) {
      std::string tag, extra;
      if (!(ls >> rows >> cols >> tag) || tag != "M" || (ls >> extra))
        throw ParseError(lineno, "expected header '<rows> <cols> M'");
      if (rows > std::numeric_limits<std::uint32_t>::max() || cols > std::numeric_limits<std::uint32_t>::max())
        throw ParseError(lineno, "dimensions too large");
      data.assign(rows, {});
      have_header = true;
      continue;
    }
    long long i = 0, j = 0, v = 0;
    std::string extra;
    if (!(ls >> i >> j >> v) || (ls >> extra)) throw ParseError(lineno, "expected 'i j v'");
    if (i == 0 && j == 0 && v == 0) {
      terminated = true;
      continue;
    }
    if (i < 1 || j < 1 || static_cast<std::uint64_t>(i) > rows || static_cast<std::uint64_t>(j) > cols)
      throw ParseError(lineno, "index out of range");
    if (v <= 0 || static_cast<std::uint64_t>(v) >= field.q())
      throw Error(Errc::ValueOutOfRange,
                  "line " + std::to_string(lineno) + ": value " + std::to_string(v) + " outside [1, q)");
    data[i - 1].push_back({static_cast<std::uint32_t>(j - 1), static_cast<Element>(v)});
  }
  if (!have_header) throw ParseError(lineno + 1, "missing header");
  if (!terminated) throw ParseError(lineno + 1, "missing '0 0 0' terminator");
  for (auto& r : data) {
    std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    for (std::size_t t = 1; t < r.size(); ++t)
      if (r[t].col == r[t - 1].col) throw ParseError(lineno, "duplicate entry");
  }
  return SparseMatrix::from_rows(field, cols, std::move(data));
}

SparseMatrix read_sms(const std::string& text, const Field& field) {
  std::istringstream in(text);
  return read_sms(in, field);
}

void write_sms(std::ostream& out, const SparseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << " M\n";
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& e : m.row(i)) out << (i + 1) << ' ' << (e.col + 1) << ' ' << e.val << '\n';
  out << "0 0 0\n";
}

std::string to_sms(const SparseMatrix& m) {
  std::ostringstream os;
  write_sms(os, m);
  return os.str();
}

}  // namespace spfq
