#pragma once

#include <Eigen/Dense>
#include <complex>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "sle/kappa.hpp"
#include "sle/loewner.hpp"

namespace sle {

/// Multi-index over the alphabet {1, 2}: letter 1 is the real coordinate, 2 the imaginary one.
class Word {
 public:
  Word() = default;
  /// Digit string such as "122"; the empty string is the empty word. Throws ArgumentError on any
  /// other character.
  explicit Word(std::string_view digits);

  /// Word of length `length` at position `index` of the lexicographic order (1 < 2).
  static Word from_index(int length, std::size_t index);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::string& str() const { return letters_; }
  /// Position among words of the same length; first letter most significant.
  std::size_t index() const;

  Word operator+(const Word& other) const { return Word(letters_ + other.letters_); }

  auto operator<=>(const Word&) const = default;

 private:
  std::string letters_;
};

/// Formal sum of words with integer multiplicities.
using WordSum = std::map<Word, long long>;

/// All interleavings of lhs and rhs that keep the internal order of each, with multiplicity.
WordSum shuffle_product(const Word& lhs, const Word& rhs);

/// Truncated signature: one coefficient per word of length 0..level.
///
/// Coefficients are stored level by level, words of length n at offset 2^n - 1 in lexicographic
/// order, so a level block is a contiguous segment of length 2^n.
template <class Scalar>
class BasicTensorSeries {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit BasicTensorSeries(int level) : level_(level) {
    if (level < 1 || level > 20) throw ArgumentError("tensor series level must lie in [1, 20]");
    coeffs_ = Vector::Zero(static_cast<Eigen::Index>(offset(level + 1)));
    coeffs_(0) = Scalar(1);
  }

  /// Series with every coefficient zero, including the empty word.
  static BasicTensorSeries zero(int level) {
    BasicTensorSeries s(level);
    s.coeffs_.setZero();
    return s;
  }

  static std::size_t offset(int n) { return (std::size_t{1} << n) - 1; }

  int level() const { return level_; }
  const Vector& coeffs() const { return coeffs_; }
  Vector& coeffs() { return coeffs_; }

  auto block(int n) { return coeffs_.segment(static_cast<Eigen::Index>(offset(n)), Eigen::Index{1} << n); }
  auto block(int n) const {
    return coeffs_.segment(static_cast<Eigen::Index>(offset(n)), Eigen::Index{1} << n);
  }

  Scalar operator[](const Word& w) const { return coeffs_(position(w)); }
  Scalar& operator[](const Word& w) { return coeffs_(position(w)); }

 private:
  Eigen::Index position(const Word& w) const {
    if (static_cast<int>(w.size()) > level_) throw ArgumentError("word '" + w.str() + "' exceeds series level");
    return static_cast<Eigen::Index>(offset(static_cast<int>(w.size())) + w.index());
  }

  int level_;
  Vector coeffs_;
};

using TensorSeries = BasicTensorSeries<double>;

/// exp of a single increment: the word k_1..k_n gets prod increment_{k_j} / n!.
template <class Scalar>
BasicTensorSeries<Scalar> segment_signature(std::complex<Scalar> increment, int level) {
  BasicTensorSeries<Scalar> out(level);
  Eigen::Matrix<Scalar, 2, 1> letter(increment.real(), increment.imag());
  for (int n = 1; n <= level; ++n) {
    const Eigen::Index prev = Eigen::Index{1} << (n - 1);
    // Appending a letter to each word of length n-1: index 2p + letter.
    out.block(n).reshaped(2, prev) = (letter * out.block(n - 1).transpose()) / Scalar(n);
  }
  return out;
}

/// Truncated tensor product: (lhs * rhs)(w) = sum over splittings w = uv of lhs(u) rhs(v).
template <class Scalar>
BasicTensorSeries<Scalar> chen_concat(const BasicTensorSeries<Scalar>& lhs, const BasicTensorSeries<Scalar>& rhs) {
  if (lhs.level() != rhs.level()) throw ArgumentError("chen_concat: level mismatch");
  auto out = BasicTensorSeries<Scalar>::zero(lhs.level());
  for (int n = 0; n <= lhs.level(); ++n) {
    auto target = out.block(n);
    for (int i = 0; i <= n; ++i) {
      // Word index p * 2^(n-i) + s, column-major (s, p).
      target.reshaped(Eigen::Index{1} << (n - i), Eigen::Index{1} << i).noalias() +=
          rhs.block(n - i) * lhs.block(i).transpose();
    }
  }
  return out;
}

/// Signature of the polyline through the path's vertices, as the Chen product of its segments.
/// Throws ArgumentError on fewer than 2 vertices.
TensorSeries signature_of_polyline(const PlanarPath& path, int level);

/// Same, from raw vertices.
TensorSeries signature_of_points(const std::vector<Complex>& points, int level);

}  // namespace sle
