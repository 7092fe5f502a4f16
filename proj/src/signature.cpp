#include "sle/signature.hpp"

namespace sle {

Word::Word(std::string_view digits) : letters_(digits) {
  for (char c : letters_) {
    if (c != '1' && c != '2') throw ArgumentError("word letters must be '1' or '2', got '" + letters_ + "'");
  }
}

Word Word::from_index(int length, std::size_t index) {
  if (length < 0 || length > 62 || index >= (std::size_t{1} << length)) {
    throw ArgumentError("word index out of range");
  }
  std::string s(static_cast<std::size_t>(length), '1');
  for (int j = length - 1; j >= 0; --j, index >>= 1) {
    if (index & 1U) s[static_cast<std::size_t>(j)] = '2';
  }
  return Word(s);
}

std::size_t Word::index() const {
  std::size_t idx = 0;
  for (char c : letters_) idx = (idx << 1) | static_cast<std::size_t>(c == '2');
  return idx;
}

namespace {

void shuffle_into(std::string_view lhs, std::string_view rhs, std::string& prefix, WordSum& out) {
  if (lhs.empty() || rhs.empty()) {
    out[Word(prefix + std::string(lhs) + std::string(rhs))] += 1;
    return;
  }
  prefix.push_back(lhs.front());
  shuffle_into(lhs.substr(1), rhs, prefix, out);
  prefix.back() = rhs.front();
  shuffle_into(lhs, rhs.substr(1), prefix, out);
  prefix.pop_back();
}

}  // namespace

WordSum shuffle_product(const Word& lhs, const Word& rhs) {
  WordSum out;
  std::string prefix;
  shuffle_into(lhs.str(), rhs.str(), prefix, out);
  return out;
}

TensorSeries signature_of_points(const std::vector<Complex>& points, int level) {
  if (points.size() < 2) throw ArgumentError("signature needs at least 2 vertices");
  TensorSeries sig(level);
  for (std::size_t k = 1; k < points.size(); ++k) {
    sig = chen_concat(sig, segment_signature(points[k] - points[k - 1], level));
  }
  return sig;
}

TensorSeries signature_of_polyline(const PlanarPath& path, int level) {
  return signature_of_points(path.points(), level);
}

}  // namespace sle
