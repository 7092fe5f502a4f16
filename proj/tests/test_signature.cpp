#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sle/signature.hpp"

using namespace sle;

namespace {

std::vector<Complex> random_polyline(std::mt19937_64& rng, int vertices) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Complex> z{Complex(0, 0)};
  for (int i = 1; i < vertices; ++i) z.push_back(z.back() + Complex(n(rng), n(rng)));
  return z;
}

std::vector<Word> words_up_to(int level) {
  std::vector<Word> out;
  for (int n = 0; n <= level; ++n) {
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) out.push_back(Word::from_index(n, i));
  }
  return out;
}

}  // namespace

TEST_CASE("words") {
  CHECK(Word("").empty());
  CHECK(Word("122").size() == 3);
  CHECK(Word("122").index() == 3);
  CHECK(Word::from_index(3, 3).str() == "122");
  CHECK(Word::from_index(2, 2).str() == "21");
  CHECK_THROWS_AS(Word("13"), ArgumentError);
  for (int n = 0; n <= 4; ++n) {
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) CHECK(Word::from_index(n, i).index() == i);
  }
}

TEST_CASE("segment_signature") {
  const auto s = segment_signature(Complex(1, 0), 3);
  CHECK(s[Word("")] == 1.0);
  CHECK(s[Word("1")] == 1.0);
  CHECK(s[Word("11")] == doctest::Approx(0.5));
  CHECK(s[Word("111")] == doctest::Approx(1.0 / 6.0));
  for (const auto& w : words_up_to(3)) {
    if (w.str().find('2') != std::string::npos) CHECK(s[w] == 0.0);
  }
  const auto id = segment_signature(Complex(0, 0), 3);
  for (const auto& w : words_up_to(3)) CHECK(id[w] == (w.empty() ? 1.0 : 0.0));
  const auto diag = segment_signature(Complex(1, 1), 2);
  for (const char* w : {"11", "12", "21", "22"}) CHECK(diag[Word(w)] == doctest::Approx(0.5));
  const auto gen = segment_signature(Complex(0.3, -1.7), 4);
  CHECK(gen[Word("2121")] == doctest::Approx(0.3 * 0.3 * 1.7 * 1.7 / 24.0));
  CHECK_THROWS_AS(segment_signature(Complex(1, 0), 0), ArgumentError);
}

TEST_CASE("chen_concat") {
  const auto a = segment_signature(Complex(0.4, -1.1), 3);
  const auto id = segment_signature(Complex(0, 0), 3);
  CHECK((chen_concat(a, id).coeffs() - a.coeffs()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((chen_concat(id, a).coeffs() - a.coeffs()).cwiseAbs().maxCoeff() < 1e-15);

  const auto up_right = chen_concat(segment_signature(Complex(0, 1), 2), segment_signature(Complex(1, 0), 2));
  CHECK(up_right[Word("12")] == doctest::Approx(0.0));
  CHECK(up_right[Word("21")] == doctest::Approx(1.0));

  const double x = 0.7, y = 1.9;
  const auto col = chen_concat(segment_signature(Complex(x, 0), 3), segment_signature(Complex(y, 0), 3));
  CHECK(col[Word("1")] == doctest::Approx(x + y));
  CHECK(col[Word("11")] == doctest::Approx((x + y) * (x + y) / 2));

  CHECK_THROWS_AS(chen_concat(segment_signature(Complex(1, 0), 2), a), ArgumentError);

  SUBCASE("associativity on random series") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    auto random_series = [&] {
      TensorSeries s(4);
      for (Eigen::Index i = 1; i < s.coeffs().size(); ++i) s.coeffs()(i) = n(rng);
      return s;
    };
    for (int i = 0; i < 20; ++i) {
      const auto p = random_series(), q = random_series(), r = random_series();
      const auto lhs = chen_concat(chen_concat(p, q), r);
      const auto rhs = chen_concat(p, chen_concat(q, r));
      CHECK((lhs.coeffs() - rhs.coeffs()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("signature_of_polyline") {
  const PlanarPath unit({0.0, 1.0}, {Complex(0, 0), Complex(1, 0)}, Domain::small_disk);
  const auto s = signature_of_polyline(unit, 3);
  CHECK(s[Word("1")] == 1.0);
  CHECK(s[Word("2")] == 0.0);
  CHECK(s[Word("11")] == doctest::Approx(0.5));
  CHECK(s[Word("111")] == doctest::Approx(1.0 / 6.0));

  std::mt19937_64 rng(9);
  SUBCASE("closed polylines have zero increment") {
    for (int i = 0; i < 20; ++i) {
      auto z = random_polyline(rng, 7);
      z.push_back(z.front());
      const auto c = signature_of_points(z, 3);
      CHECK(std::abs(c[Word("1")]) < 1e-12);
      CHECK(std::abs(c[Word("2")]) < 1e-12);
    }
  }
  SUBCASE("agrees with nested quadrature") {
    for (int i = 0; i < 10; ++i) {
      const auto z = random_polyline(rng, 10);
      const auto sig = signature_of_points(z, 3);
      const auto ref = oracle::nested_signature(z, 2048);
      for (const auto& [w, v] : ref) CHECK(std::abs(sig[Word(w)] - v) < 1e-10);
    }
  }
  SUBCASE("collinear intermediate vertices") {
    const auto z = random_polyline(rng, 6);
    std::vector<Complex> refined;
    for (std::size_t k = 0; k + 1 < z.size(); ++k) {
      refined.push_back(z[k]);
      refined.push_back(z[k] + 0.3 * (z[k + 1] - z[k]));
      refined.push_back(z[k] + 0.8 * (z[k + 1] - z[k]));
    }
    refined.push_back(z.back());
    const auto a = signature_of_points(z, 4), b = signature_of_points(refined, 4);
    CHECK((a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("reparametrization invariance") {
    const auto z = random_polyline(rng, 12);
    std::vector<double> t1, t2;
    double s = 0.0;
    std::exponential_distribution<double> e(1.0);
    for (std::size_t k = 0; k < z.size(); ++k) {
      t1.push_back(double(k));
      s += e(rng) + 1e-3;
      t2.push_back(s);
    }
    const auto a = signature_of_polyline(PlanarPath(t1, z, Domain::plane), 3);
    const auto b = signature_of_polyline(PlanarPath(t2, z, Domain::plane), 3);
    CHECK((a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("endpoint determinism from 0 to 1") {
    for (int i = 0; i < 20; ++i) {
      const auto z = oracle::monotone_disk_polyline(rng, 9);
      const auto sig = signature_of_points(z, 3);
      CHECK(sig[Word("1")] == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(sig[Word("11")] == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(sig[Word("111")] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
      CHECK(std::abs(sig[Word("2")]) < 1e-12);
      CHECK(std::abs(sig[Word("22")]) < 1e-12);
      CHECK(std::abs(sig[Word("222")]) < 1e-12);
    }
  }
  CHECK_THROWS_AS(signature_of_points({Complex(0, 0)}, 3), ArgumentError);
}

TEST_CASE("shuffle_product") {
  const auto a = shuffle_product(Word("2"), Word("12"));
  CHECK(a.size() == 2);
  CHECK(a.at(Word("212")) == 1);
  CHECK(a.at(Word("122")) == 2);
  const auto b = shuffle_product(Word("1"), Word("1"));
  CHECK(b.size() == 1);
  CHECK(b.at(Word("11")) == 2);
  const auto c = shuffle_product(Word(""), Word("121"));
  CHECK(c.size() == 1);
  CHECK(c.at(Word("121")) == 1);
  long long total = 0;
  for (const auto& [w, m] : shuffle_product(Word("12"), Word("211"))) {
    CHECK(w.size() == 5);
    total += m;
  }
  CHECK(total == 10);  // binomial(5, 2)
}

TEST_CASE("shuffle identities on random polylines") {
  std::mt19937_64 rng(17);
  const auto words = words_up_to(3);
  for (int i = 0; i < 100; ++i) {
    const auto sig = signature_of_points(random_polyline(rng, 2 + i % 9), 3);
    for (const auto& u : words) {
      for (const auto& v : words) {
        if (u.size() + v.size() > 3) continue;
        double rhs = 0.0;
        for (const auto& [w, m] : shuffle_product(u, v)) rhs += double(m) * sig[w];
        CHECK(std::abs(sig[u] * sig[v] - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}
