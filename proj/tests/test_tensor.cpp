#include <doctest.h>

#include <random>

#include "tfcs/tensor.hpp"

using namespace tfcs;

namespace {

Tensor random_tensor(std::vector<Index> shape, std::mt19937& rng) {
  std::normal_distribution<double> dist;
  Tensor t(std::move(shape));
  for (Index i = 0; i < t.size(); ++i) t[i] = cplx(dist(rng), dist(rng));
  return t;
}

}  // namespace

TEST_SUITE("tensor") {

TEST_CASE("contract identity with basis vector") {
  Tensor id({2, 2});
  id.at({0, 0}) = 1.0;
  id.at({1, 1}) = 1.0;
  Tensor v({2});
  v[0] = 1.0;
  Tensor r = contract(id, {1}, v, {0});
  CHECK(r.rank() == 1);
  CHECK(std::abs(r[0] - 1.0) < 1e-15);
  CHECK(std::abs(r[1]) < 1e-15);
}

TEST_CASE("self contraction gives squared norm") {
  Tensor v({2});
  v[0] = 3.0;
  v[1] = 4.0;
  Tensor r = contract(v, {0}, v, {0});
  CHECK(r.rank() == 0);
  CHECK(std::abs(r[0] - 25.0) < 1e-14);
}

TEST_CASE("full contraction of a random 3-leg tensor equals Frobenius norm^2") {
  std::mt19937 rng(7);
  Tensor t = random_tensor({3, 4, 2}, rng);
  Tensor tc = t;
  for (Index i = 0; i < tc.size(); ++i) tc[i] = std::conj(tc[i]);
  Tensor r = contract(tc, {0, 1, 2}, t, {0, 1, 2});
  CHECK(std::abs(r[0] - cplx(t.norm() * t.norm(), 0.0)) < 1e-12);
}

TEST_CASE("extent mismatch raises") {
  Tensor a({2, 3}), b({4});
  CHECK_THROWS_AS(contract(a, {1}, b, {0}), std::invalid_argument);
}

TEST_CASE("permutation preserves entries and norm") {
  std::mt19937 rng(13);
  Tensor t = random_tensor({2, 3, 4}, rng);
  Tensor p = t.permuted({2, 0, 1});
  CHECK(p.extent(0) == 4);
  CHECK(p.extent(1) == 2);
  CHECK(p.extent(2) == 3);
  CHECK(p.norm() == doctest::Approx(t.norm()).epsilon(1e-14));
  CHECK(std::abs(p.at({3, 1, 2}) - t.at({1, 2, 3})) == 0.0);
  Tensor back = p.permuted({1, 2, 0});
  CHECK((back.data() - t.data()).norm() == 0.0);
}

TEST_CASE("contract is bilinear") {
  std::mt19937 rng(19);
  Tensor a = random_tensor({3, 4}, rng);
  Tensor a2 = random_tensor({3, 4}, rng);
  Tensor b = random_tensor({4, 2}, rng);
  const cplx alpha(0.7, -0.3);
  Tensor lhs_sum = a;
  for (Index i = 0; i < a.size(); ++i) lhs_sum[i] = a[i] + alpha * a2[i];
  Tensor r1 = contract(lhs_sum, {1}, b, {0});
  Tensor r2 = contract(a, {1}, b, {0});
  Tensor r3 = contract(a2, {1}, b, {0});
  double err = 0.0;
  for (Index i = 0; i < r1.size(); ++i)
    err = std::max(err, std::abs(r1[i] - r2[i] - alpha * r3[i]));
  CHECK(err < 1e-12);
}

TEST_CASE("contract is associative under regrouping") {
  std::mt19937 rng(23);
  Tensor a = random_tensor({2, 3}, rng);
  Tensor b = random_tensor({3, 4}, rng);
  Tensor c = random_tensor({4, 2}, rng);
  Tensor ab_c = contract(contract(a, {1}, b, {0}), {1}, c, {0});
  Tensor a_bc = contract(a, {1}, contract(b, {1}, c, {0}), {0});
  double err = 0.0;
  for (Index i = 0; i < ab_c.size(); ++i)
    err = std::max(err, std::abs(ab_c[i] - a_bc[i]));
  CHECK(err < 1e-12);
}

TEST_CASE("reshape preserves data") {
  std::mt19937 rng(29);
  Tensor t = random_tensor({2, 6}, rng);
  Tensor r = t.reshaped({3, 2, 2});
  CHECK((r.data() - t.data()).norm() == 0.0);
  CHECK_THROWS_AS(t.reshaped({5}), std::invalid_argument);
}

}  // TEST_SUITE
