#include "test_util.hpp"

using namespace walklap;
using testutil::make;
using testutil::max_diff;

TEST_SUITE("walks") {
  TEST_CASE("adjacency power counts") {
    const auto p3 = adjacency_power_counts(gen::path(3), 2);
    Matrix expect(3, 3);
    expect << 1, 0, 1, 0, 2, 0, 1, 0, 1;
    CHECK(max_diff(p3.counts[2], expect) == 0.0);
    CHECK(max_diff(p3.counts[0], Matrix::Identity(3, 3)) == 0.0);

    const Graph k3 = gen::complete(3);
    const auto c = adjacency_power_counts(k3, 2);
    CHECK(max_diff(c.counts[2], k3.dense_adjacency() + 2 * Matrix::Identity(3, 3)) == 0.0);
  }

  TEST_CASE("btdw counts on small graphs") {
    Matrix q2(3, 3);
    q2 << 0.5, 0, 1, 0, 1, 0, 1, 0, 0.5;
    CHECK(max_diff(btdw_counts(gen::path(3), 0.5, 2).counts[2], q2) < 1e-15);

    const auto nbt = btdw_counts(gen::complete(3), 1.0, 3);
    CHECK(max_diff(nbt.counts[3], 2 * Matrix::Identity(3, 3)) < 1e-14);

    const Graph g = gen::random_connected(9, 5, 4);
    const auto a = adjacency_power_counts(g, 6);
    const auto b = btdw_counts(g, 0.0, 6);
    for (int k = 0; k <= 6; ++k) CHECK(max_diff(a.counts[k], b.counts[k]) == 0.0);
  }

  TEST_CASE("frozen count on C6") {
    // numpy recurrence oracle, tests/oracle/oracle.py
    const Matrix q4 = btdw_counts(gen::cycle(6), 0.25, 4).counts[4];
    CHECK(q4(0, 0) == doctest::Approx(3.46875).epsilon(1e-14));
    CHECK(q4(0, 2) == doctest::Approx(3.625).epsilon(1e-14));
    CHECK(q4(0, 4) == doctest::Approx(3.625).epsilon(1e-14));
    CHECK(q4(0, 1) == 0.0);
  }

  TEST_CASE("brute force weights") {
    const Graph p3 = gen::path(3);
    CHECK(brute_force_walk_weight(p3, 1.0, 2, 0, 0) == 0.0);
    CHECK(brute_force_walk_weight(p3, 0.0, 2, 0, 0) == 1.0);
    CHECK(brute_force_walk_weight(gen::complete(3), 0.25, 3, 0, 0) == doctest::Approx(2.0));
  }

  TEST_CASE("recurrence matches enumeration") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const Graph g = gen::random_connected(7, 4, seed);
      const WalkEnumeration en(g, 6);
      for (double mu : {0.0, 0.25, 0.5, 1.0}) {
        const auto q = btdw_counts(g, mu, 6);
        for (int k = 0; k <= 6; ++k) CHECK(max_diff(q.counts[k], en.weights(mu, k)) < 1e-10);
      }
    }
  }

  TEST_CASE("matrix-free walk apply") {
    const Graph g = gen::trap(5, 8);
    const Vector v = testutil::random_vector(13, 3);
    const auto q = btdw_counts(g, 0.7, 5);
    for (int k = 0; k <= 5; ++k) CHECK((btdw_walk_apply(g, 0.7, k, v) - q.counts[k] * v).norm() < 1e-11);
  }

  TEST_CASE("companion operator advances the recurrence") {
    const Graph p3 = gen::path(3);
    const auto q = btdw_counts(p3, 1.0, 3);
    Vector x(6);
    x << q.counts[1].col(0), q.counts[2].col(0);
    const ZOperator z(p3, 1.0);
    Vector expect(6);
    expect << q.counts[2].col(0), q.counts[3].col(0);
    CHECK((z(x) - expect).norm() < 1e-14);
    CHECK(z(Vector::Zero(6)).norm() == 0.0);
    CHECK(max_diff(z.dense() * x, expect) < 1e-14);
  }

  TEST_CASE("parameter and budget errors") {
    CHECK_THROWS_AS(btdw_counts(gen::path(3), 1.5, 2), Error);
    CHECK_THROWS_AS(ZOperator(gen::path(3), -0.1), Error);
    try {
      WalkEnumeration(gen::complete(8), 12, std::uint64_t{1000});
      FAIL("expected budget error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BudgetExceeded);
    }
    set_dense_limit(10);
    CHECK_THROWS_AS(btdw_counts(gen::path(20), 0.5, 2), Error);
    set_dense_limit(kDefaultDenseLimit);
  }

  TEST_CASE("count invariants") {
    const Graph g = gen::random_connected(30, 15, 7);
    const Matrix a = g.dense_adjacency();
    const Matrix d = a.rowwise().sum().asDiagonal();
    const Matrix id = Matrix::Identity(30, 30);
    const auto p = btdw_counts(g, 1.0, 8);
    for (int k = 0; k <= 8; ++k) CHECK(max_diff(p.counts[k], p.counts[k].transpose()) == 0.0);
    CHECK(max_diff(p.counts[2], a * a - d) == 0.0);
    for (int k = 2; k < 8; ++k) CHECK(max_diff(p.counts[k + 1], a * p.counts[k] - (d - id) * p.counts[k - 1]) == 0.0);
    for (int k = 0; k <= 8; ++k) CHECK(max_diff(p.counts[k], p.counts[k].array().round().matrix()) == 0.0);

    // Iterating Z advances (q_1 v; q_2 v) to (q_{k+1} v; q_{k+2} v).
    const double mu = 0.35;
    const auto q = btdw_counts(g, mu, 10);
    const Vector v = testutil::random_vector(30, 1);
    const ZOperator z(g, mu);
    Vector x(60);
    x << q.counts[1] * v, q.counts[2] * v;
    for (int k = 1; k <= 8; ++k) {
      x = z(x);
      Vector expect(60);
      expect << q.counts[k + 1] * v, q.counts[k + 2] * v;
      CHECK((x - expect).norm() <= 1e-12 * expect.norm());
    }
  }
}
