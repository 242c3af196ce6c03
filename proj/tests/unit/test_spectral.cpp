#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "spectral_part/errors.hpp"
#include "spectral_part/generators.hpp"
#include "spectral_part/rng.hpp"
#include "spectral_part/spectral.hpp"

using namespace spectral_part;

namespace {

DenseMatrix weighted_gram(const Embedding& e) {
  return e.coords.transpose() * e.weights.asDiagonal() * e.coords;
}

Vector random_vector(std::size_t n, std::uint64_t seed) {
  return gaussian_matrix(n, 1, seed).col(0);
}

}  // namespace

TEST_CASE("laplacian operators") {
  const Graph k2 = fixtures::make_graph(2, {{0, 1}});
  DenseMatrix want(2, 2);
  want << 1, -1, -1, 1;
  CHECK((LaplacianOps(k2).dense_laplacian() - want).norm() < 1e-15);
  const Graph g = fixtures::random_connected(12, 0.3, 4);
  const LaplacianOps ops = build_ops(g);
  Vector sqrt_d(12);
  for (Vertex v = 0; v < 12; ++v) sqrt_d(v) = std::sqrt(static_cast<double>(g.degree(v)));
  CHECK(ops.apply_laplacian(sqrt_d).norm() < 1e-12);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Vector x = random_vector(12, s);
    const Vector y = random_vector(12, s + 1000);
    CHECK(x.dot(ops.apply_laplacian(x)) >= -1e-12);
    CHECK((ops.apply_laplacian(x) + ops.apply_b(x) - 2.0 * x).norm() < 1e-12);
    CHECK(std::abs(ops.apply_laplacian(x).dot(y) - x.dot(ops.apply_laplacian(y))) < 1e-10);
    CHECK(std::abs(ops.apply_b(x).dot(y) - x.dot(ops.apply_b(y))) < 1e-10);
  }
  const DenseMatrix xs = gaussian_matrix(12, 3, 8);
  const DenseMatrix bx = ops.apply_b(xs);
  for (int j = 0; j < 3; ++j) CHECK((bx.col(j) - ops.apply_b(Vector(xs.col(j)))).norm() < 1e-12);
  CHECK_THROWS_AS(LaplacianOps(g, 5).dense_laplacian(), CapacityError);
}

TEST_CASE("exact embedding examples") {
  const Graph k2 = fixtures::make_graph(2, {{0, 1}});
  const ExactSpectrum e = exact_embedding(k2, 1);
  CHECK(std::abs(e.embedding.coords(0, 0) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(e.embedding.coords(1, 0) - 1.0 / std::sqrt(2.0)) < 1e-12);

  const Graph dc = fixtures::disjoint_cliques(3, 4);
  const ExactSpectrum d = exact_embedding(dc, 3);
  for (int b = 0; b < 3; ++b) {
    for (int i = 1; i < 4; ++i) CHECK((d.embedding.coords.row(4 * b + i) - d.embedding.coords.row(4 * b)).norm() < 1e-10);
    CHECK((d.embedding.coords.row(4 * b) - d.embedding.coords.row(4 * ((b + 1) % 3))).norm() > 0.1);
  }

  const ExactSpectrum t = exact_embedding(fixtures::two_triangles_bridge(), 2);
  CHECK((weighted_gram(t.embedding) - DenseMatrix::Identity(2, 2)).norm() < 1e-9);
  CHECK(t.eigen.values.size() == 6);
  CHECK_THROWS_AS(exact_embedding(k2, 3), InputError);
  CHECK_THROWS_AS(exact_embedding(dc, 3, 10), CapacityError);
}

TEST_CASE("property: spectrum of L lies in [0, 2] with lambda_1 = 0") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ExactSpectrum e = exact_embedding(fixtures::random_connected(11, 0.3, seed), 2);
    CHECK(std::abs(e.eigen.values(0)) < 1e-10);
    CHECK(e.eigen.values.minCoeff() >= -1e-10);
    CHECK(e.eigen.values.maxCoeff() <= 2.0 + 1e-10);
  }
}

TEST_CASE("required power steps") {
  CHECK(required_power_steps(1000, 3, 0.1, 0.1, 1.0, 1.5) == 22);  // gamma = 1/2
  CHECK(required_power_steps(1000, 3, 0.1, 0.1, 0.0, 2.0) == 1);   // gamma = 0
  CHECK_THROWS_AS(required_power_steps(100, 3, 0.1, 0.1, 0.5, 0.5), GapError);
  CHECK_THROWS_AS(required_power_steps(100, 3, 0.1, 0.1, 0.6, 0.5), GapError);
  CHECK_THROWS_AS(required_power_steps(100, 3, 0.0, 0.1, 0.1, 0.5), InputError);
  CHECK_THROWS_AS(required_power_steps(100, 3, 0.1, 1.0, 0.1, 0.5), InputError);
  const double lk = 0.01, lk1 = 0.3;
  const double gamma = (2.0 - lk1) / (2.0 - lk);
  for (double eps : {0.1, 0.01, 0.001}) {
    const double exact = std::log(8.0 * 500 * 4 / (eps * 0.1)) / std::log(1.0 / gamma);
    CHECK(required_power_steps(500, 4, eps, 0.1, lk, lk1) == static_cast<int>(std::ceil(exact)));
    const int p = required_power_steps(500, 4, eps, 0.1, lk, lk1);
    const int half = required_power_steps(500, 4, eps / 2, 0.1, lk, lk1);
    const int bump = static_cast<int>(std::ceil(std::log(2.0) / std::log(1.0 / gamma)));
    CHECK(half >= p);
    CHECK(half <= p + bump);
  }
}

TEST_CASE("power embedding on a disconnected graph converges to the exact span") {
  const Graph dc = fixtures::disjoint_cliques(3, 5);
  const ExactSpectrum ex = exact_embedding(dc, 3);
  PowerParams pp;
  pp.p = 50;
  pp.seed = 3;
  const Embedding pe = power_embedding(dc, 3, pp);
  CHECK(pe.kind == EmbeddingKind::approximate);
  CHECK(pe.power_steps == 50);
  CHECK(projection_distance(ex.embedding, pe) <= 1e-6);
}

TEST_CASE("power embedding with required steps meets the accuracy target in most seeds") {
  const PlantedGraph pg = ring_of_cliques(3, 20, 1, 0);
  const ExactSpectrum ex = exact_embedding(pg.graph, 3);
  PowerParams pp;
  pp.p = required_power_steps(60, 3, 0.01, 0.1, ex.eigen.values(2), ex.eigen.values(3));
  int good = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    pp.seed = seed;
    good += projection_distance(ex.embedding, power_embedding(pg.graph, 3, pp)) <= 0.01;
  }
  CHECK(good >= 45);
}

TEST_CASE("power embedding is deterministic and weighted-orthonormal") {
  const PlantedGraph pg = ring_of_cliques(3, 8, 2, 1);
  PowerParams pp;
  pp.p = 30;
  pp.seed = 12;
  const Embedding a = power_embedding(pg.graph, 3, pp);
  const Embedding b = power_embedding(pg.graph, 3, pp);
  CHECK(a.coords == b.coords);
  CHECK((weighted_gram(a) - DenseMatrix::Identity(3, 3)).norm() < 1e-8);
  CHECK_THROWS_AS(power_embedding(pg.graph, 25, pp), InputError);
}

TEST_CASE("property: projection distance is non-increasing in p on average") {
  const PlantedGraph pg = ring_of_cliques(3, 10, 2, 6);
  const ExactSpectrum ex = exact_embedding(pg.graph, 3);
  double previous = 1e300;
  for (int p = 1; p <= 64; p *= 2) {
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      PowerParams pp;
      pp.p = p;
      pp.seed = seed;
      total += projection_distance(ex.embedding, power_embedding(pg.graph, 3, pp));
    }
    CHECK(total / 20 <= previous + 1e-12);
    previous = total / 20;
  }
}

TEST_CASE("projection distance examples") {
  const DenseMatrix a = orthonormalize_columns(gaussian_matrix(10, 3, 1));
  CHECK(projection_distance(a, a) < 1e-12);
  DenseMatrix e1 = DenseMatrix::Zero(6, 2), e2 = DenseMatrix::Zero(6, 2);
  e1(0, 0) = e1(1, 1) = 1.0;
  e2(2, 0) = e2(3, 1) = 1.0;
  CHECK(std::abs(projection_distance(e1, e2) - 2.0) < 1e-12);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DenseMatrix q = orthonormalize_columns(gaussian_matrix(3, 3, seed + 50));
    CHECK(projection_distance(a, a * q) <= 1e-10);
  }
  CHECK_THROWS_AS(projection_distance(a, DenseMatrix(a.topRows(5))), InputError);
}

TEST_CASE("property: projection distance equals the materialized projector difference") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DenseMatrix a = orthonormalize_columns(gaussian_matrix(15, 3, seed));
    const DenseMatrix b = orthonormalize_columns(gaussian_matrix(15, 3, seed + 77));
    const double direct = (a * a.transpose() - b * b.transpose()).norm();
    CHECK(std::abs(projection_distance(a, b) - direct) < 1e-10);
    // ||U U^T - A A^T U U^T||_F = ||U - A A^T U||_F
    const DenseMatrix lhs = b * b.transpose() - a * a.transpose() * b * b.transpose();
    const DenseMatrix rhs = b - a * a.transpose() * b;
    CHECK(std::abs(lhs.norm() - rhs.norm()) < 1e-10);
  }
}

TEST_CASE("property: Frobenius transfer between Y' and Y") {
  // Y rows repeat F(u) d_u times scaled so that Y'^T Y' = I; here Y' = the
  // duplicated coords matrix and Y its D^{1/2} rows.
  const PlantedGraph pg = ring_of_cliques(2, 5, 1, 3);
  const ExactSpectrum ex = exact_embedding(pg.graph, 2);
  PowerParams pp;
  pp.p = 3;
  pp.seed = 1;
  const Embedding ap = power_embedding(pg.graph, 2, pp);
  std::vector<Eigen::Index> rows;
  for (Vertex v = 0; v < pg.graph.num_vertices(); ++v)
    for (std::uint64_t c = 0; c < pg.graph.degree(v); ++c) rows.push_back(v);
  const auto m = static_cast<Eigen::Index>(rows.size());
  DenseMatrix y1(m, 2), y2(m, 2);
  for (Eigen::Index r = 0; r < m; ++r) {
    y1.row(r) = ex.embedding.coords.row(rows[static_cast<std::size_t>(r)]);
    y2.row(r) = ap.coords.row(rows[static_cast<std::size_t>(r)]);
  }
  CHECK((y1.transpose() * y1 - DenseMatrix::Identity(2, 2)).norm() < 1e-9);
  CHECK((y2.transpose() * y2 - DenseMatrix::Identity(2, 2)).norm() < 1e-9);
  const double big = (y1 * y1.transpose() - y2 * y2.transpose()).norm();
  const double small = (ex.embedding.basis * ex.embedding.basis.transpose() - ap.basis * ap.basis.transpose()).norm();
  CHECK(std::abs(big - small) < 1e-9);
}

TEST_CASE("weighted point set") {
  const ExactSpectrum k2 = exact_embedding(fixtures::make_graph(2, {{0, 1}}), 1);
  const WeightedPoints p2 = normalized_weighted_pointset(k2.embedding);
  CHECK(p2.size() == 2);
  CHECK(p2.weights(0) == 1.0);
  const WeightedPoints p4 = normalized_weighted_pointset(exact_embedding(fixtures::disjoint_cliques(1, 4), 2).embedding);
  CHECK(p4.weights(3) == 3.0);
  CHECK(p4.total_weight() == 12.0);
  const PlantedGraph pg = ring_of_cliques(2, 3, 1, 0);
  CHECK(normalized_weighted_pointset(exact_embedding(pg.graph, 2).embedding).total_weight() == 14.0);
}

TEST_CASE("embedding text export round-trips") {
  const PlantedGraph pg = ring_of_cliques(3, 5, 1, 2);
  PowerParams pp;
  pp.p = 7;
  pp.seed = 99;
  const Embedding e = power_embedding(pg.graph, 3, pp);
  std::ostringstream out;
  write_embedding(out, e);
  CHECK(out.str().rfind("#spectral-embedding 15 3 approximate 7 99\n", 0) == 0);
  std::istringstream in(out.str());
  const Embedding back = read_embedding(in);
  CHECK(back.kind == e.kind);
  CHECK(back.power_steps == 7);
  CHECK(back.seed == 99);
  CHECK(back.coords == e.coords);
  CHECK(back.weights == e.weights);
  CHECK((back.basis - e.basis).norm() < 1e-14);
  std::istringstream bad("#spectral-embedding 2 1 exact 0 0\n0 1 0.5\n");
  CHECK_THROWS_AS(read_embedding(bad), InputError);
}
