#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>

#include "fixtures.hpp"
#include "spectral_part/diagnostics.hpp"
#include "spectral_part/errors.hpp"
#include "spectral_part/generators.hpp"
#include "spectral_part/partition_constants.hpp"

using namespace spectral_part;

namespace {

std::map<std::string, CheckRecord> by_name(const TheoremChecks& tc) {
  std::map<std::string, CheckRecord> m;
  for (const auto& r : tc.records) m.emplace(r.name, r);
  return m;
}

Partition planted_cliques(int k, int size) {
  std::vector<int> a;
  for (int b = 0; b < k; ++b)
    for (int i = 0; i < size; ++i) a.push_back(b);
  return Partition::from_assignment(a, k);
}

std::vector<double> volumes_of(const Graph& g, const Partition& p) {
  const auto st = block_stats(g, p);
  return {st.volume.begin(), st.volume.end()};
}

}  // namespace

TEST_CASE("characteristic vectors") {
  const Graph dc = fixtures::disjoint_cliques(3, 4);
  const CharacteristicVectors cv = characteristic_vectors(dc, planted_cliques(3, 4));
  CHECK((cv.vectors.transpose() * cv.vectors - DenseMatrix::Identity(3, 3)).norm() < 1e-14);
  for (double r : cv.rayleigh) CHECK(std::abs(r) < 1e-14);
  const Graph tt = fixtures::two_triangles_bridge();
  const CharacteristicVectors t = characteristic_vectors(tt, planted_cliques(2, 3));
  CHECK(std::abs(t.vectors.col(0).dot(t.vectors.col(1))) < 1e-15);
  for (double r : t.rayleigh) CHECK(std::abs(r - 1.0 / 7.0) < 1e-12);
  for (double phi : t.conductance) CHECK(std::abs(phi - 1.0 / 7.0) < 1e-15);
}

TEST_CASE("coefficient matrices on disjoint cliques") {
  const Graph dc = fixtures::disjoint_cliques(3, 4);
  const ExactSpectrum ex = exact_embedding(dc, 3);
  const CharacteristicVectors cv = characteristic_vectors(dc, planted_cliques(3, 4));
  const CoeffMatrices cm = coeff_matrices(ex.eigen, cv.vectors, 3);
  CHECK((cm.f.transpose() * cm.f - DenseMatrix::Identity(3, 3)).norm() < 1e-10);
  CHECK((cm.b - cm.f.transpose()).norm() < 1e-10);
  CHECK(std::abs(cm.condition - 1.0) < 1e-10);
  const DenseMatrix centers = estimation_centers(cm, volumes_of(dc, planted_cliques(3, 4)));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(centers.row(i).squaredNorm() - 1.0 / 12.0) < 1e-12);
}

TEST_CASE("B F = I and the unconditional projection bound on a ring of cliques") {
  const PlantedGraph pg = ring_of_cliques(3, 20, 1, 0);
  const ExactSpectrum ex = exact_embedding(pg.graph, 3);
  const CharacteristicVectors cv = characteristic_vectors(pg.graph, pg.planted);
  const CoeffMatrices cm = coeff_matrices(ex.eigen, cv.vectors, 3);
  CHECK((cm.b * cm.f - DenseMatrix::Identity(3, 3)).norm() < 1e-6);
  // fhat_i is the projection of gbar_i onto the first k eigenvectors.
  const DenseMatrix uk = ex.eigen.vectors.leftCols(3);
  for (int i = 0; i < 3; ++i) {
    const Vector fhat = uk * (uk.transpose() * cv.vectors.col(i));
    CHECK((fhat - uk * cm.f.col(i)).norm() < 1e-12);
    CHECK((cv.vectors.col(i) - fhat).squaredNorm() <= cv.conductance[static_cast<std::size_t>(i)] / ex.eigen.values(3) + 1e-9);
  }
}

TEST_CASE("span collapse is reported") {
  // Eigenbasis e_1..e_6; the indicators only touch e_1, e_2 within the
  // first three coordinates, so F has rank 2.
  Vector diag(6);
  diag << 0, 1, 2, 3, 4, 5;
  const EigenSystem eig = sym_eig(DenseMatrix(diag.asDiagonal()));
  DenseMatrix gbar = DenseMatrix::Zero(6, 3);
  gbar(0, 0) = gbar(3, 0) = std::sqrt(0.5);
  gbar(1, 1) = gbar(4, 1) = std::sqrt(0.5);
  gbar(5, 2) = 1.0;
  CHECK_THROWS_AS(coeff_matrices(eig, gbar, 3), SpanCollapseError);
}

TEST_CASE("gap report") {
  const Graph dc = fixtures::disjoint_cliques(3, 4);
  const ExactSpectrum ex = exact_embedding(dc, 3);
  const GapReport inf = gap_report(dc, 3, planted_cliques(3, 4), ex.eigen);
  CHECK(std::isinf(inf.psi));
  CHECK(inf.lambda.size() == 4);
  CHECK(inf.proxy_kind == ProxyKind::bruteforce_optimal);

  const Graph path = path_graph(10, 2).graph;
  const ExactSpectrum pe = exact_embedding(path, 2);
  const GapReport pr = gap_report(path, 2, contiguous_partition(10, 2), pe.eigen);
  const PartitionConstants pc = bruteforce_partition_constants(path, 2);
  CHECK(pr.proxy_kind == ProxyKind::bruteforce_optimal);
  CHECK(pr.rho_avr_proxy == pc.rho_avr);
  CHECK(std::abs(pr.psi * pr.rho_avr_proxy - pe.eigen.values(2)) < 1e-9);
  CHECK(std::abs(pr.upsilon * pr.phi_proxy - pe.eigen.values(2)) < 1e-9);

  const PlantedGraph big = ring_of_cliques(3, 8, 1, 2);
  const ExactSpectrum be = exact_embedding(big.graph, 3);
  const GapReport br = gap_report(big.graph, 3, big.planted, be.eigen);
  CHECK(br.proxy_kind == ProxyKind::planted);
  CHECK(br.rho_avr_proxy == doctest::Approx(partition_avg_phi(big.graph, big.planted)));
  CHECK(std::abs(br.psi * br.rho_avr_proxy - br.upsilon * br.phi_proxy) < 1e-9);

  CHECK_THROWS_AS(gap_report(dc, 12, planted_cliques(3, 4), ex.eigen), InputError);
  const Graph two = fixtures::disjoint_cliques(4, 3);
  const ExactSpectrum te = exact_embedding(two, 3);
  CHECK_THROWS_AS(gap_report(two, 3, planted_cliques(3, 4), te.eigen), GapError);
}

TEST_CASE("gap parameters") {
  const GapParameters p = gap_parameters(1e6, 3);
  CHECK(p.delta_raw == doctest::Approx(160000.0 * 27 / 1e6));
  CHECK(p.delta == 0.5);
  CHECK(p.delta_clamped);
  CHECK(p.eps_bbt == doctest::Approx(std::sqrt(1e4 * 27 / 1e6)));
  const GapParameters q = gap_parameters(1e8, 2);
  CHECK_FALSE(q.delta_clamped);
  CHECK(q.delta == q.delta_raw);
  const GapParameters z = gap_parameters(std::numeric_limits<double>::infinity(), 3);
  CHECK(z.delta == 0.0);
  CHECK(z.eps_bbt == 0.0);
}

TEST_CASE("check records") {
  const CheckRecord ok = make_check("x", 1.0, 1.0 - 5e-10, true);
  CHECK(ok.passed);
  CHECK(ok.status() == CheckStatus::passed);
  CHECK(ok.slack == doctest::Approx(-5e-10));
  const CheckRecord bad = make_check("x", 1.0, 0.9, true);
  CHECK(bad.status() == CheckStatus::failed);
  CHECK(make_check("x", 1.0, 0.9, false).status() == CheckStatus::not_applicable);
  CHECK(std::string(to_string(CheckStatus::not_applicable)) == "not_applicable");
}

TEST_CASE("theorem checks on disjoint cliques") {
  const Graph dc = fixtures::disjoint_cliques(3, 5);
  const Partition p = planted_cliques(3, 5);
  const TheoremChecks tc = run_theorem_checks(dc, 3, p, &p);
  const auto m = by_name(tc);
  for (int i = 0; i < 3; ++i) {
    const auto& a = m.at("gbar_fhat_distance[" + std::to_string(i) + "]");
    const auto& b = m.at("f_ghat_distance[" + std::to_string(i) + "]");
    CHECK(a.status() == CheckStatus::passed);
    CHECK(b.status() == CheckStatus::passed);
    CHECK(std::abs(a.lhs) < 1e-12);
    CHECK(std::abs(b.lhs) < 1e-12);
  }
  CHECK(std::isinf(tc.psi));
  CHECK_FALSE(tc.any_failed());
}

TEST_CASE("theorem checks on a single clique are not applicable") {
  const PlantedGraph pg = complete_graph(9, 3);
  const TheoremChecks tc = run_theorem_checks(pg.graph, 3, pg.planted, nullptr);
  for (const auto& r : tc.records) {
    if (r.name.rfind("gbar_fhat_distance", 0) == 0) continue;
    CHECK_MESSAGE(!r.hypothesis_met, r.name);
  }
  CHECK_FALSE(tc.any_failed());
}

TEST_CASE("reference cost equals the summed eigenvector approximation error") {
  const PlantedGraph pg = ring_of_cliques(3, 10, 1, 4);
  const ExactSpectrum ex = exact_embedding(pg.graph, 3);
  const CharacteristicVectors cv = characteristic_vectors(pg.graph, pg.planted);
  const CoeffMatrices cm = coeff_matrices(ex.eigen, cv.vectors, 3);
  const DenseMatrix centers = estimation_centers(cm, volumes_of(pg.graph, pg.planted));
  double cost_value = 0.0;
  for (Vertex u = 0; u < pg.graph.num_vertices(); ++u) {
    cost_value += static_cast<double>(pg.graph.degree(u)) *
                  (ex.embedding.coords.row(u) - centers.row(pg.planted.block_of(u))).squaredNorm();
  }
  double approx = 0.0;
  for (int i = 0; i < 3; ++i) {
    Vector ghat = Vector::Zero(static_cast<Eigen::Index>(pg.graph.num_vertices()));
    for (int j = 0; j < 3; ++j) ghat += cm.b(j, i) * cv.vectors.col(j);
    approx += (ex.eigen.vectors.col(i) - ghat).squaredNorm();
  }
  CHECK(std::abs(cost_value - approx) < 1e-10);
  const auto m = by_name(run_theorem_checks(pg.graph, ex, 3, pg.planted, nullptr));
  CHECK(std::abs(m.at("reference_cost").lhs - cost_value) < 1e-10);
}

TEST_CASE("property: the unconditional bound holds on random block models") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int k = 2 + static_cast<int>(seed % 3);
    std::vector<int> sizes(static_cast<std::size_t>(k), 10 + static_cast<int>(seed % 7));
    const PlantedGraph pg = stochastic_block_model(sizes, 0.5, 0.05, seed);
    const TheoremChecks tc = run_theorem_checks(pg.graph, k, pg.planted, nullptr);
    for (const auto& r : tc.records) {
      if (r.name.rfind("gbar_fhat_distance", 0) == 0) CHECK(r.status() == CheckStatus::passed);
      CHECK_MESSAGE(r.status() != CheckStatus::failed, r.name);
    }
  }
}

TEST_CASE("applicable checks pass on strong-gap rings") {
  for (int size : {20, 50}) {
    const PlantedGraph pg = ring_of_cliques(3, size, 1, 1);
    Partition clustered = pg.planted;
    const TheoremChecks tc = run_theorem_checks(pg.graph, 3, pg.planted, &clustered);
    CHECK(tc.psi > 4.0 * std::pow(3.0, 1.5));
    int applicable = 0;
    for (const auto& r : tc.records) {
      CHECK_MESSAGE(r.status() != CheckStatus::failed, r.name);
      applicable += r.hypothesis_met;
    }
    CHECK(applicable >= 8);  // the BB^T and delta-dependent bounds need a larger gap
  }
}
