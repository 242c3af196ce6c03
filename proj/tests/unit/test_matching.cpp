#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "spectral_part/errors.hpp"
#include "spectral_part/generators.hpp"
#include "spectral_part/matching.hpp"
#include "spectral_part/rng.hpp"

using namespace spectral_part;

namespace {

Partition relabel(const Partition& p, const std::vector<int>& perm) {
  std::vector<int> a(p.assignment().begin(), p.assignment().end());
  for (int& b : a) b = perm[static_cast<std::size_t>(b)];
  return Partition::from_assignment(a, p.num_blocks());
}

std::uint64_t total_for(const Graph& g, const Partition& a, const Partition& p, const std::vector<int>& perm) {
  std::uint64_t t = 0;
  for (int i = 0; i < a.num_blocks(); ++i) t += sym_diff_volume(g, a.block(i), p.block(perm[static_cast<std::size_t>(i)]));
  return t;
}

}  // namespace

TEST_CASE("identity and swapped labels") {
  const PlantedGraph pg = ring_of_cliques(3, 4, 1, 0);
  const auto same = match_partitions(pg.graph, pg.planted, pg.planted);
  CHECK(same.permutation == std::vector<int>{0, 1, 2});
  CHECK(same.total_sym_diff == 0);
  CHECK(same.max_relative_sym_diff == 0.0);
  const auto swapped = match_partitions(pg.graph, relabel(pg.planted, {1, 0, 2}), pg.planted);
  CHECK(swapped.permutation == std::vector<int>{1, 0, 2});
  CHECK(swapped.total_sym_diff == 0);
}

TEST_CASE("block count mismatch is an input error") {
  const PlantedGraph pg = ring_of_cliques(3, 4, 1, 0);
  CHECK_THROWS_AS(match_partitions(pg.graph, contiguous_partition(12, 2), pg.planted), InputError);
}

TEST_CASE("random relabeling of a planted partition is inverted") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::vector<int> sizes{6, 7, 5, 8};
    const PlantedGraph pg = stochastic_block_model(sizes, 0.7, 0.05, seed);
    std::vector<int> perm(4);
    std::iota(perm.begin(), perm.end(), 0);
    CounterRng r(seed, StreamPurpose::test_data);
    for (int i = 3; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[r.below(static_cast<std::uint64_t>(i + 1))]);
    const auto m = match_partitions(pg.graph, relabel(pg.planted, perm), pg.planted);
    for (int i = 0; i < 4; ++i) CHECK(perm[static_cast<std::size_t>(m.permutation[static_cast<std::size_t>(i)])] == i);
  }
}

TEST_CASE("property: matching is a bijection no worse than identity or any permutation") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::vector<int> sizes{5, 6, 4};
    const PlantedGraph pg = stochastic_block_model(sizes, 0.6, 0.2, seed);
    CounterRng r(seed, StreamPurpose::test_data, 2);
    std::vector<int> a(pg.graph.num_vertices());
    for (std::size_t v = 0; v < a.size(); ++v) a[v] = v < 3 ? static_cast<int>(v) : static_cast<int>(r.below(3));
    const Partition pa = Partition::from_assignment(a, 3);
    const auto m = match_partitions(pg.graph, pa, pg.planted);
    std::vector<int> sorted = m.permutation;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2});
    CHECK(m.total_sym_diff == total_for(pg.graph, pa, pg.planted, m.permutation));
    std::vector<int> perm{0, 1, 2};
    do {
      CHECK(m.total_sym_diff <= total_for(pg.graph, pa, pg.planted, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("hungarian assignment agrees with enumeration") {
  CounterRng r(3, StreamPurpose::test_data);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + trial % 5;
    std::vector<std::vector<double>> cost(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(k)));
    for (auto& row : cost)
      for (double& c : row) c = static_cast<double>(r.below(20));
    const auto assign = min_cost_assignment(cost);
    double best = 1e300, got = 0.0;
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      double t = 0.0;
      for (int i = 0; i < k; ++i) t += cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
      best = std::min(best, t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int i = 0; i < k; ++i) got += cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
    CHECK(got == best);
  }
}

TEST_CASE("k above the exhaustive limit uses the assignment solver") {
  const std::vector<int> sizes(10, 4);
  const PlantedGraph pg = stochastic_block_model(sizes, 1.0, 0.02, 1);
  std::vector<int> perm{3, 1, 4, 0, 9, 2, 6, 5, 8, 7};
  const auto m = match_partitions(pg.graph, relabel(pg.planted, perm), pg.planted);
  CHECK(m.total_sym_diff == 0);
}
