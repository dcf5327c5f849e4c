#include <gtest/gtest.h>

#include <atomic>
#include <thread>
#include <vector>

#include "qfock/cache.hpp"
#include "qfock/virasoro.hpp"

using namespace qfock;

TEST(WriteOnceCache, FirstInsertWins) {
  detail::WriteOnceCache<int, int> cache;
  EXPECT_EQ(cache.get_or_compute(1, [] { return 10; }), 10);
  EXPECT_EQ(cache.get_or_compute(1, [] { return 20; }), 10);
  EXPECT_EQ(cache.size(), 1U);
}

TEST(WriteOnceCache, ConcurrentReadersSeeOneValue) {
  detail::WriteOnceCache<int, int> cache;
  std::atomic<int> calls{0};
  std::vector<std::thread> threads;
  std::vector<int> seen(16);
  for (int i = 0; i < 16; ++i) {
    threads.emplace_back([&, i] {
      seen[i] = cache.get_or_compute(7, [&] {
        ++calls;
        return 49;
      });
    });
  }
  for (auto& t : threads) t.join();
  for (int v : seen) EXPECT_EQ(v, 49);
  EXPECT_GE(calls.load(), 1);
  EXPECT_EQ(cache.size(), 1U);
}

TEST(SharedCaches, ParallelQFunctionsAgree) {
  // Different threads request overlapping Q_lambda; all must equal a serial recomputation.
  const auto basis = strict_partitions_of(11);
  std::vector<OddPolynomial> results(basis.size());
  detail::parallel_for(basis.size(), 8, [&](std::size_t i) { results[i] = Q(basis[i]); });
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::vector<int> labels = basis[i].parts();
    if (labels.size() % 2 == 1) labels.push_back(0);
    AlternatingPolyMatrix m(labels.size());
    for (std::size_t a = 0; a < labels.size(); ++a) {
      for (std::size_t b = a + 1; b < labels.size(); ++b) m.set(a, b, q_pair(labels[a], labels[b]));
    }
    EXPECT_EQ(results[i], pfaffian(m)) << basis[i];
  }
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(100);
  detail::parallel_for(hits.size(), 7, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  detail::parallel_for(0, 4, [&](std::size_t) { FAIL(); });
}

TEST(ParallelBracket, MatchesSerial) {
  for (int k = -2; k <= 2; ++k) {
    EXPECT_EQ(check_virasoro_bracket(k, -k, 7, 4), check_virasoro_bracket(k, -k, 7, 1));
  }
}
