#include <malloc.h>

#include <algorithm>
#include <random>

#include "doctest.h"
#include "hhm/hypersparse_matrix.hpp"
#include "oracle.hpp"

using hhm::EdgeTriple;
using hhm::HypersparseMatrix;
using hhm::Index;

namespace {

HypersparseMatrix make(Index n, std::vector<EdgeTriple> t) {
  return HypersparseMatrix::build(n, n, t);
}

}  // namespace

TEST_CASE("construction") {
  HypersparseMatrix ipv4(Index{1} << 32, Index{1} << 32);
  CHECK(ipv4.nnz() == 0);
  CHECK(ipv4.packed_keys());

  HypersparseMatrix ipv6(hhm::kMaxDimension, hhm::kMaxDimension);
  CHECK(ipv6.nnz() == 0);
  CHECK_FALSE(ipv6.packed_keys());

  CHECK_THROWS_AS(HypersparseMatrix(0, 5), hhm::InvalidDimensionError);
  CHECK_THROWS_AS(HypersparseMatrix(5, 0), hhm::InvalidDimensionError);
}

TEST_CASE("build combines duplicates") {
  auto a = make(10, {{1, 2, 5}, {1, 2, 3}});
  CHECK(a.nnz() == 1);
  CHECK(a.get(1, 2) == 8);

  CHECK(make(10, {}).nnz() == 0);

  auto b = make(10, {{1, 2, 5}, {3, 4, 7}});
  CHECK(b.nnz() == 2);
  CHECK(hhm::oracle::entries_of(b) == hhm::oracle::Entries{{{1, 2}, 5}, {{3, 4}, 7}});
}

TEST_CASE("build rejects out-of-bounds triples by position") {
  std::vector<EdgeTriple> t{{1, 1, 1}, {2, 2, 1}, {10, 0, 1}};
  try {
    HypersparseMatrix::build(10, 10, t);
    FAIL("expected IndexError");
  } catch (const hhm::IndexError& e) {
    CHECK(e.position() == 2);
  }
  std::vector<EdgeTriple> col_oob{{0, 10, 1}};
  CHECK_THROWS_AS(HypersparseMatrix::build(10, 10, col_oob), hhm::IndexError);
}

TEST_CASE("build reports overflow") {
  std::vector<EdgeTriple> t{{0, 0, INT64_MAX}, {0, 0, 1}};
  CHECK_THROWS_AS(HypersparseMatrix::build(4, 4, t), hhm::OverflowError);
  std::vector<EdgeTriple> neg{{0, 0, INT64_MIN}, {0, 0, -1}};
  CHECK_THROWS_AS(HypersparseMatrix::build(4, 4, neg), hhm::OverflowError);
}

TEST_CASE("ewise_add is a key-union merge") {
  auto a = make(10, {{0, 0, 1}, {5, 7, 2}});
  auto b = make(10, {{5, 7, 3}, {9, 1, 4}});
  const auto before_a = a;
  const auto before_b = b;
  auto c = hhm::ewise_add(a, b);
  CHECK(c == make(10, {{0, 0, 1}, {5, 7, 5}, {9, 1, 4}}));
  CHECK(a == before_a);
  CHECK(b == before_b);

  CHECK(hhm::ewise_add(a, HypersparseMatrix(10, 10)) == a);
  CHECK(hhm::ewise_add(a, b) == hhm::ewise_add(b, a));

  CHECK_THROWS_AS(hhm::ewise_add(a, HypersparseMatrix(10, 11)),
                  hhm::DimensionMismatchError);
}

TEST_CASE("add_assign") {
  auto a = make(10, {{1, 1, 2}});
  a.add_assign(make(10, {{1, 1, 3}}));
  CHECK(a == make(10, {{1, 1, 5}}));

  const auto snapshot = a;
  a.add_assign(HypersparseMatrix(10, 10));
  CHECK(a == snapshot);

  HypersparseMatrix empty(10, 10);
  const auto b = make(10, {{4, 4, 9}, {2, 3, -1}});
  empty.add_assign(b);
  CHECK(empty == b);

  SUBCASE("self addition doubles every value") {
    a.add_assign(a);
    CHECK(a == make(10, {{1, 1, 10}}));
  }
}

TEST_CASE("add_assign overflow leaves the target unchanged") {
  auto a = make(10, {{0, 0, 1}, {1, 1, INT64_MAX}});
  const auto snapshot = a;
  auto b = make(10, {{0, 0, 1}, {5, 5, 1}, {1, 1, 1}});
  CHECK_THROWS_AS(a.add_assign(b), hhm::OverflowError);
  CHECK(a == snapshot);
}

TEST_CASE("nnz counts stored entries including explicit zeros") {
  CHECK(HypersparseMatrix(10, 10).nnz() == 0);
  CHECK(make(10, {{1, 2, 5}, {1, 2, -5}}).nnz() == 1);
  CHECK(make(10, {{1, 2, 5}, {1, 2, -5}}).get(1, 2) == 0);
  CHECK(make(10, {{1, 2, 5}, {3, 4, 7}}).nnz() == 2);
}

TEST_CASE("clear") {
  std::vector<EdgeTriple> t;
  for (Index i = 0; i < 1000; ++i) t.push_back({i, i, 1});
  auto a = HypersparseMatrix::build(Index{1} << 20, Index{1} << 20, t);
  a.set_retained_capacity(64);
  REQUIRE(a.nnz() == 1000);
  a.clear();
  CHECK(a.nnz() == 0);
  CHECK(a.nrows() == Index{1} << 20);
  CHECK(a.ncols() == Index{1} << 20);
  a.clear();
  CHECK(a.nnz() == 0);

  const auto b = HypersparseMatrix::build(Index{1} << 20, Index{1} << 20,
                                          std::vector<EdgeTriple>{{3, 3, 3}});
  a.add_assign(b);
  CHECK(a == b);
}

TEST_CASE("extract_triples is sorted by (row, col)") {
  auto a = make(10, {{5, 7, 5}, {0, 0, 1}});
  CHECK(a.extract_triples() == std::vector<EdgeTriple>{{0, 0, 1}, {5, 7, 5}});
  CHECK(HypersparseMatrix(10, 10).extract_triples().empty());

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = HypersparseMatrix::build(
        64, 64, hhm::oracle::random_triples(rng, 200, 64));
    const auto t = m.extract_triples();
    CHECK(t.size() == m.nnz());
    CHECK(std::adjacent_find(t.begin(), t.end(), [](const auto& x, const auto& y) {
            return !(x.row < y.row || (x.row == y.row && x.col < y.col));
          }) == t.end());
    CHECK(HypersparseMatrix::build(64, 64, t) == m);
  }
}

TEST_CASE("equals") {
  auto a = make(10, {{1, 1, 4}});
  CHECK(a.equals(a));
  CHECK_FALSE(a.equals(HypersparseMatrix::build(10, 11, std::vector<EdgeTriple>{{1, 1, 4}})));
  CHECK_FALSE(make(10, {{1, 1, 0}}).equals(HypersparseMatrix(10, 10)));
  CHECK_FALSE(make(10, {{1, 1, 4}}).equals(make(10, {{1, 1, 5}})));
}

TEST_CASE("row and column sums") {
  auto a = make(10, {{1, 2, 5}, {1, 9, 3}, {4, 4, 7}});
  const auto rows = a.row_sums();
  CHECK(rows.size() == 2);
  CHECK(rows.at(1) == 8);
  CHECK(rows.at(4) == 7);
  CHECK(HypersparseMatrix(10, 10).row_sums().empty());

  std::mt19937_64 rng(11);
  const auto t = hhm::oracle::random_triples(rng, 500, 32);
  std::vector<EdgeTriple> transposed;
  for (const auto& e : t) transposed.push_back({e.col, e.row, e.val});
  CHECK(HypersparseMatrix::build(32, 32, transposed).col_sums() ==
        HypersparseMatrix::build(32, 32, t).row_sums());

  CHECK_THROWS_AS(make(10, {{1, 1, INT64_MAX}, {1, 2, 1}}).row_sums(), hhm::OverflowError);
}

TEST_CASE("wide keys address the full 64-bit index space") {
  const Index big = hhm::kMaxDimension;
  std::vector<EdgeTriple> t{{big - 1, big - 1, 2}, {Index{1} << 40, 3, 1},
                            {3, Index{1} << 40, 1}, {big - 1, big - 1, 3}};
  const auto m = HypersparseMatrix::build(big, big, t);
  CHECK_FALSE(m.packed_keys());
  CHECK(m.nnz() == 3);
  CHECK(m.get(big - 1, big - 1) == 5);
  CHECK(m.extract_triples().front() == EdgeTriple{3, Index{1} << 40, 1});

  // One past the packed extent switches representation; results agree.
  const Index n = (Index{1} << 32) + 1;
  std::vector<EdgeTriple> edge{{n - 1, 0, 1}, {0, n - 1, 1}};
  const auto w = HypersparseMatrix::build(n, n, edge);
  CHECK_FALSE(w.packed_keys());
  CHECK(w.get(n - 1, 0) == 1);
  CHECK(w.get(0, n - 1) == 1);
}

TEST_CASE("storage is proportional to entries, not dimensions") {
  constexpr std::size_t n = 100'000;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Index> any;
  std::vector<EdgeTriple> t(n);
  for (auto& e : t) e = {any(rng) % hhm::kMaxDimension, any(rng) % hhm::kMaxDimension, 1};

  const auto before = mallinfo2().uordblks;
  {
    const auto m = HypersparseMatrix::build(hhm::kMaxDimension, hhm::kMaxDimension, t);
    const auto during = mallinfo2().uordblks;
    CHECK(m.nnz() == n);
    // Wide entry is 24 bytes; allow the hash table's load factor and control bytes.
    CHECK(during - before < n * 128);
  }
}

TEST_CASE("floating-point monoid") {
  using FloatMatrix = hhm::BasicHypersparseMatrix<hhm::FloatPlus>;
  std::vector<hhm::BasicTriple<double>> t{{0, 0, 0.5}, {0, 0, 0.25}, {1, 1, 1e300}};
  auto m = FloatMatrix::build(4, 4, t);
  CHECK(m.get(0, 0) == 0.75);
  m.add_assign(m);
  CHECK(m.get(1, 1) == 2e300);
}

TEST_CASE("monoid laws on random matrices") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = HypersparseMatrix::build(16, 16, hhm::oracle::random_triples(rng, 40, 16));
    const auto b = HypersparseMatrix::build(16, 16, hhm::oracle::random_triples(rng, 40, 16));
    const auto c = HypersparseMatrix::build(16, 16, hhm::oracle::random_triples(rng, 40, 16));
    CHECK(hhm::ewise_add(a, b) == hhm::ewise_add(b, a));
    CHECK(hhm::ewise_add(hhm::ewise_add(a, b), c) == hhm::ewise_add(a, hhm::ewise_add(b, c)));

    auto keys = hhm::oracle::entries_of(a);
    for (const auto& [k, v] : hhm::oracle::entries_of(b)) keys.emplace(k, v);
    CHECK(hhm::ewise_add(a, b).nnz() == keys.size());
  }
}
