#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "chainrep/poset.hpp"
#include "oracles.hpp"

using namespace chainrep;

namespace {

  Poset relabel(Poset const& p, std::vector<Element> const& perm) {
    std::size_t const         n = p.size();
    std::vector<std::uint8_t> t(n * n);
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        t[perm[x] * n + perm[y]] = p.leq(x, y);
      }
    }
    return Poset(n, t);
  }

  std::size_t factorial(std::size_t n) {
    return n <= 1 ? 1 : n * factorial(n - 1);
  }

}  // namespace

TEST(Poset, FromRelationsTakesTransitiveClosure) {
  std::vector<ElementPair> rel{{0, 1}, {1, 2}};
  auto const               p = Poset::from_relations(3, rel);
  EXPECT_TRUE(p.leq(0, 2));
  EXPECT_FALSE(p.leq(2, 0));
  EXPECT_TRUE(p.lt(0, 1));
  EXPECT_EQ(covers(p), rel);
}

TEST(Poset, CycleIsRejected) {
  std::vector<ElementPair> rel{{0, 1}, {1, 2}, {2, 0}};
  EXPECT_THROW(Poset::from_relations(3, rel), std::invalid_argument);
  std::vector<ElementPair> bad{{0, 3}};
  EXPECT_THROW(Poset::from_relations(3, bad), std::out_of_range);
}

TEST(Poset, ChainsAndAntichains) {
  EXPECT_TRUE(is_chain(Poset::chain(4)));
  EXPECT_EQ(width(Poset::chain(4)), 1u);
  EXPECT_EQ(width(Poset::antichain(3)), 3u);
  EXPECT_FALSE(is_chain(Poset::antichain(2)));
  auto const sum = Poset::disjoint_sum(Poset::chain(2), Poset::chain(3));
  EXPECT_EQ(sum.size(), 5u);
  EXPECT_EQ(width(sum), 2u);
  EXPECT_THROW(width(Poset::antichain(0)), std::invalid_argument);
}

TEST(Poset, WidthMatchesBruteForce) {
  std::mt19937_64 gen(7);
  for (std::size_t k = 1; k <= 5; ++k) {
    for (auto const& p : enumerate_posets(k)) {
      std::vector<Element> perm(k);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), gen);
      auto const q = relabel(p, perm);
      EXPECT_EQ(width(q), oracle::width(q)) << canonical_form(p);
    }
  }
}

TEST(Poset, TwoChainPartition) {
  for (std::size_t k = 1; k <= 5; ++k) {
    for (auto const& p : enumerate_posets(k)) {
      if (oracle::width(p) > 2) {
        EXPECT_THROW(two_chain_partition(p), NotTwoChainCoverable);
        continue;
      }
      auto const cp = two_chain_partition(p);
      std::vector<Element> all = cp.left;
      all.insert(all.end(), cp.right.begin(), cp.right.end());
      std::sort(all.begin(), all.end());
      std::vector<Element> expected(k);
      std::iota(expected.begin(), expected.end(), 0);
      EXPECT_EQ(all, expected);
      for (auto const* c : {&cp.left, &cp.right}) {
        for (std::size_t i = 1; i < c->size(); ++i) {
          EXPECT_TRUE(p.lt((*c)[i - 1], (*c)[i]));
        }
      }
    }
  }
}

TEST(Poset, DownsetsAreOrdered) {
  EXPECT_EQ(downsets(Poset::antichain(4)).size(), 16u);
  EXPECT_EQ(downsets(Poset::chain(4)).size(), 5u);
  auto const ds = downsets(Poset::antichain(3));
  EXPECT_TRUE(std::is_sorted(ds.begin(), ds.end(), mask_order));
  EXPECT_EQ(ds.front(), 0u);
  EXPECT_EQ(ds.back(), 7u);
  EXPECT_TRUE(mask_order(0b100, 0b011));  // fewer bits first
  EXPECT_TRUE(mask_order(0b001, 0b010));
  EXPECT_THROW(downsets(Poset::antichain(5), 10), LimitExceeded);
}

TEST(Poset, EnumerationCounts) {
  std::vector<std::size_t> const expected{1, 2, 5, 16, 63, 318};
  for (std::size_t k = 1; k <= 6; ++k) {
    EXPECT_EQ(enumerate_posets(k).size(), expected[k - 1]) << k;
  }
}

TEST(Poset, EnumerationMatchesBruteForceClasses) {
  for (std::size_t k = 1; k <= 4; ++k) {
    EXPECT_EQ(enumerate_posets(k).size(), oracle::iso_classes(k)) << k;
  }
}

// Sum over classes of n!/|Aut(P)| counts labeled posets.
TEST(Poset, EnumerationCoversEveryLabeledPoset) {
  EXPECT_EQ(oracle::labeled_posets(4).size(), 219u);
  for (auto [n, labeled] : {std::pair{4u, 219u}, std::pair{5u, 4231u}}) {
    std::size_t total = 0;
    for (auto const& p : enumerate_posets(n)) {
      total += factorial(n) / oracle::automorphisms(p);
    }
    EXPECT_EQ(total, labeled) << n;
  }
}

TEST(Poset, EnumerationIsDistinctAndOrdered) {
  auto const ps = enumerate_posets(5);
  std::vector<std::string> forms;
  for (auto const& p : ps) {
    forms.push_back(canonical_form(p));
    EXPECT_EQ(from_canonical_form(forms.back()), p);
  }
  EXPECT_TRUE(std::is_sorted(forms.rbegin(), forms.rend()));
  EXPECT_EQ(std::set<std::string>(forms.begin(), forms.end()).size(),
            forms.size());
  EXPECT_TRUE(is_chain(ps.front()));
}

TEST(Poset, CanonicalFormIgnoresLabels) {
  std::mt19937_64 gen(11);
  for (auto const& p : enumerate_posets(5)) {
    std::vector<Element> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 0; i < 3; ++i) {
      std::shuffle(perm.begin(), perm.end(), gen);
      EXPECT_EQ(canonical_form(relabel(p, perm)), canonical_form(p));
    }
  }
}

TEST(Poset, EnumerationBounds) {
  EXPECT_THROW(enumerate_posets(0), std::invalid_argument);
  EXPECT_THROW(enumerate_posets(7), LimitExceeded);
  EXPECT_THROW(enumerate_posets(4, 3), LimitExceeded);
}

TEST(Poset, Induced) {
  auto const           p = Poset::chain(4);
  std::vector<Element> keep{0, 2};
  auto const           q = p.induced(keep);
  EXPECT_EQ(q.size(), 2u);
  EXPECT_TRUE(q.lt(0, 1));
}
