#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "chainrep/dist_lattice.hpp"
#include "chainrep/colored_chain.hpp"

namespace fixture {

  using chainrep::DistLattice;
  using chainrep::Element;
  using chainrep::ElementPair;
  using chainrep::LatticePtr;

  inline LatticePtr ptr(DistLattice d) {
    return std::make_shared<DistLattice const>(std::move(d));
  }

  inline std::vector<ElementPair> chain_covers(std::size_t n) {
    std::vector<ElementPair> c;
    for (Element i = 0; i + 1 < n; ++i) {
      c.emplace_back(i, i + 1);
    }
    return c;
  }

  inline DistLattice chain(std::size_t n) {
    return DistLattice::from_covers(n, chain_covers(n));
  }

  // 0 < a, b < 1
  inline DistLattice square() {
    std::vector<ElementPair> const covers{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    return DistLattice::from_covers(4, covers, {"0", "a", "b", "1"});
  }

  // 3 x 3 grid; join-irreducibles a1 < a2 and b1 < b2, e = a1 v b1, and the
  // coatoms cl = a2 v b1, cr = a1 v b2.
  inline constexpr Element a1 = 1, b1 = 2, a2 = 3, e = 4, b2 = 5, cl = 6,
                           cr = 7, grid_top = 8;

  inline std::vector<ElementPair> grid_covers() {
    return {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 4}, {2, 5},
            {3, 6}, {4, 6}, {4, 7}, {5, 7}, {6, 8}, {7, 8}};
  }

  inline DistLattice grid() {
    return DistLattice::from_covers(
        9, grid_covers(), {"0", "a1", "b1", "a2", "e", "b2", "cl", "cr", "1"});
  }

  // Boolean lattice 2^3.
  inline DistLattice cube() {
    std::vector<ElementPair> const covers{{0, 1}, {0, 2}, {0, 3}, {1, 4},
                                          {1, 5}, {2, 4}, {2, 6}, {3, 5},
                                          {3, 6}, {4, 7}, {5, 7}, {6, 7}};
    return DistLattice::from_covers(
        8, covers, {"0", "a", "b", "c", "ab", "ac", "bc", "1"});
  }

  inline std::vector<ElementPair> m3_covers() {
    return {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}};
  }

  // 0 < a < b < 1, 0 < c < 1
  inline std::vector<ElementPair> n5_covers() {
    return {{0, 1}, {1, 2}, {0, 3}, {2, 4}, {3, 4}};
  }

}  // namespace fixture
