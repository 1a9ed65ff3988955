#pragma once

// Finite posets on dense indices 0..n-1, plus the handful of order-theoretic
// algorithms the rest of the library needs: Hasse covers, width (Dilworth via
// bipartite matching), two-chain partitions, downset enumeration and
// enumeration of all posets of a given size up to isomorphism.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chainrep/error.hpp"

namespace chainrep {

  using Element     = std::size_t;
  using ElementPair = std::pair<Element, Element>;

  // Downsets and other subsets of small posets are stored as 64-bit masks.
  using Mask                             = std::uint64_t;
  inline constexpr std::size_t kMaskBits = 64;

  class Poset {
   public:
    Poset() = default;

    // `leq` is a row-major n*n table; leq[x*n+y] != 0 iff x <= y.
    Poset(std::size_t n, std::vector<std::uint8_t> table)
        : n_(n), leq_(std::move(table)) {
      if (leq_.size() != n_ * n_) {
        throw std::invalid_argument("order table must have n*n entries");
      }
      for (Element x = 0; x < n_; ++x) {
        if (!leq(x, x)) {
          throw std::invalid_argument("order is not reflexive at "
                                      + std::to_string(x));
        }
        for (Element y = x + 1; y < n_; ++y) {
          if (leq(x, y) && leq(y, x)) {
            throw std::invalid_argument("order is not antisymmetric: "
                                        + std::to_string(x) + " and "
                                        + std::to_string(y));
          }
        }
      }
      for (Element x = 0; x < n_; ++x) {
        for (Element y = 0; y < n_; ++y) {
          if (!leq(x, y)) {
            continue;
          }
          for (Element z = 0; z < n_; ++z) {
            if (leq(y, z) && !leq(x, z)) {
              throw std::invalid_argument("order is not transitive");
            }
          }
        }
      }
    }

    // Reflexive-transitive closure of `relations`. Pairs need not be covers.
    static Poset from_relations(std::size_t                  n,
                                std::span<ElementPair const> relations) {
      std::vector<std::uint8_t> leq(n * n, 0);
      for (Element x = 0; x < n; ++x) {
        leq[x * n + x] = 1;
      }
      for (auto [x, y] : relations) {
        if (x >= n || y >= n) {
          throw std::out_of_range("relation (" + std::to_string(x) + ","
                                  + std::to_string(y) + ") out of range");
        }
        leq[x * n + y] = 1;
      }
      // Warshall
      for (Element k = 0; k < n; ++k) {
        for (Element i = 0; i < n; ++i) {
          if (!leq[i * n + k]) {
            continue;
          }
          for (Element j = 0; j < n; ++j) {
            leq[i * n + j] |= leq[k * n + j];
          }
        }
      }
      return Poset(n, std::move(leq));
    }

    static Poset chain(std::size_t n) {
      std::vector<std::uint8_t> leq(n * n, 0);
      for (Element x = 0; x < n; ++x) {
        for (Element y = x; y < n; ++y) {
          leq[x * n + y] = 1;
        }
      }
      return Poset(n, std::move(leq));
    }

    static Poset antichain(std::size_t n) {
      std::vector<std::uint8_t> leq(n * n, 0);
      for (Element x = 0; x < n; ++x) {
        leq[x * n + x] = 1;
      }
      return Poset(n, std::move(leq));
    }

    // Disjoint union; elements of `b` are shifted by a.size().
    static Poset disjoint_sum(Poset const& a, Poset const& b) {
      std::size_t const         n = a.size() + b.size();
      std::vector<std::uint8_t> leq(n * n, 0);
      for (Element x = 0; x < a.size(); ++x) {
        for (Element y = 0; y < a.size(); ++y) {
          leq[x * n + y] = a.leq(x, y);
        }
      }
      for (Element x = 0; x < b.size(); ++x) {
        for (Element y = 0; y < b.size(); ++y) {
          leq[(x + a.size()) * n + y + a.size()] = b.leq(x, y);
        }
      }
      return Poset(n, std::move(leq));
    }

    std::size_t size() const noexcept { return n_; }
    bool        empty() const noexcept { return n_ == 0; }

    bool leq(Element x, Element y) const noexcept {
      return leq_[x * n_ + y] != 0;
    }
    bool lt(Element x, Element y) const noexcept {
      return x != y && leq(x, y);
    }
    bool comparable(Element x, Element y) const noexcept {
      return leq(x, y) || leq(y, x);
    }

    // Sub-poset on `elements`, reindexed in the given order.
    Poset induced(std::span<Element const> elements) const {
      std::size_t const         m = elements.size();
      std::vector<std::uint8_t> leq(m * m, 0);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          leq[i * m + j] = this->leq(elements[i], elements[j]);
        }
      }
      return Poset(m, std::move(leq));
    }

    std::vector<std::uint8_t> const& table() const noexcept { return leq_; }

    friend bool operator==(Poset const&, Poset const&) = default;

   private:
    std::size_t               n_ = 0;
    std::vector<std::uint8_t> leq_;
  };

  // All covering pairs (x, y), x < y with nothing strictly between, in
  // lexicographic order.
  inline std::vector<ElementPair> covers(Poset const& p) {
    std::vector<ElementPair> result;
    std::size_t const        n = p.size();
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        if (!p.lt(x, y)) {
          continue;
        }
        bool between = false;
        for (Element z = 0; z < n && !between; ++z) {
          between = p.lt(x, z) && p.lt(z, y);
        }
        if (!between) {
          result.emplace_back(x, y);
        }
      }
    }
    return result;
  }

  inline bool is_chain(Poset const& p) {
    for (Element x = 0; x < p.size(); ++x) {
      for (Element y = x + 1; y < p.size(); ++y) {
        if (!p.comparable(x, y)) {
          return false;
        }
      }
    }
    return true;
  }

  // Size of a maximum antichain. By Dilworth this equals the size of a
  // minimum chain cover, which is n minus a maximum matching in the bipartite
  // graph {x -> y : x < y}.
  inline std::size_t width(Poset const& p) {
    std::size_t const n = p.size();
    if (n == 0) {
      throw std::invalid_argument("width of the empty poset is undefined");
    }
    std::vector<std::size_t> match_right(n, n);
    std::vector<char>        seen;

    std::function<bool(Element)> augment = [&](Element x) {
      for (Element y = 0; y < n; ++y) {
        if (!p.lt(x, y) || seen[y]) {
          continue;
        }
        seen[y] = 1;
        if (match_right[y] == n || augment(match_right[y])) {
          match_right[y] = x;
          return true;
        }
      }
      return false;
    };

    std::size_t matching = 0;
    for (Element x = 0; x < n; ++x) {
      seen.assign(n, 0);
      if (augment(x)) {
        ++matching;
      }
    }
    return n - matching;
  }

  struct ChainPair {
    std::vector<Element> left;
    std::vector<Element> right;
  };

  // Splits p into two chains. Two elements must land in different chains
  // exactly when they are incomparable, so this is a 2-colouring of the
  // incomparability graph. Components are coloured in order of their least
  // element, which always goes to `left`. Each chain is returned sorted
  // bottom to top.
  inline ChainPair two_chain_partition(Poset const& p) {
    std::size_t const n = p.size();
    constexpr int     unassigned = -1;
    std::vector<int>  side(n, unassigned);
    std::vector<Element> queue;
    for (Element start = 0; start < n; ++start) {
      if (side[start] != unassigned) {
        continue;
      }
      side[start] = 0;
      queue.assign(1, start);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        Element const x = queue[head];
        for (Element y = 0; y < n; ++y) {
          if (y == x || p.comparable(x, y)) {
            continue;
          }
          if (side[y] == unassigned) {
            side[y] = 1 - side[x];
            queue.push_back(y);
          } else if (side[y] == side[x]) {
            throw NotTwoChainCoverable(
                "poset has width > 2; no partition into two chains");
          }
        }
      }
    }
    ChainPair result;
    for (Element x = 0; x < n; ++x) {
      (side[x] == 0 ? result.left : result.right).push_back(x);
    }
    auto by_order = [&p](Element a, Element b) { return p.lt(a, b); };
    std::sort(result.left.begin(), result.left.end(), by_order);
    std::sort(result.right.begin(), result.right.end(), by_order);
    return result;
  }

  // Canonical ordering of subsets: by cardinality, then by mask value.
  inline bool mask_order(Mask a, Mask b) noexcept {
    auto const pa = std::popcount(a);
    auto const pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  }

  // All down-closed subsets of p as bit masks, in mask_order (so the empty
  // set comes first and p itself last).
  inline std::vector<Mask> downsets(Poset const& p,
                                    std::size_t  limit = std::size_t(1) << 24) {
    std::size_t const n = p.size();
    if (n > kMaskBits) {
      throw LimitExceeded("downsets: poset has more than 64 elements");
    }
    std::vector<Mask> up(n, 0);  // strict upper sets
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        if (p.lt(x, y)) {
          up[x] |= Mask(1) << y;
        }
      }
    }
    // Elements ordered so that every element comes after everything above it.
    std::vector<Element> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
      return std::popcount(up[a]) < std::popcount(up[b]);
    });

    std::vector<Mask>                       result;
    std::function<void(std::size_t, Mask)> rec = [&](std::size_t i, Mask m) {
      if (i == n) {
        if (result.size() == limit) {
          throw LimitExceeded("downsets: more than " + std::to_string(limit)
                              + " downsets");
        }
        result.push_back(m);
        return;
      }
      Element const x = order[i];
      if ((m & up[x]) != 0) {
        rec(i + 1, m | (Mask(1) << x));
      } else {
        rec(i + 1, m);
        rec(i + 1, m | (Mask(1) << x));
      }
    };
    rec(0, 0);
    std::sort(result.begin(), result.end(), mask_order);
    return result;
  }

  namespace detail {
    inline std::string relabelled_table(Poset const&              p,
                                        std::vector<Element> const& perm) {
      // perm[new] = old
      std::size_t const n = p.size();
      std::string       s(n * n, '0');
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          s[i * n + j] = p.leq(perm[i], perm[j]) ? '1' : '0';
        }
      }
      return s;
    }
  }  // namespace detail

  inline constexpr std::size_t kCanonicalFormMaxSize = 7;

  // Lexicographically largest order table over all relabellings. Two posets
  // are isomorphic iff their canonical forms agree. Factorial cost, so it is
  // only offered for small posets.
  inline std::string canonical_form(Poset const& p) {
    if (p.size() > kCanonicalFormMaxSize) {
      throw LimitExceeded("canonical_form: poset too large");
    }
    std::vector<Element> perm(p.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
      auto s = detail::relabelled_table(p, perm);
      if (s > best) {
        best = std::move(s);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }

  inline Poset from_canonical_form(std::string const& form) {
    std::size_t n = 0;
    while (n * n < form.size()) {
      ++n;
    }
    std::vector<std::uint8_t> leq(form.size());
    std::transform(form.begin(), form.end(), leq.begin(), [](char c) {
      return static_cast<std::uint8_t>(c == '1');
    });
    return Poset(n, std::move(leq));
  }

  inline constexpr std::size_t kDefaultEnumerationCap = 6;

  // Every poset on exactly k elements, one per isomorphism class, labelled by
  // its canonical form, in decreasing canonical-form order (the chain
  // first). Posets on k elements are obtained from those on k-1 by adding a
  // new maximal element above some downset.
  inline std::vector<Poset> enumerate_posets(
      std::size_t k,
      std::size_t cap = kDefaultEnumerationCap) {
    if (k == 0) {
      throw std::invalid_argument("enumerate_posets: k must be positive");
    }
    if (k > cap || k > kCanonicalFormMaxSize) {
      throw LimitExceeded("enumerate_posets: k=" + std::to_string(k)
                          + " exceeds the cap of " + std::to_string(cap));
    }
    std::set<std::string> level{canonical_form(Poset::chain(1))};
    for (std::size_t size = 2; size <= k; ++size) {
      std::set<std::string> next;
      for (auto const& form : level) {
        Poset const p = from_canonical_form(form);
        for (Mask down : downsets(p)) {
          std::vector<std::uint8_t> leq(size * size, 0);
          for (Element x = 0; x + 1 < size; ++x) {
            for (Element y = 0; y + 1 < size; ++y) {
              leq[x * size + y] = p.leq(x, y);
            }
            leq[x * size + size - 1] = (down >> x) & 1;
          }
          leq[size * size - 1] = 1;
          next.insert(canonical_form(Poset(size, std::move(leq))));
        }
      }
      level = std::move(next);
    }
    std::vector<Poset> result;
    result.reserve(level.size());
    for (auto it = level.rbegin(); it != level.rend(); ++it) {
      result.push_back(from_canonical_form(*it));
    }
    return result;
  }

}  // namespace chainrep
