#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chainrep/error.hpp"
#include "chainrep/poset.hpp"

namespace chainrep {

  struct LatticeLimits {
    // Validation is exhaustive over all triples, so keep this modest.
    std::size_t max_size = 512;
  };

  // A finite distributive lattice. Element ids are the caller's ids (for
  // from_covers) or the canonical downset order (for birkhoff). Internally
  // every element is also stored as the set of join-irreducibles below it, a
  // bit mask indexed by position in join_irreducibles(); join and meet are
  // union and intersection of these masks.
  class DistLattice {
   public:
    DistLattice() : DistLattice(1, std::vector<std::uint8_t>{1}, {}, {}) {}

    // Builds the lattice whose order is the reflexive-transitive closure of
    // `covers`. Throws std::invalid_argument on a cyclic relation,
    // NotALattice when some pair lacks a join or meet and NotDistributive
    // (with a witness triple) otherwise.
    static DistLattice from_covers(std::size_t                  n,
                                   std::span<ElementPair const> covers,
                                   std::vector<std::string>     names  = {},
                                   LatticeLimits                limits = {}) {
      if (n == 0) {
        throw std::invalid_argument("a lattice has at least one element");
      }
      if (n > limits.max_size) {
        throw LimitExceeded("lattice has " + std::to_string(n)
                            + " elements; the cap is "
                            + std::to_string(limits.max_size));
      }
      Poset const order = Poset::from_relations(n, covers);
      return DistLattice(n, order.table(), std::move(names), limits);
    }

    friend DistLattice birkhoff(Poset const& p, LatticeLimits limits);

    std::size_t size() const noexcept { return n_; }
    Element     bottom() const noexcept { return bottom_; }
    Element     top() const noexcept { return top_; }

    Element join(Element x, Element y) const { return join_[x * n_ + y]; }
    Element meet(Element x, Element y) const { return meet_[x * n_ + y]; }
    bool    leq(Element x, Element y) const {
      return (mask_[x] & ~mask_[y]) == 0;
    }
    bool lt(Element x, Element y) const { return x != y && leq(x, y); }
    bool comparable(Element x, Element y) const {
      return leq(x, y) || leq(y, x);
    }

    Element join(std::span<Element const> xs) const {
      Element r = bottom_;
      for (Element x : xs) {
        r = join(r, x);
      }
      return r;
    }

    // J(D), sorted by id.
    std::vector<Element> const& join_irreducibles() const noexcept {
      return ji_;
    }
    // The order induced on J(D); index i is join_irreducibles()[i].
    Poset const& ji_poset() const noexcept { return ji_poset_; }
    bool         is_join_irreducible(Element x) const {
      return ji_index_[x] != kNone;
    }
    std::size_t ji_index(Element x) const { return ji_index_[x]; }

    Mask    downset_mask(Element x) const { return mask_[x]; }
    Element from_mask(Mask m) const {
      auto it = by_mask_.find(m);
      if (it == by_mask_.end()) {
        throw std::invalid_argument("mask is not a downset of J(D)");
      }
      return it->second;
    }

    std::vector<Element> const& lower_covers(Element x) const {
      return lower_covers_[x];
    }
    std::vector<Element> const& upper_covers(Element x) const {
      return upper_covers_[x];
    }
    // Hasse diagram edges (lower, upper), lexicographic.
    std::vector<ElementPair> covers() const {
      std::vector<ElementPair> result;
      for (Element x = 0; x < n_; ++x) {
        for (Element y : upper_covers_[x]) {
          result.emplace_back(x, y);
        }
      }
      return result;
    }

    std::vector<std::string> const& names() const noexcept { return names_; }
    std::string                     name(Element x) const {
      return names_.empty() ? std::to_string(x) : names_[x];
    }

    void check_element(Element x) const {
      if (x >= n_) {
        throw std::out_of_range("element " + std::to_string(x)
                                + " is not in a lattice of size "
                                + std::to_string(n_));
      }
    }

    friend bool operator==(DistLattice const& a, DistLattice const& b) {
      return a.n_ == b.n_ && a.join_ == b.join_ && a.meet_ == b.meet_;
    }

   private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    DistLattice(std::size_t                      n,
                std::vector<std::uint8_t> const& leq,
                std::vector<std::string>         names,
                LatticeLimits                    limits)
        : n_(n), names_(std::move(names)) {
      if (!names_.empty() && names_.size() != n_) {
        throw std::invalid_argument("names: expected " + std::to_string(n_)
                                    + " entries");
      }
      if (n_ > limits.max_size) {
        throw LimitExceeded("lattice exceeds the size cap");
      }
      auto le = [&](Element x, Element y) { return leq[x * n_ + y] != 0; };

      join_.assign(n_ * n_, 0);
      meet_.assign(n_ * n_, 0);
      for (Element x = 0; x < n_; ++x) {
        for (Element y = x; y < n_; ++y) {
          auto const j = bound(x, y, le, /*upper=*/true);
          auto const m = bound(x, y, le, /*upper=*/false);
          join_[x * n_ + y] = join_[y * n_ + x] = j;
          meet_[x * n_ + y] = meet_[y * n_ + x] = m;
        }
      }
      bottom_ = top_ = 0;
      for (Element x = 0; x < n_; ++x) {
        bottom_ = meet_[bottom_ * n_ + x];
        top_    = join_[top_ * n_ + x];
      }
      for (Element x = 0; x < n_; ++x) {
        for (Element y = 0; y < n_; ++y) {
          for (Element z = 0; z < n_; ++z) {
            Element const lhs = meet_[x * n_ + join_[y * n_ + z]];
            Element const rhs
                = join_[meet_[x * n_ + y] * n_ + meet_[x * n_ + z]];
            if (lhs != rhs) {
              throw NotDistributive(x, y, z);
            }
          }
        }
      }

      lower_covers_.assign(n_, {});
      upper_covers_.assign(n_, {});
      for (Element x = 0; x < n_; ++x) {
        for (Element y = 0; y < n_; ++y) {
          if (x == y || !le(x, y)) {
            continue;
          }
          bool between = false;
          for (Element z = 0; z < n_ && !between; ++z) {
            between = z != x && z != y && le(x, z) && le(z, y);
          }
          if (!between) {
            upper_covers_[x].push_back(y);
            lower_covers_[y].push_back(x);
          }
        }
      }

      ji_index_.assign(n_, kNone);
      for (Element x = 0; x < n_; ++x) {
        if (lower_covers_[x].size() == 1) {
          ji_index_[x] = ji_.size();
          ji_.push_back(x);
        }
      }
      if (ji_.size() > kMaskBits) {
        throw LimitExceeded("more than 64 join-irreducible elements");
      }
      ji_poset_ = Poset(ji_.size(), [&] {
        std::vector<std::uint8_t> t(ji_.size() * ji_.size());
        for (std::size_t i = 0; i < ji_.size(); ++i) {
          for (std::size_t j = 0; j < ji_.size(); ++j) {
            t[i * ji_.size() + j] = le(ji_[i], ji_[j]);
          }
        }
        return t;
      }());

      mask_.assign(n_, 0);
      for (Element x = 0; x < n_; ++x) {
        for (std::size_t i = 0; i < ji_.size(); ++i) {
          if (le(ji_[i], x)) {
            mask_[x] |= Mask(1) << i;
          }
        }
        if (!by_mask_.emplace(mask_[x], x).second) {
          // Unreachable for a distributive lattice.
          throw Error("two elements share the same join-irreducible support");
        }
      }
    }

    template <typename Le>
    Element bound(Element x, Element y, Le const& le, bool upper) const {
      auto above = [&](Element a, Element b) {
        return upper ? le(a, b) : le(b, a);
      };
      Element best = n_;
      for (Element z = 0; z < n_; ++z) {
        if (above(x, z) && above(y, z) && (best == n_ || above(z, best))) {
          best = z;
        }
      }
      for (Element z = 0; z < n_ && best != n_; ++z) {
        if (above(x, z) && above(y, z) && !above(best, z)) {
          best = n_;
        }
      }
      if (best == n_) {
        throw NotALattice(x, y,
                          std::string("not a lattice: ") + std::to_string(x)
                              + " and " + std::to_string(y) + " have no "
                              + (upper ? "least upper" : "greatest lower")
                              + " bound");
      }
      return best;
    }

    std::size_t                       n_ = 0;
    Element                           bottom_ = 0;
    Element                           top_    = 0;
    std::vector<Element>              join_;
    std::vector<Element>              meet_;
    std::vector<Element>              ji_;
    std::vector<std::size_t>          ji_index_;
    Poset                             ji_poset_;
    std::vector<Mask>                 mask_;
    std::unordered_map<Mask, Element> by_mask_;
    std::vector<std::vector<Element>> lower_covers_;
    std::vector<std::vector<Element>> upper_covers_;
    std::vector<std::string>          names_;
  };

  // The lattice of downsets of p ordered by inclusion. Element ids follow
  // mask_order of the downsets, so 0 is the empty downset and size()-1 is p.
  inline DistLattice birkhoff(Poset const& p, LatticeLimits limits = {}) {
    auto const        downs = downsets(p, limits.max_size + 1);
    std::size_t const n     = downs.size();
    if (n > limits.max_size) {
      throw LimitExceeded("birkhoff: more than " + std::to_string(limits.max_size)
                          + " downsets");
    }
    std::vector<std::uint8_t> leq(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        leq[i * n + j] = (downs[i] & ~downs[j]) == 0;
      }
    }
    return DistLattice(n, leq, {}, limits);
  }

  struct JSets {
    std::vector<Element> j;      // J(D)
    std::vector<Element> j0;     // J(D) + 0
    std::vector<Element> jplus;  // J(D) + 0 + 1
  };

  inline JSets j_sets(DistLattice const& d) {
    JSets r;
    r.j  = d.join_irreducibles();
    r.j0 = r.j;
    r.j0.push_back(d.bottom());
    std::sort(r.j0.begin(), r.j0.end());
    r.jplus = r.j0;
    if (!std::binary_search(r.jplus.begin(), r.jplus.end(), d.top())) {
      r.jplus.push_back(d.top());
      std::sort(r.jplus.begin(), r.jplus.end());
    }
    return r;
  }

  struct CoatomReport {
    std::vector<Element> coatoms;
    std::vector<Element> join_reducible;
  };

  // Coatoms are the lower covers of the top. A coatom is join-reducible when
  // it lies outside J_0(D); the bottom of the two-element chain is a coatom
  // but, being the empty join, does not count as join-reducible.
  inline CoatomReport coatom_report(DistLattice const& d) {
    CoatomReport r;
    r.coatoms = d.lower_covers(d.top());
    std::sort(r.coatoms.begin(), r.coatoms.end());
    for (Element c : r.coatoms) {
      if (!d.is_join_irreducible(c) && c != d.bottom()) {
        r.join_reducible.push_back(c);
      }
    }
    return r;
  }

  // Planar means width(J(D)) <= 2. A non-planar distributive lattice has a
  // three-element antichain of join-irreducibles; the converse is standard.
  inline bool is_planar(DistLattice const& d) {
    return d.ji_poset().empty() || width(d.ji_poset()) <= 2;
  }

  struct RepresentabilityReport {
    bool fully_chain_rep = false;
    bool fully_a_rep     = false;
    bool fully_ae_cond   = false;

    friend bool operator==(RepresentabilityReport const&,
                           RepresentabilityReport const&)
        = default;
  };

  inline RepresentabilityReport representability_report(DistLattice const& d) {
    bool const planar  = is_planar(d);
    auto const coatoms = coatom_report(d);
    RepresentabilityReport r;
    r.fully_chain_rep = planar && coatoms.join_reducible.size() <= 1;
    r.fully_ae_cond   = r.fully_chain_rep;
    r.fully_a_rep     = planar && (d.size() == 1 || coatoms.coatoms.size() == 1);
    return r;
  }

  // Join-primeness of join-irreducibles: if u <= parts[0] v ... v parts[k-1]
  // then u <= parts[i] for some i. Returns the least such i.
  inline std::size_t join_prime_witness(DistLattice const&        d,
                                        Element                   u,
                                        std::span<Element const> parts) {
    d.check_element(u);
    if (!d.is_join_irreducible(u)) {
      throw std::invalid_argument("join_prime_witness: "
                                  + std::to_string(u)
                                  + " is not join-irreducible");
    }
    for (Element x : parts) {
      d.check_element(x);
    }
    if (!d.leq(u, d.join(parts))) {
      throw std::invalid_argument(
          "join_prime_witness: element is not below the join of the parts");
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (d.leq(u, parts[i])) {
        return i;
      }
    }
    throw Error("join_prime_witness: no part lies above a join-irreducible "
                "below their join; the lattice is not distributive");
  }

  // Length of a longest chain in the ideal of x. Distributive lattices are
  // graded by the number of join-irreducibles below an element.
  inline std::size_t height(DistLattice const& d, Element x) {
    d.check_element(x);
    return static_cast<std::size_t>(std::popcount(d.downset_mask(x)));
  }

}  // namespace chainrep
