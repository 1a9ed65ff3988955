#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace chainrep {

  // Base of every domain error raised by the library. Index and argument
  // errors use std::out_of_range / std::invalid_argument directly.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class NotALattice : public Error {
   public:
    NotALattice(std::size_t x, std::size_t y, std::string const& what)
        : Error(what), pair_{x, y} {}
    std::array<std::size_t, 2> const& pair() const noexcept { return pair_; }

   private:
    std::array<std::size_t, 2> pair_;
  };

  class NotDistributive : public Error {
   public:
    NotDistributive(std::size_t x, std::size_t y, std::size_t z)
        : Error("not distributive: x^(y v z) != (x^y) v (x^z) for (x,y,z) = ("
                + std::to_string(x) + "," + std::to_string(y) + ","
                + std::to_string(z) + ")"),
          witness_{x, y, z} {}
    std::array<std::size_t, 3> const& witness() const noexcept {
      return witness_;
    }

   private:
    std::array<std::size_t, 3> witness_;
  };

  class NotTwoChainCoverable : public Error {
   public:
    using Error::Error;
  };

  // A size or search bound was exceeded.
  class LimitExceeded : public Error {
   public:
    using Error::Error;
  };

  enum class Clause { inclusion, planarity, coatom_condition, membership };

  inline char const* to_string(Clause c) noexcept {
    switch (c) {
      case Clause::inclusion: return "inclusion J+(D) <= Q";
      case Clause::planarity: return "planarity";
      case Clause::coatom_condition: return "at most one join-reducible coatom";
      case Clause::membership: return "element membership";
    }
    return "unknown";
  }

  class PreconditionFailed : public Error {
   public:
    PreconditionFailed(Clause clause, std::string const& detail)
        : Error(std::string("precondition failed (") + to_string(clause)
                + "): " + detail),
          clause_(clause) {}
    Clause clause() const noexcept { return clause_; }

   private:
    Clause clause_;
  };

  // Raised when a search that is claimed to always succeed comes back empty.
  class NotFound : public Error {
   public:
    using Error::Error;
  };

}  // namespace chainrep
