#pragma once

// Corpus runs: every poset up to a size bound, its Birkhoff lattice, and the
// property suites below applied to each instance. Instances run in a thread
// pool; the report is assembled in instance order and carries no timings, so
// a fixed seed gives identical output.
//
// Suites and their checks:
//   order           covers_closure, width_chain, two_chain_partition,
//                   downsets_closed
//   lattice         ji_decomposition, birkhoff_roundtrip, height
//   join_prime      witness
//   planar          cover_degree, join_supports, support_lemmas
//   representation  srep, edge_count and the six verify_representation
//                   checks (the first being |A| = |C|)

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "chainrep/algebra.hpp"
#include "chainrep/colored_chain.hpp"
#include "chainrep/congruence.hpp"
#include "chainrep/dist_lattice.hpp"
#include "chainrep/io.hpp"
#include "chainrep/planar.hpp"
#include "chainrep/poset.hpp"

namespace chainrep {

  inline constexpr std::size_t kDefaultCorpusCap = 5;

  struct CorpusConfig {
    std::size_t   max_ji           = kDefaultCorpusCap;
    std::size_t   cap              = kDefaultCorpusCap;
    std::uint64_t seed             = 1;
    std::size_t   jobs             = 1;
    std::size_t   exhaustive_limit = 12;   // |D \ J+| up to this: all Q
    std::size_t   samples          = 200;  // otherwise this many distinct Q
  };

  struct Tally {
    std::size_t checked = 0;
    std::size_t failed  = 0;
    std::string first_failure;

    void record(bool ok, std::string const& what) {
      ++checked;
      if (!ok && failed++ == 0) {
        first_failure = what;
      }
    }
    void merge(Tally const& other) {
      if (other.failed > 0 && failed == 0) {
        first_failure = other.first_failure;
      }
      checked += other.checked;
      failed += other.failed;
    }
    bool passed() const noexcept { return failed == 0; }
  };

  // Keyed "suite.check".
  using Tallies = std::map<std::string, Tally>;

  struct QRun {
    std::vector<Element> q;
    std::size_t          edges          = 0;
    std::size_t          expected_edges = 0;
    std::size_t          carrier        = 0;
    bool                 passed         = false;
  };

  struct InstanceReport {
    std::size_t            index = 0;
    std::string            poset;  // canonical form of J(D)
    std::size_t            ji_count     = 0;
    std::size_t            lattice_size = 0;
    bool                   planar       = false;
    std::size_t            coatoms      = 0;
    std::size_t            jr_coatoms   = 0;
    RepresentabilityReport verdicts;
    bool                   sampled = false;
    std::uint64_t          q_seed  = 0;
    std::vector<QRun>      runs;
    Tallies                tallies;
  };

  struct CorpusReport {
    CorpusConfig                config;
    std::vector<std::size_t>    posets_per_size;  // index k-1
    std::vector<InstanceReport> instances;
    Tallies                     suites;

    std::size_t posets() const noexcept { return instances.size(); }
    bool        passed() const {
      return std::all_of(suites.begin(), suites.end(),
                         [](auto const& kv) { return kv.second.passed(); });
    }
    // True when every check whose key starts with `prefix` passed and at
    // least one ran.
    bool passed(std::string const& prefix) const {
      std::size_t ran = 0;
      for (auto const& [key, t] : suites) {
        if (key.compare(0, prefix.size(), prefix) == 0) {
          if (!t.passed()) {
            return false;
          }
          ran += t.checked;
        }
      }
      return ran > 0;
    }
  };

  namespace detail {
    inline std::string ids(std::vector<Element> const& xs) {
      std::string r = "{";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        r += (i ? "," : "") + std::to_string(xs[i]);
      }
      return r + "}";
    }

    inline void order_suite(Poset const& p, Tallies& t) {
      auto const n = p.size();
      t["order.covers_closure"].record(
          Poset::from_relations(n, covers(p)) == p, "closure of covers");

      std::size_t const w = width(p);
      t["order.width_chain"].record((w == 1) == is_chain(p), "width 1");

      bool split_ok = false;
      try {
        auto const cp = two_chain_partition(p);
        split_ok      = w <= 2 && cp.left.size() + cp.right.size() == n;
        for (auto const* c : {&cp.left, &cp.right}) {
          for (std::size_t i = 1; i < c->size(); ++i) {
            split_ok = split_ok && p.lt((*c)[i - 1], (*c)[i]);
          }
        }
      } catch (NotTwoChainCoverable const&) {
        split_ok = w > 2;
      }
      t["order.two_chain_partition"].record(split_ok, "width " + std::to_string(w));

      auto const downs = downsets(p);
      std::set<Mask> const all(downs.begin(), downs.end());
      bool closed = true;
      for (Mask m : downs) {
        for (Element x = 0; x < n; ++x) {
          for (Element y = 0; y < n; ++y) {
            if (((m >> y) & 1) && p.leq(x, y) && !((m >> x) & 1)) {
              closed = false;
            }
          }
        }
      }
      for (Mask a : downs) {
        for (Mask b : downs) {
          closed = closed && all.count(a | b) && all.count(a & b);
        }
      }
      t["order.downsets_closed"].record(closed, "downsets");
    }

    inline void lattice_suite(DistLattice const& d, Tallies& t) {
      auto const& ji = d.join_irreducibles();
      for (Element x = 0; x < d.size(); ++x) {
        Element acc = d.bottom();
        for (Element u : ji) {
          if (d.leq(u, x)) {
            acc = d.join(acc, u);
          }
        }
        t["lattice.ji_decomposition"].record(acc == x,
                                             "element " + std::to_string(x));
      }

      // Downsets of J(D), numbered as birkhoff numbers them, against D.
      auto const    masks = downsets(d.ji_poset());
      DistLattice const e = birkhoff(d.ji_poset());
      std::map<Mask, Element> id_of;
      for (std::size_t i = 0; i < masks.size(); ++i) {
        id_of[masks[i]] = i;
      }
      bool iso = masks.size() == d.size() && e.size() == d.size();
      std::vector<Element> f(d.size(), 0);
      for (Element x = 0; iso && x < d.size(); ++x) {
        auto it = id_of.find(d.downset_mask(x));
        iso     = it != id_of.end();
        if (iso) {
          f[x] = it->second;
        }
      }
      for (Element x = 0; iso && x < d.size(); ++x) {
        for (Element y = 0; iso && y < d.size(); ++y) {
          iso = f[d.join(x, y)] == e.join(f[x], f[y])
                && f[d.meet(x, y)] == e.meet(f[x], f[y]);
        }
      }
      t["lattice.birkhoff_roundtrip"].record(iso, "birkhoff(J(D))");

      // Longest and shortest cover paths from the bottom agree with height.
      std::vector<std::size_t> longest(d.size(), 0);
      std::vector<std::size_t> shortest(d.size(), 0);
      std::vector<Element>     order(d.size());
      for (Element x = 0; x < d.size(); ++x) {
        order[x] = x;
      }
      std::sort(order.begin(), order.end(), [&](Element a, Element b) {
        return mask_order(d.downset_mask(a), d.downset_mask(b));
      });
      for (Element x : order) {
        if (x == d.bottom()) {
          continue;
        }
        std::size_t lo = d.size(), hi = 0;
        for (Element y : d.lower_covers(x)) {
          lo = std::min(lo, shortest[y] + 1);
          hi = std::max(hi, longest[y] + 1);
        }
        shortest[x] = lo;
        longest[x]  = hi;
      }
      for (Element x = 0; x < d.size(); ++x) {
        t["lattice.height"].record(
            longest[x] == height(d, x) && shortest[x] == longest[x],
            "element " + std::to_string(x));
      }
    }

    // Nondecreasing tuples of length 1..3.
    inline void join_prime_suite(DistLattice const& d, Tallies& t) {
      auto&                tally = t["join_prime.witness"];
      std::vector<Element> parts;
      auto                 check = [&](Element u) {
        if (!d.leq(u, d.join(parts))) {
          return;
        }
        bool ok = false;
        try {
          auto const i = join_prime_witness(d, u, parts);
          ok           = i < parts.size() && d.leq(u, parts[i]);
          for (std::size_t k = 0; ok && k < i; ++k) {
            ok = !d.leq(u, parts[k]);
          }
        } catch (std::exception const&) {
          ok = false;
        }
        tally.record(ok, "u=" + std::to_string(u) + " parts=" + ids(parts));
      };
      std::size_t const n = d.size();
      for (Element u : d.join_irreducibles()) {
        for (Element a = 0; a < n; ++a) {
          parts = {a};
          check(u);
          for (Element b = a; b < n; ++b) {
            parts = {a, b};
            check(u);
            for (Element c = b; c < n; ++c) {
              parts = {a, b, c};
              check(u);
            }
          }
        }
      }
    }

    inline void planar_suite(DistLattice const& d, Tallies& t) {
      for (Element x = 0; x < d.size(); ++x) {
        t["planar.cover_degree"].record(d.upper_covers(x).size() <= 2
                                            && d.lower_covers(x).size() <= 2,
                                        "element " + std::to_string(x));
      }
      auto const ba = boundary_assignment(d);
      auto in_j0    = [&](Element y) {
        return y == d.bottom()
               || std::find(ba.left.begin(), ba.left.end(), y) != ba.left.end()
               || std::find(ba.right.begin(), ba.right.end(), y)
                      != ba.right.end();
      };
      for (Element x = 0; x < d.size(); ++x) {
        Element const l = ljsp(d, ba, x);
        Element const r = rjsp(d, ba, x);
        t["planar.join_supports"].record(
            d.join(l, r) == x && in_j0(l) && in_j0(r) && d.leq(l, x)
                && d.leq(r, x),
            "element " + std::to_string(x));
      }
      if (two_coatom_config(d, ba)) {
        t["planar.support_lemmas"].record(check_support_lemmas(d, ba).all(),
                                          "two join-reducible coatoms");
      }
    }

    inline QRun representation_run(LatticePtr const&           lattice,
                                   BoundaryAssignment const&   ba,
                                   std::vector<Element> const& q,
                                   Tallies&                    t) {
      auto const& d = *lattice;
      QRun        run;
      run.q                 = q;
      std::string const tag = "Q=" + ids(q);

      auto const        ch = build_full_chain(lattice, q, ba);
      std::size_t const m  = d.join_irreducibles().size();
      std::size_t const k  = extra_elements(d, q).size();
      run.edges            = ch.edges();
      run.expected_edges   = m == 0 ? 0 : 2 * m + 3 * k - 1;
      t["representation.srep"].record(srep(ch) == q, tag);
      t["representation.edge_count"].record(run.edges == run.expected_edges,
                                            tag);

      auto const a = synthesize(ch);
      run.carrier  = a.size();

      auto const report = verify_representation(d, q, ch, a);
      for (std::size_t i = 0; i < report.checks.size(); ++i) {
        auto const& c = report.checks[i];
        t[std::string("representation.")
          + RepresentationReport::kCheckNames[i]]
            .record(c.ran && c.passed,
                    tag + (c.witness.empty() ? "" : ": " + c.witness));
      }
      run.passed = report.passed() && srep(ch) == q
                   && run.edges == run.expected_edges;
      return run;
    }

    inline void representation_suite(DistLattice const&  d,
                                     CorpusConfig const& config,
                                     InstanceReport&     inst) {
      auto const lattice = std::make_shared<DistLattice const>(d);
      auto const ba      = boundary_assignment(d);
      auto const jplus   = j_sets(d).jplus;

      std::vector<Element> rest;
      for (Element x = 0; x < d.size(); ++x) {
        if (!std::binary_search(jplus.begin(), jplus.end(), x)) {
          rest.push_back(x);
        }
      }
      auto subset = [&](std::uint64_t bits) {
        std::vector<Element> q = jplus;
        for (std::size_t i = 0; i < rest.size(); ++i) {
          if ((bits >> i) & 1) {
            q.push_back(rest[i]);
          }
        }
        std::sort(q.begin(), q.end());
        return q;
      };

      std::vector<std::uint64_t> choices;
      bool const small = rest.size() <= config.exhaustive_limit
                         || (rest.size() < 63
                             && (std::uint64_t{1} << rest.size())
                                    <= config.samples);
      if (small) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << rest.size());
             ++bits) {
          choices.push_back(bits);
        }
      } else {
        inst.sampled = true;
        std::mt19937_64         gen(inst.q_seed);
        std::uint64_t const     mask = rest.size() >= 64
                                           ? ~std::uint64_t{0}
                                           : (std::uint64_t{1} << rest.size()) - 1;
        std::set<std::uint64_t> seen;
        while (choices.size() < config.samples) {
          std::uint64_t const bits = gen() & mask;
          if (seen.insert(bits).second) {
            choices.push_back(bits);
          }
        }
      }
      for (std::uint64_t bits : choices) {
        inst.runs.push_back(
            representation_run(lattice, ba, subset(bits), inst.tallies));
      }
    }

    inline InstanceReport run_instance(Poset const&        p,
                                       std::size_t         index,
                                       std::uint64_t       q_seed,
                                       CorpusConfig const& config) {
      InstanceReport inst;
      inst.index    = index;
      inst.poset    = canonical_form(p);
      inst.ji_count = p.size();
      inst.q_seed   = q_seed;
      try {
        order_suite(p, inst.tallies);
        DistLattice const d = birkhoff(p);
        auto const        cr = coatom_report(d);
        inst.lattice_size    = d.size();
        inst.planar          = is_planar(d);
        inst.coatoms         = cr.coatoms.size();
        inst.jr_coatoms      = cr.join_reducible.size();
        inst.verdicts        = representability_report(d);

        lattice_suite(d, inst.tallies);
        join_prime_suite(d, inst.tallies);
        if (inst.planar) {
          planar_suite(d, inst.tallies);
        }
        if (inst.verdicts.fully_chain_rep) {
          representation_suite(d, config, inst);
        }
      } catch (std::exception const& e) {
        inst.tallies["instance.exception"].record(false, e.what());
      }
      return inst;
    }
  }  // namespace detail

  inline CorpusReport run_corpus(CorpusConfig const& config) {
    if (config.max_ji == 0) {
      throw std::invalid_argument("corpus: max_ji must be at least 1");
    }
    if (config.max_ji > config.cap) {
      throw LimitExceeded("corpus: max_ji " + std::to_string(config.max_ji)
                          + " exceeds the cap " + std::to_string(config.cap));
    }
    CorpusReport report;
    report.config = config;

    std::vector<Poset> posets;
    for (std::size_t k = 1; k <= config.max_ji; ++k) {
      auto level = enumerate_posets(k, config.cap);
      report.posets_per_size.push_back(level.size());
      for (auto& p : level) {
        posets.push_back(std::move(p));
      }
    }

    // Per-instance seeds are drawn up front, in order, from one generator.
    std::mt19937_64            master(config.seed);
    std::vector<std::uint64_t> seeds(posets.size());
    for (auto& s : seeds) {
      s = master();
    }

    report.instances.resize(posets.size());
    std::atomic<std::size_t> next{0};
    auto                     worker = [&] {
      for (std::size_t i = next++; i < posets.size(); i = next++) {
        report.instances[i] = detail::run_instance(posets[i], i, seeds[i], config);
      }
    };
    std::size_t const jobs = std::max<std::size_t>(1, config.jobs);
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t j = 0; j < jobs; ++j) {
        pool.emplace_back(worker);
      }
      for (auto& th : pool) {
        th.join();
      }
    }

    for (auto const& inst : report.instances) {
      for (auto const& [key, t] : inst.tallies) {
        Tally tagged = t;
        if (!t.first_failure.empty()) {
          tagged.first_failure
              = "instance " + std::to_string(inst.index) + ": " + t.first_failure;
        }
        report.suites[key].merge(tagged);
      }
    }
    return report;
  }

  inline json to_json(CorpusReport const& r) {
    json suites = json::object();
    for (auto const& [key, t] : r.suites) {
      json o{{"checked", t.checked}, {"failed", t.failed}};
      if (t.failed) {
        o["first_failure"] = t.first_failure;
      }
      suites[key] = std::move(o);
    }
    json instances = json::array();
    for (auto const& inst : r.instances) {
      json runs = json::array();
      for (auto const& run : inst.runs) {
        runs.push_back({{"q", run.q},
                        {"edges", run.edges},
                        {"expected_edges", run.expected_edges},
                        {"carrier", run.carrier},
                        {"passed", run.passed}});
      }
      json o{{"index", inst.index},
             {"poset", inst.poset},
             {"ji", inst.ji_count},
             {"lattice_size", inst.lattice_size},
             {"planar", inst.planar},
             {"coatoms", inst.coatoms},
             {"join_reducible_coatoms", inst.jr_coatoms},
             {"verdicts", to_json(inst.verdicts)},
             {"runs", std::move(runs)}};
      if (inst.sampled) {
        o["q_seed"] = inst.q_seed;
      }
      instances.push_back(std::move(o));
    }
    return {{"max_ji", r.config.max_ji},
            {"seed", r.config.seed},
            {"posets", r.posets()},
            {"posets_per_size", r.posets_per_size},
            {"passed", r.passed()},
            {"suites", std::move(suites)},
            {"instances", std::move(instances)}};
  }

  inline std::string to_text(CorpusReport const& r) {
    std::ostringstream out;
    std::size_t        runs = 0;
    for (auto const& inst : r.instances) {
      runs += inst.runs.size();
    }
    out << "posets: " << r.posets() << " (max_ji " << r.config.max_ji
        << ", seed " << r.config.seed << ")\n";
    out << "representation runs: " << runs << "\n";
    for (auto const& [key, t] : r.suites) {
      out << (t.passed() ? "ok   " : "FAIL ") << key << " " << t.checked - t.failed
          << "/" << t.checked;
      if (!t.passed()) {
        out << "  first failure: " << t.first_failure;
      }
      out << "\n";
    }
    out << (r.passed() ? "all suites pass\n" : "failures\n");
    return out.str();
  }

}  // namespace chainrep
