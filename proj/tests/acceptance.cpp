// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all
// pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chainrep/algebra.hpp"
#include "chainrep/colored_chain.hpp"
#include "chainrep/congruence.hpp"
#include "chainrep/corpus.hpp"
#include "chainrep/dist_lattice.hpp"
#include "chainrep/planar.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace chainrep;
using Clock = std::chrono::steady_clock;

namespace {

  struct Outcome {
    bool        pass = false;
    std::string detail;
  };

  double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }

  std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
  }

  // Every D = birkhoff(P), |P| <= 5, that passes the coatom condition,
  // with every Q between J+(D) and D. The condition is re-derived here from
  // the brute-force width and the coatom list.
  struct Instance {
    LatticePtr                        d;
    std::vector<std::vector<Element>> qs;
  };

  std::size_t g_posets = 0;

  std::vector<Instance> criterion_one_instances() {
    std::vector<Instance> out;
    g_posets = 0;
    for (std::size_t k = 1; k <= 5; ++k) {
      for (auto const& p : enumerate_posets(k)) {
        ++g_posets;
        auto const  d          = fixture::ptr(birkhoff(p));
        bool const  planar     = oracle::width(p) <= 2;
        std::size_t reducible  = 0;
        for (Element c : d->lower_covers(d->top())) {
          reducible += d->lower_covers(c).size() >= 2;
        }
        if (!planar || reducible > 1) {
          continue;
        }
        Instance inst{d, {}};
        auto const jplus = j_sets(*d).jplus;
        std::vector<Element> rest;
        for (Element x = 0; x < d->size(); ++x) {
          if (!std::binary_search(jplus.begin(), jplus.end(), x)) {
            rest.push_back(x);
          }
        }
        if (rest.size() > 12) {
          std::cerr << "unexpected: |D \\ J+| > 12 in the corpus\n";
          std::exit(2);
        }
        for (std::uint32_t bits = 0; bits < (1u << rest.size()); ++bits) {
          std::vector<Element> q = jplus;
          for (std::size_t i = 0; i < rest.size(); ++i) {
            if (bits >> i & 1) {
              q.push_back(rest[i]);
            }
          }
          std::sort(q.begin(), q.end());
          inst.qs.push_back(std::move(q));
        }
        out.push_back(std::move(inst));
      }
    }
    return out;
  }

  Outcome criterion_1(std::vector<Instance> const& instances) {
    auto const  t0 = Clock::now();
    std::size_t runs = 0, failures = 0;
    std::string first;
    for (auto const& inst : instances) {
      auto const& d  = *inst.d;
      auto const  ba = boundary_assignment(d);
      for (auto const& q : inst.qs) {
        ++runs;
        auto const        ch = build_full_chain(inst.d, q, ba);
        std::size_t const m  = d.join_irreducibles().size();
        std::size_t const k  = q.size() - 1 - m;
        std::size_t const expected = m == 0 ? 0 : 2 * m + 3 * k - 1;
        auto const        a        = synthesize(ch);
        bool const ok = oracle::srep(ch) == q && ch.edges() == expected
                        && a.size() == ch.size()
                        && verify_representation(d, q, ch, a).passed();
        if (!ok && failures++ == 0) {
          first = "D of size " + std::to_string(d.size());
        }
      }
    }
    double const secs = seconds_since(t0);
    Outcome      o;
    o.pass   = failures == 0 && g_posets == 87 && secs < 600;
    o.detail = std::to_string(g_posets) + " posets, "
               + std::to_string(instances.size()) + " lattices, "
               + std::to_string(runs) + " (D,Q) runs, "
               + std::to_string(failures) + " failures, " + fmt_seconds(secs)
               + (first.empty() ? "" : "; first: " + first);
    return o;
  }

  // phi/psi checked from definitions: phi via the pairwise oracle, Con(A)
  // via all respecting partitions.
  Outcome criterion_2(std::vector<Instance> const& instances) {
    std::size_t runs = 0, failures = 0;
    for (auto const& inst : instances) {
      auto const& d  = *inst.d;
      auto const  ba = boundary_assignment(d);
      for (auto const& q : inst.qs) {
        ++runs;
        auto const ch  = build_full_chain(inst.d, q, ba);
        auto const a   = synthesize(ch);
        auto const con = con_lattice(a);
        bool       ok  = con.size() == d.size();

        std::vector<std::size_t> image(d.size());
        std::set<std::size_t>    hit;
        for (Element x = 0; ok && x < d.size(); ++x) {
          auto const theta = phi(ch, x);
          ok               = ok && theta.labels() == oracle::phi(ch, x);
          auto const idx   = con.index_of(theta);
          ok               = ok && idx.has_value();
          if (ok) {
            image[x] = *idx;
            hit.insert(*idx);
            ok = psi(ch, theta) == x;  // psi o phi = id
          }
        }
        ok = ok && hit.size() == d.size();  // bijection
        for (Element x = 0; ok && x < d.size(); ++x) {
          for (Element y = 0; ok && y < d.size(); ++y) {
            ok = d.leq(x, y) == con.leq(image[x], image[y]);
          }
        }
        for (std::size_t i = 0; ok && i < con.size(); ++i) {
          ok = phi(ch, psi(ch, con.at(i))) == con.at(i);  // phi o psi = id
        }
        // Edge colors and covering joins.
        for (std::size_t p = 0; ok && p < ch.edges(); ++p) {
          ok = psi(ch, principal_congruence(a, p, p + 1)) == ch.color(p);
        }
        for (Element w = 0; ok && w < ch.size(); ++w) {
          for (Element z = w + 1; ok && z < ch.size(); ++z) {
            auto acc = Congruence::identity(ch.size());
            for (Element t = w; t < z; ++t) {
              acc = join(a, acc, principal_congruence(a, t, t + 1));
            }
            ok = acc == principal_congruence(a, w, z);
          }
        }
        failures += !ok;
      }
    }
    return {failures == 0 && runs > 0,
            std::to_string(runs) + " runs, " + std::to_string(failures)
                + " failures"};
  }

  Outcome criterion_3() {
    std::vector<std::string> parts;
    bool                     pass = true;

    auto timed = [&](std::string const& name, std::function<bool()> f) {
      auto const t0   = Clock::now();
      bool const ok   = f();
      double const s  = seconds_since(t0);
      bool const fast = s < 60;
      pass            = pass && ok && fast;
      parts.push_back(name + (ok ? " ok " : " FAILED ") + fmt_seconds(s));
    };

    timed("(i) 2^3, Q=J+, 8 edges: not found", [] {
      auto const           d = fixture::ptr(fixture::cube());
      std::vector<Element> q = j_sets(*d).jplus;
      return q == std::vector<Element>{0, 1, 2, 3, 7}
             && !bounded_chain_search(d, q, 8);
    });
    timed("(ii) 3x3 grid, Q=J+ with e, 9 edges: not found", [] {
      auto const           d = fixture::ptr(fixture::grid());
      std::vector<Element> q = j_sets(*d).jplus;
      q.push_back(fixture::e);
      return !bounded_chain_search(d, q, 9);
    });
    timed("(iii) 2^2, Q={0,a,b}: 1 missing", [] {
      auto const           d = fixture::square();
      std::vector<Element> q{0, 1, 2};
      auto const           nc = necessary_conditions(d, q);
      return !nc.satisfied && nc.missing == d.top();
    });

    std::string detail;
    for (auto const& p : parts) {
      detail += (detail.empty() ? "" : "; ") + p;
    }
    return {pass, detail};
  }

  Outcome criterion_4(CorpusReport const& r) {
    auto const& sl = r.suites.count("planar.support_lemmas")
                         ? r.suites.at("planar.support_lemmas")
                         : Tally{};
    bool const  pass = r.passed("planar.") && sl.checked > 0;
    std::size_t planar = 0;
    for (auto const& inst : r.instances) {
      planar += inst.planar;
    }
    return {pass, std::to_string(planar) + " planar lattices, "
                      + std::to_string(sl.checked)
                      + " with two join-reducible coatoms"};
  }

  Outcome criterion_5(CorpusReport const& r) {
    bool pass = r.passed("join_prime.");
    auto witness_ok = [](std::vector<ElementPair> const& covers) {
      try {
        DistLattice::from_covers(5, covers);
        return false;
      } catch (NotDistributive const& e) {
        auto const b      = oracle::brute_lattice(5, covers);
        auto [x, y, z]    = e.witness();
        return b && oracle::violates_distributivity(*b, x, y, z);
      }
    };
    bool const m3 = witness_ok(fixture::m3_covers());
    bool const n5 = witness_ok(fixture::n5_covers());
    auto const& t = r.suites.at("join_prime.witness");
    return {pass && m3 && n5,
            std::to_string(t.checked) + " (u, parts) samples; M3 "
                + (m3 ? "rejected" : "NOT rejected") + ", N5 "
                + (n5 ? "rejected" : "NOT rejected")};
  }

  Outcome criterion_6() {
    std::mt19937_64 gen(20240601);
    std::size_t     instances = 0, disagreements = 0, paths = 0;
    for (int trial = 0; trial < 500; ++trial) {
      std::size_t const     n   = 1 + gen() % 7;
      std::size_t const     ops = gen() % 6;
      std::vector<UnaryMap> maps(ops, UnaryMap(n));
      for (auto& m : maps) {
        for (auto& y : m) {
          y = gen() % n;
        }
      }
      auto const a = UnaryAlgebra::from_maps(n, maps);
      ++instances;
      bool ok = true;
      for (Element x = 0; x < n; ++x) {
        for (Element y = x + 1; y < n; ++y) {
          ok = ok
               && principal_congruence(a, x, y).labels()
                      == oracle::principal(a, x, y);
        }
      }
      auto const con = con_lattice(a);
      std::vector<oracle::Labels> members;
      for (auto const& c : con.members()) {
        members.push_back(c.labels());
      }
      std::sort(members.begin(), members.end());
      ok = ok && members == oracle::all_congruences(a);
      std::set<oracle::Labels> const set(members.begin(), members.end());
      for (std::size_t i = 0; ok && i < con.size(); ++i) {
        for (std::size_t j = 0; ok && j < con.size(); ++j) {
          auto const& s  = con.at(i).labels();
          auto const& t  = con.at(j).labels();
          auto const  jn = oracle::join(s, t);
          auto const  mt = oracle::meet(s, t);
          ok = set.count(jn) && set.count(mt)
               && con.at(con.join(i, j)).labels() == jn
               && con.at(con.meet(i, j)).labels() == mt;
        }
      }
      PrincipalTable const table(a);
      for (Element u = 0; ok && u < n; ++u) {
        for (Element v = 0; ok && v < n; ++v) {
          if (u == v) {
            continue;
          }
          try {
            auto const path = ji_path(table, con, u, v);
            ++paths;
            ok = path.front() == u && path.back() == v;
          } catch (NotFound const&) {
            ok = false;
          }
        }
      }
      disagreements += !ok;
    }
    return {disagreements == 0,
            std::to_string(instances) + " random algebras, "
                + std::to_string(paths) + " join-irreducible paths, "
                + std::to_string(disagreements) + " disagreements"};
  }

  Outcome criterion_7(CorpusReport const& first) {
    CorpusConfig config = first.config;
    auto const   again  = run_corpus(config);
    config.jobs         = 4;
    auto const   pooled = run_corpus(config);
    std::string const a = to_json(first).dump();
    bool const        same
        = a == to_json(again).dump() && a == to_json(pooled).dump();
    return {same, std::to_string(a.size()) + "-byte report, seed "
                      + std::to_string(config.seed)
                      + ", repeated sequentially and with 4 workers"};
  }

}  // namespace

int main() {
  bool all = true;
  auto report = [&](int n, Outcome const& o) {
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": "
              << o.detail << std::endl;
  };

  auto const instances = criterion_one_instances();
  report(1, criterion_1(instances));
  report(2, criterion_2(instances));
  report(3, criterion_3());

  CorpusConfig config;
  config.max_ji     = 5;
  config.seed       = 7;
  auto const corpus = run_corpus(config);
  report(4, criterion_4(corpus));
  report(5, criterion_5(corpus));
  report(6, criterion_6());
  report(7, criterion_7(corpus));
  return all ? 0 : 1;
}
