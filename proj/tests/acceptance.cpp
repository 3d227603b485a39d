// Acceptance suite: one pass/fail line per criterion. Run with --extended to
// include the hours-scale tier (criterion 4). Exit 0 iff everything passed.

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mdeck/bounds.hpp"
#include "mdeck/channel.hpp"
#include "mdeck/collision.hpp"
#include "mdeck/deck.hpp"
#include "mdeck/reconstruct.hpp"

using namespace mdeck;

namespace {

struct Suite {
  int failures = 0;

  void report(int number, const std::string& what, bool ok, double seconds,
              const std::string& detail = "") {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << what
              << " (" << std::fixed;
    std::cout.precision(2);
    std::cout << seconds << " s)";
    if (!ok && !detail.empty()) std::cout << " -- " << detail;
    std::cout << std::endl;
    if (!ok) ++failures;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string corpus_path() {
  if (const char* env = std::getenv("MDECK_CORPUS")) return env;
#ifdef MDECK_SOURCE_DATA_DIR
  return std::string(MDECK_SOURCE_DATA_DIR) + "/paper_pairs.txt";
#else
  return "data/paper_pairs.txt";
#endif
}

std::vector<BitString> all_strings(int n) {
  std::vector<BitString> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    BitString x;
    for (int i = n - 1; i >= 0; --i) x.push_back(static_cast<int>((v >> i) & 1));
    out.push_back(std::move(x));
  }
  return out;
}

SearchConfig threads_cfg(unsigned t) {
  SearchConfig cfg;
  cfg.threads = t;
  return cfg;
}

// Criterion 1: all eight bundled pairs have exactly equal decks.
void criterion_1(Suite& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    const auto corpus = load_pair_corpus(corpus_path());
    const std::size_t lengths[] = {2, 4, 7, 12, 16, 30, 54, 106};
    ok = corpus.size() == 8;
    for (std::size_t i = 0; ok && i < corpus.size(); ++i) {
      const BitString a = corpus[i].a.expand();
      const BitString b = corpus[i].b.expand();
      if (corpus[i].m != static_cast<int>(i) + 1 || a.size() != lengths[i] || a == b ||
          verify_pair(a, b, corpus[i].m).has_value()) {
        ok = false;
        detail = "pair m=" + std::to_string(corpus[i].m);
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  suite.report(1, "all 8 paper pairs (m=1..8) have exactly equal decks", ok,
               seconds_since(t0), detail);
}

struct NmRun {
  NmResult r1, r2, r3, r4;
};

NmRun run_nm_tier(unsigned threads) {
  const SearchConfig cfg = threads_cfg(threads);
  return NmRun{compute_N(1, 8, cfg), compute_N(2, 8, cfg), compute_N(3, 10, cfg),
               compute_N(4, 13, cfg)};
}

bool nm_values_ok(const NmRun& run) {
  const auto good = [](const NmResult& r, int expected) {
    return r.value == expected && !r.capped && !r.reports.empty() &&
           !r.reports.back().holds && r.reports.back().witness.has_value();
  };
  return good(run.r1, 1) && good(run.r2, 3) && good(run.r3, 6) && good(run.r4, 11);
}

// Criterion 2: N_1, N_2, N_3, N_4 by exhaustive search, failure included.
void criterion_2(Suite& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    ok = nm_values_ok(run_nm_tier(1));
    if (!ok) detail = "table values differ";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  suite.report(2, "N_1=1, N_2=3, N_3=6, N_4=11 by exhaustive search", ok,
               seconds_since(t0), detail);
}

// Criterion 3: R(5,15) holds, R(5,16) fails with a deck-verified witness.
void criterion_3(Suite& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    const SearchConfig cfg = threads_cfg(4);
    const auto r15 = check_R(5, 15, cfg);
    const auto r16 = check_R(5, 16, cfg);
    ok = r15.holds && !r16.holds && r16.witness.has_value();
    if (ok) {
      const auto& [a, b] = *r16.witness;
      ok = !verify_pair(a, b, 5).has_value() && a != b && a.size() == 16;
      if (!ok) detail = "witness failed exact re-verification";
    } else {
      detail = "outcomes differ from N_5 = 15";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  suite.report(3, "R(5,15) holds and R(5,16) fails (witness deck-verified)", ok,
               seconds_since(t0), detail);
}

// Criterion 4 (extended): R(6,29) holds under weight partitioning with
// multi-pass fingerprinting; R(6,30) fails and the canonical witness's deck
// equals the paper pair's.
void criterion_4(Suite& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    SearchConfig cfg;
    cfg.scheme = PartitionScheme::ByWeightAndPairCounts;
    cfg.fingerprint_passes = 2;
    cfg.memory_budget = std::uint64_t{1} << 30;  // 1 GiB, documented budget
    const auto r29 = check_R(6, 29, cfg);
    std::cout << "  [extended] R(6,29): " << (r29.holds ? "holds" : "FAILS") << " ("
              << r29.stats.wall_seconds << " s, rounds=" << r29.stats.rounds << ")"
              << std::endl;
    const auto r30 = check_R(6, 30, cfg);
    std::cout << "  [extended] R(6,30): " << (r30.holds ? "HOLDS" : "fails") << " ("
              << r30.stats.wall_seconds << " s)" << std::endl;
    ok = r29.holds && !r30.holds && r30.witness.has_value();
    if (ok) {
      const auto corpus = load_pair_corpus(corpus_path());
      const Deck paper = compute_deck(corpus[5].a.expand(), 6);
      const Deck witness_deck = compute_deck(r30.witness->first, 6);
      ok = witness_deck == paper;
      if (!ok)
        detail = "witness deck differs from the paper pair's (witness " +
                 r30.witness->first.text() + ")";
    } else {
      detail = "R(6,29)/R(6,30) outcomes unexpected";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  suite.report(4, "extended tier: R(6,29) holds, R(6,30) fails on the paper deck", ok,
               seconds_since(t0), detail);
}

// Criterion 5: reconstruction inverts the deck map at (3,5), (4,7) and on
// 1000 seeded strings at (5,9).
void criterion_5(Suite& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    for (const BitString& x : all_strings(5))
      if (reconstruct_runs(compute_deck(x, 3)) != x) {
        ok = false;
        detail = "m=3 failed at " + x.text();
      }
    for (const BitString& x : all_strings(7))
      if (reconstruct_runs(compute_deck(x, 4)) != x) {
        ok = false;
        detail = "m=4 failed at " + x.text();
      }
    Rng rng(20260811);
    for (int trial = 0; ok && trial < 1000; ++trial) {
      BitString x;
      for (int i = 0; i < 9; ++i) x.push_back(static_cast<int>(rng.below(2)));
      if (reconstruct_runs(compute_deck(x, 5)) != x) {
        ok = false;
        detail = "m=5 failed at " + x.text();
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  suite.report(5, "reconstruction inverts compute_deck at (3,5), (4,7), (5,9)", ok,
               seconds_since(t0), detail);
}

// Criterion 6: pigeonhole cutoffs 5 and 37, re-derived independently, and
// dominance over the known table.
void criterion_6(Suite& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    const auto naive_holds = [](std::uint64_t n, int m) {
      const ExactInt base = binomial(n, static_cast<std::uint64_t>(m)) + 1;
      ExactInt lhs = 1;
      for (std::uint64_t i = 0; i < (std::uint64_t{1} << m); ++i) lhs *= base;
      ExactInt rhs = 1;
      for (std::uint64_t i = 0; i < n; ++i) rhs *= 2;
      return lhs >= rhs;
    };
    const auto naive_cutoff = [&](int m, std::uint64_t scan_to) {
      std::uint64_t best = 0;
      for (std::uint64_t n = static_cast<std::uint64_t>(m); n <= scan_to; ++n)
        if (naive_holds(n, m)) best = n;
      return best;
    };
    ok = pigeonhole_max_n(1) == 5 && naive_cutoff(1, 40) == 5 &&
         pigeonhole_max_n(2) == 37 && naive_cutoff(2, 120) == 37;
    if (!ok) detail = "cutoffs disagree with the independent power loop";
    for (int m = 1; ok && m <= 6; ++m)
      if (pigeonhole_max_n(m) < *known_nm(m)) {
        ok = false;
        detail = "bound fails to dominate N_" + std::to_string(m);
      }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  suite.report(6, "pigeonhole bound: m=1 -> 5, m=2 -> 37, dominates known N_m", ok,
               seconds_since(t0), detail);
}

// Criterion 7: for every (m,n), m <= 4, n <= 12: check_R equals the naive
// quadratic all-pairs oracle, and compute_deck equals subset enumeration.
void criterion_7(Suite& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    for (int n = 0; ok && n <= 12; ++n) {
      const auto strings = all_strings(n);
      for (int m = 0; ok && m <= std::min(n, 4); ++m) {
        // Subset-enumeration oracle for every string.
        std::vector<Deck> decks;
        decks.reserve(strings.size());
        for (const BitString& x : strings) decks.push_back(compute_deck(x, m));
        for (std::size_t s = 0; ok && s < strings.size(); ++s) {
          const BitString& x = strings[s];
          std::vector<ExactInt> counts(std::size_t{1} << m, 0);
          std::vector<int> idx(m);
          for (int i = 0; i < m; ++i) idx[i] = i;
          for (;;) {
            std::uint32_t word = 0;
            for (int i = 0; i < m; ++i)
              word = (word << 1) | static_cast<std::uint32_t>(x[idx[i]]);
            counts[word] += 1;
            int i = m - 1;
            while (i >= 0 && idx[i] == n - m + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
          }
          if (Deck(m, static_cast<std::uint64_t>(n), std::move(counts)) != decks[s]) {
            ok = false;
            detail = "compute_deck disagrees at x=" + x.text() + " m=" + std::to_string(m);
          }
        }
        if (!ok) break;

        // Quadratic all-pairs oracle; first hit is the canonical witness.
        bool naive_holds = true;
        std::pair<BitString, BitString> naive_witness;
        for (std::size_t i = 0; naive_holds && i < strings.size(); ++i)
          for (std::size_t j = i + 1; j < strings.size(); ++j)
            if (decks[i] == decks[j]) {
              naive_holds = false;
              naive_witness = {strings[i], strings[j]};
              break;
            }
        const auto fast = check_R(m, n);
        if (fast.holds != naive_holds ||
            (!naive_holds && (!fast.witness || *fast.witness != naive_witness))) {
          ok = false;
          detail = "check_R disagrees at m=" + std::to_string(m) + " n=" + std::to_string(n);
        }
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  suite.report(7, "oracle equivalence for all m <= 4, n <= 12", ok, seconds_since(t0),
               detail);
}

struct ChannelRun {
  ExactRational tv;
  std::vector<std::pair<double, double>> pair_logliks;
};

ChannelRun run_channel_tier(unsigned threads) {
  ChannelRun run;
  const BitString x = BitString::from_text("0110");
  const SampleBatch batch = sample_batch(x, 2, 100000, 20260811, threads);
  run.tv = total_variation(batch, compute_deck(x, 2));
  const auto corpus = load_pair_corpus(corpus_path());
  for (const auto& pair : corpus) {
    const BitString a = pair.a.expand();
    const BitString b = pair.b.expand();
    const SampleBatch draws = sample_batch(a, pair.m, 10000, 77, threads);
    const auto result = discriminate(draws, {a, b}, pair.m);
    run.pair_logliks.emplace_back(result.log_likelihood[0], result.log_likelihood[1]);
  }
  return run;
}

// Criterion 8: empirical distribution within 0.01 TV of exact, and exactly
// equal log-likelihoods for every paper pair.
void criterion_8(Suite& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    const ChannelRun run = run_channel_tier(0);
    ok = run.tv < ExactRational(1, 100);
    if (!ok) detail = "total-variation distance too large";
    for (std::size_t i = 0; ok && i < run.pair_logliks.size(); ++i) {
      const auto [la, lb] = run.pair_logliks[i];
      if (std::memcmp(&la, &lb, sizeof(double)) != 0) {
        ok = false;
        detail = "log-likelihoods differ for pair m=" + std::to_string(i + 1);
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  suite.report(8, "10^5 draws: TV < 0.01; equal log-likelihoods on all paper pairs", ok,
               seconds_since(t0), detail);
}

// Criterion 9: criteria 2, 3 and 8 computations give identical reports at
// thread counts 1 and 8.
void criterion_9(Suite& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    const auto reports_equal = [](const CollisionReport& a, const CollisionReport& b) {
      return a.holds == b.holds && a.witness == b.witness &&
             a.stats.strings_enumerated == b.stats.strings_enumerated &&
             a.stats.decks_computed == b.stats.decks_computed &&
             a.stats.entries_inserted == b.stats.entries_inserted &&
             a.stats.candidate_groups == b.stats.candidate_groups &&
             a.stats.collisions_confirmed == b.stats.collisions_confirmed &&
             a.stats.partitions == b.stats.partitions && a.stats.rounds == b.stats.rounds;
    };
    const auto nm_equal = [&](const NmResult& a, const NmResult& b) {
      if (a.value != b.value || a.capped != b.capped ||
          a.reports.size() != b.reports.size())
        return false;
      for (std::size_t i = 0; i < a.reports.size(); ++i)
        if (!reports_equal(a.reports[i], b.reports[i])) return false;
      return true;
    };

    const NmRun nm1 = run_nm_tier(1);
    const NmRun nm8 = run_nm_tier(8);
    ok = nm_values_ok(nm1) && nm_equal(nm1.r1, nm8.r1) && nm_equal(nm1.r2, nm8.r2) &&
         nm_equal(nm1.r3, nm8.r3) && nm_equal(nm1.r4, nm8.r4);
    if (!ok) detail = "criterion 2 reports differ across thread counts";

    if (ok) {
      const auto r15a = check_R(5, 15, threads_cfg(1));
      const auto r15b = check_R(5, 15, threads_cfg(8));
      const auto r16a = check_R(5, 16, threads_cfg(1));
      const auto r16b = check_R(5, 16, threads_cfg(8));
      ok = reports_equal(r15a, r15b) && reports_equal(r16a, r16b);
      if (!ok) detail = "criterion 3 reports differ across thread counts";
    }

    if (ok) {
      const ChannelRun c1 = run_channel_tier(1);
      const ChannelRun c8 = run_channel_tier(8);
      ok = c1.tv == c8.tv && c1.pair_logliks.size() == c8.pair_logliks.size();
      for (std::size_t i = 0; ok && i < c1.pair_logliks.size(); ++i)
        ok = std::memcmp(&c1.pair_logliks[i], &c8.pair_logliks[i],
                         sizeof(c1.pair_logliks[i])) == 0;
      if (!ok) detail = "criterion 8 reports differ across thread counts";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  suite.report(9, "criteria 2, 3, 8 identical at thread counts 1 and 8", ok,
               seconds_since(t0), detail);
}

}  // namespace

int main(int argc, char** argv) {
  bool extended = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--extended") == 0) extended = true;

  Suite suite;
  criterion_1(suite);
  criterion_2(suite);
  criterion_3(suite);
  if (extended)
    criterion_4(suite);
  else
    std::cout << "[SKIP] criterion 4: extended tier (pass --extended to run; hours-scale)"
              << std::endl;
  criterion_5(suite);
  criterion_6(suite);
  criterion_7(suite);
  criterion_8(suite);
  criterion_9(suite);

  if (suite.failures == 0) {
    std::cout << "acceptance: all criteria passed" << std::endl;
    return 0;
  }
  std::cout << "acceptance: " << suite.failures << " criterion(s) FAILED" << std::endl;
  return 1;
}
