// mdeck: toolkit for the fixed-size binary deletion channel.
//
// Exit codes (stable): 0 success, 1 negative finding (a Distinct verdict or
// an R(m,n) failure), 2 usage or domain error, 3 resource or integrity error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mdeck/bounds.hpp"
#include "mdeck/channel.hpp"
#include "mdeck/collision.hpp"
#include "mdeck/core.hpp"
#include "mdeck/deck.hpp"
#include "mdeck/parallel.hpp"
#include "mdeck/reconstruct.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::string format_ms(double seconds) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << seconds * 1000.0 << " ms";
  return os.str();
}

// Locates the bundled collision-pair corpus: explicit flag, environment,
// working directory, then next to the executable.
std::string find_corpus(const std::string& explicit_path) {
  namespace fs = std::filesystem;
  if (!explicit_path.empty()) return explicit_path;
  if (const char* env = std::getenv("MDECK_CORPUS")) return env;
  std::vector<fs::path> candidates = {"data/paper_pairs.txt"};
  std::error_code ec;
  fs::path exe = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    const fs::path dir = exe.parent_path();
    candidates.push_back(dir / "data/paper_pairs.txt");
    candidates.push_back(dir / "../data/paper_pairs.txt");
    candidates.push_back(dir / "../../data/paper_pairs.txt");
  }
#ifdef MDECK_SOURCE_DATA_DIR
  candidates.push_back(fs::path(MDECK_SOURCE_DATA_DIR) / "paper_pairs.txt");
#endif
  for (const auto& p : candidates)
    if (fs::exists(p, ec)) return p.string();
  throw mdeck::ResourceError(
      "collision-pair corpus not found; pass --corpus or set MDECK_CORPUS");
}

mdeck::SearchConfig make_config(unsigned threads, const std::string& partition,
                                unsigned passes, std::uint64_t budget) {
  mdeck::SearchConfig cfg;
  cfg.threads = threads;
  cfg.fingerprint_passes = passes;
  cfg.memory_budget = budget;
  if (partition == "by-weight")
    cfg.scheme = mdeck::PartitionScheme::ByWeight;
  else if (partition == "by-weight-and-pair-counts")
    cfg.scheme = mdeck::PartitionScheme::ByWeightAndPairCounts;
  else
    throw mdeck::DomainError("unknown partition scheme: " + partition);
  return cfg;
}

void print_stats_human(const mdeck::SearchStats& stats) {
  std::cout << "stats: strings=" << stats.strings_enumerated
            << " decks=" << stats.decks_computed
            << " entries=" << stats.entries_inserted
            << " candidate_groups=" << stats.candidate_groups
            << " collisions=" << stats.collisions_confirmed
            << " partitions=" << stats.partitions << " rounds=" << stats.rounds
            << " time=" << format_ms(stats.wall_seconds) << "\n";
}

// Machine mode omits wall time so reports compare byte-for-byte across runs
// and thread counts.
void print_stats_machine(const mdeck::SearchStats& stats) {
  std::cout << "strings=" << stats.strings_enumerated << "\n"
            << "decks=" << stats.decks_computed << "\n"
            << "entries=" << stats.entries_inserted << "\n"
            << "candidate_groups=" << stats.candidate_groups << "\n"
            << "collisions=" << stats.collisions_confirmed << "\n"
            << "partitions=" << stats.partitions << "\n"
            << "rounds=" << stats.rounds << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"mdeck: exact m-decks, collision search and reconstruction "
               "for the fixed-size binary deletion channel"};
  app.require_subcommand(1);

  // deck ----------------------------------------------------------------
  auto* cmd_deck = app.add_subcommand("deck", "compute the m-deck of a string");
  std::string deck_input, deck_output;
  int deck_m = 0;
  cmd_deck->add_option("--input", deck_input, "string, plain or run-length")->required();
  cmd_deck->add_option("-m", deck_m, "subsequence length")->required();
  cmd_deck->add_option("-o,--output", deck_output, "write the deck here instead of stdout");

  // verify ----------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify", "check whether two strings collide");
  std::string verify_a, verify_b;
  int verify_m = 0;
  cmd_verify->add_option("--a", verify_a, "first string")->required();
  cmd_verify->add_option("--b", verify_b, "second string")->required();
  cmd_verify->add_option("-m", verify_m, "subsequence length")->required();

  // verify-paper ------------------------------------------------------------
  auto* cmd_paper = app.add_subcommand("verify-paper", "verify the bundled collision pairs");
  std::string paper_corpus;
  int paper_only_m = 0;
  bool paper_machine = false;
  cmd_paper->add_option("--corpus", paper_corpus, "corpus file path");
  cmd_paper->add_option("--only-m", paper_only_m, "verify only the pair with this m");
  cmd_paper->add_flag("--machine", paper_machine, "line-oriented key=value output");

  // search ----------------------------------------------------------------
  auto* cmd_search = app.add_subcommand("search", "decide R(m,n) exhaustively");
  int search_m = 0, search_n = 0;
  unsigned search_threads = 0, search_passes = 1;
  std::string search_partition = "by-weight";
  std::uint64_t search_budget = std::uint64_t{2} << 30;
  bool search_machine = false;
  cmd_search->add_option("-m", search_m, "subsequence length")->required();
  cmd_search->add_option("-n", search_n, "string length")->required();
  cmd_search->add_option("--threads", search_threads, "worker count (0: MDECK_THREADS or hardware)");
  cmd_search->add_option("--passes", search_passes, "fingerprint passes per partition");
  cmd_search->add_option("--partition", search_partition,
                         "by-weight | by-weight-and-pair-counts");
  cmd_search->add_option("--memory-budget", search_budget, "bytes for the fingerprint table");
  cmd_search->add_flag("--machine", search_machine, "line-oriented key=value output");

  // nm ----------------------------------------------------------------
  auto* cmd_nm = app.add_subcommand("nm", "compute N_m up to a cap");
  int nm_m = 0, nm_cap = 0;
  unsigned nm_threads = 0, nm_passes = 1;
  std::string nm_partition = "by-weight";
  std::uint64_t nm_budget = std::uint64_t{2} << 30;
  bool nm_machine = false;
  cmd_nm->add_option("-m", nm_m, "subsequence length")->required();
  cmd_nm->add_option("--max-n", nm_cap, "largest n to probe")->required();
  cmd_nm->add_option("--threads", nm_threads, "worker count");
  cmd_nm->add_option("--passes", nm_passes, "fingerprint passes per partition");
  cmd_nm->add_option("--partition", nm_partition, "partition scheme");
  cmd_nm->add_option("--memory-budget", nm_budget, "bytes for the fingerprint table");
  cmd_nm->add_flag("--machine", nm_machine, "line-oriented key=value output");

  // reconstruct -----------------------------------------------------------
  auto* cmd_rec = app.add_subcommand("reconstruct", "invert a deck at n = 2m-1");
  std::string rec_deck;
  int rec_m = -1;
  cmd_rec->add_option("--deck", rec_deck, "deck file ('-' for stdin)")->required();
  cmd_rec->add_option("-m", rec_m, "expected deck order (cross-check)");

  // invert ----------------------------------------------------------------
  auto* cmd_inv = app.add_subcommand("invert", "brute-force all preimages of a deck");
  std::string inv_deck;
  cmd_inv->add_option("--deck", inv_deck, "deck file ('-' for stdin)")->required();

  // sample ----------------------------------------------------------------
  auto* cmd_sample = app.add_subcommand("sample", "draw from the (m,n)-deletion channel");
  std::string sample_input, sample_output;
  int sample_m = 0;
  std::uint64_t sample_count = 1;
  std::optional<std::uint64_t> sample_seed;
  unsigned sample_threads = 0;
  cmd_sample->add_option("--input", sample_input, "source string")->required();
  cmd_sample->add_option("-m", sample_m, "output length")->required();
  cmd_sample->add_option("--count", sample_count, "number of draws");
  cmd_sample->add_option("--seed", sample_seed, "seed (default: OS entropy)");
  cmd_sample->add_option("--threads", sample_threads, "worker count");
  cmd_sample->add_option("-o,--output", sample_output, "write the batch here instead of stdout");

  // discriminate ------------------------------------------------------------
  auto* cmd_disc = app.add_subcommand("discriminate",
                                      "rank candidate sources of a sample batch");
  std::string disc_batch, disc_cand_file;
  std::vector<std::string> disc_candidates;
  cmd_disc->add_option("--batch", disc_batch, "batch file")->required();
  cmd_disc->add_option("--candidate", disc_candidates, "candidate string (repeatable)");
  cmd_disc->add_option("--candidates-file", disc_cand_file, "file with one candidate per line");

  // bounds ----------------------------------------------------------------
  auto* cmd_bounds = app.add_subcommand("bounds", "report bounds on N_m");
  int bounds_m = 0;
  cmd_bounds->add_option("-m", bounds_m, "subsequence length")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;  // 0: --help/--version
  }

  if (cmd_deck->parsed()) {
    const mdeck::BitString x = mdeck::parse_rle(deck_input);
    const mdeck::Deck d = mdeck::compute_deck(x, deck_m);
    if (deck_output.empty()) {
      mdeck::write_deck(std::cout, d);
    } else {
      std::ofstream out(deck_output);
      if (!out) throw mdeck::ResourceError("cannot write " + deck_output);
      mdeck::write_deck(out, d);
    }
    mdeck::ExactInt sum = 0;
    for (const auto& c : d.counts()) sum += c;
    const mdeck::ExactInt total = mdeck::binomial(d.n(), static_cast<std::uint64_t>(d.m()));
    std::cout << "sum=" << sum.str() << " binom=" << total.str()
              << (sum == total ? " OK" : " MISMATCH") << "\n";
    return sum == total ? kExitOk : kExitResource;
  }

  if (cmd_verify->parsed()) {
    const mdeck::BitString a = mdeck::parse_rle(verify_a);
    const mdeck::BitString b = mdeck::parse_rle(verify_b);
    const auto distinct = mdeck::verify_pair(a, b, verify_m);
    if (!distinct) {
      std::cout << "collide m=" << verify_m << " n=" << a.size() << "\n";
      return kExitOk;
    }
    std::cout << "distinct y=" << distinct->word.text() << " count_a="
              << distinct->count_a.str() << " count_b=" << distinct->count_b.str() << "\n";
    return kExitNegative;
  }

  if (cmd_paper->parsed()) {
    const auto corpus = mdeck::load_pair_corpus(find_corpus(paper_corpus));
    bool all_collide = true;
    bool any = false;
    for (const auto& pair : corpus) {
      if (paper_only_m > 0 && pair.m != paper_only_m) continue;
      any = true;
      const mdeck::BitString a = pair.a.expand();
      const mdeck::BitString b = pair.b.expand();
      const auto t0 = std::chrono::steady_clock::now();
      const auto distinct = mdeck::verify_pair(a, b, pair.m);
      const double dt = std::chrono::duration<double>(
          std::chrono::steady_clock::now() - t0).count();
      if (paper_machine) {
        std::cout << "pair_m=" << pair.m << " n=" << a.size() << " outcome="
                  << (distinct ? "distinct" : "collide");
        if (distinct) std::cout << " y=" << distinct->word.text();
        std::cout << "\n";
      } else {
        std::cout << "pair m=" << pair.m << " n=" << a.size() << " "
                  << (distinct ? "DISTINCT" : "collide");
        if (distinct)
          std::cout << " at y=" << distinct->word.text() << " counts "
                    << distinct->count_a.str() << " vs " << distinct->count_b.str();
        std::cout << " (" << format_ms(dt) << ")\n";
      }
      if (distinct) all_collide = false;
    }
    if (!any) throw mdeck::DomainError("no pair with the requested m in the corpus");
    if (!paper_machine && all_collide && paper_only_m == 0)
      std::cout << "all " << corpus.size() << " pairs collide\n";
    return all_collide ? kExitOk : kExitNegative;
  }

  if (cmd_search->parsed()) {
    const auto cfg = make_config(search_threads, search_partition, search_passes,
                                 search_budget);
    const auto report = mdeck::check_R(search_m, search_n, cfg);
    if (search_machine) {
      std::cout << "outcome=" << (report.holds ? "holds" : "fails") << "\n"
                << "m=" << report.m << "\n"
                << "n=" << report.n << "\n";
      if (report.witness)
        std::cout << "witness_a=" << report.witness->first.text() << "\n"
                  << "witness_b=" << report.witness->second.text() << "\n";
      print_stats_machine(report.stats);
    } else {
      std::cout << "R(" << report.m << "," << report.n << ") "
                << (report.holds ? "holds" : "fails") << "\n";
      if (report.witness)
        std::cout << "witness a=" << report.witness->first.text()
                  << " b=" << report.witness->second.text() << "\n";
      print_stats_human(report.stats);
    }
    return report.holds ? kExitOk : kExitNegative;
  }

  if (cmd_nm->parsed()) {
    const auto cfg = make_config(nm_threads, nm_partition, nm_passes, nm_budget);
    const auto result = mdeck::compute_N(nm_m, nm_cap, cfg);
    mdeck::SearchStats totals;
    for (const auto& r : result.reports) {
      totals.strings_enumerated += r.stats.strings_enumerated;
      totals.decks_computed += r.stats.decks_computed;
      totals.entries_inserted += r.stats.entries_inserted;
      totals.candidate_groups += r.stats.candidate_groups;
      totals.collisions_confirmed += r.stats.collisions_confirmed;
      totals.partitions += r.stats.partitions;
      totals.rounds += r.stats.rounds;
      totals.wall_seconds += r.stats.wall_seconds;
    }
    if (nm_machine) {
      std::cout << "m=" << nm_m << "\n"
                << "n_m=" << result.value << "\n"
                << "capped=" << (result.capped ? "yes" : "no") << "\n";
      for (const auto& r : result.reports) {
        std::cout << "R(" << r.m << "," << r.n << ")="
                  << (r.holds ? "holds" : "fails");
        if (r.witness)
          std::cout << " witness_a=" << r.witness->first.text()
                    << " witness_b=" << r.witness->second.text();
        std::cout << "\n";
      }
      print_stats_machine(totals);
    } else {
      for (const auto& r : result.reports) {
        std::cout << "R(" << r.m << "," << r.n << ") "
                  << (r.holds ? "holds" : "fails");
        if (r.witness)
          std::cout << " witness a=" << r.witness->first.text()
                    << " b=" << r.witness->second.text();
        std::cout << " (" << format_ms(r.stats.wall_seconds) << ")\n";
      }
      print_stats_human(totals);
      if (result.capped)
        std::cout << "N_" << nm_m << " >= " << result.value << " (capped at --max-n)\n";
      else
        std::cout << "N_" << nm_m << " = " << result.value << "\n";
    }
    return kExitOk;
  }

  if (cmd_rec->parsed()) {
    mdeck::Deck d = rec_deck == "-" ? mdeck::read_deck(std::cin)
                                    : mdeck::load_deck(rec_deck);
    if (rec_m >= 0 && rec_m != d.m())
      throw mdeck::DomainError("deck order " + std::to_string(d.m()) +
                               " does not match -m " + std::to_string(rec_m));
    std::cout << mdeck::reconstruct_runs(d).text() << "\n";
    return kExitOk;
  }

  if (cmd_inv->parsed()) {
    mdeck::Deck d = inv_deck == "-" ? mdeck::read_deck(std::cin)
                                    : mdeck::load_deck(inv_deck);
    const auto preimages = mdeck::invert_deck_bruteforce(d);
    for (const auto& x : preimages) std::cout << x.text() << "\n";
    std::cout << "count=" << preimages.size() << "\n";
    return kExitOk;
  }

  if (cmd_sample->parsed()) {
    const mdeck::BitString x = mdeck::parse_rle(sample_input);
    std::uint64_t seed;
    if (sample_seed) {
      seed = *sample_seed;
    } else {
      std::random_device rd;  // OS entropy, only when the user omits --seed
      seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    const auto batch = mdeck::sample_batch(x, sample_m, sample_count, seed,
                                           sample_threads);
    if (sample_output.empty()) {
      mdeck::write_batch(std::cout, batch);
    } else {
      std::ofstream out(sample_output);
      if (!out) throw mdeck::ResourceError("cannot write " + sample_output);
      mdeck::write_batch(out, batch);
      std::cout << "wrote " << batch.count << " samples (m=" << batch.m
                << ", seed=" << batch.seed << ") to " << sample_output << "\n";
    }
    return kExitOk;
  }

  if (cmd_disc->parsed()) {
    const auto batch = mdeck::load_batch(disc_batch);
    std::vector<mdeck::BitString> candidates;
    for (const auto& s : disc_candidates) candidates.push_back(mdeck::parse_rle(s));
    if (!disc_cand_file.empty()) {
      std::ifstream in(disc_cand_file);
      if (!in) throw mdeck::ResourceError("cannot open " + disc_cand_file);
      std::string line;
      while (std::getline(in, line))
        if (!line.empty()) candidates.push_back(mdeck::parse_rle(line));
    }
    const auto result = mdeck::discriminate(batch, candidates, batch.m);
    std::cout.setf(std::ios::fixed);
    std::cout.precision(6);
    for (std::size_t i = 0; i < candidates.size(); ++i)
      std::cout << "loglik " << candidates[i].text() << " "
                << result.log_likelihood[i] << "\n";
    std::cout << "argmax";
    for (std::size_t i : result.argmax) std::cout << " " << candidates[i].text();
    std::cout << "\n";
    return kExitOk;
  }

  if (cmd_bounds->parsed()) {
    const auto report = mdeck::bound_report(bounds_m);
    std::cout << "m=" << report.m << " lower=";
    if (report.linear_lower)
      std::cout << *report.linear_lower;
    else
      std::cout << "-";
    std::cout << " known=";
    if (report.known_n)
      std::cout << *report.known_n;
    else
      std::cout << "-";
    if (report.collision_cap) std::cout << " paper_cap=" << *report.collision_cap;
    std::cout << " pigeonhole_upper=" << report.pigeonhole_upper
              << " consistent=" << (report.consistent ? "yes" : "no") << "\n";
    return report.consistent ? kExitOk : kExitNegative;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const mdeck::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mdeck::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mdeck::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const mdeck::IntegrityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  }
}
