// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <algorithm>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include "freelike/cayley.hpp"
#include "freelike/cli.hpp"
#include "freelike/finite_group.hpp"
#include "freelike/groupcert.hpp"
#include "freelike/io.hpp"
#include "freelike/percolation.hpp"

using namespace freelike;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::ostringstream line;
  line << "AC" << id << ' ' << (o.pass ? "PASS" : "FAIL") << ": " << o.detail;
  line.precision(1);
  line << std::fixed << " [" << seconds_since(t0) << " s]";
  std::cout << line.str() << std::endl;
}

struct CliRun {
  int code = 0;
  std::string out;
};

CliRun cli_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  return r;
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("freelike_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Word random_reduced(std::mt19937_64& rng, int rank, std::size_t len) {
  std::vector<Letter> raw;
  std::uniform_int_distribution<int> g(0, rank - 1), s(0, 1);
  while (raw.size() < len) {
    const Letter l(g(rng), s(rng) ? 1 : -1);
    if (!raw.empty() && cancels(raw.back(), l)) continue;
    raw.push_back(l);
  }
  return reduce(raw, rank);
}

Presentation verified(std::vector<int> js) {
  return verify_c_prime(Presentation(2, make_family(js, default_family_coefficients())), Rational(1, 6));
}

GeneratingSet free_basis(int k) {
  std::vector<Word> g;
  for (int i = 0; i < k; ++i) g.push_back(generator(i, k));
  return make_generating_set(std::move(g));
}

PercGraph small_graph(int n, std::vector<std::pair<int, int>> edges, int target) {
  PercGraph g;
  g.vertex_count = n;
  g.edges = std::move(edges);
  g.root = 0;
  g.target = {target};
  g.validate();
  return g;
}

std::string fmt(double x, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << x;
  return s.str();
}

Outcome ac1() {
  const std::string path = (scratch() / "family.txt").string();
  if (cli_run({"family-gen", "--j", "1,2,3", "--out", path}).code != 0) return {false, "family-gen failed"};
  const auto t0 = Clock::now();
  const CliRun sc = cli_run({"check-sc", "--presentation", path, "--lambda", "1/6"});
  const double elapsed = seconds_since(t0);
  const auto j = nlohmann::json::parse(sc.out);
  const auto& r = j["result"];
  const bool all = sc.code == 0 && r["closed_under_shifts"] == true && r["c_prime_ok"] == true &&
                   r["forbidden_prefix_ok"] == true && r["min_length_ok"] == true &&
                   r["positive_ok"] == true && r["lambda"] == "1/6";

  Presentation p = parse_presentation(read_text_file(path));
  std::vector<Word> mutated = p.base_relators();
  mutated[0] = concat(mutated[0], generator(0, 2));
  const std::string mpath = (scratch() / "mutated.txt").string();
  write_text_file(mpath, format_presentation(Presentation(2, mutated)));
  const CliRun ms = cli_run({"check-sc", "--presentation", mpath});
  const auto mj = nlohmann::json::parse(ms.out);
  const auto& m = mj["result"];
  const bool flipped = m["forbidden_prefix_ok"] == false || m["c_prime_ok"] == false;
  return {all && elapsed < 60 && flipped,
          "j=1,2,3 family all conditions " + std::string(all ? "true" : "NOT all true") + " in " +
              fmt(elapsed, 2) + " s; mutated relator: forbidden_prefix_ok=" +
              m["forbidden_prefix_ok"].dump() + ", c_prime_ok=" + m["c_prime_ok"].dump()};
}

Outcome ac2() {
  const auto t0 = Clock::now();
  const Presentation p = verified({1});
  const Word r = p.base_relators()[0];
  std::mt19937_64 rng(2024);

  int trivial_ok = 0;
  for (int i = 0; i < 200; ++i) {
    Word w(2);
    const int factors = 1 + static_cast<int>(rng() % 3);
    for (int f = 0; f < factors; ++f) {
      const Word g = random_reduced(rng, 2, rng() % 8);
      const Word rel = rotate(rng() % 2 ? r : invert(r), rng() % r.size());
      w = concat(w, concat(concat(g, rel), invert(g)));
    }
    trivial_ok += dehn_trivial(w, p);
  }

  std::uint64_t canonical = 0, canonical_bad = 0;
  for_each_word(2, 20, EnumMode::cyclically_reduced_canonical, [&](const Word& w) {
    ++canonical;
    canonical_bad += dehn_trivial(w, p);
    return true;
  });
  std::uint64_t direct = 0, direct_bad = 0;
  for_each_word(2, 12, EnumMode::all_reduced, [&](const Word& w) {
    ++direct;
    direct_bad += dehn_trivial(w, p);
    return true;
  });
  int random_bad = 0;
  for (int i = 0; i < 200; ++i) random_bad += dehn_trivial(random_reduced(rng, 2, 1 + rng() % 1000), p);

  const double elapsed = seconds_since(t0);
  const bool pass = trivial_ok == 200 && canonical_bad == 0 && direct_bad == 0 && random_bad == 0 &&
                    elapsed < 120;
  return {pass, std::to_string(trivial_ok) + "/200 conjugated products trivial; " +
                    std::to_string(canonical) + " cyclic classes of length <= 20 (" +
                    std::to_string(canonical_bad) + " trivial), " + std::to_string(direct) +
                    " reduced words of length <= 12 (" + std::to_string(direct_bad) +
                    " trivial), 200 random words of length <= 1000 (" + std::to_string(random_bad) +
                    " trivial)"};
}

Outcome ac3() {
  const auto oracle = small_cancellation_oracle(verified({1, 2, 3}));
  bool pass = true;
  std::string detail;
  for (auto [k, n] : {std::pair{2, 6}, std::pair{3, 6}, std::pair{2, 10}}) {
    const auto t0 = Clock::now();
    const auto cert = girth_scan(oracle, xn_generating_set(k, n), n);
    const double elapsed = seconds_since(t0);
    const bool ok = !cert.shortest_relation && elapsed < 600;
    pass &= ok;
    if (!detail.empty()) detail += "; ";
    detail += "X" + std::to_string(n) + "(" + std::to_string(k) + ") L=" + std::to_string(n) + ": ";
    detail += cert.shortest_relation
                  ? "relation " + format_word(*cert.shortest_relation, WordStyle::variables) + " found"
                  : "girth >= " + std::to_string(cert.girth_bound());
  }
  return {pass, detail};
}

Outcome ac4() {
  const auto oracle = small_cancellation_oracle(verified({1, 2, 3}));
  bool pass = true;
  std::string detail;
  for (int n : {6, 10}) {
    const Word second = concat(generator(1, 2), power(generator(0, 2), n));
    const auto cert = free_subgroup_scan(oracle, power(generator(0, 2), 4), second, 8);
    pass &= !cert.shortest_relation;
    if (!detail.empty()) detail += "; ";
    detail += "(a^4, " + format_word(second) + ") L=8: " +
              (cert.shortest_relation ? "relation found" : "no relation");
  }
  return {pass, detail};
}

Outcome ac5() {
  const auto wit = independent_relators(verified({1, 2, 3}));
  return {!wit, wit ? "overlap of " + std::to_string(wit->overlap) + " letters found" : "j=1,2,3 relators independent"};
}

Outcome ac6() {
  const auto ball = build_ball(free_group_oracle(2), free_basis(2), 6);
  bool pass = ball.vertex_count() == 1457;
  const auto cb = cheeger_upper_bound(ball, {CandidateFamily::sub_balls()});
  long pow3 = 1;
  for (int s = 1; s <= 5; ++s) {
    pow3 *= 3;
    const Rational expect(4 * pow3 / 3, 2 * pow3 - 1);
    pass &= cb.candidates[static_cast<std::size_t>(s)].ratio == expect;
  }
  return {pass, std::to_string(ball.vertex_count()) + " vertices at r=6; sub-ball ratios s=1..5 " +
                    (pass ? "exact" : "MISMATCH") + ", best " + cb.best_ratio.to_string()};
}

Outcome ac7() {
  const std::vector<std::pair<std::string, PercGraph>> graphs = {
      {"edge", small_graph(2, {{0, 1}}, 1)},
      {"parallel pair", small_graph(2, {{0, 1}, {0, 1}}, 1)},
      {"3-path", small_graph(4, {{0, 1}, {1, 2}, {2, 3}}, 3)},
      {"4-cycle", small_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, 2)},
  };
  const std::vector<double> ps = {0.25, 0.5, 0.75};
  bool pass = true;
  int agree = 0;
  std::uint64_t realizations = 0, violations = 0;
  for (const auto& [name, g] : graphs) {
    for (double p : ps) {
      const auto pt = crossing_probability(g, p, 10000, kDefaultSeed);
      const bool ok = wilson_interval(pt.crossings, pt.trials, 3.0).contains(exact_crossing_small(g, p));
      agree += ok;
      pass &= ok;
    }
    for (std::uint64_t t = 0; t < 10000; ++t) {
      std::vector<bool> prev(g.edges.size(), false);
      bool prev_cross = false;
      for (double p : ps) {
        const auto open = sample_open_edges(g, p, kDefaultSeed, t);
        const bool cross = root_reaches_target(g, open);
        for (std::size_t e = 0; e < open.size(); ++e) violations += prev[e] && !open[e];
        violations += prev_cross && !cross;
        prev = open;
        prev_cross = cross;
        ++realizations;
      }
    }
  }
  pass &= violations == 0;
  return {pass, std::to_string(agree) + "/12 exact values inside the z=3 Wilson interval; " +
                    std::to_string(realizations) + " coupled realizations, " +
                    std::to_string(violations) + " monotonicity violations"};
}

Outcome ac8() {
  std::vector<double> est;
  std::string detail;
  for (int r : {6, 8, 10}) {
    const auto ball = build_ball(free_group_oracle(2), free_basis(2), r);
    const auto t = threshold_estimate(perc_graph_from_ball(ball), 2000, 0.5, kDefaultSeed);
    est.push_back(t.p_hat);
    if (!detail.empty()) detail += ", ";
    detail += "r=" + std::to_string(r) + ": " + fmt(t.p_hat);
  }
  const bool decreasing = est[0] > est[1] && est[1] > est[2];
  const double ref = pc_reference(2).to_double();
  const bool above = std::all_of(est.begin(), est.end(), [&](double x) { return x >= ref; });
  const bool cap = est[2] <= 0.45;
  return {decreasing && above && cap,
          detail + "; strictly decreasing: " + (decreasing ? "yes" : "no") + ", all >= 1/3: " +
              (above ? "yes" : "no") + ", r=10 <= 0.45: " + (cap ? "yes" : "no")};
}

// Shortest canonical rank-3 word, not a proper power and using every
// generator, that satisfies C'(1/6) on its own.
Word short_c6_relator() {
  Word found(3);
  for_each_word(3, 10, EnumMode::cyclically_reduced_canonical, [&](const Word& w) {
    if (w.size() < 7 || primitive_root(w).exponent != 1) return true;
    for (int g = 0; g < 3; ++g) {
      if (std::none_of(w.begin(), w.end(), [g](Letter l) { return l.generator() == g; })) return true;
    }
    const Presentation p(3, {w});
    if (!check_c_prime(p, Rational(1, 6)).ok) return true;
    found = w;
    return false;
  });
  return found;
}

Outcome ac9() {
  const Presentation fam = verified({1, 2, 3});
  const auto same = compare_quotient_vs_tree(fam, xn_generating_set(2, 6), 3, 2000);
  const bool identical = same.graphs_identical && same.difference == 0.0;

  const Word rel = short_c6_relator();
  if (rel.empty()) return {false, "no short C'(1/6) relator found"};
  const Presentation toy = verify_c_prime(Presentation(3, {rel}), Rational(1, 6));
  const int radius = static_cast<int>(rel.size() + 1) / 2;
  const auto q = compare_quotient_vs_tree(toy, free_basis(3), radius, 2000);
  const bool monotone = !q.graphs_identical && q.group.p_hat >= q.tree.p_hat - 2 * q.sigma;
  return {identical && monotone,
          std::string("X6(2) r=3: ") + (same.graphs_identical ? "identical graphs" : "graphs differ") +
              ", difference " + fmt(same.difference) + "; toy quotient <a,b,c | " + format_word(rel) +
              "> r=" + std::to_string(radius) + ": " + std::to_string(q.group_vertices) + " vs " +
              std::to_string(q.tree_vertices) + " vertices, p_G " + fmt(q.group.p_hat) + ", p_tree " +
              fmt(q.tree.p_hat) + ", sigma " + fmt(q.sigma)};
}

Outcome ac10() {
  const auto t0 = Clock::now();
  const FiniteGroup q8 = quaternion_group();
  const FiniteGroup s3 = symmetric_group_3();
  const Word q = parse_word("x1^2 x2^2", 2);
  const Word s = parse_word("x1^2 x2 x1^2 x2^-1", 2);
  const auto qa = verify_almost_identity(q8, q, 2);
  const auto qi = is_identity(q8, q, 2);
  const auto sa = verify_almost_identity(s3, s, 2);
  const auto si = is_identity(s3, s, 2);
  bool pass = qa.holds && !qi.holds && sa.holds && !si.holds;

  const Word u = almost_identity_for_girth_bound(2, 2);
  const auto ws = enumerate_words(2, 2, EnumMode::all_reduced);
  std::uint64_t killed = 0, missed = 0;
  for (const FiniteGroup* g : {&q8, &s3}) {
    for (int x = 0; x < g->order(); ++x) {
      for (int y = 0; y < g->order(); ++y) {
        const std::vector<int> t = {x, y};
        const bool dies = std::any_of(ws.begin(), ws.end(), [&](const Word& w) {
          return evaluate_word(*g, w, t) == g->identity();
        });
        if (!dies) continue;
        ++killed;
        missed += evaluate_word(*g, u, t) != g->identity();
      }
    }
  }
  const double elapsed = seconds_since(t0);
  pass &= !u.empty() && missed == 0 && elapsed < 5;
  return {pass, "Q8 x1^2x2^2 almost identity, not identity (" + format_tuple(q8, qi.counterexample->tuple) +
                    "); S3 x1^2x2x1^2x2^-1 almost identity, not identity (" +
                    format_tuple(s3, si.counterexample->tuple) + "); N=2 construction length " +
                    std::to_string(u.size()) + " vanishes on " + std::to_string(killed - missed) + "/" +
                    std::to_string(killed) + " killing pairs"};
}

Outcome ac11() {
  const auto w = girth_witness_mod_n(std::vector<Word>{parse_word("a", 2), parse_word("b", 2)}, 5);
  const auto ng = girth_witness_mod_n(std::vector<Word>{parse_word("a^5b^5", 2), parse_word("b^5", 2)}, 5);
  bool pass = w.generating && w.witness &&
              substitute(*w.witness, std::vector<Word>{parse_word("a", 2), parse_word("b", 2)}) ==
                  parse_word("a^5", 2) &&
              !ng.generating;

  std::mt19937_64 rng(11);
  int agree = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const long n = 2 + static_cast<long>(rng() % 9);
    const std::size_t k = 1 + rng() % 3;
    std::vector<Word> tuple;
    std::vector<std::pair<long, long>> vs;
    while (tuple.size() < k) {
      Word x = random_reduced(rng, 2, 1 + rng() % 10);
      if (trial % 5 == 0) x = power(x, n);
      long ea = 0, eb = 0;
      for (Letter l : x) (l.generator() == 0 ? ea : eb) += l.sign();
      vs.push_back({ea, eb});
      tuple.push_back(x);
    }
    std::set<std::pair<long, long>> image = {{0, 0}};
    for (bool grew = true; grew;) {
      grew = false;
      const std::vector<std::pair<long, long>> cur(image.begin(), image.end());
      for (auto [x, y] : cur) {
        for (auto [a, b] : vs) grew |= image.insert({((x + a) % n + n) % n, ((y + b) % n + n) % n}).second;
      }
    }
    const auto got = girth_witness_mod_n(tuple, static_cast<int>(n));
    agree += got.generating == (static_cast<long>(image.size()) == n * n) &&
             got.image_order == static_cast<std::int64_t>(image.size());
  }
  pass &= agree == 100;
  return {pass, std::string("(a,b) n=5 -> ") + (w.witness ? format_word(substitute(*w.witness, std::vector<Word>{parse_word("a", 2), parse_word("b", 2)})) : "none") +
                    "; (a^5b^5, b^5) -> " + (ng.generating ? "generating" : "not generating") + "; " +
                    std::to_string(agree) + "/100 random tuples match the (Z/n)^2 closure"};
}

Outcome ac12() {
  const std::string adj = (scratch() / "ball6.adj").string();
  if (cli_run({"ball", "--gens", "a, b", "--radius", "6", "--export", "adjacency", "--out", adj}).code != 0) {
    return {false, "ball export failed"};
  }
  const std::string fam = (scratch() / "family.txt").string();
  if (!fs::exists(fam)) cli_run({"family-gen", "--j", "1,2,3", "--out", fam});
  const std::vector<std::vector<std::string>> commands = {
      {"percolate", "--graph", adj, "--p", "0.4", "--trials", "10000", "--seed", "7"},
      {"pc-estimate", "--graph", adj, "--trials", "2000", "--seed", "7"},
      {"cheeger", "--gens", "a, b", "--radius", "6", "--family", "both", "--seed", "7"},
      {"pc-compare", "--presentation", fam, "--gens", "a, ba^6", "--radius", "3", "--seed", "7"},
      {"girth", "--presentation", fam, "--gens", "a, ba^6", "--max-len", "6"},
  };
  int identical = 0, total = 0;
  for (const auto& cmd : commands) {
    const CliRun base = cli_run(cmd);
    if (base.code != 0) return {false, cmd[0] + " failed"};
    const std::string report = (scratch() / ("report_" + cmd[0] + ".json")).string();
    write_text_file(report, base.out);
    // cheeger is single-threaded and has no --workers flag; replay still accepts one.
    const bool threaded = cmd[0] != "cheeger";
    for (const char* workers : {"1", "2", "4"}) {
      if (threaded) {
        auto with = cmd;
        with.insert(with.end(), {"--workers", workers});
        identical += cli_run(with).out == base.out;
        ++total;
      }
      identical += cli_run({"replay", "--report", report, "--workers", workers}).out == base.out;
      ++total;
    }
  }
  return {identical == total, std::to_string(identical) + "/" + std::to_string(total) +
                                  " reruns byte-identical across workers 1, 2, 4 and replay"};
}

}  // namespace

int main() {
  report(1, ac1);
  report(2, ac2);
  report(3, ac3);
  report(4, ac4);
  report(5, ac5);
  report(6, ac6);
  report(7, ac7);
  report(8, ac8);
  report(9, ac9);
  report(10, ac10);
  report(11, ac11);
  report(12, ac12);
  std::error_code ec;
  fs::remove_all(scratch(), ec);
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
