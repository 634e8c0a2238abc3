#include "freelike/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "freelike/cayley.hpp"
#include "freelike/finite_group.hpp"
#include "freelike/groupcert.hpp"
#include "freelike/io.hpp"
#include "freelike/oracle.hpp"
#include "freelike/percolation.hpp"
#include "freelike/presentation.hpp"

namespace freelike::cli {

namespace {

using Json = nlohmann::ordered_json;

// Exit codes.
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

class UsageError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// ---------------------------------------------------------------------------
// Option registry: every subcommand records its options so that reports can
// embed the effective configuration and be replayed.

std::string config_string(const std::string& v) { return v; }
std::string config_string(bool v) { return v ? "true" : "false"; }
template <class T>
std::string config_string(const T& v) {
  return Json(v).dump();
}

struct Command {
  CLI::App* app = nullptr;
  std::vector<std::pair<std::string, std::function<std::string()>>> config;
  std::function<int(const Json& config, std::ostream& out)> execute;

  template <class T>
  CLI::Option* option(const std::string& name, T& var, const std::string& help, bool recorded = true,
                      const std::string& alias = {}) {
    std::string names = "--" + name;
    if (!alias.empty()) names += ",--" + alias;
    auto* opt = app->add_option(names, var, help)->capture_default_str();
    if (recorded) config.emplace_back(name, [&var] { return config_string(var); });
    return opt;
  }

  CLI::Option* flag(const std::string& name, bool& var, const std::string& help) {
    auto* opt = app->add_flag("--" + name, var, help);
    config.emplace_back(name, [&var] { return config_string(var); });
    return opt;
  }

  Json config_json() const {
    Json args = Json::object();
    for (const auto& [name, get] : config) args[name] = get();
    return Json{{"command", app->get_name()}, {"args", args}};
  }
};

// ---------------------------------------------------------------------------
// Shared helpers.

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(' ');
    const auto last = item.find_last_not_of(' ');
    if (first == std::string::npos) throw UsageError("empty entry in " + what);
    item = item.substr(first, last - first + 1);
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw UsageError("");
    } catch (const std::exception&) {
      throw UsageError("bad integer \"" + item + "\" in " + what);
    }
  }
  if (out.empty()) throw UsageError(what + " is empty");
  return out;
}

std::optional<Presentation> load_presentation(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return parse_presentation(read_text_file(path));
}

Presentation default_family() {
  const std::vector<int> js{1, 2, 3};
  const auto coeffs = default_family_coefficients();
  return Presentation(2, make_family(js, coeffs));
}

// Oracle for the group of `p`, or the free group when there are no relators.
GroupOracle group_oracle(const std::optional<Presentation>& p, int rank) {
  if (!p || p->base_relators().empty()) return free_group_oracle(p ? p->rank() : rank);
  return small_cancellation_oracle(verify_c_prime(*p, Rational(1, 6)));
}

GeneratingSet load_gens(const std::string& text, const std::optional<Presentation>& p) {
  const int rank = p ? p->rank() : std::max(1, infer_rank(text));
  return make_generating_set(parse_word_list(text, rank), text);
}

void check_positive(long long v, const std::string& name) {
  if (v < 1) throw UsageError("--" + name + " must be at least 1");
}

void check_workers(int workers) {
  if (workers < 1 || workers > 256) throw UsageError("--workers must lie in [1, 256]");
}

Json interval_json(const Interval& i) { return Json::array({i.lo, i.hi}); }

Json generating_set_json(const GeneratingSet& z) {
  Json words = Json::array();
  for (const Word& w : z.words) words.push_back(format_word(w));
  return Json{{"label", z.label}, {"words", words}};
}

Json girth_json(const GirthCertificate& c) {
  Json j;
  j["generating_set"] = generating_set_json(c.generating_set);
  j["scanned_up_to"] = c.scanned_up_to;
  if (c.shortest_relation) {
    j["shortest_relation"] = Json{{"word", format_word(*c.shortest_relation, WordStyle::variables)},
                                  {"length", c.shortest_relation->size()}};
    j["girth"] = c.girth_bound();
  } else {
    j["shortest_relation"] = nullptr;
    j["girth_at_least"] = c.girth_bound();
  }
  j["words_examined"] = c.words_examined;
  return j;
}

Json threshold_json(const ThresholdEstimate& t) {
  return Json{{"p_hat", t.p_hat},
              {"target_crossing", t.target_crossing},
              {"bracket", interval_json(t.bracket)},
              {"sigma", t.sigma},
              {"method", t.method},
              {"trials_per_probe", t.trials_per_probe},
              {"probes", t.probes},
              {"seed", t.seed}};
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    return;
  }
  out << prefix << ": ";
  if (j.is_string()) {
    out << j.get<std::string>();
  } else if (j.is_array()) {
    bool first = true;
    for (const auto& v : j) {
      out << (first ? "" : ", ") << (v.is_string() ? v.get<std::string>() : v.dump());
      first = false;
    }
  } else {
    out << j.dump();
  }
  out << "\n";
}

void emit(const Json& config, const Json& result, const std::string& format, std::ostream& out) {
  if (format == "text") {
    flatten(result, "", out);
    return;
  }
  out << Json{{"config", config}, {"result", result}}.dump(2) << "\n";
}

const auto kFormats = CLI::IsMember({"json", "text"});

// ---------------------------------------------------------------------------

class Program {
 public:
  Program() : app_("Small-cancellation groups, girth certificates, Cayley balls and percolation.", "freelike") {
    app_.require_subcommand(1);
    app_.fallthrough(false);
    family_gen();
    check_sc();
    wp();
    girth();
    freelike_report();
    almost_id();
    witness();
    ball();
    cheeger();
    percolate();
    pc_estimate();
    pc_compare();
    finite_verify();
    replay();
  }

  int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    std::reverse(args.begin(), args.end());
    try {
      app_.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
      app_.exit(e, out, err);
      return kOk;
    } catch (const CLI::CallForAllHelp& e) {
      app_.exit(e, out, err);
      return kOk;
    } catch (const CLI::ParseError& e) {
      app_.exit(e, out, err);
      return kUsage;
    }
    for (auto& cmd : commands_) {
      if (!app_.got_subcommand(cmd.app)) continue;
      try {
        return cmd.execute(cmd.config_json(), out);
      } catch (const FileError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
      } catch (const SmallCancellationViolation& e) {
        err << "error: " << e.what() << "\n";
        return kFailed;
      } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
      } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kFailed;
      } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kFailed;
      }
    }
    err << "error: no subcommand\n";
    return kUsage;
  }

 private:
  bool takes_workers(const std::string& name) {
    auto* sub = app_.get_subcommand_no_throw(name);
    return sub != nullptr && sub->get_option_no_throw("--workers") != nullptr;
  }

  Command& add(const std::string& name, const std::string& help) {
    commands_.emplace_back();
    commands_.back().app = app_.add_subcommand(name, help);
    return commands_.back();
  }

  void family_gen() {
    auto& c = add("family-gen", "Write the presentation a b^{c1 j} a b^{c2 j} ... for each j");
    c.option("j", j_list_, "comma-separated j values");
    c.option("coefficients", coefficients_, "comma-separated even coefficients (default 2,4,...,100)");
    c.option("out", out_path_, "output file (default stdout)", false);
    c.execute = [this](const Json&, std::ostream& out) {
      const auto js = parse_int_list(j_list_, "--j");
      const auto cs = coefficients_.empty() ? default_family_coefficients()
                                            : parse_int_list(coefficients_, "--coefficients");
      const std::string text = format_presentation(Presentation(2, make_family(js, cs)));
      if (out_path_.empty()) {
        out << text;
      } else {
        write_text_file(out_path_, text);
      }
      return kOk;
    };
  }

  void check_sc() {
    auto& c = add("check-sc", "Check the small-cancellation family conditions; exit 1 if any fails");
    c.option("presentation", presentation_, "presentation file", true, "file")->required();
    c.option("lambda", lambda_, "C'(lambda) bound, e.g. 1/6");
    c.option("format", format_, "json or text")->check(kFormats);
    c.execute = [this](const Json& config, std::ostream& out) {
      const Rational lambda = parse_rational(lambda_);
      const auto p = load_presentation(presentation_);
      const ScReport r = check_family_conditions(*p, lambda);
      Json j;
      j["relators"] = p->base_relators().size();
      j["symmetrized_size"] = p->symmetrized_size();
      j["min_relator_length"] = p->min_relator_length();
      j["lambda"] = r.lambda.to_string();
      j["closed_under_shifts"] = r.closed_under_shifts;
      j["c_prime_ok"] = r.c_prime_ok;
      if (r.c_prime_violation) {
        j["c_prime_violation"] = Json{{"r", format_word(r.c_prime_violation->r)},
                                      {"r_prime", format_word(r.c_prime_violation->r_prime)},
                                      {"common_prefix", r.c_prime_violation->lcp}};
      } else {
        j["c_prime_violation"] = nullptr;
      }
      j["forbidden_prefix_ok"] = r.forbidden_prefix_ok;
      j["forbidden_prefix_word"] =
          r.forbidden_prefix_word ? Json(format_word(*r.forbidden_prefix_word)) : Json(nullptr);
      j["min_length_ok"] = r.min_length_ok;
      j["positive_ok"] = r.positive_ok;
      j["all_ok"] = r.all_ok();
      emit(config, j, format_, out);
      return r.all_ok() ? kOk : kFailed;
    };
  }

  void wp() {
    auto& c = add("wp", "Decide whether a word is trivial (Dehn's algorithm, needs C'(1/6))");
    c.option("presentation", presentation_, "presentation file", true, "file")->required();
    c.option("word", word_, "word, e.g. abAB")->required();
    c.flag("trace", trace_, "print every reduction step");
    c.option("format", text_format_, "text or json")->check(kFormats);
    c.execute = [this](const Json& config, std::ostream& out) {
      const auto p = verify_c_prime(*load_presentation(presentation_), Rational(1, 6));
      const Word w = parse_word(word_, p.rank());
      std::vector<DehnStep> steps;
      const bool trivial = dehn_trivial(w, p, trace_ ? &steps : nullptr);
      if (text_format_ == "text") {
        out << (trivial ? "trivial" : "nontrivial") << "\n";
        for (std::size_t i = 0; i < steps.size(); ++i) {
          const auto& s = steps[i];
          out << "step " << i + 1 << ": " << format_word(s.before) << " -> " << format_word(s.after)
              << "  (piece " << format_word(s.match.piece) << " at " << s.match.position << " of relator "
              << format_word(s.match.relator) << ")\n";
        }
        return kOk;
      }
      Json j{{"word", format_word(w)}, {"trivial", trivial}};
      if (trace_) {
        Json t = Json::array();
        for (const auto& s : steps) {
          t.push_back(Json{{"before", format_word(s.before)},
                           {"position", s.match.position},
                           {"piece", format_word(s.match.piece)},
                           {"relator", format_word(s.match.relator)},
                           {"after", format_word(s.after)}});
        }
        j["trace"] = t;
      }
      emit(config, j, "json", out);
      return kOk;
    };
  }

  void girth() {
    auto& c = add("girth", "Certify a girth lower bound by exhaustive scan of cyclic words");
    c.option("presentation", presentation_, "presentation file (default: free group)", true, "file");
    c.option("gens", gens_, "generating words, e.g. \"a, ba^6\"")->required();
    c.option("max-len", max_len_, "scan cyclic words up to this length")->required();
    c.option("budget", scan_budget_, "cap on words examined");
    c.option("format", format_, "json or text")->check(kFormats);
    c.option("workers", workers_, "worker threads (output does not depend on it)", false);
    c.execute = [this](const Json& config, std::ostream& out) {
      check_positive(max_len_, "max-len");
      check_workers(workers_);
      const auto p = load_presentation(presentation_);
      const auto z = load_gens(gens_, p);
      const auto oracle = group_oracle(p, z.ambient_rank());
      const auto cert = girth_scan(oracle, z, max_len_, {scan_budget_, workers_});
      emit(config, girth_json(cert), format_, out);
      return kOk;
    };
  }

  void freelike_report() {
    auto& c = add("freelike-report", "Girth, free-subgroup and Cheeger evidence for X_n(k)");
    c.option("presentation", presentation_, "presentation file (default: the j = 1,2,3 family)", true, "file");
    c.option("k", k_, "number of generators");
    c.option("n", n_, "n = 2 (mod 4)")->required();
    c.option("scan", scan_len_, "girth scan length (default n)");
    c.option("free-scan", free_scan_len_, "scan length for <x1^4, x2>");
    c.option("ball", ball_radius_, "ball radius for the Cheeger bound");
    c.option("budget", scan_budget_, "cap on words examined per scan");
    c.option("format", format_, "json or text")->check(kFormats);
    c.option("workers", workers_, "worker threads (output does not depend on it)", false);
    c.execute = [this](const Json& config, std::ostream& out) {
      check_workers(workers_);
      const Presentation p = presentation_.empty() ? default_family() : *load_presentation(presentation_);
      EvidenceOptions opts;
      opts.scan_len = scan_len_;
      opts.free_scan_len = free_scan_len_;
      opts.ball_radius = ball_radius_;
      opts.scan = {scan_budget_, workers_};
      const auto ev = free_like_evidence(verify_c_prime(p, Rational(1, 6)), k_, n_, opts);
      Json j;
      j["k"] = ev.k;
      j["n"] = ev.n;
      j["girth_certificate"] = girth_json(ev.girth_certificate);
      j["free_subgroup_scan_bound"] = ev.free_subgroup_scan_bound;
      j["free_subgroup_certificate"] = girth_json(ev.free_subgroup_certificate);
      j["ball_radius"] = ev.ball_radius;
      j["ball_vertices"] = ev.ball_vertices;
      j["cheeger_upper_bound"] = ev.cheeger_upper_bound.to_string();
      j["cheeger_upper_bound_decimal"] = ev.cheeger_upper_bound.to_double();
      j["notes"] = ev.notes;
      emit(config, j, format_, out);
      return kOk;
    };
  }

  void almost_id() {
    auto& c = add("almost-id", "Build a word vanishing whenever some short word vanishes");
    c.option("k", k_, "number of variables");
    c.option("max-word-len", max_word_len_, "use every nontrivial word of length <= N");
    c.option("words", words_, "explicit word list instead of --max-word-len");
    c.option("max-words", max_words_, "cap on the number of input words");
    c.option("max-length", max_length_, "cap on intermediate word length");
    c.option("style", style_, "letters or variables")->check(CLI::IsMember({"letters", "variables"}));
    c.option("format", text_format_, "text or json")->check(kFormats);
    c.execute = [this](const Json& config, std::ostream& out) {
      const AlmostIdentityCaps caps{max_words_, max_length_};
      Word u;
      std::size_t used = 0;
      if (!words_.empty()) {
        const auto ws = parse_word_list(words_, std::max(k_, infer_rank(words_)));
        used = ws.size();
        u = build_almost_identity(ws, caps);
      } else {
        if (max_word_len_ < 1) throw UsageError("give --max-word-len or --words");
        used = count_reduced_words(k_, max_word_len_);
        u = almost_identity_for_girth_bound(k_, max_word_len_, caps);
      }
      const auto style = style_ == "variables" ? WordStyle::variables : WordStyle::letters;
      if (text_format_ == "text") {
        out << format_word(u, style) << "\n";
        return kOk;
      }
      emit(config, Json{{"words_used", used}, {"length", u.size()}, {"word", format_word(u, style)}}, "json", out);
      return kOk;
    };
  }

  void witness() {
    auto& c = add("witness", "Exponent-sum witness x_i^n for a tuple over {a, b}");
    c.option("n", n_, "modulus n >= 2")->required();
    c.option("tuple", tuple_, "words over a, b, e.g. \"ab, b\"")->required();
    c.option("format", format_, "json or text")->check(kFormats);
    c.execute = [this](const Json& config, std::ostream& out) {
      const auto tuple = parse_word_list(tuple_, 2);
      const auto w = girth_witness_mod_n(tuple, n_);
      Json vectors = Json::array();
      for (const auto& v : w.vectors) vectors.push_back(Json::array({v[0], v[1]}));
      Json j;
      j["n"] = n_;
      j["vectors"] = vectors;
      j["image_order"] = w.image_order;
      j["generating"] = w.generating;
      if (w.generating) {
        j["result"] = "witness";
        j["index"] = w.index;
        j["witness"] = format_word(*w.witness, WordStyle::variables);
        j["relation_length"] = static_cast<std::size_t>(n_) * tuple[w.index - 1].size();
      } else {
        j["result"] = "not_generating";
      }
      emit(config, j, format_, out);
      return kOk;
    };
  }

  void ball() {
    auto& c = add("ball", "Export a Cayley ball as adjacency text or dot");
    c.option("presentation", presentation_, "presentation file (default: free group)", true, "file");
    c.option("gens", gens_, "generating words")->required();
    c.option("radius", radius_, "ball radius")->required();
    c.option("export", export_, "adjacency or dot")->check(CLI::IsMember({"adjacency", "dot"}));
    c.option("budget", ball_budget_, "cap on vertices");
    c.option("out", out_path_, "output file (default stdout)", false);
    c.execute = [this](const Json&, std::ostream& out) {
      const auto p = load_presentation(presentation_);
      const auto z = load_gens(gens_, p);
      const auto b = build_ball(group_oracle(p, z.ambient_rank()), z, radius_, ball_budget_);
      const std::string text = export_graph(b, export_ == "dot" ? GraphFormat::dot : GraphFormat::adjacency);
      if (out_path_.empty()) {
        out << text;
      } else {
        write_text_file(out_path_, text);
      }
      return kOk;
    };
  }

  void cheeger() {
    auto& c = add("cheeger", "Upper bound on the Cheeger constant from candidate sets in a ball");
    c.option("presentation", presentation_, "presentation file (default: free group)", true, "file");
    c.option("gens", gens_, "generating words")->required();
    c.option("radius", radius_, "ball radius")->required();
    c.option("family", family_, "sub-balls, random or both")
        ->check(CLI::IsMember({"sub-balls", "random", "both"}));
    c.option("count", random_count_, "number of random connected sets");
    c.option("size", random_size_, "size of each random set (default: half the interior)");
    c.option("seed", seed_, "seed for random sets");
    c.option("budget", ball_budget_, "cap on vertices");
    c.option("format", format_, "json or text")->check(kFormats);
    c.execute = [this](const Json& config, std::ostream& out) {
      check_positive(radius_, "radius");
      const auto p = load_presentation(presentation_);
      const auto z = load_gens(gens_, p);
      const auto b = build_ball(group_oracle(p, z.ambient_rank()), z, radius_, ball_budget_);
      std::vector<CandidateFamily> families;
      if (family_ != "random") families.push_back(CandidateFamily::sub_balls());
      if (family_ != "sub-balls") {
        const auto interior = static_cast<std::size_t>(b.layer_begin(b.radius()));
        const std::size_t size = random_size_ > 0 ? random_size_ : std::max<std::size_t>(1, interior / 2);
        families.push_back(CandidateFamily::random_connected(random_count_, size, seed_));
      }
      const auto bound = cheeger_upper_bound(b, families);
      Json cands = Json::array();
      for (const auto& cand : bound.candidates) {
        cands.push_back(Json{{"label", cand.label},
                             {"size", cand.size},
                             {"boundary", cand.boundary},
                             {"ratio", cand.ratio.to_string()}});
      }
      Json j;
      j["radius"] = b.radius();
      j["vertices"] = b.vertex_count();
      j["best_ratio"] = bound.best_ratio.to_string();
      j["best_ratio_decimal"] = bound.best_ratio.to_double();
      j["best_set"] = bound.best_label;
      j["best_set_size"] = bound.best_set.size();
      j["candidates"] = cands;
      emit(config, j, format_, out);
      return kOk;
    };
  }

  void percolate() {
    auto& c = add("percolate", "Monte Carlo root-to-target crossing probability");
    c.option("graph", graph_, "adjacency file from `ball`")->required();
    c.option("p", p_, "bond probability")->required();
    c.option("trials", trials_, "number of trials");
    c.option("seed", seed_, "random seed");
    c.option("format", format_, "json or text")->check(kFormats);
    c.option("workers", workers_, "worker threads (output does not depend on it)", false);
    c.execute = [this](const Json& config, std::ostream& out) {
      check_workers(workers_);
      const auto g = parse_perc_graph(read_text_file(graph_));
      const auto pt = crossing_probability(g, p_, trials_, seed_, workers_);
      Json j{{"p", pt.p},
             {"trials", pt.trials},
             {"crossings", pt.crossings},
             {"estimate", pt.estimate.to_string()},
             {"estimate_decimal", pt.estimate.to_double()},
             {"ci95", interval_json(pt.ci95)}};
      emit(config, j, format_, out);
      return kOk;
    };
  }

  void pc_estimate() {
    auto& c = add("pc-estimate", "Bisection for the p with crossing probability equal to the target");
    c.option("graph", graph_, "adjacency file from `ball`")->required();
    c.option("trials", probe_trials_, "trials per probe");
    c.option("target", target_, "target crossing probability");
    c.option("seed", seed_, "random seed");
    c.option("format", format_, "json or text")->check(kFormats);
    c.option("workers", workers_, "worker threads (output does not depend on it)", false);
    c.execute = [this](const Json& config, std::ostream& out) {
      check_workers(workers_);
      const auto g = parse_perc_graph(read_text_file(graph_));
      emit(config, threshold_json(threshold_estimate(g, probe_trials_, target_, seed_, workers_)), format_, out);
      return kOk;
    };
  }

  void pc_compare() {
    auto& c = add("pc-compare", "Compare crossing thresholds of a group ball and the free tree ball");
    c.option("presentation", presentation_, "presentation file (default: free group)", true, "file");
    c.option("gens", gens_, "generating words")->required();
    c.option("radius", radius_, "ball radius")->required();
    c.option("trials", probe_trials_, "trials per probe");
    c.option("seed", seed_, "random seed");
    c.option("format", format_, "json or text")->check(kFormats);
    c.option("workers", workers_, "worker threads (output does not depend on it)", false);
    c.execute = [this](const Json& config, std::ostream& out) {
      check_positive(radius_, "radius");
      check_workers(workers_);
      auto p = load_presentation(presentation_);
      const auto z = load_gens(gens_, p);
      Presentation pres = p ? *p : Presentation::free(z.ambient_rank());
      if (!pres.base_relators().empty()) pres = verify_c_prime(pres, Rational(1, 6));
      const auto cmp = compare_quotient_vs_tree(pres, z, radius_, probe_trials_, seed_, workers_);
      Json j;
      j["radius"] = cmp.radius;
      j["group_vertices"] = cmp.group_vertices;
      j["tree_vertices"] = cmp.tree_vertices;
      j["group_edges"] = cmp.group_edges;
      j["tree_edges"] = cmp.tree_edges;
      j["graphs_identical"] = cmp.graphs_identical;
      j["group"] = threshold_json(cmp.group);
      j["tree"] = threshold_json(cmp.tree);
      j["difference"] = cmp.difference;
      j["sigma"] = cmp.sigma;
      j["pc_reference_tree"] = pc_reference(z.k()).to_string();
      emit(config, j, format_, out);
      return kOk;
    };
  }

  void finite_verify() {
    auto& c = add("finite-verify", "Check a word as an almost identity and as an identity of a finite group");
    c.option("group", group_, "Q8, S3, Z<n> or Z<n>xZ<n>");
    c.option("group-file", group_file_, "group table file");
    c.option("word", word_, "word in x1, ..., xk")->required();
    c.option("k", k_, "tuple length (default: variables in the word)");
    c.option("budget", tuple_budget_, "cap on tuples");
    c.option("format", text_format_, "text or json")->check(kFormats);
    c.execute = [this](const Json& config, std::ostream& out) {
      if (group_.empty() == group_file_.empty()) throw UsageError("give exactly one of --group, --group-file");
      const FiniteGroup g = group_.empty() ? parse_group(read_text_file(group_file_)) : builtin_group(group_);
      const int k = k_ > 0 ? k_ : std::max(1, infer_rank(word_));
      const Word u = parse_word(word_, k);
      const auto almost = verify_almost_identity(g, u, k, tuple_budget_);
      const auto ident = is_identity(g, u, k, tuple_budget_);
      auto describe = [&](const TupleScan& s) {
        return s.holds ? std::string("yes")
                       : "no (counterexample: " + format_tuple(g, s.counterexample->tuple) + ")";
      };
      if (text_format_ == "text") {
        out << "almost-identity: " << describe(almost) << ", identity: " << describe(ident) << "\n";
      } else {
        auto scan_json = [&](const TupleScan& s) {
          Json j{{"holds", s.holds}, {"tuples_checked", s.tuples_checked}, {"generating_tuples", s.generating_tuples}};
          if (s.counterexample) {
            Json names = Json::array();
            for (int x : s.counterexample->tuple) names.push_back(g.name(x));
            j["counterexample"] = Json{{"tuple", names},
                                       {"generates", s.counterexample->generates},
                                       {"value", g.name(s.counterexample->evaluation)}};
          } else {
            j["counterexample"] = nullptr;
          }
          return j;
        };
        emit(config,
             Json{{"order", g.order()}, {"word", format_word(u, WordStyle::variables)}, {"k", k},
                  {"almost_identity", scan_json(almost)}, {"identity", scan_json(ident)}},
             "json", out);
      }
      return almost.holds ? kOk : kFailed;
    };
  }

  void replay() {
    auto& c = add("replay", "Re-run the configuration embedded in a JSON report");
    c.option("report", report_, "JSON report file")->required();
    c.option("workers", workers_, "worker threads", false);
    c.execute = [this](const Json&, std::ostream& out) {
      Json report;
      try {
        report = Json::parse(read_text_file(report_));
      } catch (const Json::exception& e) {
        throw ParseError(std::string("report is not JSON: ") + e.what());
      }
      if (!report.contains("config")) throw ParseError("report has no embedded config");
      const Json& config = report["config"];
      std::vector<std::string> args{config.at("command").get<std::string>()};
      if (args.front() == "replay") throw UsageError("cannot replay a replay");
      for (const auto& [key, value] : config.at("args").items()) {
        const std::string v = value.get<std::string>();
        if (v == "false") continue;
        args.push_back("--" + key);
        if (v != "true") args.push_back(v);
      }
      std::ostringstream err;
      Program inner;
      if (inner.takes_workers(args.front())) {
        args.push_back("--workers");
        args.push_back(std::to_string(workers_));
      }
      const int status = inner.run(args, out, err);
      if (status == kUsage) throw UsageError("replay failed: " + err.str());
      return status;
    };
  }

  CLI::App app_;
  std::deque<Command> commands_;

  // Option storage, shared across subcommands; only one subcommand runs.
  std::string presentation_, gens_, word_, words_, tuple_, graph_, group_, group_file_, report_;
  std::string out_path_;
  std::string j_list_ = "1,2,3";
  std::string coefficients_;
  std::string lambda_ = "1/6";
  std::string format_ = "json";
  std::string text_format_ = "text";
  std::string export_ = "adjacency";
  std::string style_ = "letters";
  std::string family_ = "sub-balls";
  bool trace_ = false;
  int k_ = 2, n_ = 6, max_len_ = 0, scan_len_ = 0, free_scan_len_ = 8, ball_radius_ = 5;
  int max_word_len_ = 0, radius_ = 0, workers_ = 1;
  std::uint64_t scan_budget_ = ScanOptions{}.budget;
  std::size_t ball_budget_ = kDefaultBallBudget;
  std::uint64_t tuple_budget_ = kDefaultTupleBudget;
  std::size_t max_words_ = AlmostIdentityCaps{}.max_words;
  std::size_t max_length_ = AlmostIdentityCaps{}.max_length;
  std::size_t random_count_ = 32, random_size_ = 0;
  std::uint64_t seed_ = kDefaultSeed, trials_ = 10000, probe_trials_ = 2000;
  double p_ = 0.5, target_ = 0.5;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Program program;
  return program.run(args, out, err);
}

}  // namespace freelike::cli
