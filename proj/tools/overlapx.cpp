// overlapx: construct, verify, search, and bound tuples of set families
// with bounded pairwise cross-intersections.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "overlapx/constructions.hpp"
#include "overlapx/ineq.hpp"
#include "overlapx/search.hpp"

namespace {

using nlohmann::json;
using namespace overlapx;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct GlobalFlags {
  std::uint64_t seed = 0;
  std::uint64_t node_budget = 0;
  bool json_output = false;
  std::string out;
  int threads = 1;
  bool timing = false;
};

OverlapSpec spec_from_flags(int ell, const std::string& m_flag) {
  std::vector<int> bounds;
  std::string_view rest = m_flag;
  while (!rest.empty()) {
    std::size_t comma = rest.find(',');
    std::string token(comma == std::string_view::npos ? rest : rest.substr(0, comma));
    rest.remove_prefix(comma == std::string_view::npos ? rest.size() : comma + 1);
    bounds.push_back(std::stoi(token));
  }
  if (bounds.empty()) throw PreconditionError("--m needs at least one value");
  if (bounds.size() == 1) return OverlapSpec::uniform(ell, bounds.front());
  return OverlapSpec(ell, std::move(bounds));
}

Rational parse_rational(const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) return make_rational(BigInt(text), 1);
  return make_rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
}

void emit(const json& report, const GlobalFlags& flags) {
  if (flags.json_output) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : report.items()) {
    if (key == "config") continue;
    // allocations print in their documented "n_S=<v,...>" form
    const char* sep = key == "n_S" ? "=" : ": ";
    if (value.is_string())
      std::cout << key << sep << value.get<std::string>() << "\n";
    else
      std::cout << key << sep << value.dump() << "\n";
  }
}

void write_out_file(const GlobalFlags& flags, const std::string& name,
                    const std::string& content) {
  std::filesystem::path dir(flags.out);
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / name, std::ios::binary);
  f << content;
}

void maybe_write_report(const GlobalFlags& flags, const json& report) {
  if (!flags.out.empty()) write_out_file(flags, "report.json", report.dump(2) + "\n");
}

json config_json(const GlobalFlags& flags, json verb_fields) {
  verb_fields["seed"] = flags.seed;
  verb_fields["node_budget"] = flags.node_budget;
  verb_fields["json"] = flags.json_output;
  verb_fields["out"] = flags.out;
  verb_fields["threads"] = flags.threads;
  return verb_fields;
}

std::string witness_text(const SearchReport& report) {
  if (report.witness_coloring) return format_coloring(*report.witness_coloring);
  std::string all;
  for (const SetFamily& f : report.witness_families) {
    if (!all.empty()) all += "\n";
    all += format_family(f);
  }
  return all;
}

json search_report_json(const SearchReport& report, const GlobalFlags& flags) {
  json out;
  out["optimum"] = to_decimal(report.optimum);
  out["witness"] = witness_text(report);
  out["nodes_visited"] = report.nodes_visited;
  out["bound_used"] = to_decimal(report.bound_used);
  if (flags.timing)
    out["wall_time"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                           report.wall_time)
                           .count();
  out["exact"] = report.exact;
  return out;
}

int cmd_construct(const GlobalFlags& flags, int n, int ell, const std::string& m_flag,
                  const std::string& partition_flag) {
  OverlapSpec spec = spec_from_flags(ell, m_flag);

  AllocationVector alloc = [&]() {
    if (partition_flag.empty()) return optimize_partition(n, spec).alloc;
    std::vector<int> parts;
    std::string_view rest = partition_flag;
    while (!rest.empty()) {
      std::size_t comma = rest.find(',');
      std::string token(comma == std::string_view::npos ? rest : rest.substr(0, comma));
      rest.remove_prefix(comma == std::string_view::npos ? rest.size() : comma + 1);
      parts.push_back(std::stoi(token));
    }
    AllocationVector a(spec, std::move(parts));
    if (a.total() != n) throw PreconditionError("--partition must sum to --n");
    return a;
  }();

  PartitionOptimum opt = optimize_partition(n, spec);

  json report;
  report["config"] = config_json(
      flags, {{"verb", "construct"},
              {"n", n},
              {"l", ell},
              {"m", m_flag},
              {"partition", partition_flag}});
  std::string parts_text;
  for (std::size_t i = 0; i < alloc.parts().size(); ++i) {
    if (i) parts_text += ",";
    parts_text += std::to_string(alloc.parts()[i]);
  }
  report["n_S"] = parts_text;
  json sizes = json::array();
  for (const BigInt& s : octopus_family_sizes(alloc)) sizes.push_back(to_decimal(s));
  report["family_sizes"] = sizes;
  report["octopus_size"] = to_decimal(octopus_size(alloc));
  report["optimize_value"] = to_decimal(opt.value);
  report["asymptotic_value"] = to_decimal(asymptotic_value(n, spec));

  if (!flags.out.empty()) {
    std::vector<SetFamily> families = octopus_build(PartitionLayout(alloc));
    for (std::size_t k = 0; k < families.size(); ++k)
      write_out_file(flags, "family_" + std::to_string(k + 1) + ".txt",
                     format_family(families[k]));
  }
  maybe_write_report(flags, report);
  emit(report, flags);
  return kExitOk;
}

int cmd_search(const GlobalFlags& flags, const std::string& mode, int n, int ell,
               const std::string& m_flag, bool no_prune, bool fix_first,
               std::uint64_t iterations) {
  SearchReport result;
  if (mode == "exact") {
    OverlapSpec spec = spec_from_flags(ell, m_flag);
    SearchOptions opts;
    opts.node_budget = flags.node_budget;
    opts.prune = !no_prune;
    opts.fix_first_color = fix_first;
    opts.threads = flags.threads;
    result = exact_search(n, ell, spec.uniform_bound(), opts);
  } else if (mode == "brute") {
    result = family_bruteforce(n, spec_from_flags(ell, m_flag));
  } else {
    OverlapSpec spec = spec_from_flags(ell, m_flag);
    result = local_search(n, ell, spec.uniform_bound(), flags.seed, iterations);
  }

  json report = search_report_json(result, flags);
  report["config"] = config_json(flags, {{"verb", "search"},
                                         {"mode", mode},
                                         {"n", n},
                                         {"l", ell},
                                         {"m", m_flag},
                                         {"prune", !no_prune},
                                         {"fix_first_color", fix_first},
                                         {"iterations", iterations}});
  if (!flags.out.empty()) write_out_file(flags, "witness.txt", witness_text(result));
  maybe_write_report(flags, report);
  emit(report, flags);
  if (mode != "local" && !result.exact) return kExitCapacity;
  return kExitOk;
}

int cmd_verify(const GlobalFlags& flags, const std::vector<std::string>& family_files,
               const std::string& spec_text) {
  OverlapSpec spec = parse_overlap_spec(spec_text);
  if (family_files.size() != static_cast<std::size_t>(spec.ell()))
    throw PreconditionError("need exactly l family files");
  std::vector<SetFamily> families;
  for (const std::string& path : family_files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot open family file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    families.push_back(parse_family(buffer.str()));
  }

  std::optional<OverlapViolation> violation = verify_overlap(families, spec);
  json report;
  report["config"] = config_json(flags, {{"verb", "verify"}, {"spec", spec_text}});
  report["holds"] = !violation.has_value();
  if (violation) {
    auto mask_text = [](const SubsetMask& s) {
      std::string t;
      s.for_each_element([&](int e) {
        if (!t.empty()) t += ",";
        t += std::to_string(e);
      });
      return t.empty() ? std::string("-") : t;
    };
    report["family_a"] = violation->family_a;
    report["family_b"] = violation->family_b;
    report["set_a"] = mask_text(violation->set_a);
    report["set_b"] = mask_text(violation->set_b);
  }
  maybe_write_report(flags, report);
  emit(report, flags);
  return violation ? kExitViolation : kExitOk;
}

int cmd_bounds(const GlobalFlags& flags, int n, int ell, const std::string& m_flag) {
  OverlapSpec spec = spec_from_flags(ell, m_flag);
  PartitionOptimum opt = optimize_partition(n, spec);
  json report;
  report["config"] =
      config_json(flags, {{"verb", "bounds"}, {"n", n}, {"l", ell}, {"m", m_flag}});
  report["octopus_value"] =
      to_decimal(BigInt(opt.value * pow2(static_cast<unsigned long>(n))));
  report["asymptotic_value"] = to_decimal(asymptotic_value(n, spec));
  report["daykin_chain_bound"] = to_decimal(daykin_chain_bound(n, spec));
  maybe_write_report(flags, report);
  emit(report, flags);
  return kExitOk;
}

int cmd_ineq(const GlobalFlags& flags, const std::string& check, std::uint64_t trials,
             int max_n, int ell, const std::string& p_flag) {
  std::vector<std::pair<std::string, FuzzKind>> selected;
  auto add = [&](const std::string& name, FuzzKind kind) {
    if (check == name || check == "all") selected.emplace_back(name, kind);
  };
  add("harris_kleitman", FuzzKind::kHarrisKleitman);
  add("daykin", FuzzKind::kDaykin);
  add("rinott_saks", FuzzKind::kRinottSaks);
  add("rinott_saks_biased", FuzzKind::kRinottSaksBiased);
  add("cover_matching", FuzzKind::kCoverMatching);
  if (selected.empty()) throw PreconditionError("unknown --check");

  FuzzOptions opts;
  opts.trials = trials;
  opts.max_n = max_n;
  opts.ell = ell;
  opts.seed = flags.seed;
  opts.threads = flags.threads;
  if (!p_flag.empty()) {
    std::string_view rest = p_flag;
    while (!rest.empty()) {
      std::size_t comma = rest.find(',');
      std::string token(comma == std::string_view::npos ? rest : rest.substr(0, comma));
      rest.remove_prefix(comma == std::string_view::npos ? rest.size() : comma + 1);
      opts.ps.push_back(parse_rational(token));
    }
  }

  FuzzSummary total;
  std::string failing_check;
  for (const auto& [name, kind] : selected) {
    opts.kind = kind;
    FuzzSummary summary = fuzz_inequality(opts);
    total.trials += summary.trials;
    if (summary.failures > 0 && total.failures == 0) {
      total.first_failure_trial = summary.first_failure_trial;
      total.first_witness = summary.first_witness;
      failing_check = name;
    }
    total.failures += summary.failures;
  }

  json report;
  report["config"] = config_json(flags, {{"verb", "ineq"},
                                         {"check", check},
                                         {"trials", trials},
                                         {"n", max_n},
                                         {"l", ell},
                                         {"p", p_flag}});
  report["trials"] = total.trials;
  report["failures"] = total.failures;
  if (total.failures > 0) {
    report["failing_check"] = failing_check;
    report["first_failure_trial"] = total.first_failure_trial;
    report["first_witness"] = total.first_witness;
  }
  maybe_write_report(flags, report);
  emit(report, flags);
  return total.failures > 0 ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact combinatorics of families with bounded cross-intersections"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--seed", flags.seed, "random seed for seeded verbs");
  app.add_option("--node-budget", flags.node_budget, "search node budget, 0 = unlimited");
  app.add_flag("--json", flags.json_output, "emit the report as JSON");
  app.add_option("--out", flags.out, "directory for output files");
  app.add_option("--threads", flags.threads, "worker count for search and fuzzing");
  app.add_flag("--timing", flags.timing, "include wall_time in reports");

  int n = 0, ell = 2;
  std::string m_flag = "1";
  std::string partition_flag;

  CLI::App* construct = app.add_subcommand("construct", "build the lower-bound example");
  construct->add_option("--n", n, "ground size")->required();
  construct->add_option("--l", ell, "number of families")->required();
  construct->add_option("--m", m_flag, "uniform bound or comma list of C(l,2) bounds")
      ->required();
  construct->add_option("--partition", partition_flag,
                        "explicit comma-separated allocation (defaults to the optimum)");

  CLI::App* search = app.add_subcommand("search", "compute or bound the optimum product");
  search->require_subcommand(1);
  bool no_prune = false, fix_first = false;
  std::uint64_t iterations = 1000;
  CLI::App* s_exact = search->add_subcommand("exact", "exhaustive coloring search");
  CLI::App* s_brute = search->add_subcommand("brute", "downset-tuple enumeration");
  CLI::App* s_local = search->add_subcommand("local", "hill climbing from the octopus");
  for (CLI::App* sub : {s_exact, s_brute, s_local}) {
    sub->add_option("--n", n, "ground size")->required();
    sub->add_option("--l", ell, "number of families")->required();
    sub->add_option("--m", m_flag, "overlap bound")->required();
  }
  s_exact->add_flag("--no-prune", no_prune, "plain enumeration without pruning");
  s_exact->add_flag("--fix-first-color", fix_first, "symmetry reduction on the first edge");
  s_local->add_option("--iterations", iterations, "maximum accepted moves");

  std::vector<std::string> family_files;
  std::string spec_text;
  CLI::App* verify = app.add_subcommand("verify", "check the overlapping property");
  verify->add_option("--families", family_files, "family files, one per family")
      ->required()
      ->expected(-2);
  verify->add_option("--spec", spec_text, "overlap spec, e.g. 'l=2; m=1'")->required();

  CLI::App* bounds = app.add_subcommand("bounds", "construction vs upper bounds");
  bounds->add_option("--n", n, "ground size")->required();
  bounds->add_option("--l", ell, "number of families")->required();
  bounds->add_option("--m", m_flag, "overlap bound")->required();

  CLI::App* ineq = app.add_subcommand("ineq", "inequality fuzz harness");
  ineq->require_subcommand(1);
  CLI::App* fuzz = ineq->add_subcommand("fuzz", "seeded random trials of the checkers");
  std::string check = "all";
  std::uint64_t trials = 1000;
  std::string p_flag;
  fuzz->add_option(
      "--check", check,
      "all|harris_kleitman|daykin|rinott_saks|rinott_saks_biased|cover_matching");
  fuzz->add_option("--trials", trials, "number of trials");
  fuzz->add_option("--n", n, "maximum ground size per trial")->required();
  fuzz->add_option("--l", ell, "families per trial (multi-family checks)");
  fuzz->add_option("--p", p_flag, "comma list of biased-measure parameters, e.g. 1/4,1/3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (construct->parsed())
      return cmd_construct(flags, n, ell, m_flag, partition_flag);
    if (search->parsed()) {
      std::string mode = s_exact->parsed() ? "exact" : s_brute->parsed() ? "brute" : "local";
      return cmd_search(flags, mode, n, ell, m_flag, no_prune, fix_first, iterations);
    }
    if (verify->parsed()) return cmd_verify(flags, family_files, spec_text);
    if (bounds->parsed()) return cmd_bounds(flags, n, ell, m_flag);
    if (ineq->parsed()) return cmd_ineq(flags, check, trials, n, ell, p_flag);
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
