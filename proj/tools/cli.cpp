#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "rana/barafa.hpp"
#include "rana/constructions.hpp"
#include "rana/decision.hpp"
#include "rana/error.hpp"
#include "rana/random.hpp"
#include "rana/semantics.hpp"
#include "rana/text.hpp"

namespace rana::cli {

namespace {

using nlohmann::json;

// Spells small name ids as a, b, c, ... for readable witnesses.
NameTable letter_names() {
  NameTable t;
  for (char c = 'a'; c <= 'z'; ++c) t.intern(std::string(1, c));
  return t;
}

std::string show(const BarString& w) { return to_string(canonical(w), letter_names()); }
std::string show(const DataWord& u) { return to_string(u, letter_names()); }

struct Reporter {
  std::ostream& out;
  bool as_json = false;

  // One verdict line, then an optional labelled witness line.
  int verdict(const std::string& command, bool holds, const std::string& text,
              const std::vector<std::pair<std::string, std::string>>& extra = {}) {
    if (as_json) {
      json j{{"command", command}, {"holds", holds}, {"result", text}};
      for (const auto& [k, v] : extra) j[k] = v;
      out << j.dump() << '\n';
    } else {
      out << text << '\n';
      for (const auto& [k, v] : extra) out << k << ": " << v << '\n';
    }
    return holds ? 0 : 1;
  }
};

Rana to_namedrop(const Rana& a) { return name_drop(to_positive(a)); }

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

std::string report_text(const PipelineReport& r) {
  std::ostringstream os;
  for (const auto& s : r.stages) {
    os << "  " << s.stage << ": ";
    if (s.states)
      os << s.states << (s.stage == "afa_nonempty" ? " configurations" : " states");
    else
      os << s.orbits << " orbits, degree " << s.degree;
    os << " (" << s.millis << " ms)\n";
  }
  for (const auto& b : r.bounds)
    os << "  bound " << b.what << ": " << static_cast<double>(b.value) << " <= " << static_cast<double>(b.bound)
       << (b.ok() ? "" : "  VIOLATED") << '\n';
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regular alternating nominal automata"};
  app.name("rana");
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit one JSON record per verdict");

  std::string file_a, file_b, word, out_path, target, mode = "bar", semantics = "full", flavor = "positive";
  std::size_t max_len = 3, pool = 3;
  std::uint64_t seed = 0;
  bool show_report = false;

  auto* check = app.add_subcommand("check", "Membership of a closed bar string");
  check->add_option("automaton", file_a)->required();
  check->add_option("word", word, "Bar string, e.g. \"|a |b a b\" or <eps>")->required();
  check->add_option("--semantics", semantics)->check(CLI::IsMember({"full", "restricted"}));

  auto* empty = app.add_subcommand("empty", "Emptiness of the bar language");
  empty->add_option("automaton", file_a)->required();
  empty->add_flag("--report", show_report, "Print per-stage sizes and bound checks");

  auto* include = app.add_subcommand("include", "Language inclusion A <= B");
  include->add_option("a", file_a)->required();
  include->add_option("b", file_b)->required();
  include->add_option("--mode", mode)->check(CLI::IsMember({"bar", "global", "local"}));
  include->add_option("--max-len", max_len, "Bound for --mode local");
  include->add_option("--pool", pool, "Name pool for --mode local");
  include->add_flag("--report", show_report);

  auto* equiv = app.add_subcommand("equiv", "Language equivalence");
  equiv->add_option("a", file_a)->required();
  equiv->add_option("b", file_b)->required();

  auto* convert = app.add_subcommand("convert", "Run one construction and print the result");
  convert->add_option("--to", target)
      ->required()
      ->check(CLI::IsMember({"dual", "complement", "positive", "namedrop", "dnf", "ernna", "afa"}));
  convert->add_option("automaton", file_a)->required();
  convert->add_option("-o,--output", out_path);

  auto* enumerate = app.add_subcommand("enumerate", "Accepted canonical closed strings up to a length");
  enumerate->add_option("automaton", file_a)->required();
  enumerate->add_option("--max-len", max_len);
  enumerate->add_option("--pool", pool);

  auto* stats = app.add_subcommand("stats", "Orbit count, degree, and pipeline sizes");
  stats->add_option("automaton", file_a)->required();

  auto* member = app.add_subcommand("member-data", "Data-word membership under a freshness reading");
  member->add_option("automaton", file_a)->required();
  member->add_option("word", word, "Data word, e.g. \"a b\" or <eps>")->required();
  member->add_option("--mode", mode)->required()->check(CLI::IsMember({"global", "local"}));

  auto* generate = app.add_subcommand("generate", "Print a seeded random automaton");
  generate->add_option("--seed", seed);
  generate->add_option("--flavor", flavor)->check(CLI::IsMember({"positive", "ordinary", "explicit-dual", "ernna"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  Reporter rep{out, as_json};
  try {
    if (*check) {
      const Rana a = load_rana(file_a);
      NameTable names;
      const BarString w = parse_bar_string(word, names);
      if (!is_closed(w)) throw NotClosed("the word has free names");
      const bool ok = semantics == "full" ? accepts(a, w) : sat_restricted(a, w, a.formula(a.initial_orbit()), a.initial());
      return rep.verdict("check", ok, ok ? "accepted" : "rejected");
    }
    if (*empty) {
      const EmptinessResult r = is_empty(load_rana(file_a));
      if (show_report) err << report_text(r.report);
      if (r.empty) return rep.verdict("empty", true, "empty");
      return rep.verdict("empty", false, "nonempty", {{"witness", show(*r.witness)}});
    }
    if (*include) {
      const Rana a = load_rana(file_a), b = load_rana(file_b);
      if (mode == "local") {
        const LocalVerdict v = includes_local_bounded(a, b, max_len, pool);
        const std::string bound = "up to length " + std::to_string(max_len) + " over " + std::to_string(pool) + " names";
        if (v.refuted) return rep.verdict("include", false, "not included (local)", {{"witness", show(*v.witness)}});
        return rep.verdict("include", true, "consistent " + bound + " (local, semi-decision)");
      }
      const InclusionResult r = includes(a, b);
      if (show_report) err << report_text(r.report);
      if (r.holds) return rep.verdict("include", true, mode == "global" ? "included (global)" : "included");
      if (mode == "global")
        return rep.verdict("include", false, "not included (global)",
                           {{"witness", show(unbar(clean_variant(*r.counterexample)))}});
      return rep.verdict("include", false, "not included", {{"witness", show(*r.counterexample)}});
    }
    if (*equiv) {
      const Rana a = load_rana(file_a), b = load_rana(file_b);
      const InclusionResult ab = includes(a, b);
      if (!ab.holds)
        return rep.verdict("equiv", false, "not equivalent", {{"witness", show(*ab.counterexample)}, {"in", "first only"}});
      const InclusionResult ba = includes(b, a);
      if (!ba.holds)
        return rep.verdict("equiv", false, "not equivalent", {{"witness", show(*ba.counterexample)}, {"in", "second only"}});
      return rep.verdict("equiv", true, "equivalent");
    }
    if (*convert) {
      const Rana a = load_rana(file_a);
      std::string text;
      if (target == "dual")
        text = print_rana(dualize(a));
      else if (target == "complement")
        text = print_rana(complement(a));
      else if (target == "positive")
        text = print_rana(to_positive(a));
      else if (target == "namedrop")
        text = print_rana(to_namedrop(a));
      else if (target == "dnf")
        text = print_rana(dnf_normalize(to_namedrop(a)));
      else if (target == "ernna")
        text = print_rana(dealternate(dnf_normalize(to_namedrop(a))));
      else
        text = print_afa(rana_to_barafa(to_namedrop(a)));
      write_output(text, out_path, out);
      return 0;
    }
    if (*enumerate) {
      const Rana a = load_rana(file_a);
      const auto words = enumerate_language(a, max_len, pool);
      if (as_json) {
        json j = json::array();
        for (const auto& w : words) j.push_back(show(w));
        out << json{{"command", "enumerate"}, {"words", j}}.dump() << '\n';
      } else {
        for (const auto& w : words) out << show(w) << '\n';
      }
      return 0;
    }
    if (*stats) {
      const Rana a = load_rana(file_a);
      const EmptinessResult r = is_empty(a);
      if (as_json) {
        json stages = json::array();
        for (const auto& s : r.report.stages)
          stages.push_back({{"stage", s.stage}, {"orbits", s.orbits}, {"degree", s.degree}, {"states", s.states}});
        out << json{{"command", "stats"},
                    {"orbits", a.orbit_count()},
                    {"degree", a.degree()},
                    {"families", a.family_count()},
                    {"flavor", std::string(to_string(a.flavor()))},
                    {"totality", std::string(to_string(a.totality()))},
                    {"stages", stages},
                    {"bounds_ok", r.report.bounds_ok()}}
                   .dump()
            << '\n';
      } else {
        out << "flavor " << to_string(a.flavor()) << ", " << to_string(a.totality()) << '\n'
            << "orbits " << a.orbit_count() << ", families " << a.family_count() << ", degree " << a.degree() << '\n'
            << report_text(r.report);
      }
      return 0;
    }
    if (*member) {
      const Rana a = load_rana(file_a);
      NameTable names;
      const DataWord u = parse_data_word(word, names);
      const bool ok = mode == "global" ? member_global(a, u) : member_local(a, u);
      return rep.verdict("member-data", ok, ok ? "member (" + mode + ")" : "not a member (" + mode + ")");
    }
    if (*generate) {
      RandomOptions opts;
      opts.flavor = *parse_flavor(flavor);
      out << print_rana(random_rana(seed, opts));
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace rana::cli
