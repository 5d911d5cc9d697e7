#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "bondforge/braiding.hpp"
#include "bondforge/bracket.hpp"
#include "bondforge/tangle.hpp"
#include "bondforge/unplug.hpp"

namespace bondforge::cli {
namespace {

using Json = nlohmann::ordered_json;
constexpr const char* kSchema = "bondforge/1";

// Bad flag combinations that CLI11 cannot express; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  bool json = false;
  int threads = 1;
  std::ostream& out;
};

Json header() { return Json{{"schema", kSchema}}; }

void emit(const Context& cx, const Json& j, const std::string& human) {
  if (cx.json)
    cx.out << j.dump(2) << "\n";
  else
    cx.out << human;
}

Json to_json(const Fingerprint& f) { return Json{{"components", f.component_count}, {"jones", f.jones.to_string()}}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DiagramError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

BondSign parse_sign(const std::string& s) {
  if (s == "attracting") return BondSign::attracting;
  if (s == "repelling") return BondSign::repelling;
  return BondSign::plain;
}

std::pair<ExampleFamily, int> parse_family(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon != 1 || (spec[0] != 'U' && spec[0] != 'K') || colon + 1 >= spec.size())
    throw UsageError("--gen expects U:<n> or K:<n>, got '" + spec + "'");
  std::string num = spec.substr(2);
  if (!std::all_of(num.begin(), num.end(), [](char c) { return c >= '0' && c <= '9'; }) || num.size() > 6)
    throw UsageError("--gen expects U:<n> or K:<n>, got '" + spec + "'");
  return {spec[0] == 'U' ? ExampleFamily::U : ExampleFamily::K, std::stoi(num)};
}

// Diagram source shared by most commands.
struct Source {
  std::string input, gen, word;
  std::string sign = "plain";

  void add(CLI::App* c, bool with_word = true) {
    c->add_option("--input", input, "Diagram file (.bpd, or .bms slices)");
    c->add_option("--gen", gen, "Example family U:<n> or K:<n>");
    if (with_word) c->add_option("--word", word, "Braid word whose closure is used");
    c->add_option("--sign", sign, "Bond sign for --gen")
        ->check(CLI::IsMember({"plain", "attracting", "repelling"}))
        ->capture_default_str();
  }

  int count() const { return !input.empty() + !gen.empty() + !word.empty(); }

  void require_one() const {
    if (count() != 1) throw UsageError("exactly one of --input, --gen, --word is required");
  }

  BondedDiagram diagram() const {
    require_one();
    if (!gen.empty()) {
      auto [f, n] = parse_family(gen);
      return gen_example(f, n, parse_sign(sign));
    }
    if (!word.empty()) return closure(parse_word(word));
    std::string text = read_file(input);
    if (ends_with(input, ".bms")) return slices_to_diagram(parse_bms(text));
    return parse_bpd(text);
  }

  SliceSequence slices() const {
    require_one();
    if (!gen.empty()) {
      auto [f, n] = parse_family(gen);
      return example_slices(f, n, parse_sign(sign));
    }
    if (!word.empty()) return braid_to_slices(parse_word(word));
    if (!ends_with(input, ".bms")) throw UsageError("--input must be a .bms slice file");
    return parse_bms(read_file(input));
  }
};

// ---- validate

struct ValidateCmd {
  Source src;
  int run(const Context& cx) const {
    auto d = src.diagram();
    auto violations = validate(d);
    Json j = header();
    j["valid"] = violations.empty();
    j["violations"] = violations;
    std::ostringstream h;
    if (violations.empty()) {
      bool standard = is_standard(d), tight = is_tight(d);
      j["crossings"] = d.crossing_count();
      j["nodes"] = d.node_count();
      j["bonds"] = d.bond_count();
      j["standard"] = standard;
      j["tight"] = tight;
      h << "valid\ncrossings: " << d.crossing_count() << "\nnodes: " << d.node_count() << "\nbonds: " << d.bond_count()
        << "\nstandard: " << (standard ? "yes" : "no") << "\ntight: " << (tight ? "yes" : "no") << "\n";
    } else {
      h << "invalid\n";
      for (const auto& v : violations) h << v << "\n";
    }
    emit(cx, j, h.str());
    return violations.empty() ? 0 : 1;
  }
};

// ---- bracket

struct BracketCmd {
  Source src;
  std::string set_a, set_b;
  bool tighten_first = false;

  int run(const Context& cx) const {
    auto d = src.diagram();
    require_valid(d);
    if (tighten_first) d = tighten(d);
    LaurentPoly p = bonded_bracket(d);
    auto a_degree = max_degree(p, Var::a);
    if (!set_a.empty()) p = substitute(p, Var::a, parse_poly(set_a));
    if (!set_b.empty()) p = substitute(p, Var::b, parse_poly(set_b));
    // 3^bonds * 2^crossings classical states
    std::uint64_t states = 1;
    int k = d.bond_count(), c = d.crossing_count();
    bool overflow = k > 40 || c > 63 || k * 1.585 + c > 63;
    if (!overflow) {
      for (int i = 0; i < k; ++i) states *= 3;
      states <<= c;
    }
    Json j = header();
    j["poly"] = p.to_string();
    j["a_degree"] = a_degree ? Json(*a_degree) : Json(nullptr);
    j["states"] = overflow ? Json(nullptr) : Json(states);
    emit(cx, j, p.to_string() + "\n");
    return 0;
  }
};

// ---- jones

struct JonesCmd {
  Source src;
  int run(const Context& cx) const {
    auto d = src.diagram();
    require_valid(d);
    auto link = underlying_link(d);
    auto p = normalized_jones(link);
    Json j = header();
    j["poly"] = p.to_string();
    j["components"] = static_cast<int>(link_components(link).size()) + link.free_loops;
    j["bonds_deleted"] = d.bond_count();
    emit(cx, j, p.to_string() + "\n");
    return 0;
  }
};

// ---- unplug

struct UnplugCmd {
  Source src;
  std::string mode = "bonded";
  int node_bound = kDefaultNodeBound;

  int run(const Context& cx) const {
    auto d = src.diagram();
    require_valid(d);
    std::vector<Fingerprint> fps;
    if (mode == "bonded")
      fps.push_back(unplug_bonded(d));
    else if (mode == "strict")
      fps = unplug_strict_set(d, node_bound);
    else
      fps = unplug_full_set(d, node_bound);
    std::sort(fps.begin(), fps.end());
    Json j = header();
    j["mode"] = mode;
    j["fingerprints"] = Json::array();
    std::ostringstream h;
    for (const auto& f : fps) {
      j["fingerprints"].push_back(to_json(f));
      h << f.to_string() << "\n";
    }
    emit(cx, j, h.str());
    return 0;
  }
};

// ---- tangle

struct TangleCmd {
  Source src;
  std::string tangles;
  long max_assignments = 200000;
  bool standardize_first = false;

  int run(const Context& cx) const {
    auto d = src.diagram();
    require_valid(d);
    if (standardize_first) d = standardize(d);
    auto family = parse_tangle_family(tangles);
    auto set = tangle_invariant_set(d, family, max_assignments);
    Json j = header();
    j["tangles"] = Json::array();
    for (const auto& t : family) j["tangles"].push_back(t.name);
    j["assignments"] = Json::array();
    std::ostringstream h;
    for (const auto& [key, fp] : set) {
      Json names = Json::array();
      std::string line;
      for (int idx : key) {
        names.push_back(family[static_cast<std::size_t>(idx)].name);
        line += (line.empty() ? "" : ",") + family[static_cast<std::size_t>(idx)].name;
      }
      j["assignments"].push_back(Json{{"tangles", names}, {"fingerprint", to_json(fp)}});
      h << (line.empty() ? "-" : line) << ": " << fp.to_string() << "\n";
    }
    j["multiset"] = Json::array();
    for (const auto& f : tangle_multiset(set)) j["multiset"].push_back(to_json(f));
    emit(cx, j, h.str());
    return 0;
  }
};

// ---- braid-diagram

struct BraidDiagramCmd {
  Source src;
  std::string emit_kind = "word";
  std::string free_label = "o";
  std::string calculus = "topological";

  int run(const Context& cx) const {
    auto s = src.slices();
    check_slices(s);
    BraidingOptions opt{free_label[0], parse_calculus(calculus)};
    Json j = header();
    std::ostringstream h;
    if (emit_kind == "word") {
      auto w = braid(s, opt);
      j["word"] = format_word(w);
      h << format_word(w) << "\n";
      emit(cx, j, h.str());
      return 0;
    }
    auto c = braid_certificate(s, opt);
    j["word"] = format_word(c.word);
    j["checks"] = Json::array();
    h << "word: " << format_word(c.word) << "\n";
    for (const auto& ch : c.checks) {
      j["checks"].push_back(Json{{"invariant", ch.invariant}, {"pass", ch.pass}, {"diagram", ch.diagram}, {"braid", ch.braid}});
      h << (ch.pass ? "PASS " : "FAIL ") << ch.invariant << ": " << ch.diagram;
      if (!ch.pass) h << " vs " << ch.braid;
      h << "\n";
    }
    j["pass"] = c.pass();
    h << (c.pass() ? "PASS" : "FAIL") << "\n";
    emit(cx, j, h.str());
    return c.pass() ? 0 : 1;
  }
};

// ---- braid-equiv

Presentation parse_presentation(const std::string& s) {
  return s == "irredundant" ? Presentation::irredundant : Presentation::reduced;
}

struct BraidEquivCmd {
  std::string lhs, rhs;
  EquivBudget budget;
  bool no_stabilization = false, no_conjugation = false;
  std::string relations = "reduced";

  int run(const Context& cx) {
    auto l = parse_word(lhs), r = parse_word(rhs);
    budget.stabilization = !no_stabilization;
    budget.conjugation = !no_conjugation;
    budget.relations = parse_presentation(relations);
    budget.threads = cx.threads;
    auto res = equiv_search(l, r, budget);
    Json j = header();
    j["verdict"] = to_string(res.verdict);
    j["path"] = Json::array();
    std::ostringstream h;
    h << to_string(res.verdict) << "\n";
    for (const auto& st : res.path) {
      j["path"].push_back(Json{{"move", st.move}, {"word", format_word(st.word)}});
      h << st.move << ": " << format_word(st.word) << "\n";
    }
    j["invariant"] = res.invariant.empty() ? Json(nullptr) : Json(res.invariant);
    j["states"] = res.states;
    if (!res.invariant.empty()) h << "invariant: " << res.invariant << "\n";
    h << "states: " << res.states << "\n";
    emit(cx, j, h.str());
    return 0;
  }
};

// ---- word-ops

struct WordOpsCmd {
  std::string word;
  std::string op;
  int slot = 0;
  int strand = 1;
  std::string kind = "over";
  int strands = 3;
  std::string relations = "reduced";
  std::string mode = "monoid";

  int run(const Context& cx) const {
    Json j = header();
    j["op"] = op;
    std::ostringstream h;
    if (op == "presentation") {
      auto rels = presentation(strands, parse_presentation(relations),
                               mode == "enhanced" ? WordMode::enhanced : WordMode::monoid);
      j["relations"] = Json::array();
      for (const auto& r : rels) {
        j["relations"].push_back(Json{{"family", r.family}, {"lhs", format_word(r.lhs)}, {"rhs", format_word(r.rhs)}});
        h << r.family << ": " << format_word(r.lhs) << " = " << format_word(r.rhs) << "\n";
      }
      emit(cx, j, h.str());
      return 0;
    }
    if (word.empty()) throw UsageError("--word is required for --op " + op);
    auto w = parse_word(word);
    check_word(w);
    auto single = [&](const std::string& key, const std::string& value) {
      j[key] = value;
      h << value << "\n";
    };
    if (op == "neighbors") {
      j["words"] = Json::array();
      for (const auto& v : relation_neighbors(w)) {
        j["words"].push_back(format_word(v));
        h << format_word(v) << "\n";
      }
    } else if (op == "expand") {
      single("word", format_word(expand_long_bonds(w)));
    } else if (op == "free-cancel") {
      single("word", format_word(free_cancel(w)));
    } else if (op == "closure") {
      single("bpd", to_bpd(closure(w)));
    } else if (op == "l-move") {
      single("word", format_word(l_move(w, slot, strand, kind == "under" ? LKind::under : LKind::over)));
    } else {
      auto p = projections(w);
      std::string perm;
      for (int x : p.perm) perm += (perm.empty() ? "" : " ") + std::to_string(x);
      j["forget"] = format_word(p.forget);
      j["collapse"] = format_word(p.collapse);
      j["perm"] = p.perm;
      j["expsum"] = p.expsum;
      j["bondcount"] = p.bondcount;
      j["components"] = cycle_count(p.perm);
      h << "forget: " << format_word(p.forget) << "\ncollapse: " << format_word(p.collapse) << "\nperm: " << perm
        << "\nexpsum: " << p.expsum << "\nbondcount: " << p.bondcount << "\ncomponents: " << cycle_count(p.perm) << "\n";
    }
    std::string text = h.str();
    if (op == "closure") text = text.substr(0, text.size() - 1);  // to_bpd ends with a newline
    emit(cx, j, text);
    return 0;
  }
};

// ---- gen

BraidWord random_word(std::uint64_t seed, int n, int length, int bonds) {
  if (n < 2) throw UsageError("--strands must be at least 2");
  if (length < 0 || bonds < 0) throw UsageError("--length and --bonds must be non-negative");
  std::mt19937_64 rng(seed);
  auto pick = [&](int k) { return static_cast<int>(rng() % static_cast<std::uint64_t>(k)); };
  BraidWord w{n, {}, WordMode::monoid};
  for (int k = 0; k < length; ++k) w.gens.push_back(BraidGen::sigma(1 + pick(n - 1), pick(2) == 1));
  for (int k = 0; k < bonds; ++k) {
    auto at = w.gens.begin() + pick(static_cast<int>(w.gens.size()) + 1);
    w.gens.insert(at, BraidGen::bond(1 + pick(n - 1)));
  }
  return w;
}

struct GenCmd {
  std::string gen;
  std::string sign = "plain";
  std::string format = "bpd";
  bool slices = false, word = false;
  std::optional<std::uint64_t> seed;
  int steps = 0;
  std::string calculus = "topological";
  int max_events = 12, max_bonds = 2;
  int strands = 3, length = 8, bonds = 1;

  std::uint64_t need_seed() const {
    if (!seed) throw UsageError("--seed is required for randomized output");
    return *seed;
  }

  int run(const Context& cx) const {
    if (!gen.empty() + slices + word != 1) throw UsageError("exactly one of --gen, --slices, --random-word is required");
    Json j = header();
    std::string text;
    if (slices) {
      text = to_bms(random_slices(need_seed(), max_events, max_bonds));
      j["format"] = "bms";
    } else if (word) {
      text = format_word(random_word(need_seed(), strands, length, bonds)) + "\n";
      j["format"] = "word";
    } else {
      auto [f, n] = parse_family(gen);
      if (format == "bms") {
        if (steps > 0) throw UsageError("--steps needs --format bpd");
        text = to_bms(example_slices(f, n, parse_sign(sign)));
      } else {
        auto d = gen_example(f, n, parse_sign(sign));
        if (steps > 0) {
          WalkOptions opt;
          opt.calculus = parse_calculus(calculus);
          opt.steps = steps;
          opt.seed = need_seed();
          d = random_walk(d, opt).diagram;
        }
        text = to_bpd(d);
      }
      j["format"] = format;
    }
    j["text"] = text;
    emit(cx, j, text);
    return 0;
  }
};

// ---- fuzz

struct FuzzCmd {
  Source src;
  std::string calculus = "topological";
  int steps = 100;
  std::uint64_t seed = 0;
  int trials = 1;
  int max_extra = 10;
  std::string check = "underlying-jones";

  std::string invariant(const BondedDiagram& d) const {
    if (check == "underlying-jones") return normalized_jones(underlying_link(d)).to_string();
    if (check == "unplug-bonded") return unplug_bonded(d).to_string();
    if (check == "bracket") return bonded_bracket(d).to_string();
    std::string s;
    for (const auto& f : unplug_strict_set(d)) s += (s.empty() ? "" : "; ") + f.to_string();
    return s;
  }

  int run(const Context& cx) const {
    if (trials < 1) throw UsageError("--trials must be positive");
    if (steps < 0) throw UsageError("--steps must be non-negative");
    WalkOptions opt;
    opt.calculus = parse_calculus(calculus);
    opt.steps = steps;
    opt.max_extra_crossings = max_extra;
    if (check == "bracket") {
      // The bonded bracket is a regular isotopy invariant of tight diagrams.
      if (opt.calculus != Calculus::rigid_tight) throw UsageError("--check bracket needs --calculus rigid-tight");
      for (MoveKind k : all_move_kinds())
        if (in_calculus(k, opt.calculus) && k != MoveKind::R1 && k != MoveKind::enhancedCancel) opt.kinds.push_back(k);
    }
    auto d = src.diagram();
    require_valid(d);
    std::string before = invariant(d);
    Json j = header();
    j["check"] = check;
    j["calculus"] = to_string(opt.calculus);
    j["invariant"] = before;
    j["failures"] = Json::array();
    std::ostringstream h;
    long moves = 0;
    for (int t = 0; t < trials; ++t) {
      opt.seed = seed + static_cast<std::uint64_t>(t);
      auto walk = random_walk(d, opt);
      moves += static_cast<long>(walk.log.size());
      std::string after = invariant(walk.diagram);
      if (after != before) {
        j["failures"].push_back(Json{{"trial", t}, {"seed", opt.seed}, {"after", after}});
        h << "FAIL trial " << t << " seed " << opt.seed << ": " << before << " became " << after << "\n";
      }
    }
    bool pass = j["failures"].empty();
    j["moves"] = moves;
    j["pass"] = pass;
    if (pass) h << "PASS\n";
    emit(cx, j, h.str());
    return pass ? 0 : 1;
  }
};

int threads_from_env() {
  const char* env = std::getenv("BONDFORGE_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) throw UsageError("BONDFORGE_THREADS must be a positive integer");
  return static_cast<int>(v);
}

const std::vector<std::string> kCalculi = {"topological", "rigid", "rigid-tight"};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bonded knots, links and braids", "bondforge"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  std::optional<int> threads;
  app.add_flag("--json", json, "Machine-readable JSON output");
  app.add_option("--threads", threads, "Worker cap (default: BONDFORGE_THREADS or 1)")->check(CLI::PositiveNumber);

  ValidateCmd validate_cmd;
  auto* c_validate = app.add_subcommand("validate", "Check the invariants of a diagram");
  validate_cmd.src.add(c_validate);

  BracketCmd bracket_cmd;
  auto* c_bracket = app.add_subcommand("bracket", "Bonded bracket polynomial of a tight diagram");
  bracket_cmd.src.add(c_bracket);
  c_bracket->add_option("--set-a", bracket_cmd.set_a, "Substitute a polynomial for a");
  c_bracket->add_option("--set-b", bracket_cmd.set_b, "Substitute a polynomial for b");
  c_bracket->add_flag("--tighten", bracket_cmd.tighten_first, "Tighten the diagram first");

  JonesCmd jones_cmd;
  auto* c_jones = app.add_subcommand("jones", "Jones polynomial of the underlying link");
  jones_cmd.src.add(c_jones);

  UnplugCmd unplug_cmd;
  auto* c_unplug = app.add_subcommand("unplug", "Unplugging fingerprints");
  unplug_cmd.src.add(c_unplug);
  c_unplug->add_option("--mode", unplug_cmd.mode, "Which unpluggings")
      ->check(CLI::IsMember({"bonded", "strict", "full"}))
      ->capture_default_str();
  c_unplug->add_option("--node-bound", unplug_cmd.node_bound, "Refuse diagrams with more nodes")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  TangleCmd tangle_cmd;
  auto* c_tangle = app.add_subcommand("tangle", "Fingerprints after inserting tangles at the bonds");
  tangle_cmd.src.add(c_tangle);
  c_tangle->add_option("--tangles", tangle_cmd.tangles, "Tangle family, e.g. identity,crossing+ or twist:-2..2")
      ->required();
  c_tangle->add_option("--max-assignments", tangle_cmd.max_assignments, "Assignment budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_tangle->add_flag("--standardize", tangle_cmd.standardize_first, "Standardize the diagram first");

  BraidDiagramCmd bd_cmd;
  auto* c_bd = app.add_subcommand("braid-diagram", "Braid a slice diagram");
  bd_cmd.src.add(c_bd);
  c_bd->add_option("--emit", bd_cmd.emit_kind, "Output")->check(CLI::IsMember({"word", "certificate"}))->capture_default_str();
  c_bd->add_option("--free-label", bd_cmd.free_label, "Label of up-arcs that cross nothing")
      ->check(CLI::IsMember({"o", "u"}))
      ->capture_default_str();
  c_bd->add_option("--calculus", bd_cmd.calculus, "Move calculus")->check(CLI::IsMember(kCalculi))->capture_default_str();

  BraidEquivCmd eq_cmd;
  auto* c_eq = app.add_subcommand("braid-equiv", "Bounded search for Markov equivalence");
  c_eq->add_option("--lhs", eq_cmd.lhs, "First word")->required();
  c_eq->add_option("--rhs", eq_cmd.rhs, "Second word")->required();
  c_eq->add_option("--max-states", eq_cmd.budget.max_states, "State budget")->check(CLI::PositiveNumber)->capture_default_str();
  c_eq->add_option("--max-length", eq_cmd.budget.max_length, "Longest word explored")->check(CLI::PositiveNumber)->capture_default_str();
  c_eq->add_option("--max-strands", eq_cmd.budget.max_strands, "Most strands explored")->check(CLI::PositiveNumber)->capture_default_str();
  c_eq->add_flag("--no-stabilization", eq_cmd.no_stabilization, "Disable (de)stabilization");
  c_eq->add_flag("--no-conjugation", eq_cmd.no_conjugation, "Disable conjugation");
  c_eq->add_option("--relations", eq_cmd.relations, "Relation table")
      ->check(CLI::IsMember({"reduced", "irredundant"}))
      ->capture_default_str();

  WordOpsCmd wo_cmd;
  auto* c_wo = app.add_subcommand("word-ops", "Operations on braid words");
  c_wo->add_option("--word", wo_cmd.word, "Braid word");
  c_wo->add_option("--op", wo_cmd.op, "Operation")
      ->check(CLI::IsMember({"neighbors", "expand", "projections", "free-cancel", "closure", "l-move", "presentation"}))
      ->required();
  c_wo->add_option("--slot", wo_cmd.slot, "l-move: letter index of the cut")->capture_default_str();
  c_wo->add_option("--strand", wo_cmd.strand, "l-move: strand that is cut")->capture_default_str();
  c_wo->add_option("--kind", wo_cmd.kind, "l-move: over or under")->check(CLI::IsMember({"over", "under"}))->capture_default_str();
  c_wo->add_option("--strands", wo_cmd.strands, "presentation: number of strands")->check(CLI::PositiveNumber)->capture_default_str();
  c_wo->add_option("--relations", wo_cmd.relations, "presentation: relation table")
      ->check(CLI::IsMember({"reduced", "irredundant"}))
      ->capture_default_str();
  c_wo->add_option("--mode", wo_cmd.mode, "presentation: word mode")
      ->check(CLI::IsMember({"monoid", "enhanced"}))
      ->capture_default_str();

  GenCmd gen_cmd;
  auto* c_gen = app.add_subcommand("gen", "Generate corpus diagrams, slices and words");
  c_gen->add_option("--gen", gen_cmd.gen, "Example family U:<n> or K:<n>");
  c_gen->add_option("--sign", gen_cmd.sign, "Bond sign")
      ->check(CLI::IsMember({"plain", "attracting", "repelling"}))
      ->capture_default_str();
  c_gen->add_option("--format", gen_cmd.format, "Family output format")->check(CLI::IsMember({"bpd", "bms"}))->capture_default_str();
  c_gen->add_option("--steps", gen_cmd.steps, "Random walk steps applied to the family diagram")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_gen->add_option("--calculus", gen_cmd.calculus, "Calculus of the walk")->check(CLI::IsMember(kCalculi))->capture_default_str();
  c_gen->add_flag("--slices", gen_cmd.slices, "Random slice sequence");
  c_gen->add_option("--max-events", gen_cmd.max_events, "slices: most events")->capture_default_str();
  c_gen->add_option("--max-bonds", gen_cmd.max_bonds, "slices: most bonds")->capture_default_str();
  c_gen->add_flag("--random-word", gen_cmd.word, "Random braid word");
  c_gen->add_option("--strands", gen_cmd.strands, "random-word: strands")->capture_default_str();
  c_gen->add_option("--length", gen_cmd.length, "random-word: sigma letters")->capture_default_str();
  c_gen->add_option("--bonds", gen_cmd.bonds, "random-word: bond letters")->capture_default_str();
  c_gen->add_option("--seed", gen_cmd.seed, "Seed for randomized output");

  FuzzCmd fuzz_cmd;
  auto* c_fuzz = app.add_subcommand("fuzz", "Check an invariant along seeded random move walks");
  fuzz_cmd.src.add(c_fuzz);
  c_fuzz->add_option("--calculus", fuzz_cmd.calculus, "Move calculus")->check(CLI::IsMember(kCalculi))->capture_default_str();
  c_fuzz->add_option("--steps", fuzz_cmd.steps, "Moves per walk")->capture_default_str();
  c_fuzz->add_option("--seed", fuzz_cmd.seed, "Seed of the first walk; trial t uses seed + t")->required();
  c_fuzz->add_option("--trials", fuzz_cmd.trials, "Number of walks")->capture_default_str();
  c_fuzz->add_option("--max-extra-crossings", fuzz_cmd.max_extra, "Crossing growth cap per walk")->capture_default_str();
  c_fuzz->add_option("--check", fuzz_cmd.check, "Invariant compared before and after")
      ->check(CLI::IsMember({"underlying-jones", "unplug-bonded", "unplug-strict", "bracket"}))
      ->capture_default_str();

  std::vector<std::string> argv_store{"bondforge"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Context cx{json, threads ? *threads : threads_from_env(), out};
    try {
      if (c_validate->parsed()) return validate_cmd.run(cx);
      if (c_bracket->parsed()) return bracket_cmd.run(cx);
      if (c_jones->parsed()) return jones_cmd.run(cx);
      if (c_unplug->parsed()) return unplug_cmd.run(cx);
      if (c_tangle->parsed()) return tangle_cmd.run(cx);
      if (c_bd->parsed()) return bd_cmd.run(cx);
      if (c_eq->parsed()) return eq_cmd.run(cx);
      if (c_wo->parsed()) return wo_cmd.run(cx);
      if (c_gen->parsed()) return gen_cmd.run(cx);
      return fuzz_cmd.run(cx);
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      // Domain errors from the library, reported verbatim.
      if (json)
        out << Json{{"schema", kSchema}, {"error", e.what()}}.dump(2) << "\n";
      else
        err << "error: " << e.what() << "\n";
      return 1;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bondforge::cli
