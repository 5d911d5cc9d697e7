#include "bondforge/braidalg.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "bondforge/unplug.hpp"

namespace bondforge {

BraidGen BraidGen::sigma(int i, bool inverse) {
  BraidGen g;
  g.i = i;
  g.j = i + 1;
  g.inverse = inverse;
  return g;
}

BraidGen BraidGen::bond(int i, BondSign sign) {
  BraidGen g;
  g.type = GenType::bond;
  g.i = i;
  g.j = i + 1;
  g.sign = sign;
  return g;
}

BraidGen BraidGen::long_bond(int i, int j, std::string pattern, BondSign sign) {
  BraidGen g = bond(i, sign);
  g.j = j;
  g.pattern = std::move(pattern);
  return g;
}

BraidGen BraidGen::inverted() const {
  BraidGen g = *this;
  if (is_bond()) g.sign = opposite(sign);
  else g.inverse = !inverse;
  return g;
}

void check_word(const BraidWord& w) {
  if (w.n < 1) throw DiagramError("index out of range");
  for (const BraidGen& g : w.gens) {
    if (g.i < 1 || g.i >= w.n || g.j <= g.i || g.j > w.n) throw DiagramError("index out of range");
    if (!g.is_bond()) {
      if (g.j != g.i + 1) throw DiagramError("index out of range");
      continue;
    }
    if (static_cast<int>(g.pattern.size()) != g.j - g.i - 1) throw DiagramError("pattern length mismatch");
    for (char c : g.pattern)
      if (c != 'o' && c != 'u') throw DiagramError("pattern letters must be o or u");
    bool plain = g.sign == BondSign::plain;
    if (plain != (w.mode == WordMode::monoid)) throw DiagramError("plain and signed bonds mixed");
  }
}

namespace {

int read_int(const std::string& s, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (start == pos || pos - start > 6) throw DiagramError("malformed word");
  return std::stoi(s.substr(start, pos - start));
}

bool read_inverse(const std::string& tok, std::size_t& pos) {
  if (tok.compare(pos, 3, "^-1") != 0) return false;
  pos += 3;
  return true;
}

}  // namespace

BraidWord parse_word(const std::string& text, ParseMode mode) {
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  head.erase(std::remove_if(head.begin(), head.end(), [](unsigned char c) { return std::isspace(c); }), head.end());
  if (colon == std::string::npos || head.rfind("n=", 0) != 0) throw DiagramError("malformed word");
  std::size_t pos = 2;
  BraidWord w;
  w.n = read_int(head, pos);
  if (pos != head.size()) throw DiagramError("malformed word");

  // Bond tokens are read as plain and signed once the mode is known.
  std::vector<bool> bond_inverse;
  std::istringstream in(text.substr(colon + 1));
  std::string tok;
  while (in >> tok) {
    pos = 1;
    BraidGen g;
    bool inv = false;
    if (tok[0] == 's' || tok[0] == 'b') {
      int i = read_int(tok, pos);
      inv = read_inverse(tok, pos);
      g = tok[0] == 's' ? BraidGen::sigma(i, inv) : BraidGen::bond(i);
    } else if (tok[0] == 'B') {
      int i = read_int(tok, pos);
      if (pos >= tok.size() || tok[pos++] != ',') throw DiagramError("malformed token '" + tok + "'");
      int j = read_int(tok, pos);
      if (pos >= tok.size() || tok[pos++] != '[') throw DiagramError("malformed token '" + tok + "'");
      auto close = tok.find(']', pos);
      if (close == std::string::npos) throw DiagramError("malformed token '" + tok + "'");
      g = BraidGen::long_bond(i, j, tok.substr(pos, close - pos));
      pos = close + 1;
      inv = read_inverse(tok, pos);
    } else {
      throw DiagramError("unknown token '" + tok + "'");
    }
    if (pos != tok.size()) throw DiagramError("malformed token '" + tok + "'");
    if (g.is_bond()) bond_inverse.push_back(inv);
    w.gens.push_back(g);
  }

  bool any_inverse = std::find(bond_inverse.begin(), bond_inverse.end(), true) != bond_inverse.end();
  if (mode == ParseMode::monoid && any_inverse) throw DiagramError("inverse bond in monoid mode");
  w.mode = mode == ParseMode::enhanced || (mode == ParseMode::automatic && any_inverse) ? WordMode::enhanced
                                                                                       : WordMode::monoid;
  std::size_t k = 0;
  for (BraidGen& g : w.gens) {
    if (!g.is_bond() || w.mode == WordMode::monoid) continue;
    g.sign = bond_inverse[k++] ? BondSign::repelling : BondSign::attracting;
  }
  check_word(w);
  return w;
}

std::string format_gen(const BraidGen& g) {
  std::string s;
  if (!g.is_bond()) {
    s = "s" + std::to_string(g.i);
    if (g.inverse) s += "^-1";
    return s;
  }
  if (g.is_long()) s = "B" + std::to_string(g.i) + "," + std::to_string(g.j) + "[" + g.pattern + "]";
  else s = "b" + std::to_string(g.i);
  if (g.sign == BondSign::repelling) s += "^-1";
  return s;
}

std::string format_word(const BraidWord& w) {
  std::string s = "n=" + std::to_string(w.n) + ":";
  for (const BraidGen& g : w.gens) s += " " + format_gen(g);
  return s;
}

namespace {

bool uniform(const std::string& p) {
  return p.find('o') == std::string::npos || p.find('u') == std::string::npos;
}

// Pattern entry of bond g at threaded strand s.
char mark(const BraidGen& g, int s) { return g.pattern[static_cast<std::size_t>(s - g.i - 1)]; }

bool positive_sigma(const BraidGen& g, int i) { return !g.is_bond() && !g.inverse && g.i == i; }
bool elementary(const BraidGen& g) { return g.is_bond() && !g.is_long(); }

// Adjacent letters a b that may trade places; returns the new pair (b', a').
std::optional<std::pair<BraidGen, BraidGen>> commute(const BraidGen& a, const BraidGen& b) {
  if (!a.is_bond() && !b.is_bond()) {
    if (std::abs(a.i - b.i) > 1) return std::pair{b, a};
    return std::nullopt;
  }
  if (a.is_bond() && b.is_bond()) {
    if (a.j < b.i || b.j < a.i) return std::pair{b, a};
    const BraidGen& out = a.i < b.i ? a : b;
    const BraidGen& in = a.i < b.i ? b : a;
    if (!(out.i < in.i && in.j < out.j)) return std::nullopt;
    if (uniform(out.pattern)) return std::pair{b, a};
    auto inner = out.pattern.substr(static_cast<std::size_t>(in.i - out.i), static_cast<std::size_t>(in.j - in.i - 1));
    if (mark(out, in.i) == mark(out, in.j) && inner == in.pattern) return std::pair{b, a};
    return std::nullopt;
  }
  bool bond_first = a.is_bond();
  const BraidGen& bd = bond_first ? a : b;
  const BraidGen& sg = bond_first ? b : a;
  int k = sg.i;
  if (!bd.is_long()) {
    if (std::abs(bd.i - k) > 1 || bd.i == k) return std::pair{b, a};
    return std::nullopt;
  }
  if (k + 1 < bd.i || k > bd.j) return std::pair{b, a};
  if (!(k > bd.i && k + 1 < bd.j)) return std::nullopt;
  if (mark(bd, k) == mark(bd, k + 1)) return std::pair{b, a};
  // The bond passes under the over strand and over the under strand, and
  // trades its two marks as it moves through the crossing.
  int over_pos = bond_first == sg.inverse ? k : k + 1;
  if (mark(bd, over_pos) != 'u') return std::nullopt;
  BraidGen moved = bd;
  std::swap(moved.pattern[static_cast<std::size_t>(k - bd.i - 1)], moved.pattern[static_cast<std::size_t>(k - bd.i)]);
  return bond_first ? std::pair{sg, moved} : std::pair{moved, sg};
}

}  // namespace

std::vector<BraidWord> relation_neighbors(const BraidWord& w) {
  check_word(w);
  std::map<std::string, BraidWord> out;
  const auto& g = w.gens;
  auto emit = [&](std::size_t p, std::size_t len, std::vector<BraidGen> repl) {
    BraidWord v = w;
    v.gens.erase(v.gens.begin() + static_cast<long>(p), v.gens.begin() + static_cast<long>(p + len));
    v.gens.insert(v.gens.begin() + static_cast<long>(p), repl.begin(), repl.end());
    out.emplace(format_word(v), std::move(v));
  };
  for (std::size_t p = 0; p + 1 < g.size(); ++p) {
    const BraidGen &a = g[p], &b = g[p + 1];
    if (auto c = commute(a, b)) emit(p, 2, {c->first, c->second});
    bool invertible = !a.is_bond() || a.sign != BondSign::plain;
    if (invertible && b == a.inverted()) emit(p, 2, {});
    if (p + 2 >= g.size()) continue;
    const BraidGen& c = g[p + 2];
    int i = a.i;
    // sigma_i sigma_{i+-1} sigma_i
    if (positive_sigma(a, i) && positive_sigma(c, i) && !b.is_bond() && !b.inverse && std::abs(b.i - i) == 1)
      emit(p, 3, {b, a, b});
    // b_i s_{i+1} s_i <-> s_{i+1} s_i b_{i+1}
    if (elementary(a) && positive_sigma(b, i + 1) && positive_sigma(c, i))
      emit(p, 3, {b, c, BraidGen::bond(i + 1, a.sign)});
    if (elementary(c) && positive_sigma(a, c.i) && positive_sigma(b, c.i - 1))
      emit(p, 3, {BraidGen::bond(c.i - 1, c.sign), a, b});
    // s_i s_{i+1} b_i <-> b_{i+1} s_i s_{i+1}
    if (positive_sigma(a, i) && positive_sigma(b, i + 1) && elementary(c) && c.i == i)
      emit(p, 3, {BraidGen::bond(i + 1, c.sign), a, b});
    if (elementary(a) && positive_sigma(b, a.i - 1) && positive_sigma(c, a.i))
      emit(p, 3, {b, c, BraidGen::bond(a.i - 1, a.sign)});
  }
  std::vector<BraidWord> v;
  for (auto& [k, word] : out) v.push_back(std::move(word));
  return v;
}

BraidWord expand_long_bond(const BraidGen& g, int n) {
  BraidWord w;
  w.n = n;
  w.mode = g.sign == BondSign::plain ? WordMode::monoid : WordMode::enhanced;
  if (!g.is_long()) {
    w.gens.push_back(g);
    return w;
  }
  std::vector<BraidGen> drag;
  for (int k = g.i; k <= g.j - 2; ++k) drag.push_back(BraidGen::sigma(k, mark(g, k + 1) == 'o'));
  w.gens = drag;
  w.gens.push_back(BraidGen::bond(g.j - 1, g.sign));
  for (auto it = drag.rbegin(); it != drag.rend(); ++it) w.gens.push_back(it->inverted());
  return w;
}

BraidWord expand_long_bonds(const BraidWord& w) {
  BraidWord out = w;
  out.gens.clear();
  for (const BraidGen& g : w.gens) {
    auto e = expand_long_bond(g, w.n);
    out.gens.insert(out.gens.end(), e.gens.begin(), e.gens.end());
  }
  return out;
}

BondedDiagram closure(const BraidWord& w) {
  check_word(w);
  BondedDiagram d;
  std::vector<int> cur(static_cast<std::size_t>(w.n), -1);
  std::vector<Attachment> top(static_cast<std::size_t>(w.n));
  // Feeds strand `pos` into (v, slot) and gives it a fresh outgoing edge at `out`.
  auto pass = [&](int pos, int v, int in, int out) {
    if (cur[pos] < 0) top[pos] = {v, in};
    else d.attach(v, in, {cur[pos], 1});
    int e = d.add_edge(EdgeKind::link);
    d.attach(v, out, {e, 0});
    cur[pos] = e;
  };
  for (const BraidGen& g : w.gens) {
    int l = g.i - 1, r = g.j - 1;
    if (!g.is_bond()) {
      // Slots NW, SW, SE, NE.
      // A positive letter puts the strand entering on the right over.
      int v = d.add_vertex(VertexKind::crossing, g.inverse);
      for (auto [pos, slot] : {std::pair{l, 0}, std::pair{r, 3}}) {
        if (cur[pos] < 0) top[pos] = {v, slot};
        else d.attach(v, slot, {cur[pos], 1});
      }
      int sw = d.add_edge(EdgeKind::link), se = d.add_edge(EdgeKind::link);
      d.attach(v, 1, {sw, 0});
      d.attach(v, 2, {se, 0});
      cur[l] = sw;
      cur[r] = se;
      continue;
    }
    // Left node (in, out, bond), threaded crossings (N, W, S, E), right
    // node (in, bond, out). The bond runs west to east.
    int nl = d.add_vertex(VertexKind::node);
    pass(l, nl, 0, 1);
    HalfEdge west{d.add_edge(EdgeKind::bond, g.sign), 0};
    d.attach(nl, 2, west);
    for (int s = g.i + 1; s < g.j; ++s) {
      int x = d.add_vertex(VertexKind::crossing, mark(g, s) == 'u');
      d.attach(x, 1, BondedDiagram::other(west));
      pass(s - 1, x, 0, 2);
      west = {d.add_edge(EdgeKind::bond, g.sign), 0};
      d.attach(x, 3, west);
    }
    int nr = d.add_vertex(VertexKind::node);
    d.attach(nr, 1, BondedDiagram::other(west));
    pass(r, nr, 0, 2);
  }
  for (int p = 0; p < w.n; ++p) {
    if (cur[p] < 0) ++d.free_loops;
    else d.attach(top[p].vertex, top[p].slot, {cur[p], 1});
  }
  return d;
}

Projections projections(const BraidWord& w) {
  check_word(w);
  BraidWord x = expand_long_bonds(w);
  Projections p;
  p.forget = p.collapse = BraidWord{x.n, {}, WordMode::monoid};
  std::vector<int> at(static_cast<std::size_t>(x.n));
  for (int k = 0; k < x.n; ++k) at[k] = k;
  for (const BraidGen& g : x.gens) {
    if (g.is_bond()) {
      bool rep = g.sign == BondSign::repelling;
      p.bondcount += rep ? -1 : 1;
      p.collapse.gens.push_back(BraidGen::sigma(g.i, rep));
      continue;
    }
    p.forget.gens.push_back(g);
    p.collapse.gens.push_back(g);
    p.expsum += g.inverse ? -1 : 1;
    std::swap(at[g.i - 1], at[g.i]);
  }
  p.perm.assign(static_cast<std::size_t>(x.n), 0);
  for (int pos = 0; pos < x.n; ++pos) p.perm[at[pos]] = pos + 1;
  return p;
}

int cycle_count(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  int cycles = 0;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (std::size_t t = s; !seen[t]; t = static_cast<std::size_t>(perm[t] - 1)) seen[t] = true;
  }
  return cycles;
}

BraidWord free_cancel(const BraidWord& w) {
  BraidWord out = w;
  out.gens.clear();
  for (const BraidGen& g : w.gens) {
    if (g.is_bond() && g.sign != BondSign::plain && !out.gens.empty() && out.gens.back() == g.inverted())
      out.gens.pop_back();
    else
      out.gens.push_back(g);
  }
  return out;
}

BraidWord l_move(const BraidWord& w, int slot, int strand, LKind kind) {
  check_word(w);
  int len = static_cast<int>(w.gens.size());
  if (slot < 0 || slot > len || strand < 1 || strand > w.n) throw DiagramError("index out of range");
  if (slot < len) {
    const BraidGen& g = w.gens[slot];
    if (g.i <= strand && strand <= g.j)
      throw DiagramError(g.is_bond() ? "L-move forbidden at bond" : "L-move forbidden at crossing");
  }
  bool over = kind == LKind::over;
  BraidWord out = w;
  out.n = w.n + 1;
  std::vector<BraidGen> loop;
  for (int k = strand; k < w.n; ++k) loop.push_back(BraidGen::sigma(k, over));
  loop.push_back(BraidGen::sigma(w.n, !over));
  for (int k = w.n - 1; k >= strand; --k) loop.push_back(BraidGen::sigma(k, !over));
  out.gens.insert(out.gens.begin() + slot, loop.begin(), loop.end());
  return out;
}

std::vector<Relation> presentation(int n, Presentation p, WordMode mode) {
  BondSign sign = mode == WordMode::monoid ? BondSign::plain : BondSign::attracting;
  std::vector<Relation> out;
  auto rel = [&](const char* family, std::vector<BraidGen> lhs, std::vector<BraidGen> rhs) {
    out.push_back({family, {n, std::move(lhs), mode}, {n, std::move(rhs), mode}});
  };
  auto s = [](int i, bool inv = false) { return BraidGen::sigma(i, inv); };
  auto b = [&](int i) { return BraidGen::bond(i, sign); };
  std::vector<bool> exps = {false, true};
  if (mode == WordMode::enhanced && p == Presentation::irredundant) exps = {false};
  for (int i = 1; i < n; ++i)
    for (int j = i + 2; j < n; ++j) rel("commute-sigma", {s(i), s(j)}, {s(j), s(i)});
  for (int i = 1; i + 1 < n; ++i) rel("braid", {s(i), s(i + 1), s(i)}, {s(i + 1), s(i), s(i + 1)});
  if (p == Presentation::reduced) {
    for (int i = 1; i < n; ++i)
      for (int j = i + 2; j < n; ++j) rel("commute-bonds", {b(i), b(j)}, {b(j), b(i)});
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j)
        if (std::abs(i - j) > 1)
          for (bool inv : exps) rel("commute-bond-sigma", {b(i), s(j, inv)}, {s(j, inv), b(i)});
    for (int i = 1; i < n; ++i)
      for (bool inv : exps) rel("flype", {b(i), s(i, inv)}, {s(i, inv), b(i)});
    for (int i = 1; i + 1 < n; ++i) rel("slide-down", {b(i), s(i + 1), s(i)}, {s(i + 1), s(i), b(i + 1)});
    for (int i = 1; i + 1 < n; ++i) rel("slide-up", {s(i), s(i + 1), b(i)}, {b(i + 1), s(i), s(i + 1)});
  } else if (n > 1) {
    for (int j = 3; j < n; ++j)
      for (bool inv : exps) rel("commute-bond-sigma", {b(1), s(j, inv)}, {s(j, inv), b(1)});
    if (n > 2) rel("pure-twist", {b(1), s(2), s(1), s(1), s(2)}, {s(2), s(1), s(1), s(2), b(1)});
    for (bool inv : exps) rel("flype", {b(1), s(1, inv)}, {s(1, inv), b(1)});
  }
  if (mode == WordMode::enhanced) {
    int last = p == Presentation::reduced ? n - 1 : std::min(n - 1, 1);
    for (int i = 1; i <= last; ++i) {
      rel("cancel", {b(i), b(i).inverted()}, {});
      rel("cancel", {b(i).inverted(), b(i)}, {});
    }
  }
  return out;
}

std::string to_string(EquivResult::Verdict v) {
  switch (v) {
    case EquivResult::Verdict::equivalent: return "Equivalent";
    case EquivResult::Verdict::distinguished: return "Distinguished";
    default: return "Unknown";
  }
}

namespace {

// Search words: n and letters, sigma_i^e as e*i and b_i^e as e*(kBond+i).
constexpr int kBond = 64;
using Code = std::vector<int>;
struct State {
  int n = 1;
  Code letters;
};

Code inverse(const Code& c) {
  Code r(c.rbegin(), c.rend());
  for (int& x : r) x = -x;
  return r;
}

void reduce(Code& c) {
  Code out;
  for (int x : c) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  c.swap(out);
}

std::string key(const State& s) {
  std::string k(1, static_cast<char>(s.n));
  for (int x : s.letters) k.push_back(static_cast<char>(x));
  return k;
}

State unkey(const std::string& k) {
  State s;
  s.n = k[0];
  for (std::size_t i = 1; i < k.size(); ++i) s.letters.push_back(static_cast<signed char>(k[i]));
  return s;
}

int encode(const BraidGen& g) {
  if (!g.is_bond()) return g.inverse ? -g.i : g.i;
  return g.sign == BondSign::repelling ? -(kBond + g.i) : kBond + g.i;
}

State encode(const BraidWord& w) {
  State s{w.n, {}};
  for (const BraidGen& g : w.gens) s.letters.push_back(encode(g));
  reduce(s.letters);
  return s;
}

BraidWord decode(const State& s, WordMode mode) {
  BraidWord w{s.n, {}, mode};
  for (int x : s.letters) {
    int a = std::abs(x);
    if (a < kBond) w.gens.push_back(BraidGen::sigma(a, x < 0));
    else if (mode == WordMode::monoid) w.gens.push_back(BraidGen::bond(a - kBond));
    else w.gens.push_back(BraidGen::bond(a - kBond, x < 0 ? BondSign::repelling : BondSign::attracting));
  }
  return w;
}

// A relator piece: the subword x may be replaced by y.
struct Piece {
  Code x, y;
};

class Rewriter {
 public:
  Rewriter(const EquivBudget& b, WordMode mode) : budget_(b), mode_(mode) {}

  std::vector<std::pair<const char*, State>> neighbors(const State& s) {
    std::vector<std::pair<const char*, State>> out;
    auto push = [&](const char* move, State t) {
      if (static_cast<int>(t.letters.size()) <= budget_.max_length) out.emplace_back(move, std::move(t));
    };
    const Code& w = s.letters;
    const auto& table = pieces(s.n);
    for (std::size_t p = 0; p < w.size(); ++p) {
      auto it = table.find(w[p]);
      if (it == table.end()) continue;
      for (const Piece& pc : it->second) {
        if (p + pc.x.size() > w.size() || !std::equal(pc.x.begin(), pc.x.end(), w.begin() + static_cast<long>(p))) continue;
        State t{s.n, Code(w.begin(), w.begin() + static_cast<long>(p))};
        t.letters.insert(t.letters.end(), pc.y.begin(), pc.y.end());
        t.letters.insert(t.letters.end(), w.begin() + static_cast<long>(p + pc.x.size()), w.end());
        reduce(t.letters);
        push("relation", std::move(t));
      }
    }
    if (budget_.conjugation && w.size() > 1) {
      State l{s.n, Code(w.begin() + 1, w.end())};
      l.letters.push_back(w.front());
      reduce(l.letters);
      push("conjugate", std::move(l));
      State r{s.n, {w.back()}};
      r.letters.insert(r.letters.end(), w.begin(), w.end() - 1);
      reduce(r.letters);
      push("conjugate", std::move(r));
    }
    if (budget_.stabilization) {
      if (s.n + 1 <= budget_.max_strands && s.n + 1 < kBond)
        for (int e : {1, -1}) {
          State t = s;
          ++t.n;
          t.letters.push_back(e * s.n);
          push("stabilize", std::move(t));
        }
      if (s.n >= 2 && !w.empty() && std::abs(w.back()) == s.n - 1) {
        bool alone = std::none_of(w.begin(), w.end() - 1, [&](int x) {
          return std::abs(x) == s.n - 1 || std::abs(x) == kBond + s.n - 1;
        });
        if (alone) push("destabilize", State{s.n - 1, Code(w.begin(), w.end() - 1)});
      }
    }
    return out;
  }

 private:
  const std::map<int, std::vector<Piece>>& pieces(int n) {
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    std::set<std::pair<Code, Code>> found;
    for (const Relation& r : presentation(n, budget_.relations, mode_)) {
      Code rel = encode(r.lhs).letters, rhs = encode(r.rhs).letters;
      Code inv = inverse(rhs);
      rel.insert(rel.end(), inv.begin(), inv.end());
      for (const Code& base : {rel, inverse(rel)}) {
        std::size_t len = base.size();
        for (std::size_t rot = 0; rot < len; ++rot) {
          Code t(base.begin() + static_cast<long>(rot), base.end());
          t.insert(t.end(), base.begin(), base.begin() + static_cast<long>(rot));
          for (std::size_t k = 1; k <= len; ++k) {
            Code x(t.begin(), t.begin() + static_cast<long>(k));
            Code y = inverse(Code(t.begin() + static_cast<long>(k), t.end()));
            // Bonds have no inverses in the monoid.
            if (mode_ == WordMode::monoid && std::any_of(y.begin(), y.end(), [](int c) { return c < -kBond; })) continue;
            if (x != y) found.emplace(std::move(x), std::move(y));
          }
        }
      }
    }
    auto& table = cache_[n];
    for (const auto& [x, y] : found) table[x.front()].push_back({x, y});
    return table;
  }

  EquivBudget budget_;
  WordMode mode_;
  std::map<int, std::map<int, std::vector<Piece>>> cache_;
};

const char* reverse_move(const std::string& m) {
  if (m == "stabilize") return "destabilize";
  if (m == "destabilize") return "stabilize";
  return m == "conjugate" ? "conjugate" : "relation";
}

// Invariants of the closure, in the order they are compared.
// Enhanced words may cancel bond pairs, which the strict set does not survive.
std::optional<std::string> distinguishing_invariant(const BraidWord& x, const BraidWord& y) {
  auto px = projections(x), py = projections(y);
  if (px.bondcount != py.bondcount) return "bondcount";
  if (cycle_count(px.perm) != cycle_count(py.perm)) return "components";
  auto cx = closure(x), cy = closure(y);
  if (unplug_bonded(cx) == unplug_bonded(cy)) {
    if (x.mode == WordMode::enhanced) return std::nullopt;
    try {
      if (unplug_strict_set(cx) != unplug_strict_set(cy)) return "unplug_strict_set";
    } catch (const DiagramError&) {
      // Too many nodes to enumerate.
    }
    return std::nullopt;
  }
  return "unplug_bonded";
}

}  // namespace

EquivResult equiv_search(const BraidWord& lhs, const BraidWord& rhs, const EquivBudget& budget) {
  if (budget.max_states <= 0 || budget.max_strands <= 0 || budget.max_length <= 0)
    throw DiagramError("budget must be positive");
  if (lhs.mode != rhs.mode) throw DiagramError("words differ in mode");
  check_word(lhs);
  check_word(rhs);
  WordMode mode = lhs.mode;
  EquivResult res;
  BraidWord x = expand_long_bonds(lhs), y = expand_long_bonds(rhs);
  if (auto inv = distinguishing_invariant(x, y)) {
    res.verdict = EquivResult::Verdict::distinguished;
    res.invariant = *inv;
    return res;
  }

  struct Visit {
    std::string parent;
    std::string move;
  };
  std::array<std::unordered_map<std::string, Visit>, 2> seen;
  std::array<std::vector<std::string>, 2> frontier;
  std::array<std::string, 2> start = {key(encode(x)), key(encode(y))};
  for (int s = 0; s < 2; ++s) {
    seen[s][start[s]] = {"", "start"};
    frontier[s].push_back(start[s]);
  }
  res.states = start[0] == start[1] ? 1 : 2;

  auto finish = [&](const std::string& meet) {
    std::vector<std::string> left;
    for (std::string k = meet; !k.empty(); k = seen[0][k].parent) left.push_back(k);
    std::reverse(left.begin(), left.end());
    res.verdict = EquivResult::Verdict::equivalent;
    for (const auto& k : left) res.path.push_back({seen[0][k].move, decode(unkey(k), mode)});
    for (std::string k = meet; !seen[1][k].parent.empty();) {
      const Visit& v = seen[1][k];
      res.path.push_back({reverse_move(v.move), decode(unkey(v.parent), mode)});
      k = v.parent;
    }
    return res;
  };
  if (start[0] == start[1]) return finish(start[0]);

  int threads = std::max(1, budget.threads);
  std::vector<Rewriter> rewriters(static_cast<std::size_t>(threads), Rewriter(budget, mode));
  while (!frontier[0].empty() && !frontier[1].empty()) {
    int s = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    auto& cur = frontier[s];
    std::sort(cur.begin(), cur.end());
    // Neighbors are generated in parallel and merged in frontier order.
    std::vector<std::vector<std::pair<const char*, State>>> found(cur.size());
    auto work = [&](std::size_t t) {
      for (std::size_t q = t; q < cur.size(); q += static_cast<std::size_t>(threads))
        found[q] = rewriters[t].neighbors(unkey(cur[q]));
    };
    if (threads == 1 || cur.size() < 64) {
      for (std::size_t q = 0; q < cur.size(); ++q) found[q] = rewriters[0].neighbors(unkey(cur[q]));
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(work, static_cast<std::size_t>(t));
      for (auto& th : pool) th.join();
    }
    std::vector<std::string> next;
    for (std::size_t q = 0; q < cur.size(); ++q) {
      for (auto& [move, st] : found[q]) {
        std::string k = key(st);
        if (!seen[s].emplace(k, Visit{cur[q], move}).second) continue;
        if (seen[1 - s].count(k)) return finish(k);
        next.push_back(std::move(k));
        if (++res.states >= budget.max_states) return res;
      }
    }
    cur = std::move(next);
  }
  return res;
}

}  // namespace bondforge
