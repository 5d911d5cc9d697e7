#include "bondforge/braiding.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bondforge/unplug.hpp"

namespace bondforge {

namespace {

[[noreturn]] void fail_at(std::size_t k, const std::string& what) {
  throw DiagramError("slice " + std::to_string(k + 1) + ": " + what);
}

// Strand orientations (true: downward) above each event, plus the final
// state. Validates the sequence on the way.
std::vector<std::vector<bool>> orientation_states(const SliceSequence& s) {
  std::vector<std::vector<bool>> states;
  std::vector<bool> cur;
  for (std::size_t k = 0; k < s.events.size(); ++k) {
    states.push_back(cur);
    const SliceEvent& e = s.events[k];
    int n = static_cast<int>(cur.size());
    switch (e.kind) {
      case SliceKind::cup:
        if (e.pos < 1 || e.pos > n + 1) fail_at(k, "position out of range");
        cur.insert(cur.begin() + (e.pos - 1), {!e.left_up, e.left_up});
        break;
      case SliceKind::cap:
        if (e.pos < 1 || e.pos + 1 > n) fail_at(k, "position out of range");
        if (cur[e.pos - 1] == cur[e.pos]) fail_at(k, "cap joins strands of equal orientation");
        cur.erase(cur.begin() + (e.pos - 1), cur.begin() + (e.pos + 1));
        break;
      case SliceKind::cross:
        if (e.pos < 1 || e.pos + 1 > n) fail_at(k, "position out of range");
        std::swap(cur[e.pos - 1], cur[e.pos]);
        break;
      case SliceKind::bond:
        if (e.pos < 1 || e.reach < 1 || e.pos + e.reach > n) fail_at(k, "position out of range");
        if (static_cast<int>(e.pattern.size()) != e.reach - 1) fail_at(k, "pattern length mismatch");
        for (char c : e.pattern)
          if (c != 'o' && c != 'u') fail_at(k, "pattern letters must be o or u");
        break;
    }
  }
  if (!cur.empty()) throw DiagramError("unbalanced cups/caps");
  states.push_back(cur);
  return states;
}

int downs_before(const std::vector<bool>& state, int p) {
  return static_cast<int>(std::count(state.begin(), state.begin() + p, true));
}

SliceEvent cup_event(int pos, bool left_up) {
  SliceEvent e;
  e.kind = SliceKind::cup;
  e.pos = pos;
  e.left_up = left_up;
  return e;
}

SliceEvent cap_event(int pos) {
  SliceEvent e;
  e.kind = SliceKind::cap;
  e.pos = pos;
  return e;
}

int parse_int(const std::string& tok, int line) {
  int v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw DiagramError("line " + std::to_string(line) + ": malformed event");
  return v;
}

}  // namespace

SliceSequence parse_bms(std::string_view text) {
  SliceSequence s;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto malformed = [&] { return DiagramError("line " + std::to_string(line) + ": malformed event"); };
    SliceEvent e;
    const std::string& op = tok[0];
    if (op == "cup") {
      if (tok.size() != 3 || (tok[2] != "lu" && tok[2] != "ru")) throw malformed();
      e = cup_event(parse_int(tok[1], line), tok[2] == "lu");
    } else if (op == "cap") {
      if (tok.size() != 2) throw malformed();
      e = cap_event(parse_int(tok[1], line));
    } else if (op == "x") {
      if (tok.size() != 3 || (tok[2] != "+" && tok[2] != "-")) throw malformed();
      e.kind = SliceKind::cross;
      e.pos = parse_int(tok[1], line);
      e.positive = tok[2] == "+";
    } else if (op == "bond") {
      if (tok.size() < 4 || tok.size() > 5) throw malformed();
      e.kind = SliceKind::bond;
      e.pos = parse_int(tok[1], line);
      e.reach = parse_int(tok[2], line);
      std::string pat = tok[3];
      if (pat.size() < 2 || pat.front() != '[' || pat.back() != ']') throw malformed();
      e.pattern = pat.substr(1, pat.size() - 2);
      if (tok.size() == 5) {
        if (tok[4] == "+") e.sign = BondSign::attracting;
        else if (tok[4] == "-") e.sign = BondSign::repelling;
        else throw malformed();
      }
    } else {
      throw DiagramError("line " + std::to_string(line) + ": unknown event '" + op + "'");
    }
    s.events.push_back(e);
  }
  return s;
}

std::string to_bms(const SliceSequence& s) {
  std::ostringstream out;
  for (const SliceEvent& e : s.events) {
    switch (e.kind) {
      case SliceKind::cup: out << "cup " << e.pos << (e.left_up ? " lu" : " ru"); break;
      case SliceKind::cap: out << "cap " << e.pos; break;
      case SliceKind::cross: out << "x " << e.pos << (e.positive ? " +" : " -"); break;
      case SliceKind::bond:
        out << "bond " << e.pos << ' ' << e.reach << " [" << e.pattern << ']';
        if (e.sign == BondSign::attracting) out << " +";
        if (e.sign == BondSign::repelling) out << " -";
        break;
    }
    out << '\n';
  }
  return out.str();
}

void check_slices(const SliceSequence& s) { orientation_states(s); }

BondedDiagram slices_to_diagram(const SliceSequence& s) {
  auto states = orientation_states(s);
  BondedDiagram d;
  // Every strand is an open path hanging from a vertex slot above it, or,
  // for cup legs that have not met a vertex yet, from the other leg.
  struct Open {
    Attachment far;
    int partner = -1;
    bool down = true;
  };
  std::vector<Open> open;
  std::vector<int> at;
  auto fresh = [&](Attachment far, bool down) {
    open.push_back({far, -1, down});
    return static_cast<int>(open.size()) - 1;
  };
  auto link = [&](Attachment far, Attachment here, bool down) {
    int e = d.add_edge(EdgeKind::link);
    Attachment tail = down ? far : here, head = down ? here : far;
    d.attach(tail.vertex, tail.slot, {e, 0});
    d.attach(head.vertex, head.slot, {e, 1});
  };
  auto finish = [&](int id, int v, int slot) {
    const Open& o = open[id];
    if (o.partner >= 0) open[o.partner] = {{v, slot}, -1, open[o.partner].down};
    else link(o.far, {v, slot}, o.down);
  };
  // Replaces the strand at position p by the path leaving (v, slot).
  auto pass = [&](int p, int v, int in, int out) {
    bool down = open[at[p]].down;
    finish(at[p], v, in);
    at[p] = fresh({v, out}, down);
  };

  for (const SliceEvent& e : s.events) {
    int p = e.pos - 1;
    switch (e.kind) {
      case SliceKind::cup: {
        int a = fresh({}, !e.left_up), b = fresh({}, e.left_up);
        open[a].partner = b;
        open[b].partner = a;
        at.insert(at.begin() + p, {a, b});
        break;
      }
      case SliceKind::cap: {
        Open l = open[at[p]], r = open[at[p + 1]];
        if (l.partner == at[p + 1]) {
          ++d.free_loops;
        } else if (l.partner < 0 && r.partner < 0) {
          link(l.far, r.far, l.down);
        } else if (l.partner >= 0 && r.partner >= 0) {
          open[l.partner].partner = r.partner;
          open[r.partner].partner = l.partner;
        } else if (l.partner >= 0) {
          open[l.partner] = {r.far, -1, open[l.partner].down};
        } else {
          open[r.partner] = {l.far, -1, open[r.partner].down};
        }
        at.erase(at.begin() + p, at.begin() + p + 2);
        break;
      }
      case SliceKind::cross: {
        // Slots NW, SW, SE, NE as in braid closures.
        int v = d.add_vertex(VertexKind::crossing, !e.positive);
        int l = at[p], r = at[p + 1];
        bool ldown = open[l].down, rdown = open[r].down;
        finish(l, v, 0);
        finish(r, v, 3);
        at[p] = fresh({v, 1}, rdown);
        at[p + 1] = fresh({v, 2}, ldown);
        break;
      }
      case SliceKind::bond: {
        int nl = d.add_vertex(VertexKind::node);
        pass(p, nl, 0, 1);
        HalfEdge west{d.add_edge(EdgeKind::bond, e.sign), 0};
        d.attach(nl, 2, west);
        for (int t = 1; t < e.reach; ++t) {
          int x = d.add_vertex(VertexKind::crossing, e.pattern[static_cast<std::size_t>(t - 1)] == 'u');
          d.attach(x, 1, BondedDiagram::other(west));
          pass(p + t, x, 0, 2);
          west = {d.add_edge(EdgeKind::bond, e.sign), 0};
          d.attach(x, 3, west);
        }
        int nr = d.add_vertex(VertexKind::node);
        d.attach(nr, 1, BondedDiagram::other(west));
        pass(p + e.reach, nr, 0, 2);
        break;
      }
    }
  }
  require_valid(d);
  return d;
}

SliceSequence prepare_bonds(const SliceSequence& s, Calculus calculus) {
  if (calculus != Calculus::topological) throw DiagramError("braiding requires topological category");
  auto states = orientation_states(s);
  SliceSequence out;
  for (std::size_t k = 0; k < s.events.size(); ++k) {
    const SliceEvent& e = s.events[k];
    if (e.kind != SliceKind::bond) {
      out.events.push_back(e);
      continue;
    }
    bool left_up = !states[k][static_cast<std::size_t>(e.pos - 1)];
    bool right_up = !states[k][static_cast<std::size_t>(e.pos + e.reach - 1)];
    // A zigzag puts a downward piece beside the node; the bond then passes
    // over the piece of its own strand below it.
    SliceEvent b = e;
    int right = e.pos + e.reach;
    std::vector<SliceEvent> before, after;
    if (left_up) {
      before.push_back(cup_event(e.pos + 1, false));
      after.push_back(cap_event(e.pos));
      b.pos = e.pos + 1;
      b.pattern = "o" + b.pattern;
      right += 2;
    }
    if (right_up) {
      before.push_back(cup_event(right, true));
      after.insert(after.begin(), cap_event(right + 1));
      b.pattern += "o";
      right += 1;
    }
    b.reach = right - b.pos;
    out.events.insert(out.events.end(), before.begin(), before.end());
    out.events.push_back(b);
    out.events.insert(out.events.end(), after.begin(), after.end());
  }
  return out;
}

BraidWord braid(const SliceSequence& input, const BraidingOptions& opt) {
  if (opt.free_label != 'o' && opt.free_label != 'u') throw DiagramError("free label must be o or u");
  SliceSequence s = prepare_bonds(input, opt.calculus);
  if (s.events.empty()) throw DiagramError("empty slice sequence");
  auto states = orientation_states(s);
  const int T = static_cast<int>(s.events.size());

  // Pass 1: every up-arc, from its maximum (cup) down to its minimum (cap),
  // with the crossings it takes part in. pos[t - cup] is its position after
  // event t.
  struct Arc {
    int cup = 0, cap = 0;
    std::vector<std::pair<int, bool>> contacts;  // (event, arc passes over)
    std::vector<int> pos;
  };
  std::vector<Arc> arcs;
  std::vector<int> arc_at;
  for (int k = 0; k < T; ++k) {
    const SliceEvent& e = s.events[static_cast<std::size_t>(k)];
    int p = e.pos - 1;
    switch (e.kind) {
      case SliceKind::cup: {
        int id = static_cast<int>(arcs.size());
        arcs.push_back({k, 0, {}, {}});
        arc_at.insert(arc_at.begin() + p, {e.left_up ? id : -1, e.left_up ? -1 : id});
        break;
      }
      case SliceKind::cap:
        arcs[static_cast<std::size_t>(std::max(arc_at[p], arc_at[p + 1]))].cap = k;
        arc_at.erase(arc_at.begin() + p, arc_at.begin() + p + 2);
        break;
      case SliceKind::cross:
        for (int side : {p, p + 1})
          if (arc_at[side] >= 0) arcs[arc_at[side]].contacts.push_back({k, (side == p + 1) == e.positive});
        std::swap(arc_at[p], arc_at[p + 1]);
        break;
      case SliceKind::bond:
        if (arc_at[p] >= 0 || arc_at[p + e.reach] >= 0) throw std::logic_error("bond on an up-arc");
        for (int t = 1; t < e.reach; ++t)
          if (arc_at[p + t] >= 0) arcs[arc_at[p + t]].contacts.push_back({k, e.pattern[t - 1] == 'u'});
        break;
    }
    for (int q = 0; q < static_cast<int>(arc_at.size()); ++q)
      if (arc_at[q] >= 0) arcs[arc_at[q]].pos.push_back(q);
  }

  // Pieces: maximal runs passing only over or only under. A piece spans
  // the times [top, bottom]; neighbours share the split time.
  struct Piece {
    int arc = 0, top = 0, bottom = 0;
    bool over = true;
    int column = 0;
    long rank = 0;
  };
  std::vector<Piece> pieces;
  std::vector<std::vector<int>> arc_pieces(arcs.size());
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const Arc& arc = arcs[a];
    int start = arc.cup;
    auto add = [&](int end, bool over) {
      arc_pieces[a].push_back(static_cast<int>(pieces.size()));
      pieces.push_back({static_cast<int>(a), start, end, over, 0, 0});
      start = end;
    };
    const auto& c = arc.contacts;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (i + 1 < c.size() && c[i + 1].second != c[i].second) add(c[i].first, c[i].second);
    add(arc.cap - 1, c.empty() ? opt.free_label == 'o' : c.back().second);
  }
  auto pos_of = [&](const Piece& pc, int t) { return arcs[pc.arc].pos[t - arcs[pc.arc].cup]; };
  std::vector<int> by_column(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) by_column[i] = static_cast<int>(i);
  std::sort(by_column.begin(), by_column.end(), [&](int x, int y) {
    const Piece &a = pieces[x], &b = pieces[y];
    if (a.top != b.top) return a.top < b.top;
    return pos_of(a, a.top) < pos_of(b, b.top);
  });
  for (std::size_t c = 0; c < by_column.size(); ++c) pieces[by_column[c]].column = static_cast<int>(c);

  // Heights. Each piece is lifted (over) or sunk (under) to its own level
  // and swung around the axis there; the sweep of a piece covers what lies
  // to its right, so pieces further right must sit nearer the plane.
  for (bool over : {true, false}) {
    std::vector<int> ids;
    for (std::size_t i = 0; i < pieces.size(); ++i)
      if (pieces[i].over == over) ids.push_back(static_cast<int>(i));
    std::vector<std::vector<int>> below(pieces.size());
    std::vector<int> indeg(pieces.size(), 0);
    for (int x : ids)
      for (int y : ids) {
        const Piece &a = pieces[x], &b = pieces[y];
        if (x >= y || a.arc == b.arc) continue;
        int t = std::max(a.top, b.top);
        if (t > std::min(a.bottom, b.bottom)) continue;
        bool a_left = pos_of(a, t) < pos_of(b, t);
        int hi = a_left == over ? x : y, lo = hi == x ? y : x;
        below[hi].push_back(lo);
        ++indeg[lo];
      }
    std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>, std::greater<>> ready;
    for (int x : ids)
      if (indeg[x] == 0) ready.push({pieces[x].column, x});
    long placed = 0;
    while (!ready.empty()) {
      int x = ready.top().second;
      ready.pop();
      pieces[x].rank = over ? static_cast<long>(ids.size()) - placed : -1 - placed;
      ++placed;
      for (int y : below[x])
        if (--indeg[y] == 0) ready.push({pieces[y].column, y});
    }
    if (placed != static_cast<long>(ids.size())) throw std::logic_error("braiding height order has a cycle");
  }

  // Pass 2: the braid. Down strands keep their order on the left; columns
  // sit to their right, occupied above a piece's top and below its bottom.
  BraidWord w;
  w.n = static_cast<int>(pieces.size());
  for (const SliceEvent& e : s.events)
    if (e.kind == SliceKind::bond && e.sign != BondSign::plain) w.mode = WordMode::enhanced;
  std::vector<bool> occ(pieces.size(), true);
  int m = 0;
  auto column_at = [&](int slot) {
    for (std::size_t c = 0; c < occ.size(); ++c)
      if (occ[c] && slot-- == 0) return by_column[c];
    throw std::logic_error("column slot out of range");
  };
  auto occupied_left_of = [&](int column) {
    return static_cast<int>(std::count(occ.begin(), occ.begin() + column, true));
  };
  auto over_partner = [&](const Piece& pc, int position) {
    return position < m ? pc.over : pc.rank > pieces[column_at(position - m)].rank;
  };
  // A strand entering on the right is over in a positive letter.
  auto emit = [&](int i, bool right_over) { w.gens.push_back(BraidGen::sigma(i + 1, !right_over)); };
  auto move_in = [&](const Piece& pc, int k) {
    for (int i = m + occupied_left_of(pc.column) - 1; i >= k; --i) emit(i, over_partner(pc, i));
    occ[static_cast<std::size_t>(pc.column)] = false;
    ++m;
  };
  auto move_out = [&](int k, const Piece& pc) {
    int target = m - 1 + occupied_left_of(pc.column);
    for (int i = k; i < target; ++i) emit(i, !over_partner(pc, i + 1));
    --m;
    occ[static_cast<std::size_t>(pc.column)] = true;
  };

  std::vector<std::size_t> current(arcs.size(), 0);
  arc_at.clear();
  for (int k = 0; k < T; ++k) {
    const SliceEvent& e = s.events[static_cast<std::size_t>(k)];
    const auto& state = states[static_cast<std::size_t>(k)];
    int p = e.pos - 1;
    switch (e.kind) {
      case SliceKind::cup: {
        int id = 0;
        while (arcs[static_cast<std::size_t>(id)].cup != k) ++id;
        move_in(pieces[arc_pieces[id].front()], downs_before(state, p));
        arc_at.insert(arc_at.begin() + p, {e.left_up ? id : -1, e.left_up ? -1 : id});
        break;
      }
      case SliceKind::cap: {
        int id = std::max(arc_at[p], arc_at[p + 1]);
        move_out(downs_before(state, p), pieces[arc_pieces[id].back()]);
        arc_at.erase(arc_at.begin() + p, arc_at.begin() + p + 2);
        break;
      }
      case SliceKind::cross:
        if (arc_at[p] < 0 && arc_at[p + 1] < 0) emit(downs_before(state, p), e.positive);
        std::swap(arc_at[p], arc_at[p + 1]);
        break;
      case SliceKind::bond: {
        int i = downs_before(state, p), j = downs_before(state, p + e.reach);
        std::string pattern;
        for (int t = 1; t < e.reach; ++t)
          if (arc_at[p + t] < 0) pattern += e.pattern[t - 1];
        w.gens.push_back(j == i + 1 ? BraidGen::bond(i + 1, e.sign) : BraidGen::long_bond(i + 1, j + 1, pattern, e.sign));
        break;
      }
    }
    // Split points right after this event, left to right.
    const auto& after = states[static_cast<std::size_t>(k) + 1];
    for (int q = 0; q < static_cast<int>(arc_at.size()); ++q) {
      int id = arc_at[q];
      if (id < 0) continue;
      auto& cur = current[id];
      if (cur + 1 >= arc_pieces[id].size() || pieces[arc_pieces[id][cur]].bottom != k) continue;
      int at_main = downs_before(after, q);
      const Piece& upper = pieces[arc_pieces[id][cur]];
      const Piece& lower = pieces[arc_pieces[id][cur + 1]];
      move_in(lower, at_main);
      move_out(at_main, upper);
      ++cur;
    }
  }
  check_word(w);
  return expand_long_bonds(w);
}

SliceSequence braid_to_slices(const BraidWord& w) {
  check_word(w);
  SliceSequence s;
  for (int k = 1; k <= w.n; ++k) s.events.push_back(cup_event(k, false));
  for (const BraidGen& g : w.gens) {
    SliceEvent e;
    e.pos = g.i;
    if (g.is_bond()) {
      e.kind = SliceKind::bond;
      e.reach = g.j - g.i;
      e.pattern = g.pattern;
      e.sign = g.sign;
    } else {
      e.kind = SliceKind::cross;
      e.positive = !g.inverse;
    }
    s.events.push_back(e);
  }
  for (int k = w.n; k >= 1; --k) s.events.push_back(cap_event(k));
  return s;
}

SliceSequence example_slices(ExampleFamily family, int n, BondSign sign) {
  if (n < 0) throw DiagramError("n must be non-negative");
  SliceEvent b;
  b.kind = SliceKind::bond;
  b.sign = sign;
  SliceSequence s;
  if (family == ExampleFamily::U) {
    s.events.push_back(cup_event(1, true));
    b.pos = 1;
    s.events.insert(s.events.end(), static_cast<std::size_t>(n), b);
    s.events.push_back(cap_event(1));
  } else {
    s.events.push_back(cup_event(1, true));
    s.events.push_back(cup_event(3, false));
    b.pos = 2;
    s.events.insert(s.events.end(), static_cast<std::size_t>(n), b);
    s.events.push_back(cap_event(3));
    s.events.push_back(cap_event(1));
  }
  return s;
}

SliceSequence random_slices(std::uint64_t seed, int max_events, int max_bonds) {
  if (max_events < 2) throw DiagramError("max_events must be at least 2");
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  SliceSequence s;
  std::vector<bool> down;
  int bonds = 0;
  auto caps = [&] {
    std::vector<int> v;
    for (std::size_t p = 0; p + 1 < down.size(); ++p)
      if (down[p] != down[p + 1]) v.push_back(static_cast<int>(p) + 1);
    return v;
  };
  int target = pick(2, max_events);
  for (;;) {
    int n = static_cast<int>(down.size());
    int used = static_cast<int>(s.events.size());
    int closing = n / 2;
    if (used + closing >= target) break;
    std::vector<SliceKind> options;
    if (used + 1 + (n + 2) / 2 <= target && n < 6) options.push_back(SliceKind::cup);
    if (n >= 2) {
      options.push_back(SliceKind::cross);
      if (bonds < max_bonds) options.push_back(SliceKind::bond);
      options.push_back(SliceKind::cap);
    }
    if (options.empty()) break;
    SliceEvent e;
    e.kind = options[rng() % options.size()];
    switch (e.kind) {
      case SliceKind::cup:
        e.pos = pick(1, n + 1);
        e.left_up = rng() % 2 == 0;
        down.insert(down.begin() + (e.pos - 1), {!e.left_up, e.left_up});
        break;
      case SliceKind::cross:
        e.pos = pick(1, n - 1);
        e.positive = rng() % 2 == 0;
        std::swap(down[e.pos - 1], down[e.pos]);
        break;
      case SliceKind::bond:
        e.pos = pick(1, n - 1);
        e.reach = pick(1, n - e.pos);
        for (int t = 1; t < e.reach; ++t) e.pattern += rng() % 2 ? 'o' : 'u';
        ++bonds;
        break;
      case SliceKind::cap: {
        auto v = caps();
        e.pos = v[rng() % v.size()];
        down.erase(down.begin() + (e.pos - 1), down.begin() + (e.pos + 1));
        break;
      }
    }
    s.events.push_back(e);
  }
  while (!down.empty()) {
    auto v = caps();
    int p = v[rng() % v.size()];
    down.erase(down.begin() + (p - 1), down.begin() + (p + 1));
    s.events.push_back(cap_event(p));
  }
  return s;
}

bool BraidCertificate::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CertificateCheck& c) { return c.pass; });
}

namespace {

int signed_bonds(const BondedDiagram& d) {
  int n = 0;
  for (const BondPath& p : bond_paths(d)) n += p.sign == BondSign::repelling ? -1 : 1;
  return n;
}

std::string joined(const std::vector<Fingerprint>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].to_string();
  return out + "}";
}

}  // namespace

BraidCertificate certify(const SliceSequence& s, const BraidWord& w) {
  BondedDiagram a = slices_to_diagram(s), b = closure(w);
  BraidCertificate c;
  c.word = w;
  auto add = [&](std::string name, std::string x, std::string y) {
    bool ok = x == y;
    c.checks.push_back({std::move(name), ok, std::move(x), std::move(y)});
  };
  add("unplug_bonded", unplug_bonded(a).to_string(), unplug_bonded(b).to_string());
  add("unplug_strict_set", joined(unplug_strict_set(a)), joined(unplug_strict_set(b)));
  add("bondcount", std::to_string(signed_bonds(a)), std::to_string(signed_bonds(b)));
  add("components", std::to_string(link_components(a).size() + static_cast<std::size_t>(a.free_loops)),
      std::to_string(link_components(b).size() + static_cast<std::size_t>(b.free_loops)));
  return c;
}

BraidCertificate braid_certificate(const SliceSequence& s, const BraidingOptions& opt) {
  return certify(s, braid(s, opt));
}

}  // namespace bondforge
