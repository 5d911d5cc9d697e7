#include "bondforge/unplug.hpp"

#include <algorithm>
#include <set>

#include "bondforge/bracket.hpp"

namespace bondforge {

std::string Fingerprint::to_string() const {
  return "components=" + std::to_string(component_count) + " jones=" + jones.to_string();
}

bool operator<(const Fingerprint& x, const Fingerprint& y) {
  auto sx = x.jones.to_string(), sy = y.jones.to_string();
  if (sx != sy) return sx < sy;
  return x.component_count < y.component_count;
}

Fingerprint fingerprint(const BondedDiagram& d) {
  PdCode pd = to_pd(d);
  auto comps = link_components(d);
  Fingerprint f;
  f.component_count = static_cast<int>(comps.size()) + d.free_loops;
  f.crossing_count = d.crossing_count();
  if (comps.size() > 16) throw DiagramError("too many components for orientation search");

  std::vector<int> comp_of(d.edges.size(), 0);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int e : comps[c]) comp_of[e] = static_cast<int>(c);

  // Reversing every component leaves the writhe alone, so component 0 stays fixed.
  std::size_t variants = comps.empty() ? 1 : std::size_t{1} << (comps.size() - 1);
  LaurentPoly value = bracket(pd);
  std::string best;
  for (std::size_t mask = 0; mask < variants; ++mask) {
    PdCode q = pd;
    for (auto& c : q.crossings)
      for (int s = 0; s < 4; ++s)
        if (comp_of[c.arc[s]] > 0 && (mask >> (comp_of[c.arc[s]] - 1) & 1)) c.outgoing[s] = !c.outgoing[s];
    int w = pd_writhe(q);
    LaurentPoly j = LaurentPoly::monomial(w % 2 == 0 ? 1 : -1, -3 * w) * value;
    std::string s = j.to_string();
    if (mask == 0 || s < best) {
      best = s;
      f.jones = j;
    }
  }
  return f;
}

UnplugResult unplug(const BondedDiagram& d, const UnpluggingChoice& choice, bool strict) {
  if (choice.size() != d.vertices.size()) throw DiagramError("unplugging choice must cover every vertex");
  for (std::size_t v = 0; v < d.vertices.size(); ++v) {
    if (d.vertices[v].kind != VertexKind::node) continue;
    if (choice[v] < 0 || choice[v] > 2) throw DiagramError("unplugging choice out of range");
    if (strict && choice[v] == node_roles(d, static_cast<int>(v)).bond)
      throw DiagramError("strict forbids bond unplug");
  }
  UnplugResult r;
  r.link = fuse_nodes(d, choice, &r.open_arcs);
  return r;
}

namespace {

std::vector<Fingerprint> enumerate(const BondedDiagram& d, int node_bound, bool strict) {
  std::vector<int> nodes;
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v)
    if (d.vertices[v].kind == VertexKind::node) nodes.push_back(v);
  if (static_cast<int>(nodes.size()) > node_bound)
    throw DiagramError("node bound exceeded: need bound " + std::to_string(nodes.size()));

  // Options per node: slots 0..2, or only the link slots when strict.
  std::vector<std::vector<int>> options;
  for (int v : nodes) {
    int bond = node_roles(d, v).bond;
    std::vector<int> opts;
    for (int s = 0; s < 3; ++s)
      if (!strict || s != bond) opts.push_back(s);
    options.push_back(opts);
  }
  std::vector<Fingerprint> out;
  std::vector<std::size_t> idx(nodes.size(), 0);
  UnpluggingChoice choice(d.vertices.size(), 0);
  while (true) {
    for (std::size_t k = 0; k < nodes.size(); ++k) choice[nodes[k]] = options[k][idx[k]];
    out.push_back(fingerprint(unplug(d, choice, strict).link));
    std::size_t k = 0;
    while (k < nodes.size() && ++idx[k] == options[k].size()) idx[k++] = 0;
    if (k == nodes.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Fingerprint> unplug_full_set(const BondedDiagram& d, int node_bound) {
  require_valid(d);
  return enumerate(d, node_bound, false);
}

std::vector<Fingerprint> unplug_strict_set(const BondedDiagram& d, int node_bound) {
  require_valid(d);
  return enumerate(d, node_bound, true);
}

Fingerprint unplug_bonded(const BondedDiagram& d) { return fingerprint(underlying_link(d)); }

std::vector<Fingerprint> as_set(std::vector<Fingerprint> multiset) {
  std::sort(multiset.begin(), multiset.end());
  multiset.erase(std::unique(multiset.begin(), multiset.end()), multiset.end());
  return multiset;
}

}  // namespace bondforge
