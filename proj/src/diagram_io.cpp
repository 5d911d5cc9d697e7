#include <algorithm>
#include <map>
#include <sstream>

#include "bondforge/diagram.hpp"

namespace bondforge {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

int parse_int(const std::string& s, int line_no) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DiagramError("line " + std::to_string(line_no) + ": expected integer, got '" + s + "'");
  }
}

}  // namespace

BondedDiagram parse_bpd(std::string_view text) {
  BondedDiagram d;
  std::map<int, int> edge_index;
  std::map<int, std::vector<int>> orient_lines;
  std::vector<std::pair<int, std::vector<std::string>>> vertex_lines;

  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    const std::string& tag = tok[0];
    if (tag == "E") {
      if (tok.size() < 3 || tok.size() > 4) throw DiagramError("line " + std::to_string(line_no) + ": bad E record");
      int id = parse_int(tok[1], line_no);
      EdgeKind kind;
      if (tok[2] == "link") kind = EdgeKind::link;
      else if (tok[2] == "bond") kind = EdgeKind::bond;
      else throw DiagramError("line " + std::to_string(line_no) + ": unknown edge kind '" + tok[2] + "'");
      BondSign sign = BondSign::plain;
      if (tok.size() == 4) {
        if (kind != EdgeKind::bond) throw DiagramError("line " + std::to_string(line_no) + ": sign on link edge");
        if (tok[3] == "+") sign = BondSign::attracting;
        else if (tok[3] == "-") sign = BondSign::repelling;
        else throw DiagramError("line " + std::to_string(line_no) + ": bad bond sign");
      }
      if (edge_index.count(id)) throw DiagramError("line " + std::to_string(line_no) + ": duplicate edge id");
      edge_index[id] = d.add_edge(kind, sign);
    } else if (tag == "X" || tag == "V") {
      vertex_lines.emplace_back(line_no, tok);
    } else if (tag == "O") {
      if (tok.size() != 2) throw DiagramError("line " + std::to_string(line_no) + ": bad O record");
      parse_int(tok[1], line_no);
      ++d.free_loops;
    } else if (tag == "orient") {
      if (tok.size() != 3) throw DiagramError("line " + std::to_string(line_no) + ": bad orient record");
      std::vector<int> ids;
      std::istringstream list(tok[2]);
      for (std::string item; std::getline(list, item, ',');) ids.push_back(parse_int(item, line_no));
      orient_lines[parse_int(tok[1], line_no)] = std::move(ids);
    } else {
      throw DiagramError("line " + std::to_string(line_no) + ": unknown record '" + tag + "'");
    }
  }

  auto half_edge = [&](const std::string& s, int ln) -> HalfEdge {
    auto dot = s.find('.');
    if (dot == std::string::npos) throw DiagramError("line " + std::to_string(ln) + ": bad half-edge '" + s + "'");
    int id = parse_int(s.substr(0, dot), ln);
    int end = parse_int(s.substr(dot + 1), ln);
    if (!edge_index.count(id)) throw DiagramError("line " + std::to_string(ln) + ": unknown edge " + std::to_string(id));
    if (end != 0 && end != 1) throw DiagramError("line " + std::to_string(ln) + ": half-edge end must be 0 or 1");
    return {edge_index[id], end};
  };

  for (const auto& [ln, tok] : vertex_lines) {
    if (tok[0] == "X") {
      if (tok.size() != 6 || (tok[5] != "over=02" && tok[5] != "over=13"))
        throw DiagramError("line " + std::to_string(ln) + ": bad X record");
      int v = d.add_vertex(VertexKind::crossing, tok[5] == "over=02");
      for (int s = 0; s < 4; ++s) {
        HalfEdge h = half_edge(tok[1 + s], ln);
        if (d.edges[h.edge].ends[h.end].vertex >= 0)
          throw DiagramError("line " + std::to_string(ln) + ": half-edge used twice");
        d.attach(v, s, h);
      }
    } else {
      if (tok.size() != 4) throw DiagramError("line " + std::to_string(ln) + ": bad V record");
      int v = d.add_vertex(VertexKind::node);
      for (int s = 0; s < 3; ++s) {
        HalfEdge h = half_edge(tok[1 + s], ln);
        if (d.edges[h.edge].ends[h.end].vertex >= 0)
          throw DiagramError("line " + std::to_string(ln) + ": half-edge used twice");
        d.attach(v, s, h);
      }
    }
  }

  if (!orient_lines.empty()) {
    auto comps = link_components(d);
    std::map<int, std::vector<int>> by_first;
    for (auto& c : comps) by_first[*std::min_element(c.begin(), c.end())] = c;
    std::map<int, int> inverse;
    for (const auto& [file_id, internal] : edge_index) inverse[internal] = file_id;
    for (const auto& [cid, ids] : orient_lines) {
      std::vector<int> internal;
      for (int id : ids) {
        if (!edge_index.count(id)) throw DiagramError("orient " + std::to_string(cid) + ": unknown edge");
        internal.push_back(edge_index[id]);
      }
      bool matched = false;
      for (const auto& c : comps) {
        if (c.size() != internal.size()) continue;
        auto it = std::find(c.begin(), c.end(), internal.front());
        if (it == c.end()) continue;
        std::vector<int> rotated(it, c.end());
        rotated.insert(rotated.end(), c.begin(), it);
        matched = rotated == internal;
        break;
      }
      if (!matched) throw DiagramError("orient " + std::to_string(cid) + " disagrees with edge directions");
    }
  }
  return d;
}

std::string to_bpd(const BondedDiagram& d) {
  std::ostringstream out;
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    const Edge& ed = d.edges[e];
    out << "E " << e << ' ' << (ed.kind == EdgeKind::link ? "link" : "bond");
    if (ed.sign == BondSign::attracting) out << " +";
    if (ed.sign == BondSign::repelling) out << " -";
    out << '\n';
  }
  for (const Vertex& v : d.vertices) {
    out << (v.kind == VertexKind::crossing ? 'X' : 'V');
    for (int s = 0; s < v.degree(); ++s) out << ' ' << v.slots[s].edge << '.' << v.slots[s].end;
    if (v.kind == VertexKind::crossing) out << (v.over02 ? " over=02" : " over=13");
    out << '\n';
  }
  auto comps = link_components(d);
  int cid = 0;
  for (const auto& c : comps) {
    out << "orient " << cid++ << ' ';
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
    out << '\n';
  }
  for (int i = 0; i < d.free_loops; ++i) out << "O " << cid++ << '\n';
  return out.str();
}

}  // namespace bondforge
