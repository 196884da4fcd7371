#include "crushkit/triangulation.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "crushkit/errors.hpp"

namespace crushkit {

int Triangulation::addTetrahedron() {
  faces_.emplace_back();
  return size() - 1;
}

void Triangulation::join(int tet, int face, int dest, Perm4 perm) {
  const int destFace = perm[face];
  if (tet == dest && face == destFace)
    throw std::invalid_argument("cannot glue a face to itself");
  auto& src = faces_.at(static_cast<size_t>(tet)).at(static_cast<size_t>(face));
  auto& dst = faces_.at(static_cast<size_t>(dest)).at(static_cast<size_t>(destFace));
  if (src || dst) throw std::invalid_argument("face is already glued");
  src = Gluing{dest, perm};
  dst = Gluing{tet, perm.inverse()};
}

void Triangulation::unjoin(int tet, int face) {
  auto& src = faces_.at(static_cast<size_t>(tet)).at(static_cast<size_t>(face));
  if (!src) return;
  faces_[static_cast<size_t>(src->tet)][static_cast<size_t>(src->perm[face])].reset();
  src.reset();
}

int Triangulation::boundaryFaceCount() const {
  int count = 0;
  for (const auto& tet : faces_)
    for (const auto& g : tet)
      if (!g) ++count;
  return count;
}

void Triangulation::append(const Triangulation& other) {
  const int offset = size();
  for (const auto& tet : other.faces_) {
    auto& added = faces_.emplace_back();
    for (size_t f = 0; f < 4; ++f)
      if (tet[f]) added[f] = Gluing{tet[f]->tet + offset, tet[f]->perm};
  }
}

void Triangulation::checkInvolution() const {
  for (int t = 0; t < size(); ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& g = gluing(t, f);
      if (!g) continue;
      if (g->tet < 0 || g->tet >= size())
        throw InvariantFailure("gluing partner out of range");
      const int destFace = g->perm[f];
      if (g->tet == t && destFace == f) throw InvariantFailure("face glued to itself");
      const auto& back = gluing(g->tet, destFace);
      if (!back || back->tet != t || back->perm != g->perm.inverse())
        throw InvariantFailure("gluing table is not an involution");
    }
  }
}

namespace {

std::vector<std::string> splitWords(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

int parseIndex(const std::string& s, int line) {
  if (s.empty() || s.size() > 9) throw ParseError(line, "bad integer '" + s + "'");
  for (char c : s)
    if (c < '0' || c > '9') throw ParseError(line, "bad integer '" + s + "'");
  return std::stoi(s);
}

}  // namespace

Triangulation parseTriangulation(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineNo = 0;
  int tetCount = -1;
  int nextTet = 0;
  std::vector<std::array<std::optional<Gluing>, 4>> table;
  std::vector<int> tetLine;

  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') throw ParseError(lineNo, "CR line endings are not allowed");
    if (!line.empty() && line.front() == '%') continue;
    const auto words = splitWords(line);
    if (words.empty()) continue;

    if (tetCount < 0) {
      if (words.size() != 2 || words[0] != "tets")
        throw ParseError(lineNo, "expected 'tets <n>'");
      tetCount = parseIndex(words[1], lineNo);
      table.resize(static_cast<size_t>(tetCount));
      tetLine.assign(static_cast<size_t>(tetCount), 0);
      continue;
    }
    if (nextTet >= tetCount) throw ParseError(lineNo, "more tetrahedron lines than declared");
    if (words.size() != 5) throw ParseError(lineNo, "expected '<i>: <g0> <g1> <g2> <g3>'");
    const auto& head = words[0];
    if (head.size() < 2 || head.back() != ':') throw ParseError(lineNo, "expected '<i>:'");
    const int index = parseIndex(head.substr(0, head.size() - 1), lineNo);
    if (index != nextTet)
      throw ParseError(lineNo, "expected tetrahedron " + std::to_string(nextTet) + ", found " +
                                   std::to_string(index));
    tetLine[static_cast<size_t>(index)] = lineNo;
    for (int f = 0; f < 4; ++f) {
      const auto& w = words[static_cast<size_t>(f + 1)];
      if (w == "b") continue;
      const auto colon = w.find(':');
      if (colon == std::string::npos) throw ParseError(lineNo, "bad gluing '" + w + "'");
      const int dest = parseIndex(w.substr(0, colon), lineNo);
      if (dest >= tetCount) throw ParseError(lineNo, "tetrahedron index out of range in '" + w + "'");
      Perm4 perm;
      try {
        perm = Perm4::fromString(w.substr(colon + 1));
      } catch (const std::invalid_argument& e) {
        throw ParseError(lineNo, std::string("bad permutation in '") + w + "': " + e.what());
      }
      if (dest == index && perm[f] == f) throw ParseError(lineNo, "face glued to itself");
      table[static_cast<size_t>(index)][static_cast<size_t>(f)] = Gluing{dest, perm};
    }
    ++nextTet;
  }
  if (tetCount < 0) throw ParseError(lineNo + 1, "missing 'tets <n>' header");
  if (nextTet != tetCount)
    throw ParseError(lineNo + 1, "expected " + std::to_string(tetCount) + " tetrahedron lines, found " +
                                     std::to_string(nextTet));

  Triangulation tri(tetCount);
  for (int t = 0; t < tetCount; ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& g = table[static_cast<size_t>(t)][static_cast<size_t>(f)];
      if (!g) continue;
      const int destFace = g->perm[f];
      const auto& back = table[static_cast<size_t>(g->tet)][static_cast<size_t>(destFace)];
      if (!back || back->tet != t || back->perm != g->perm.inverse())
        throw ParseError(tetLine[static_cast<size_t>(t)],
                         "gluing of tetrahedron " + std::to_string(t) + " face " + std::to_string(f) +
                             " is not matched by the reverse gluing");
      if (std::make_pair(t, f) < std::make_pair(g->tet, destFace)) tri.join(t, f, g->tet, g->perm);
    }
  }
  return tri;
}

std::string writeTriangulation(const Triangulation& tri) {
  std::string out = "tets " + std::to_string(tri.size()) + "\n";
  for (int t = 0; t < tri.size(); ++t) {
    out += std::to_string(t) + ":";
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      out += ' ';
      out += g ? std::to_string(g->tet) + ":" + g->perm.str() : "b";
    }
    out += '\n';
  }
  return out;
}

Triangulation readTriangulationFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseTriangulation(buf.str());
}

void writeTriangulationFile(const std::string& path, const Triangulation& tri) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << writeTriangulation(tri);
}

std::vector<Triangulation> connectedComponents(const Triangulation& tri) {
  const int n = tri.size();
  std::vector<int> comp(static_cast<size_t>(n), -1);
  int compCount = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[static_cast<size_t>(start)] >= 0) continue;
    std::vector<int> stack{start};
    comp[static_cast<size_t>(start)] = compCount;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      for (int f = 0; f < 4; ++f) {
        const auto& g = tri.gluing(t, f);
        if (g && comp[static_cast<size_t>(g->tet)] < 0) {
          comp[static_cast<size_t>(g->tet)] = compCount;
          stack.push_back(g->tet);
        }
      }
    }
    ++compCount;
  }

  std::vector<Triangulation> out(static_cast<size_t>(compCount));
  std::vector<int> newIndex(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t)
    newIndex[static_cast<size_t>(t)] = out[static_cast<size_t>(comp[static_cast<size_t>(t)])].addTetrahedron();
  for (int t = 0; t < n; ++t) {
    auto& piece = out[static_cast<size_t>(comp[static_cast<size_t>(t)])];
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g) continue;
      if (std::make_pair(t, f) < std::make_pair(g->tet, g->perm[f]))
        piece.join(newIndex[static_cast<size_t>(t)], f, newIndex[static_cast<size_t>(g->tet)], g->perm);
    }
  }
  return out;
}

bool isOrientable(const Triangulation& tri) {
  const int n = tri.size();
  std::vector<int> sign(static_cast<size_t>(n), 0);
  for (int start = 0; start < n; ++start) {
    if (sign[static_cast<size_t>(start)] != 0) continue;
    sign[static_cast<size_t>(start)] = 1;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      for (int f = 0; f < 4; ++f) {
        const auto& g = tri.gluing(t, f);
        if (!g) continue;
        // Odd gluings preserve the sign, even gluings flip it.
        const int want = sign[static_cast<size_t>(t)] * -g->perm.sign();
        int& have = sign[static_cast<size_t>(g->tet)];
        if (have == 0) {
          have = want;
          stack.push_back(g->tet);
        } else if (have != want) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace crushkit
