// Command-line front end.  Every command prints line-oriented records in
// machine mode (--machine or CRUSHKIT_MACHINE=1) and a readable rendering of
// the same records otherwise.
//
// Exit codes: 0 success, 1 invalid-edge certificate, 2 input error,
// 3 precondition violation or failed internal check.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crushkit/cell_engine.hpp"
#include "crushkit/census.hpp"
#include "crushkit/crush.hpp"
#include "crushkit/decomp.hpp"
#include "crushkit/errors.hpp"
#include "crushkit/homology.hpp"
#include "crushkit/isomorphism.hpp"
#include "crushkit/normal.hpp"
#include "crushkit/skeleton.hpp"

using namespace crushkit;

namespace {

enum Exit { kOk = 0, kCertificate = 1, kInputError = 2, kPrecondition = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool machine = false;
  int jobs = 1;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Triangulation load(const std::string& path) {
  try {
    return parseTriangulation(slurp(path));
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

const char* yesNo(bool b) { return b ? "true" : "false"; }

// `<r>` followed by `,<factor>` for each invariant factor.
std::string compactH1(const HomologySummary& h) {
  std::string s = std::to_string(h.r);
  for (const auto& d : h.factors) s += "," + d.get_str();
  return s;
}

std::string humanH1(const HomologySummary& h) {
  std::vector<std::string> parts;
  if (h.r == 1) parts.push_back("Z");
  else if (h.r > 1) parts.push_back("Z^" + std::to_string(h.r));
  for (const auto& d : h.factors) parts.push_back("Z_" + d.get_str());
  if (parts.empty()) return "0";
  std::string s = parts.front();
  for (size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

std::string joinCoords(const IntVector& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s;
}

std::string joinInts(const std::vector<int>& v) {
  if (v.empty()) return "-";
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// ---------------------------------------------------------------------------

struct DecomposeArgs {
  std::string file;
  std::string certOut;
};

int decompose(const Globals& g, const DecomposeArgs& a) {
  const Triangulation tri = load(a.file);
  const auto comps = connectedComponents(tri);
  EnumerationOptions opts;
  opts.jobs = g.jobs;
  int code = kOk;
  for (size_t c = 0; c < comps.size(); ++c) {
    if (comps.size() > 1) {
      if (g.machine) std::cout << "component " << c << " tets=" << comps[c].size() << '\n';
      else std::cout << "Component " << c << " (" << comps[c].size() << " tetrahedra)\n";
    }
    const DecompositionResult d = primeDecompose(comps[c], opts);
    if (g.machine)
      std::cout << "input tets=" << comps[c].size() << " h1=" << compactH1(d.input)
                << " orientable=" << yesNo(isOrientable(comps[c])) << '\n';
    else
      std::cout << "Input: " << comps[c].size() << " tetrahedra, H1 = " << humanH1(d.input) << ", "
                << (isOrientable(comps[c]) ? "orientable" : "non-orientable") << '\n';
    for (size_t i = 0; i < d.crushLog.size(); ++i) {
      const auto& e = d.crushLog[i];
      if (g.machine)
        std::cout << "crush step=" << i + 1 << " component=" << e.component << " tets=" << e.tetsBefore << "->"
                  << e.tetsAfter << '\n';
      else
        std::cout << "Crush " << i + 1 << ": piece " << e.component << ", " << e.tetsBefore << " -> " << e.tetsAfter
                  << " tetrahedra\n";
    }
    if (d.certificate) {
      std::string path = a.certOut.empty() ? a.file + ".cert.tri" : a.certOut;
      if (comps.size() > 1) path += "." + std::to_string(c);
      writeTriangulationFile(path, d.certificate->triangulation);
      if (g.machine)
        std::cout << "certificate invalid-edge tri=" << path << " edge=" << d.certificate->edge
                  << " step=" << d.certificate->step << '\n';
      else
        std::cout << "Crush " << d.certificate->step << " produced invalid edge " << d.certificate->edge
                  << " (written to " << path << "):\n  the manifold contains an embedded two-sided projective plane\n";
      code = kCertificate;
      continue;
    }
    for (size_t i = 0; i < d.summands.size(); ++i) {
      if (g.machine)
        std::cout << "summand " << i << " tets=" << d.summands[i].size() << " h1=" << compactH1(d.summandHomology[i])
                  << " flag=" << toString(d.flags[i]) << '\n';
      else
        std::cout << "Summand " << i << ": " << d.summands[i].size() << " tetrahedra, H1 = "
                  << humanH1(d.summandHomology[i]) << " [" << toString(d.flags[i]) << "]\n";
    }
    const auto& r = d.restored;
    if (g.machine)
      std::cout << "restored rp3=" << r.rp3 << " l31=" << r.l31 << " s2xs1=" << r.s2xs1 << " s2~s1=" << r.s2twisted
                << '\n';
    else
      std::cout << "Restored: " << r.rp3 << " x RP3, " << r.l31 << " x L(3,1), " << r.s2xs1 << " x S2xS1, "
                << r.s2twisted << " x S2~S1\n";
  }
  return code;
}

// ---------------------------------------------------------------------------

struct CrushArgs {
  std::string file;
  std::string surface;
  std::string surfaceFile;
  std::string out;
  bool oracle = false;
  std::optional<std::uint64_t> seed;
};

StandardCoords resolveSurface(const Globals& g, const Triangulation& tri, const CrushArgs& a) {
  if (!a.surfaceFile.empty()) {
    ParsedSurface p;
    try {
      p = parseSurface(slurp(a.surfaceFile));
    } catch (const ParseError& e) {
      throw InputError(a.surfaceFile + ": " + e.what());
    }
    const size_t width = p.standard ? 7 : 3;
    if (p.coords.size() != width * static_cast<size_t>(tri.size()))
      throw InputError(a.surfaceFile + ": surface size does not match the triangulation");
    if (p.standard) return StandardCoords(p.coords);
    return quadToStandard(tri, QuadCoords(p.coords));
  }
  EnumerationOptions opts;
  opts.jobs = g.jobs;
  if (a.surface == "lex-first-sphere") {
    auto s = findNontrivialSphere(tri, opts);
    if (!s) throw PreconditionError("triangulation has no non-trivial normal sphere");
    return *s;
  }
  const std::string linkPrefix = "vertex-link:";
  if (a.surface.rfind(linkPrefix, 0) == 0) {
    int v = -1;
    try {
      v = std::stoi(a.surface.substr(linkPrefix.size()));
    } catch (const std::exception&) {
      throw InputError("bad vertex index in --surface");
    }
    if (v < 0 || v >= static_cast<int>(Skeleton(tri).vertices().size()))
      throw InputError("vertex index out of range in --surface");
    return vertexLink(tri, v);
  }
  size_t index = 0;
  try {
    size_t used = 0;
    index = std::stoul(a.surface, &used);
    if (used != a.surface.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw InputError("--surface expects an index, lex-first-sphere or vertex-link:<v>");
  }
  const auto rays = enumerateQuadVertexSurfaces(tri, opts);
  if (index >= rays.size())
    throw InputError("surface index " + std::to_string(index) + " out of range (" + std::to_string(rays.size()) +
                     " vertex surfaces)");
  return quadToStandard(tri, rays[index]);
}

int crush(const Globals& g, const CrushArgs& a) {
  const Triangulation tri = load(a.file);
  const StandardCoords s = resolveSurface(g, tri, a);
  if (!isAdmissible(tri, s)) throw InadmissibleSurface("surface is not admissible");
  const CrushOutcome out = crushBulk(tri, s);
  if (a.oracle) {
    FlattenOptions fo;
    fo.seed = a.seed;
    const FlattenResult fr = runSequentialFlatten(buildCrushedComplex(tri, s), fo);
    if (!isIsomorphic(out.result, fr.result)) {
      std::cerr << "oracle mismatch\n--- bulk\n"
                << writeTriangulation(out.result) << "--- cell engine\n"
                << writeTriangulation(fr.result);
      throw InvariantFailure("bulk crush and cell engine disagree");
    }
  }
  const auto invalid = Skeleton(out.result).invalidEdges();
  if (a.out.empty() || a.out == "-") {
    std::cout << writeTriangulation(out.result);
    return kOk;
  }
  writeTriangulationFile(a.out, out.result);
  if (g.machine)
    std::cout << "crushed tets=" << tri.size() << "->" << out.result.size() << " destroyed=" << out.destroyedTets
              << " invalid-edges=" << joinInts(invalid) << (a.oracle ? " oracle=agree" : "") << '\n';
  else
    std::cout << "Crushed " << tri.size() << " -> " << out.result.size() << " tetrahedra (" << out.destroyedTets
              << " destroyed), written to " << a.out << (a.oracle ? "; cell engine agrees" : "") << '\n'
              << (invalid.empty() ? "" : "Result has invalid edges: " + joinInts(invalid) + "\n");
  return kOk;
}

// ---------------------------------------------------------------------------

int enumerate(const Globals& g, const std::string& file) {
  const Triangulation tri = load(file);
  EnumerationOptions opts;
  opts.jobs = g.jobs;
  const auto rays = enumerateQuadVertexSurfaces(tri, opts);
  if (!g.machine) std::cout << rays.size() << " quad vertex surfaces\n";
  for (size_t i = 0; i < rays.size(); ++i) {
    const StandardCoords s = quadToStandard(tri, rays[i]);
    const SurfaceClass c = recognizeSurface(tri, s);
    if (g.machine) {
      std::cout << "ray " << i << " quad=" << joinCoords(rays[i].coords) << " chi=" << c.eulerChar
                << " orientable=" << yesNo(c.orientable) << " two-sided=" << yesNo(c.twoSided)
                << " boundary=" << c.boundaryCurves << " connected=" << yesNo(c.connected) << '\n';
    } else {
      std::string what = c.isSphere()             ? "sphere"
                         : c.isDisc()             ? "disc"
                         : c.isProjectivePlane()  ? (c.twoSided ? "two-sided RP2" : "one-sided RP2")
                                                  : "chi " + std::to_string(c.eulerChar);
      std::cout << "  " << i << ": (" << joinCoords(rays[i].coords) << ") " << what
                << (c.orientable ? "" : ", non-orientable") << '\n';
    }
  }
  return kOk;
}

int homology(const Globals& g, const std::string& file) {
  const HomologySummary h = h1(load(file));
  if (g.machine) std::cout << "h1 " << h.str() << '\n';
  else std::cout << "H1 = " << humanH1(h) << '\n';
  return kOk;
}

int efficiency(const Globals& g, const std::string& file) {
  const Triangulation tri = load(file);
  EnumerationOptions opts;
  opts.jobs = g.jobs;
  const auto s = findNontrivialSphere(tri, opts);
  if (g.machine) {
    std::cout << "zero-efficient " << yesNo(!s) << '\n';
    if (s) std::cout << "sphere std=" << joinCoords(s->coords) << '\n';
  } else {
    std::cout << (s ? "Not 0-efficient: non-trivial normal sphere " + joinCoords(s->coords) : std::string("0-efficient"))
              << '\n';
  }
  return kOk;
}

int lint(const Globals& g, const std::string& file) {
  const MinimalityLint l = lintMinimal(load(file));
  if (g.machine) {
    std::cout << "lint vertices=" << l.vertexCount << " degree-one-edges=" << joinInts(l.degreeOneEdges)
              << " cone-faces=" << joinInts(l.coneFaces) << '\n';
  } else {
    std::cout << "Vertices: " << l.vertexCount << "\nDegree-one edges: " << joinInts(l.degreeOneEdges)
              << "\nCone faces: " << joinInts(l.coneFaces) << '\n';
  }
  return kOk;
}

int iso(const Globals& g, const std::string& a, const std::string& b) {
  const auto found = findIsomorphism(load(a), load(b));
  if (g.machine) {
    std::cout << (found ? "isomorphic" : "not-isomorphic") << '\n';
  } else if (found) {
    std::cout << "Isomorphic:";
    for (size_t t = 0; t < found->tetImage.size(); ++t)
      std::cout << ' ' << t << "->" << found->tetImage[t] << '(' << found->vertexMap[t].str() << ')';
    std::cout << '\n';
  } else {
    std::cout << "Not isomorphic\n";
  }
  return kOk;
}

int census(const Globals& g, int tets, const std::string& dir) {
  const auto all = closedCensus(tets);
  if (!dir.empty()) std::filesystem::create_directories(dir);
  for (size_t i = 0; i < all.size(); ++i) {
    if (dir.empty()) {
      std::cout << "% census " << tets << ' ' << i << '\n' << writeTriangulation(all[i]);
      continue;
    }
    const std::string name = "closed_" + std::to_string(tets) + "_" + std::to_string(i) + ".tri";
    writeTriangulationFile((std::filesystem::path(dir) / name).string(), all[i]);
  }
  if (!dir.empty()) {
    if (g.machine) std::cout << "census tets=" << tets << " count=" << all.size() << '\n';
    else std::cout << all.size() << " closed triangulations with " << tets << " tetrahedra written to " << dir << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal surfaces, crushing and prime decomposition of triangulated 3-manifolds"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--machine", g.machine, "Line-oriented machine-readable output");
  app.add_option("--jobs", g.jobs, "Worker threads for vertex enumeration")->check(CLI::PositiveNumber);
  app.fallthrough();

  DecomposeArgs dec;
  auto* cDec = app.add_subcommand("decompose", "Prime decomposition of a closed triangulation");
  cDec->add_option("file", dec.file)->required();
  cDec->add_option("--cert-out", dec.certOut, "Where to write a certificate triangulation");

  CrushArgs cr;
  std::uint64_t seed = 0;
  auto* cCrush = app.add_subcommand("crush", "Crush a normal surface");
  cCrush->add_option("file", cr.file)->required();
  auto* optSurface = cCrush->add_option("--surface", cr.surface, "Vertex surface index, lex-first-sphere or vertex-link:<v>");
  auto* optSurfaceFile = cCrush->add_option("--surface-file", cr.surfaceFile, "SURF1 file");
  optSurface->excludes(optSurfaceFile);
  cCrush->add_option("-o,--output", cr.out, "Output TRI1 file (default: stdout)");
  cCrush->add_flag("--oracle", cr.oracle, "Cross-check against the sequential cell engine");
  auto* optSeed = cCrush->add_option("--seed", seed, "Random move order for the cell engine");

  std::string file, file2;
  auto* cEnum = app.add_subcommand("enumerate", "List quad vertex normal surfaces");
  cEnum->add_option("file", file)->required();
  auto* cHom = app.add_subcommand("homology", "First homology");
  cHom->add_option("file", file)->required();
  auto* cEff = app.add_subcommand("efficiency", "Test 0-efficiency");
  cEff->add_option("file", file)->required();
  auto* cLint = app.add_subcommand("lint", "Minimal-triangulation checks");
  cLint->add_option("file", file)->required();
  auto* cIso = app.add_subcommand("iso", "Combinatorial isomorphism test");
  cIso->add_option("first", file)->required();
  cIso->add_option("second", file2)->required();

  int tets = 1;
  std::string outDir;
  auto* cCensus = app.add_subcommand("census", "Closed census by exhaustive search");
  cCensus->add_option("--tets", tets, "Number of tetrahedra")->check(CLI::Range(0, 5));
  cCensus->add_option("-o,--out-dir", outDir, "Write one TRI1 file per triangulation here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  if (const char* env = std::getenv("CRUSHKIT_MACHINE"); env && std::string(env) == "1") g.machine = true;

  try {
    if (*cDec) return decompose(g, dec);
    if (*cCrush) {
      if (cr.surface.empty() && cr.surfaceFile.empty()) throw InputError("crush needs --surface or --surface-file");
      if (*optSeed) cr.seed = seed;
      return crush(g, cr);
    }
    if (*cEnum) return enumerate(g, file);
    if (*cHom) return homology(g, file);
    if (*cEff) return efficiency(g, file);
    if (*cLint) return lint(g, file);
    if (*cIso) return iso(g, file, file2);
    if (*cCensus) return census(g, tets, outDir);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InadmissibleSurface& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return kPrecondition;
  } catch (const InvariantFailure& e) {
    std::cerr << "internal check failed: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
