#include "flatgap/corpus.hpp"

#include <array>
#include <utility>

namespace flatgap {

namespace {

// Unit square, left-right and top-bottom identified: flat torus, H(0).
const std::string kTorus = R"({
  "polygons": [
    [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]]
  ],
  "gluings": [
    [0, 0, 0, 2],
    [0, 1, 0, 3]
  ]
})";

// Three-square L (legs of length 2): genus 2, one cone point of angle 6*pi.
const std::string kL22 = R"({
  "polygons": [
    [["0", "0"], ["1", "0"], ["2", "0"], ["2", "1"],
     ["1", "1"], ["1", "2"], ["0", "2"], ["0", "1"]]
  ],
  "gluings": [
    [0, 1, 0, 3],
    [0, 0, 0, 5],
    [0, 2, 0, 7],
    [0, 4, 0, 6]
  ]
})";

// Golden L: legs of length phi = (1+sqrt(5))/2; lattice (Veech) surface in
// H(2). Decimal coordinates select the float model.
const std::string kGoldenL = R"({
  "polygons": [
    [["0.0", "0.0"], ["1.0", "0.0"],
     ["1.618033988749895", "0.0"], ["1.618033988749895", "1.0"],
     ["1.0", "1.0"], ["1.0", "1.618033988749895"],
     ["0.0", "1.618033988749895"], ["0.0", "1.0"]]
  ],
  "gluings": [
    [0, 1, 0, 3],
    [0, 0, 0, 5],
    [0, 2, 0, 7],
    [0, 4, 0, 6]
  ]
})";

// Regular octagon (unit side) with opposite sides identified: H(2).
const std::string kOctagon = R"({
  "polygons": [
    [["0.0", "0.0"], ["1.0", "0.0"],
     ["1.7071067811865475", "0.7071067811865476"],
     ["1.7071067811865475", "1.7071067811865475"],
     ["1.0", "2.414213562373095"], ["0.0", "2.414213562373095"],
     ["-0.7071067811865476", "1.7071067811865475"],
     ["-0.7071067811865476", "0.7071067811865476"]]
  ],
  "gluings": [
    [0, 0, 0, 4],
    [0, 1, 0, 5],
    [0, 2, 0, 6],
    [0, 3, 0, 7]
  ]
})";

// Square-tiled surface from three unit squares in a row, horizontal cycle
// (1 2 3), vertical transposition (1 2): H(2).
const std::string kStsurf3 = R"({
  "polygons": [
    [["0", "0"], ["1", "0"], ["2", "0"], ["3", "0"],
     ["3", "1"], ["2", "1"], ["1", "1"], ["0", "1"]]
  ],
  "gluings": [
    [0, 3, 0, 7],
    [0, 6, 0, 1],
    [0, 5, 0, 0],
    [0, 4, 0, 2]
  ]
})";

const std::array<std::pair<const char*, const std::string*>, 5> kCorpus = {{
    {"torus", &kTorus},
    {"l_2_2", &kL22},
    {"golden_l", &kGoldenL},
    {"octagon", &kOctagon},
    {"stsurf_3", &kStsurf3},
}};

}  // namespace

std::vector<std::string> corpus_list() {
  std::vector<std::string> names;
  names.reserve(kCorpus.size());
  for (const auto& [name, _] : kCorpus) names.emplace_back(name);
  return names;
}

const std::string& corpus_json(const std::string& name) {
  for (const auto& [n, text] : kCorpus)
    if (name == n) return *text;
  throw Error(ErrorCode::UnknownSurface, "harness_cli",
              "no bundled surface named '" + name + "'");
}

AnySurface corpus_get(const std::string& name) {
  return parse_surface_json(corpus_json(name));
}

}  // namespace flatgap
