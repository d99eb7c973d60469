#include "flatgap/surface_json.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace flatgap {

namespace {

using nlohmann::ordered_json;

struct RawCoord {
  Rational value;
  bool decimal = false;
};

RawCoord parse_coord(const ordered_json& j) {
  RawCoord out;
  if (j.is_number_integer()) {
    out.value = Rational(static_cast<long long>(j.get<long long>()));
    return out;
  }
  if (j.is_number_float()) {
    // a JSON float literal selects the float model
    auto r = parse_rational(format_double(j.get<double>()), &out.decimal);
    if (!r)
      throw Error(ErrorCode::ParseError, "surface_core",
                  "unparseable numeric coordinate");
    out.decimal = true;
    out.value = *r;
    return out;
  }
  if (j.is_string()) {
    bool saw_decimal = false;
    auto r = parse_rational(j.get<std::string>(), &saw_decimal);
    if (!r)
      throw Error(ErrorCode::ParseError, "surface_core",
                  "unparseable coordinate '" + j.get<std::string>() + "'");
    out.value = *r;
    out.decimal = saw_decimal;
    return out;
  }
  throw Error(ErrorCode::ParseError, "surface_core",
              "coordinate must be a number or string");
}

}  // namespace

AnySurface parse_surface_json(const std::string& text,
                              std::optional<ArithmeticModel> force) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, "surface_core",
                std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("polygons") ||
      !doc.contains("gluings"))
    throw Error(ErrorCode::ParseError, "surface_core",
                "document must contain 'polygons' and 'gluings'");

  std::vector<std::vector<std::pair<Rational, Rational>>> polys;
  bool any_decimal = false;
  for (const auto& jp : doc["polygons"]) {
    std::vector<std::pair<Rational, Rational>> verts;
    for (const auto& jv : jp) {
      if (!jv.is_array() || jv.size() != 2)
        throw Error(ErrorCode::ParseError, "surface_core",
                    "vertex must be a [x, y] pair");
      RawCoord x = parse_coord(jv[0]);
      RawCoord y = parse_coord(jv[1]);
      any_decimal = any_decimal || x.decimal || y.decimal;
      verts.emplace_back(std::move(x.value), std::move(y.value));
    }
    polys.push_back(std::move(verts));
  }

  std::vector<EdgeIdentification> gluings;
  for (const auto& jg : doc["gluings"]) {
    if (!jg.is_array() || jg.size() != 4)
      throw Error(ErrorCode::ParseError, "surface_core",
                  "gluing must be [polygon_a, edge_a, polygon_b, edge_b]");
    gluings.push_back({jg[0].get<int>(), jg[1].get<int>(), jg[2].get<int>(),
                       jg[3].get<int>()});
  }

  const ArithmeticModel model = force.value_or(
      any_decimal ? ArithmeticModel::Float : ArithmeticModel::Exact);

  if (model == ArithmeticModel::Exact) {
    SurfaceDescription<Rational> desc;
    for (auto& pv : polys) {
      PlanarPolygon<Rational> poly;
      for (auto& [x, y] : pv) poly.vertices.emplace_back(x, y);
      desc.polygons.push_back(std::move(poly));
    }
    desc.gluings = gluings;
    return build_surface(desc);
  }
  SurfaceDescription<double> desc;
  for (auto& pv : polys) {
    PlanarPolygon<double> poly;
    for (auto& [x, y] : pv)
      poly.vertices.emplace_back(x.to_double(), y.to_double());
    desc.polygons.push_back(std::move(poly));
  }
  desc.gluings = gluings;
  return build_surface(desc);
}

AnySurface load_surface_file(const std::string& path,
                             std::optional<ArithmeticModel> force) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::UnknownSurface, "harness_cli",
                "cannot open surface file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_surface_json(buf.str(), force);
}

namespace {

template <typename S>
ordered_json surface_json_impl(const TranslationSurface<S>& s) {
  ordered_json doc;
  doc["polygons"] = ordered_json::array();
  for (const auto& poly : s.polygons()) {
    ordered_json jp = ordered_json::array();
    for (const auto& v : poly.vertices) {
      jp.push_back({ScalarModel<S>::to_string(v.x()),
                    ScalarModel<S>::to_string(v.y())});
    }
    doc["polygons"].push_back(std::move(jp));
  }
  doc["gluings"] = ordered_json::array();
  for (const auto& g : s.gluings())
    doc["gluings"].push_back({g.polygon_a, g.edge_a, g.polygon_b, g.edge_b});
  return doc;
}

template <typename S>
ordered_json summary_json_impl(const TranslationSurface<S>& s) {
  ordered_json doc;
  doc["model"] = ScalarModel<S>::name();
  doc["polygons"] = s.polygons().size();
  doc["genus"] = s.genus();
  doc["stratum"] = s.stratum_signature();
  doc["cone_points"] = s.cone_point_count();
  ordered_json angles = ordered_json::array();
  for (int c = 0; c < s.cone_point_count(); ++c)
    angles.push_back(2 * s.cone_multiple(c));  // in units of pi
  doc["cone_angles_in_pi"] = std::move(angles);
  doc["area"] = format_double(ScalarModel<S>::to_double(s.area()));
  doc["fingerprint"] = s.fingerprint();
  return doc;
}

}  // namespace

std::string surface_to_json(const AnySurface& s) {
  return std::visit([](const auto& x) { return surface_json_impl(x).dump(2); },
                    s) +
         "\n";
}

std::string surface_summary_json(const AnySurface& s) {
  return std::visit([](const auto& x) { return summary_json_impl(x).dump(2); },
                    s) +
         "\n";
}

}  // namespace flatgap
