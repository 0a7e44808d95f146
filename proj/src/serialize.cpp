#include "dpsec/serialize.hpp"

#include "dpsec/parallel.hpp"
#include "dpsec/thetaalg.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#ifndef DPSEC_VERSION
#define DPSEC_VERSION "0.0.0"
#endif

namespace dp {

using nlohmann::json;

const char* library_version() { return DPSEC_VERSION; }

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a_hex(const std::string& bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

json intvec_json(const IntVec& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(x.get_str());
  return a;
}

IntVec intvec_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of integers");
  IntVec v;
  for (auto& x : j) {
    if (x.is_number_integer()) {
      v.push_back(Int(std::to_string(x.get<long long>())));
    } else if (x.is_string()) {
      Int z;
      if (z.set_str(x.get<std::string>(), 10) != 0) throw ValidationError("not a decimal integer: " + x.get<std::string>());
      v.push_back(z);
    } else {
      throw ValidationError("expected an integer or a decimal string");
    }
  }
  return v;
}

namespace {

json vecs_json(const std::vector<IntVec>& vs) {
  json a = json::array();
  for (auto& v : vs) a.push_back(intvec_json(v));
  return a;
}

std::vector<IntVec> vecs_from_json(const json& j, size_t ambient) {
  std::vector<IntVec> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw ValidationError("expected an array of vectors");
  for (auto& x : j) {
    out.push_back(intvec_from_json(x));
    if (out.back().size() != ambient) throw ValidationError("vector length differs from ambient_rank");
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

const char* kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                          "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};

}  // namespace

std::string fan_to_json(const Fan& f, const json& metadata) {
  Fan g = f;
  g.canonicalize();
  json cones = json::array();
  for (size_t i = 0; i < g.size(); ++i) {
    json c;
    c["rays"] = vecs_json(g.cones[i].rays);
    c["lineality"] = vecs_json(g.cones[i].lineality);
    c["facets"] = vecs_json(g.cones[i].facets);
    c["label"] = g.labels[i];
    c["provenance"] = g.provenance[i];
    cones.push_back(std::move(c));
  }
  json out;
  out["ambient_rank"] = g.ambient ? g.ambient : (g.size() ? g.cones[0].ambient : 0);
  out["cones"] = std::move(cones);
  out["metadata"] = metadata;
  return out.dump(2) + "\n";
}

Fan fan_from_json(const std::string& text, json* metadata) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("fan JSON does not parse: ") + e.what());
  }
  if (!j.is_object() || !j.contains("ambient_rank") || !j.contains("cones"))
    throw ValidationError("fan JSON needs ambient_rank and cones");
  if (!j["ambient_rank"].is_number_unsigned()) throw ValidationError("ambient_rank must be a nonnegative integer");
  Fan f;
  f.ambient = j["ambient_rank"].get<size_t>();
  for (auto& c : j["cones"]) {
    if (!c.is_object() || !c.contains("rays")) throw ValidationError("every cone needs rays");
    auto rays = vecs_from_json(c["rays"], f.ambient);
    auto lin = vecs_from_json(c.value("lineality", json()), f.ambient);
    RationalCone cone = cone_from_rays(rays, lin, f.ambient);
    if (c.contains("facets") && !c["facets"].empty()) {
      auto fs = vecs_from_json(c["facets"], f.ambient);
      std::sort(fs.begin(), fs.end());
      if (fs != cone.facets) throw ValidationError("facets disagree with the rays of a cone");
    }
    f.add(std::move(cone), c.value("label", std::string()), c.value("provenance", std::string()));
  }
  if (metadata) *metadata = j.value("metadata", json::object());
  return f;
}

std::string fan_dot(const Fan& f, const std::vector<std::string>& colour_keys, const std::string& graph_name) {
  if (colour_keys.size() != f.size()) throw ValidationError("one colour key per cone expected");
  std::vector<std::string> keys = colour_keys;
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::map<std::string, size_t> colour;
  for (size_t i = 0; i < keys.size(); ++i) colour[keys[i]] = i;
  std::ostringstream os;
  os << "graph \"" << graph_name << "\" {\n  node [shape=circle, style=filled];\n";
  for (size_t i = 0; i < f.size(); ++i) {
    std::string tip = f.labels[i];
    std::replace(tip.begin(), tip.end(), '"', '\'');
    os << "  c" << i << " [label=\"" << i << "\", tooltip=\"" << tip << "\", group=\"" << colour[colour_keys[i]]
       << "\", fillcolor=\"" << kPalette[colour[colour_keys[i]] % std::size(kPalette)] << "\"];\n";
  }
  for (auto [a, b] : adjacency(f)) os << "  c" << a << " -- c" << b << ";\n";
  os << "}\n";
  return os.str();
}

std::string theta_table_csv(const DiskTriangulation& t, long level, int workers) {
  if (level < 0) throw ValidationError("level must be nonnegative");
  std::vector<std::vector<GammaPoint>> by_level;
  for (long m = 0; m <= level; ++m) by_level.push_back(gamma_points(t.n, m));
  std::vector<std::pair<GammaPoint, GammaPoint>> pairs;
  for (long m = 0; 2 * m <= level; ++m)
    for (auto& p : by_level[m])
      for (auto& q : by_level[level - m])
        if (m < level - m || p <= q) pairs.push_back({p, q});
  std::vector<ThetaElement> prod(pairs.size());
  parallel_for(pairs.size(), workers, [&](size_t i) { prod[i] = central_product(pairs[i].first, pairs[i].second, t); });
  std::map<GammaPoint, std::vector<std::string>> rows;
  for (auto& r : by_level[level]) rows[r];
  for (size_t i = 0; i < pairs.size(); ++i)
    for (auto& [k, c] : prod[i].terms)
      rows[k.first].push_back(to_string(pairs[i].first) + "*" + to_string(pairs[i].second) + ":" + c.get_str());
  std::string out = "theta,level,triangulation,products\n";
  for (auto& [r, ps] : rows) {
    std::string joined;
    for (auto& s : ps) joined += (joined.empty() ? "" : " ") + s;
    out += csv_field(to_string(r)) + "," + std::to_string(r.level()) + "," + csv_field(t.describe()) + "," +
           csv_field(joined) + "\n";
  }
  return out;
}

BoundaryInput boundary_by_name(const std::string& name) {
  auto nb = standard_boundary(name);
  return {nb.name, nb.lat, nb.cycle};
}

BoundaryInput boundary_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("boundary config does not parse: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("boundary config must be a JSON object");
  // with a cycle present the name is only a label, so a normalized echo reads back
  if (j.contains("name") && !j["name"].is_string()) throw ValidationError("name must be a string");
  if (j.contains("name") && !j.contains("cycle")) return boundary_by_name(j["name"].get<std::string>());
  std::string model = j.value("model", std::string("blowup"));
  bool has_k = j.contains("k"), has_d = j.contains("degree");
  if (!has_k && !has_d) throw ValidationError("k or degree is required");
  if ((has_k && !j["k"].is_number_integer()) || (has_d && !j["degree"].is_number_integer()))
    throw ValidationError("k and degree must be integers");
  long k = has_k ? j["k"].get<long>() : 9 - j["degree"].get<long>();
  if (model == "quadric" && !has_k) k = j["degree"].get<long>() == 8 ? 1 : -1;
  if (has_k && has_d && model == "blowup" && j["k"].get<long>() != 9 - j["degree"].get<long>())
    throw ValidationError("k and degree disagree");
  PicLattice lat;
  if (model == "quadric") {
    if (k != 1) throw ValidationError("the quadric model has degree 8");
    lat = PicLattice::quadric();
  } else if (model == "blowup") {
    if (k < 0 || k > 8) throw ValidationError("k must lie in 0..8");
    lat = PicLattice::blowup(int(k));
  } else {
    throw ValidationError("unknown model tag: " + model);
  }
  if (!j.contains("cycle") || !j["cycle"].is_array() || j["cycle"].empty())
    throw ValidationError("cycle must be a nonempty array of class vectors");
  BoundaryCycle b;
  for (auto& c : j["cycle"]) {
    b.classes.push_back(intvec_from_json(c));
    if (b.classes.back().size() != lat.rank())
      throw ValidationError("class vector length " + std::to_string(b.classes.back().size()) + " != Picard rank " +
                            std::to_string(lat.rank()));
  }
  require_valid(lat, b);
  return {j.value("name", std::string("custom")), lat, b};
}

json boundary_to_json(const BoundaryInput& b) {
  json j;
  j["name"] = b.name;
  j["model"] = b.lat.model == Model::Quadric ? "quadric" : "blowup";
  j["k"] = b.lat.k;
  j["degree"] = b.lat.degree();
  auto c = canonical_rotation(b.cycle);
  json cyc = json::array(), names = json::array(), self = json::array();
  for (auto& v : c.classes) {
    cyc.push_back(intvec_json(v));
    names.push_back(b.lat.class_name(v));
    self.push_back(b.lat.dot(v, v).get_str());
  }
  j["cycle"] = cyc;
  j["classes"] = names;
  j["selfint"] = self;
  return j;
}

std::string canonical_input(const PicLattice& lat, const BoundaryCycle& b) {
  std::string s = std::string("model=") + (lat.model == Model::Quadric ? "quadric" : "blowup") +
                  ";k=" + std::to_string(lat.k) + ";cycle=";
  for (auto& v : canonical_rotation(b).classes) s += to_string(v);
  return s;
}

}  // namespace dp
