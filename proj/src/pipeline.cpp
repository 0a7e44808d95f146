#include "dpsec/pipeline.hpp"

#include "dpsec/secfan.hpp"
#include "dpsec/thetaalg.hpp"
#include "dpsec/toricstack.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace dp {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::optional<std::string> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& bytes) {
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out << bytes;
  }
  fs::rename(tmp, p);
}

template <class F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(name) + ": " + e.what());
  } catch (const InvariantError& e) {
    throw InvariantError(std::string(name) + ": " + e.what());
  }
}

std::string yes(bool b) { return b ? "yes" : "no"; }

json lattice_meta(const PicLattice& lat, const std::string& hash, const std::string& kind) {
  json m;
  m["lattice"] = lat.name();
  m["basis"] = lat.basis_labels();
  m["canonical"] = intvec_json(lat.canonical);
  m["input_hash"] = hash;
  m["version"] = library_version();
  m["kind"] = kind;
  return m;
}

Fan chamber_fan(const std::vector<Chamber>& ch, const PicLattice& lat) {
  Fan f;
  f.ambient = lat.rank();
  for (auto& c : ch) {
    std::string label = "chamber";
    for (auto& v : c.contraction.classes) label += " " + lat.class_name(v);
    std::string bexc;
    for (int i : c.boundary_exc) bexc += (bexc.empty() ? "" : ",") + std::to_string(i);
    f.add(c.cone, label, "bexc=" + bexc);
  }
  return f;
}

Fan movsec_fan(const SecondaryFan& sec, size_t ambient) {
  Fan f;
  f.ambient = ambient;
  for (size_t i = 0; i < sec.groups.size(); ++i) f.add(sec.groups[i].cone, sec.full.labels[i], sec.full.provenance[i]);
  return f;
}

// Colour keys after canonical reordering: moving groups by their key, bogus cones together.
std::vector<std::string> colour_keys(const Fan& f, bool by_provenance) {
  std::vector<std::string> keys;
  for (size_t i = 0; i < f.size(); ++i) {
    if (by_provenance) keys.push_back(f.provenance[i]);
    else keys.push_back(f.labels[i].rfind("bogus", 0) == 0 ? std::string("~bogus") : f.labels[i]);
  }
  return keys;
}

std::string dot_of(Fan f, bool by_provenance, const std::string& name) {
  f.canonicalize();
  return fan_dot(f, colour_keys(f, by_provenance), name);
}

struct SecData {
  std::vector<Chamber> ch;
  SecondaryFan sec;
};

SecData compute_sec(const BoundaryInput& in, int workers, int cap) {
  SecData d;
  d.ch = stage("secfan", [&] { return chambers(in.lat, in.cycle, workers, cap); });
  d.sec = stage("secfan", [&] { return secondary_fan(in.lat, in.cycle, d.ch); });
  return d;
}

BoundaryInput canonical_copy(const BoundaryInput& in) {
  BoundaryInput c = in;
  c.cycle = canonical_rotation(in.cycle);
  stage("delpezzo", [&] {
    require_valid(c.lat, c.cycle);
    return 0;
  });
  return c;
}

}  // namespace

Cache::Cache(std::string dir) : dir_(std::move(dir)) {}

Cache Cache::resolve(const std::string& flag) {
  if (!flag.empty()) return Cache(flag);
  if (const char* e = std::getenv(kCacheEnv)) return Cache(e);
  return Cache();
}

std::optional<std::string> Cache::get(const std::string& key, const std::string& kind) const {
  if (!enabled()) return std::nullopt;
  std::string stem = kind + "-" + fnv1a_hex(key);
  auto k = slurp(fs::path(dir_) / (stem + ".key"));
  if (!k) return std::nullopt;
  if (*k != key) return std::nullopt;  // fnv collision: not the same input
  auto p = slurp(fs::path(dir_) / (stem + ".payload"));
  if (!p) return std::nullopt;
  auto nl = p->find('\n');
  if (nl == std::string::npos || p->substr(0, nl) != fnv1a_hex(p->substr(nl + 1))) {
    std::cerr << "warning: corrupt cache entry " << stem << ", recomputing\n";
    return std::nullopt;
  }
  return p->substr(nl + 1);
}

void Cache::put(const std::string& key, const std::string& kind, const std::string& payload) const {
  if (!enabled()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw ValidationError("cannot create cache directory " + dir_ + ": " + ec.message());
  std::string stem = kind + "-" + fnv1a_hex(key);
  spit(fs::path(dir_) / (stem + ".payload"), fnv1a_hex(payload) + "\n" + payload);
  spit(fs::path(dir_) / (stem + ".key"), key);
}

std::string fan_artifact(const BoundaryInput& raw, const std::string& kind, const std::string& format, int workers,
                         int cap, const Cache& cache) {
  if (kind != "mori" && kind != "movsec" && kind != "secondary") throw ValidationError("unknown fan kind: " + kind);
  if (format != "json" && format != "dot" && format != "markdown") throw ValidationError("unknown format: " + format);
  BoundaryInput in = canonical_copy(raw);
  if (in.lat.k > cap) throw ValidationError("k = " + std::to_string(in.lat.k) + " is above the enumeration cap");
  std::string key = canonical_input(in.lat, in.cycle) + ";cap=" + std::to_string(cap) + ";fan=" + kind +
                    ";format=" + format;
  if (auto hit = cache.get(key, "fan")) return *hit;
  std::string hash = fnv1a_hex(canonical_input(in.lat, in.cycle));
  SecData d = compute_sec(in, workers, cap);
  Fan f;
  bool by_prov = false;
  if (kind == "mori") {
    f = chamber_fan(d.ch, in.lat);
    by_prov = true;
  } else if (kind == "movsec") {
    f = movsec_fan(d.sec, in.lat.rank());
  } else {
    f = d.sec.full;
    f.ambient = in.lat.rank();
  }
  std::string out;
  if (format == "json") {
    out = fan_to_json(f, lattice_meta(in.lat, hash, kind));
  } else if (format == "dot") {
    out = dot_of(f, by_prov, kind);
  } else {
    auto rep = fan_check(f, workers);
    auto fv = f_vector(f);
    std::ostringstream os;
    os << "# " << kind << " fan\n\n";
    os << "- input hash: `" << hash << "`\n";
    os << "- library version: dpsec " << library_version() << "\n";
    os << "- surface: " << in.lat.name() << ", boundary " << in.name << " (n = " << in.cycle.n() << ")\n";
    os << "- " << f.size() << " maximal cones\n";
    os << "- f-vector:";
    for (auto x : fv) os << " " << x;
    os << "\n- fan_check: " << (rep.is_fan ? "ok" : "FAILED") << " (" << rep.violations.size() << " violations)\n";
    os << "- complete: " << yes(rep.is_complete) << " (64 probes, seed 12345)\n";
    out = os.str();
  }
  cache.put(key, "fan", out);
  return out;
}

ReportBundle run_pipeline(const RunConfig& cfg) {
  if (cfg.workers < 1) throw ValidationError("workers must be positive");
  if (cfg.max_level < 1) throw ValidationError("max_level must be at least 1");
  BoundaryInput in = canonical_copy(cfg.input);
  const PicLattice& lat = in.lat;
  const BoundaryCycle& b = in.cycle;
  if (lat.k > cfg.cap) throw ValidationError("k = " + std::to_string(lat.k) + " is above the enumeration cap");
  std::string key = canonical_input(lat, b) + ";max_level=" + std::to_string(cfg.max_level) +
                    ";cap=" + std::to_string(cfg.cap) + ";weyl=" + (cfg.weyl ? "1" : "0") +
                    ";version=" + library_version();
  ReportBundle out;
  out.hash = fnv1a_hex(key);
  Cache cache = Cache::resolve(cfg.cache_dir);
  if (auto hit = cache.get(key, "pipeline")) {
    try {
      json j = json::parse(*hit);
      for (auto& [name, content] : j["files"].items()) out.files[name] = content.get<std::string>();
      out.summary = j["summary"];
      out.cache_hit = true;
      return out;
    } catch (const json::exception&) {
      std::cerr << "warning: unreadable cache payload, recomputing\n";
    }
  }

  std::ostringstream md;
  json sum;
  sum["input_hash"] = out.hash;
  sum["version"] = library_version();
  sum["boundary"] = boundary_to_json(in);

  // delpezzo
  auto report = stage("delpezzo", [&] { return validate_boundary(lat, b); });
  size_t n_minus_one = stage("delpezzo", [&] { return minus_one_classes(lat).size(); });
  sum["minus_one_classes"] = n_minus_one;

  // secfan
  SecData d = compute_sec(in, cfg.workers, cfg.cap);
  auto& ch = d.ch;
  auto& sec = d.sec;
  sec.full.ambient = lat.rank();
  Fan mori_y = chamber_fan(ch, lat);
  auto mori_check = stage("secfan", [&] { return fan_check(mori_y, cfg.workers); });
  bool support_eff = stage("secfan", [&] {
    std::vector<RationalCone> cs;
    for (auto& c : ch) cs.push_back(c.cone);
    return union_equals(effective_cone(lat), cs);
  });
  bool groupings = stage("secfan", [&] {
    try {
      check_groupings_agree(ch);
      return true;
    } catch (const InvariantError&) {
      return false;
    }
  });
  auto sec_check = stage("secfan", [&] { return fan_check(sec.full, cfg.workers); });
  Fan mk = stage("secfan", [&] { return mori_fan_K(lat, b, ch); });
  bool coarsens = stage("secfan", [&] { return is_coarsening(sec.full, mk); });
  auto battery = stage("secfan", [&] { return cocycle_battery(lat, b, ch, cfg.max_level); });
  auto strata = stage("secfan", [&] { return one_strata_report(sec); });
  std::optional<WeylReport> weyl;
  if (cfg.weyl && lat.k <= 5) weyl = stage("secfan", [&] { return weyl_equivariance(lat, b, ch, sec); });
  if (!mori_check.is_fan || !sec_check.is_fan) throw InvariantError("secfan: fan_check reported violations");
  if (!battery.ok()) throw InvariantError("secfan: cocycle battery failed: " + battery.failures.front());

  // thetaalg
  int n = int(b.n());
  std::vector<size_t> h;
  for (long m = 0; m <= 6; ++m) h.push_back(hilbert(n, m));
  Int degree = stage("thetaalg", [&] { return proj_degree(n, 6); });
  std::vector<DiskTriangulation> tris{make_triangulation(n)};
  for (auto& g : sec.groups)
    if (std::find(tris.begin(), tris.end(), g.tri) == tris.end()) tris.push_back(g.tri);
  std::vector<ThetaDivisorReport> theta;
  size_t ring_products = 0;
  for (auto& t : tris) {
    theta.push_back(stage("thetaalg", [&] { return theta_divisor_checks(t); }));
    ring_products += stage("thetaalg", [&] { return umbrella_ring(t, int(cfg.max_level), cfg.workers); }).table.size();
  }
  auto balg = stage("thetaalg", [&] { return boundary_algebra(n, cfg.max_level); });
  std::string csv = stage("thetaalg", [&] { return theta_table_csv(tris[0], cfg.max_level, cfg.workers); });

  // toricstack
  BundleInput bin;
  bin.delta = sec.full;
  bin.sub = movsec_fan(sec, lat.rank());
  bin.L = {lat.canonical};
  auto cert = stage("toricstack", [&] { return decompose(bin, cfg.workers); });
  std::optional<StabilizerReport> stab;
  bool tilde_ok = false;
  if (cert.ok) {
    Fan tilde = stage("toricstack", [&] { return build_tilde(bin, cert); });
    tilde_ok = stage("toricstack", [&] { return fan_check(tilde, cfg.workers).is_fan; });
    stab = stage("toricstack", [&] { return stabilizers(bin, cert); });
  }

  // artifacts
  out.files["mori.json"] = fan_to_json(mori_y, lattice_meta(lat, out.hash, "mori"));
  out.files["movsec.json"] = fan_to_json(bin.sub, lattice_meta(lat, out.hash, "movsec"));
  out.files["sec.json"] = fan_to_json(sec.full, lattice_meta(lat, out.hash, "secondary"));
  out.files["chambers.dot"] = dot_of(mori_y, true, "chambers");
  out.files["sec.dot"] = dot_of(sec.full, false, "secondary");
  out.files["theta.csv"] = csv;

  json bj;
  bj["input_hash"] = out.hash;
  bj["version"] = library_version();
  bj["L"] = json::array({intvec_json(lat.canonical)});
  bj["decomposes"] = cert.ok;
  bj["failures"] = cert.failures;
  bj["tilde_is_fan"] = tilde_ok;
  json sj = json::array();
  std::map<std::string, size_t> torsion_hist;
  if (stab)
    for (auto& e : stab->entries) {
      json x;
      x["cone"] = sec.full.labels[e.cone];
      x["dim_sigma1"] = e.tau1.dim;
      x["dim_sigma2"] = e.tau2.dim;
      json inv = json::array();
      std::string hk = "trivial";
      if (!e.group.trivial()) hk.clear();
      for (auto& f : e.group.invariant_factors) {
        inv.push_back(f.get_str());
        hk += (hk.empty() ? "Z/" : " x Z/") + f.get_str();
      }
      x["torsion"] = inv;
      x["nontrivial"] = !e.group.trivial();
      sj.push_back(x);
      ++torsion_hist[hk];
    }
  bj["stabilizers"] = sj;
  out.files["bundle.json"] = bj.dump(2) + "\n";

  size_t changing = 0;
  for (auto& s : strata) changing += s.changes;
  bool theta_ok = true;
  for (auto& t : theta)
    theta_ok = theta_ok && t.nodes_missed == t.nodes && t.center_unique && t.center_theta_nonzero &&
               !t.center_theta_prime_nonzero && t.homomorphisms_ok;

  sum["chambers"] = ch.size();
  sum["movsec_cones"] = sec.groups.size();
  sum["bogus_cones"] = sec.bogus.size();
  sum["sec_cones"] = sec.full.size();
  sum["sec_is_fan"] = sec_check.is_fan;
  sum["sec_complete"] = sec_check.is_complete;
  sum["coarsens_mori_fan_K"] = coarsens;
  sum["groupings_agree"] = groupings;
  sum["cocycle_ok"] = battery.ok();
  sum["umbrella_degree"] = degree.get_str();
  sum["theta_checks_ok"] = theta_ok;
  sum["boundary_algebra_ok"] = balg.products_ok;
  sum["bundle_decomposes"] = cert.ok;
  sum["nontrivial_stabilizers"] = stab ? stab->nontrivial : 0;
  if (weyl) {
    sum["weyl_order"] = weyl->group_order;
    sum["weyl_permutes_chambers"] = weyl->permutes_chambers;
    sum["stabilizer_fixes_sec"] = weyl->stabilizer_fixes_sec;
  }

  md << "# dpsec verification report\n\n";
  md << "- input hash: `" << out.hash << "`\n";
  md << "- library version: dpsec " << library_version() << "\n";
  md << "- surface: " << lat.name() << " (degree " << lat.degree() << "), boundary " << in.name << "\n";
  md << "- boundary cycle (n = " << n << "):";
  for (size_t i = 0; i < b.n(); ++i) md << " " << lat.class_name(b.classes[i]) << " [" << report.selfint[i] << "]";
  md << "\n- (-1)-classes: " << n_minus_one << "\n\n";

  md << "## Mori fan of Y\n\n";
  md << "- " << ch.size() << " chambers\n";
  md << "- fan_check: " << (mori_check.is_fan ? "ok" : "FAILED") << " (" << mori_check.violations.size()
     << " violations)\n";
  md << "- support equals Eff(Y): " << yes(support_eff) << "\n\n";

  md << "## Secondary fan\n\n";
  md << "- Sec(K): " << sec.full.size() << " maximal cones (" << sec.groups.size() << " moving, " << sec.bogus.size()
     << " bogus)\n";
  md << "- fan_check: " << (sec_check.is_fan ? "ok" : "FAILED") << " (" << sec_check.violations.size()
     << " violations)\n";
  md << "- complete: " << yes(sec_check.is_complete) << " (64 probes, seed 12345)\n";
  md << "- coarsens MoriFan(K) (" << mk.size() << " cones): " << yes(coarsens) << "\n";
  md << "- MovSec groups convex (hull equals union): yes\n";
  md << "- grouping by triangulation equals grouping by boundary-exceptional curves: " << yes(groupings) << "\n\n";

  md << "## Cocycle battery (points up to level " << cfg.max_level << ")\n\n";
  md << "- " << battery.walls << " walls, " << battery.loops << " codimension-two loops, " << battery.points
     << " points\n";
  md << "- antisymmetric: " << yes(battery.antisymmetric) << "; loops close: " << yes(battery.loops_close)
     << "; vanishes on the boundary and at [Y]: " << yes(battery.boundary_vanishes)
     << "; nonnegative on nef classes: " << yes(battery.nef_nonnegative) << "\n\n";

  if (weyl) {
    md << "## Weyl group\n\n";
    md << "- order " << weyl->group_order << "; permutes chambers: " << yes(weyl->permutes_chambers) << "\n";
    md << "- chamber orbits:";
    for (auto s : weyl->chamber_orbit_sizes) md << " " << s;
    md << "\n- boundary stabilizer order " << weyl->stabilizer_order << "; fixes Sec: "
       << yes(weyl->stabilizer_fixes_sec) << "\n\n";
  }

  md << "## Theta functions\n\n";
  md << "- Hilbert function h(0..6):";
  for (auto x : h) md << " " << x;
  md << "\n- umbrella degree: " << degree << "\n";
  md << "- triangulations checked: " << tris.size() << " (" << ring_products << " products closed up to level "
     << cfg.max_level << ")\n";
  for (size_t i = 0; i < tris.size(); ++i) {
    auto& t = theta[i];
    md << "  - " << tris[i].describe() << ": Theta misses " << t.nodes_missed << "/" << t.nodes
       << " nodes; one theta at the centre: " << yes(t.center_unique)
       << "; Theta' nonzero at the centre: " << yes(t.center_theta_prime_nonzero) << "\n";
  }
  md << "- boundary algebra at level " << cfg.max_level << ": " << balg.total << " points, component dimensions";
  for (auto x : balg.component_dims) md << " " << x;
  md << ", products " << (balg.products_ok ? "ok" : "FAILED") << "\n\n";

  md << "## 1-strata of Sec(K)\n\n";
  md << "- " << strata.size() << " walls; fiber data changes across " << changing << ", unchanged across "
     << strata.size() - changing << "\n\n";

  md << "## Toric stack over Sec(K), L = <K>\n\n";
  md << "- decomposition: " << (cert.ok ? "ok" : "FAILED") << "\n";
  for (auto& f : cert.failures) md << "  - " << f << "\n";
  if (stab) {
    md << "- lifted fan is a fan: " << yes(tilde_ok) << "\n";
    md << "- strata: " << stab->entries.size() << ", nontrivial stabilizers: " << stab->nontrivial << "\n";
    for (auto& [k, v] : torsion_hist) md << "  - " << k << ": " << v << "\n";
  }
  out.files["report.md"] = md.str();
  out.summary = sum;
  out.files["summary.json"] = sum.dump(2) + "\n";

  json payload;
  payload["files"] = out.files;
  payload["summary"] = out.summary;
  cache.put(key, "pipeline", payload.dump());
  return out;
}

}  // namespace dp
