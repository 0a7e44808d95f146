// dpsec: command-line front end. Exit codes: 0 ok, 2 bad input, 3 internal invariant broken.
#include "dpsec/affine_spine.hpp"
#include "dpsec/delpezzo.hpp"
#include "dpsec/gkz.hpp"
#include "dpsec/pipeline.hpp"
#include "dpsec/secfan.hpp"
#include "dpsec/serialize.hpp"
#include "dpsec/thetaalg.hpp"
#include "dpsec/toricstack.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace dp;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot write " + out);
  f << text;
}

std::vector<long> parse_longs(const std::string& s, char sep = ',') {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    if (tok.empty()) continue;
    try {
      size_t used = 0;
      out.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ValidationError("not an integer: " + tok);
    }
  }
  return out;
}

struct BoundaryOpts {
  std::string name, config;
};

void add_boundary_opts(CLI::App* c, BoundaryOpts& o) {
  c->add_option("--boundary", o.name, "built-in boundary name (e.g. dp6-hexagon)");
  c->add_option("--config", o.config, "boundary config JSON file");
}

BoundaryInput load_boundary(const BoundaryOpts& o) {
  if (o.name.empty() == o.config.empty()) throw ValidationError("give exactly one of --boundary and --config");
  if (!o.name.empty()) return boundary_by_name(o.name);
  return boundary_from_json(read_file(o.config));
}

int run_delpezzo(int k, int degree, const std::string& model, const BoundaryOpts& bo, int cap, bool as_json) {
  PicLattice lat;
  std::optional<BoundaryInput> bin;
  if (!bo.name.empty() || !bo.config.empty()) {
    bin = load_boundary(bo);
    lat = bin->lat;
  } else {
    if ((k >= 0) == (degree >= 0)) throw ValidationError("give exactly one of --k and --degree");
    if (model == "quadric") {
      if ((k >= 0 && k != 1) || (degree >= 0 && degree != 8)) throw ValidationError("the quadric model has degree 8");
      lat = PicLattice::quadric();
    } else if (model == "blowup") {
      int kk = k >= 0 ? k : 9 - degree;
      if (kk < 0 || kk > 8) throw ValidationError("k must lie in 0..8");
      lat = PicLattice::blowup(kk);
    } else {
      throw ValidationError("unknown model tag: " + model);
    }
  }
  json j;
  j["lattice"] = lat.name();
  j["k"] = lat.k;
  j["degree"] = lat.degree();
  j["rank"] = lat.rank();
  j["minus_one_classes"] = minus_one_classes(lat).size();
  j["roots"] = roots(lat).size();
  if (lat.k <= cap) j["contractions"] = contractions(lat, cap).size();
  if (lat.k <= 6) j["weyl_order"] = weyl_group(lat).size();
  if (bin) {
    auto rep = validate_boundary(lat, bin->cycle);
    j["boundary"] = boundary_to_json(*bin);
    j["boundary_valid"] = rep.valid;
    j["diagnostics"] = rep.diagnostics;
  }
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << lat.name() << " (degree " << lat.degree() << ", Picard rank " << lat.rank() << ")\n";
    std::cout << "(-1)-classes: " << j["minus_one_classes"] << "\nroots: " << j["roots"] << "\n";
    if (j.contains("contractions")) std::cout << "contractions: " << j["contractions"] << "\n";
    if (j.contains("weyl_order")) std::cout << "Weyl group order: " << j["weyl_order"] << "\n";
    if (bin) {
      std::cout << "boundary " << bin->name << ":";
      for (auto& c : j["boundary"]["classes"]) std::cout << " " << c.get<std::string>();
      std::cout << "\nvalid: " << (bool(j["boundary_valid"]) ? "yes" : "no") << "\n";
    }
  }
  return 0;
}

std::vector<Point2> parse_points(const std::string& s) {
  std::vector<Point2> pts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    auto v = parse_longs(tok);
    if (v.size() != 2) throw ValidationError("points are x,y pairs separated by ';'");
    pts.push_back({v[0], v[1]});
  }
  return pts;
}

json gkz_json(const GkzFan& g) {
  json j;
  json pts = json::array();
  for (auto& p : g.points) pts.push_back({std::to_string(p[0]), std::to_string(p[1])});
  j["points"] = pts;
  json ts = json::array();
  for (auto& t : g.triangulations) ts.push_back(t.describe());
  j["regular_triangulations"] = ts;
  j["fan"] = json::parse(fan_to_json(g.fan));
  return j;
}

int run_theta_table(int n, const std::string& flips, long level, int workers, bool as_json, const std::string& out) {
  std::vector<int> fl;
  for (long x : parse_longs(flips)) fl.push_back(int(x));
  auto t = make_triangulation(n, fl);
  std::string csv = theta_table_csv(t, level, workers);
  if (!as_json) {
    emit(csv, out);
    return 0;
  }
  json rows = json::array();
  for (auto& p : gamma_points(n, level)) rows.push_back(to_string(p));
  json j;
  j["triangulation"] = t.describe();
  j["level"] = level;
  j["rows"] = rows.size();
  j["csv"] = csv;
  emit(j.dump(2) + "\n", out);
  return 0;
}

std::vector<IntVec> parse_L(const std::string& spec, const json& meta, size_t ambient) {
  std::vector<IntVec> L;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    if (tok == "K") {
      if (!meta.contains("canonical")) throw ValidationError("fan metadata has no canonical class for L = K");
      L.push_back(intvec_from_json(meta["canonical"]));
    } else if (tok.size() > 1 && tok.back() == 'K') {
      long m = parse_longs(tok.substr(0, tok.size() - 1)).at(0);
      if (!meta.contains("canonical")) throw ValidationError("fan metadata has no canonical class for L = K");
      L.push_back(scale(Int(m), intvec_from_json(meta["canonical"])));
    } else {
      L.push_back(to_intvec(parse_longs(tok)));
    }
    if (L.back().size() != ambient) throw ValidationError("L vector has wrong length");
  }
  if (L.empty()) throw ValidationError("L is empty");
  return L;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secondary fans, theta functions and spines for del Pezzo pairs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("dpsec ") + library_version());
  bool as_json = false;
  int workers = 1, cap = 6;
  std::string cache_dir, out;
  auto common = [&](CLI::App* c) {
    c->add_flag("--json", as_json, "machine-readable output");
    c->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  };

  // delpezzo
  auto* dpz = app.add_subcommand("delpezzo", "lattice data of a del Pezzo surface and boundary validation");
  int k = -1, degree = -1;
  std::string model = "blowup";
  BoundaryOpts bo;
  dpz->add_option("--k", k, "number of blown-up points");
  dpz->add_option("--degree", degree, "anticanonical degree");
  dpz->add_option("--model", model, "blowup | quadric");
  dpz->add_option("--cap", cap, "largest k for contraction enumeration");
  add_boundary_opts(dpz, bo);
  common(dpz);

  // fan
  auto* fan = app.add_subcommand("fan", "fans: mori, movsec, secondary, gkz, compare");
  fan->require_subcommand(1);
  std::string format = "json", points;
  std::vector<CLI::App*> fan_kinds;
  for (const char* kind : {"mori", "movsec", "secondary"}) {
    auto* c = fan->add_subcommand(kind, std::string(kind) + " fan of the boundary configuration");
    add_boundary_opts(c, bo);
    c->add_option("--format", format, "json | dot | markdown");
    c->add_option("--out", out, "output file");
    c->add_option("--cache-dir", cache_dir, std::string("cache directory (else $") + kCacheEnv + ")");
    c->add_option("--cap", cap, "largest k with full enumeration");
    common(c);
    fan_kinds.push_back(c);
  }
  auto* gkz = fan->add_subcommand("gkz", "GKZ secondary fan of a planar point configuration");
  gkz->add_option("--points", points, "x,y;x,y;...");
  add_boundary_opts(gkz, bo);
  gkz->add_option("--out", out, "output file");
  common(gkz);
  auto* cmp = fan->add_subcommand("compare", "certify Sec(K) against the GKZ fan of a toric pair");
  add_boundary_opts(cmp, bo);
  common(cmp);

  // theta
  auto* theta = app.add_subcommand("theta", "umbrella rings and theta functions");
  theta->require_subcommand(1);
  int n = 0;
  long max_level = 6, level = 2;
  std::string flips;
  auto* th_h = theta->add_subcommand("hilbert", "Hilbert function and degree of the umbrella");
  th_h->add_option("--n", n, "boundary length")->required();
  th_h->add_option("--max-level", max_level, "largest level");
  common(th_h);
  auto* th_t = theta->add_subcommand("table", "multiplication table as CSV");
  th_t->add_option("--n", n, "boundary length")->required();
  th_t->add_option("--triangulation", flips, "flipped edges, e.g. 1,3");
  th_t->add_option("--level", level, "level of the products");
  th_t->add_option("--out", out, "output file");
  common(th_t);
  auto* th_c = theta->add_subcommand("checks", "Theta at nodes and at the centre");
  th_c->add_option("--n", n, "boundary length")->required();
  th_c->add_option("--triangulation", flips, "flipped edges");
  common(th_c);

  // spine
  auto* spine = app.add_subcommand("spine", "spines in the integral affine sphere");
  spine->require_subcommand(1);
  std::string selfint, spine_file, gamma;
  auto* sp_c = spine->add_subcommand("count", "crossing class and count of a spine");
  sp_c->add_option("--selfint", selfint, "D_i^2, comma separated")->required();
  sp_c->add_option("--spine", spine_file, "spine JSON file")->required();
  sp_c->add_option("--gamma", gamma, "class in D-coefficients (default: the crossing class)");
  common(sp_c);

  // bundle
  auto* bundle = app.add_subcommand("bundle", "toric bundle hypotheses");
  bundle->require_subcommand(1);
  std::string fan_file, sub_file, lspec = "K";
  auto* bc = bundle->add_subcommand("check", "decomposition certificate and stabilizers");
  bc->add_option("--fan", fan_file, "fan JSON")->required();
  bc->add_option("--subfan", sub_file, "subfan JSON")->required();
  bc->add_option("--L", lspec, "K, 2K or vectors a,b,..;c,d,..");
  bc->add_option("--out", out, "output file");
  common(bc);

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "all stages with a verification report");
  std::string out_dir;
  bool no_weyl = false;
  long pipe_level = 2;
  add_boundary_opts(pipe, bo);
  pipe->add_option("--out-dir", out_dir, "directory for the report bundle");
  pipe->add_option("--max-level", pipe_level, "largest level for cocycles and theta tables");
  pipe->add_option("--cap", cap, "largest k with full enumeration");
  pipe->add_option("--cache-dir", cache_dir, std::string("cache directory (else $") + kCacheEnv + ")");
  pipe->add_flag("--no-weyl", no_weyl, "skip the Weyl equivariance stage");
  common(pipe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*dpz) return run_delpezzo(k, degree, model, bo, cap, as_json);

    for (auto* c : fan_kinds)
      if (*c) {
        if (as_json) format = "json";
        emit(fan_artifact(load_boundary(bo), c->get_name(), format, workers, cap, Cache::resolve(cache_dir)), out);
        return 0;
      }
    if (*gkz) {
      std::vector<Point2> pts;
      if (!points.empty()) pts = parse_points(points);
      else {
        auto b = load_boundary(bo);
        pts = toric_polygon(b.lat, b.cycle);
      }
      auto g = gkz_secondary_fan(pts, workers);
      emit(gkz_json(g).dump(2) + "\n", out);
      return 0;
    }
    if (*cmp) {
      auto b = load_boundary(bo);
      auto g = gkz_secondary_fan(toric_polygon(b.lat, b.cycle), workers);
      auto ch = chambers(b.lat, b.cycle, workers);
      auto sec = secondary_fan(b.lat, b.cycle, ch);
      auto c = toric_compare(b.lat, b.cycle, g, sec);
      json j;
      j["certified"] = c.certified;
      j["kernel_is_affine"] = c.kernel_is_affine;
      j["rank_identity"] = c.rank_identity;
      j["gkz_cones"] = c.gkz_cones;
      j["sec_cones"] = c.sec_cones;
      j["f_gkz"] = c.f_gkz;
      j["f_sec"] = c.f_sec;
      j["diagnostics"] = c.diagnostics;
      if (as_json) std::cout << j.dump(2) << "\n";
      else
        std::cout << b.name << ": " << c.gkz_cones << " GKZ cones, " << c.sec_cones << " Sec cones, "
                  << (c.certified ? "certified" : "NOT certified") << "\n";
      return c.certified ? 0 : 3;
    }
    if (*th_h) {
      if (n < 1) throw ValidationError("n must be positive");
      json j;
      json h = json::array();
      for (long m = 0; m <= max_level; ++m) h.push_back(hilbert(n, m));
      j["n"] = n;
      j["hilbert"] = h;
      j["degree"] = proj_degree(n, max_level).get_str();
      if (as_json) std::cout << j.dump(2) << "\n";
      else {
        for (long m = 0; m <= max_level; ++m) std::cout << "h(" << m << ") = " << h[m] << "\n";
        std::cout << "degree " << j["degree"].get<std::string>() << "\n";
      }
      return 0;
    }
    if (*th_t) return run_theta_table(n, flips, level, workers, as_json, out);
    if (*th_c) {
      std::vector<int> fl;
      for (long x : parse_longs(flips)) fl.push_back(int(x));
      auto r = theta_divisor_checks(make_triangulation(n, fl));
      json j;
      j["n"] = r.n;
      j["nodes"] = r.nodes;
      j["nodes_missed"] = r.nodes_missed;
      j["center_unique"] = r.center_unique;
      j["center_theta_nonzero"] = r.center_theta_nonzero;
      j["center_theta_prime_nonzero"] = r.center_theta_prime_nonzero;
      j["homomorphisms_ok"] = r.homomorphisms_ok;
      j["failures"] = r.failures;
      if (as_json) std::cout << j.dump(2) << "\n";
      else
        std::cout << "Theta misses " << r.nodes_missed << "/" << r.nodes << " nodes; one theta at the centre: "
                  << (r.center_unique ? "yes" : "no") << "; Theta' at the centre: "
                  << (r.center_theta_prime_nonzero ? "nonzero" : "zero") << "\n";
      return 0;
    }
    if (*sp_c) {
      auto aff = affine_structure(parse_longs(selfint));
      auto s = spine_from_json(read_file(spine_file));
      IntVec z = crossing_counts(aff, s);
      IntVec g = gamma.empty() ? z : to_intvec(parse_longs(gamma));
      if (g.size() != size_t(aff.n)) throw ValidationError("gamma needs one coefficient per boundary component");
      json j;
      j["balanced"] = is_balanced(aff, s);
      j["crossing_class"] = intvec_json(z);
      j["gamma"] = intvec_json(g);
      j["count"] = count(aff, s, g);
      if (as_json) std::cout << j.dump(2) << "\n";
      else
        std::cout << "balanced: " << (bool(j["balanced"]) ? "yes" : "no") << "\nZ(h) = " << to_string(z)
                  << "\ncount = " << j["count"] << "\n";
      return 0;
    }
    if (*bc) {
      json meta;
      BundleInput in;
      in.delta = fan_from_json(read_file(fan_file), &meta);
      in.sub = fan_from_json(read_file(sub_file));
      in.L = parse_L(lspec, meta, in.delta.ambient);
      auto cert = decompose(in, workers);
      json j;
      j["decomposes"] = cert.ok;
      j["failures"] = cert.failures;
      json L = json::array();
      for (auto& v : in.L) L.push_back(intvec_json(v));
      j["L"] = L;
      if (cert.ok) {
        j["tilde_is_fan"] = fan_check(build_tilde(in, cert), workers).is_fan;
        auto st = stabilizers(in, cert);
        json e = json::array();
        for (auto& s : st.entries) {
          json x;
          x["cone"] = s.cone;
          x["dim_sigma1"] = s.tau1.dim;
          x["dim_sigma2"] = s.tau2.dim;
          json inv = json::array();
          for (auto& f : s.group.invariant_factors) inv.push_back(f.get_str());
          x["torsion"] = inv;
          e.push_back(x);
        }
        j["stabilizers"] = e;
        j["nontrivial_stabilizers"] = st.nontrivial;
      }
      emit(j.dump(2) + "\n", out);
      return cert.ok ? 0 : 2;
    }
    if (*pipe) {
      RunConfig cfg;
      cfg.input = load_boundary(bo);
      cfg.workers = workers;
      cfg.max_level = pipe_level;
      cfg.cap = cap;
      cfg.weyl = !no_weyl;
      cfg.cache_dir = cache_dir;
      auto rb = run_pipeline(cfg);
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (auto& [name, content] : rb.files) emit(content, (std::filesystem::path(out_dir) / name).string());
      }
      if (as_json) std::cout << rb.summary.dump(2) << "\n";
      else std::cout << rb.files["report.md"];
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
