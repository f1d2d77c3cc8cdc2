#include "config.hpp"

#include <cmath>
#include <set>

#include "errors.hpp"

namespace cpvdw {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string &path, const std::string &what) {
  throw ConfigError(path + ": " + what);
}

const json &member(const json &obj, const std::string &path,
                   const char *key) {
  auto it = obj.find(key);
  if (it == obj.end())
    fail(path + "." + key, "missing required field");
  return *it;
}

void check_keys(const json &obj, const std::string &path,
                std::initializer_list<const char *> allowed) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!ok.count(it.key()))
      fail(path + "." + it.key(), "unknown field");
}

const json &as_object(const json &v, const std::string &path) {
  if (!v.is_object())
    fail(path, "expected an object");
  return v;
}

const json &as_array(const json &v, const std::string &path) {
  if (!v.is_array())
    fail(path, "expected an array");
  return v;
}

double as_number(const json &v, const std::string &path) {
  if (!v.is_number())
    fail(path, "expected a number");
  double x = v.get<double>();
  if (!std::isfinite(x))
    fail(path, "expected a finite number");
  return x;
}

long as_integer(const json &v, const std::string &path) {
  if (!v.is_number_integer())
    fail(path, "expected an integer");
  return v.get<long>();
}

std::string as_string(const json &v, const std::string &path) {
  if (!v.is_string())
    fail(path, "expected a string");
  return v.get<std::string>();
}

bool as_bool(const json &v, const std::string &path) {
  if (!v.is_boolean())
    fail(path, "expected a boolean");
  return v.get<bool>();
}

double number_or(const json &obj, const std::string &path, const char *key,
                 double dflt) {
  auto it = obj.find(key);
  return it == obj.end() ? dflt : as_number(*it, path + "." + key);
}

Vec3 parse_point(const json &v, const std::string &path,
                 const UnitSystem &units) {
  const json &a = as_array(v, path);
  if (a.size() != 3)
    fail(path, "expected 3 components");
  Vec3 p;
  p.x = units.length_in(as_number(a[0], path + "[0]"));
  p.y = units.length_in(as_number(a[1], path + "[1]"));
  p.z = units.length_in(as_number(a[2], path + "[2]"));
  return p;
}

AtomSpecies parse_species(const json &v, const std::string &path,
                          const UnitSystem &units) {
  const json &o = as_object(v, path);
  check_keys(o, path, {"name", "oscillators"});
  AtomSpecies sp;
  sp.name = as_string(member(o, path, "name"), path + ".name");
  const json &oscs = as_array(member(o, path, "oscillators"),
                              path + ".oscillators");
  if (oscs.empty())
    fail(path + ".oscillators", "at least one oscillator is required");
  for (std::size_t i = 0; i < oscs.size(); ++i) {
    std::string op = path + ".oscillators[" + std::to_string(i) + "]";
    const json &oo = as_object(oscs[i], op);
    check_keys(oo, op, {"omega", "d2"});
    Oscillator osc;
    osc.omega = units.frequency_in(as_number(member(oo, op, "omega"),
                                             op + ".omega"));
    osc.d2 = units.dipole2_in(as_number(member(oo, op, "d2"), op + ".d2"));
    sp.oscillators.push_back(osc);
  }
  try {
    sp.validate();
  } catch (const Error &e) {
    fail(path, e.what());
  }
  return sp;
}

std::vector<LorentzPole> parse_poles(const json &v, const std::string &path,
                                     const UnitSystem &units) {
  const json &a = as_array(v, path);
  std::vector<LorentzPole> poles;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string pp = path + "[" + std::to_string(i) + "]";
    const json &po = as_object(a[i], pp);
    check_keys(po, pp, {"omega_p", "omega_t", "gamma"});
    LorentzPole pole;
    pole.omega_p = units.frequency_in(as_number(member(po, pp, "omega_p"),
                                                pp + ".omega_p"));
    pole.omega_t = units.frequency_in(as_number(member(po, pp, "omega_t"),
                                                pp + ".omega_t"));
    pole.gamma = units.frequency_in(number_or(po, pp, "gamma", 0.0));
    poles.push_back(pole);
  }
  return poles;
}

MediumModel parse_medium(const json &v, const std::string &path,
                         const UnitSystem &units) {
  const json &o = as_object(v, path);
  check_keys(o, path, {"name", "eps_poles", "mu_poles"});
  MediumModel m;
  m.name = as_string(member(o, path, "name"), path + ".name");
  if (auto it = o.find("eps_poles"); it != o.end())
    m.eps_poles = parse_poles(*it, path + ".eps_poles", units);
  if (auto it = o.find("mu_poles"); it != o.end())
    m.mu_poles = parse_poles(*it, path + ".mu_poles", units);
  try {
    m.validate();
  } catch (const Error &e) {
    fail(path, e.what());
  }
  return m;
}

Geometry parse_geometry(const json &v, const std::string &path,
                        const UnitSystem &units) {
  const json &o = as_object(v, path);
  std::string type = as_string(member(o, path, "type"), path + ".type");
  if (type == "sphere") {
    check_keys(o, path, {"type", "center", "radius"});
    SphereGeom g;
    g.center = parse_point(member(o, path, "center"), path + ".center", units);
    g.radius = units.length_in(as_number(member(o, path, "radius"),
                                         path + ".radius"));
    return g;
  }
  if (type == "box") {
    check_keys(o, path, {"type", "corner", "extents"});
    BoxGeom g;
    g.corner = parse_point(member(o, path, "corner"), path + ".corner", units);
    g.extents = parse_point(member(o, path, "extents"),
                            path + ".extents", units);
    return g;
  }
  if (type == "point_cloud") {
    check_keys(o, path, {"type", "points"});
    PointCloudGeom g;
    const json &pts = as_array(member(o, path, "points"), path + ".points");
    for (std::size_t i = 0; i < pts.size(); ++i)
      g.points.push_back(parse_point(pts[i],
                                     path + ".points[" + std::to_string(i) +
                                         "]",
                                     units));
    return g;
  }
  fail(path + ".type", "expected sphere, box or point_cloud");
}

AtomAt parse_atom(const json &v, const std::string &path,
                  const RunConfig &cfg) {
  const json &o = as_object(v, path);
  check_keys(o, path, {"species", "position"});
  std::string name = as_string(member(o, path, "species"),
                               path + ".species");
  auto it = cfg.species.find(name);
  if (it == cfg.species.end())
    fail(path + ".species", "unknown species '" + name + "'");
  AtomAt a;
  a.species = it->second;
  a.position = parse_point(member(o, path, "position"), path + ".position",
                           cfg.units);
  return a;
}

Background parse_background(const json &o, const std::string &path,
                            const RunConfig &cfg) {
  auto it = o.find("background");
  if (it == o.end())
    return Background::make_vacuum();
  std::string bp = path + ".background";
  const json &b = as_object(*it, bp);
  std::string type = as_string(member(b, bp, "type"), bp + ".type");
  if (type == "vacuum") {
    check_keys(b, bp, {"type"});
    return Background::make_vacuum();
  }
  if (type == "bulk") {
    check_keys(b, bp, {"type", "medium"});
    std::string name = as_string(member(b, bp, "medium"), bp + ".medium");
    auto mit = cfg.media.find(name);
    if (mit == cfg.media.end())
      fail(bp + ".medium", "unknown medium '" + name + "'");
    return Background::make_bulk(mit->second);
  }
  fail(bp + ".type", "expected vacuum or bulk");
}

std::string parse_body_ref(const json &o, const std::string &path,
                           const RunConfig &cfg) {
  std::string name = as_string(member(o, path, "body"), path + ".body");
  if (!cfg.bodies.count(name))
    fail(path + ".body", "unknown body '" + name + "'");
  return name;
}

void parse_quadrature(const json &v, const std::string &path,
                      const UnitSystem &units, QuadratureSpec &q) {
  const json &o = as_object(v, path);
  check_keys(o, path,
             {"rel_tol", "abs_tol", "max_evals", "u0", "u_nodes", "rule"});
  q.rel_tol = number_or(o, path, "rel_tol", q.rel_tol);
  q.abs_tol = number_or(o, path, "abs_tol", q.abs_tol);
  if (auto it = o.find("max_evals"); it != o.end())
    q.max_evals = as_integer(*it, path + ".max_evals");
  if (auto it = o.find("u0"); it != o.end())
    q.u0 = units.frequency_in(as_number(*it, path + ".u0"));
  if (auto it = o.find("u_nodes"); it != o.end()) {
    q.u_nodes = static_cast<int>(as_integer(*it, path + ".u_nodes"));
    if (q.u_nodes < 15 || q.u_nodes > 4096)
      fail(path + ".u_nodes", "expected between 15 and 4096");
  }
  if (auto it = o.find("rule"); it != o.end()) {
    std::string r = as_string(*it, path + ".rule");
    if (r == "adaptive_gk")
      q.rule = QuadratureSpec::Rule::adaptive_gk15;
    else if (r == "composite_gl")
      q.rule = QuadratureSpec::Rule::composite_gl;
    else
      fail(path + ".rule", "expected adaptive_gk or composite_gl");
  }
  if (q.rel_tol <= 0.0 || q.abs_tol <= 0.0)
    fail(path, "tolerances must be positive");
  if (q.max_evals < 100)
    fail(path + ".max_evals", "expected at least 100");
  if (q.u0 < 0.0)
    fail(path + ".u0", "expected a non-negative frequency");
}

void parse_grid(const json &v, const std::string &path,
                const UnitSystem &units, GridSpec &g) {
  const json &o = as_object(v, path);
  check_keys(o, path,
             {"nodes_per_axis", "delta_excl", "monte_carlo", "mc_samples",
              "seed"});
  if (auto it = o.find("nodes_per_axis"); it != o.end()) {
    g.nodes_per_axis = static_cast<int>(as_integer(*it,
                                                   path + ".nodes_per_axis"));
    if (g.nodes_per_axis < 2 || g.nodes_per_axis > 64)
      fail(path + ".nodes_per_axis", "expected between 2 and 64");
  }
  if (auto it = o.find("delta_excl"); it != o.end()) {
    g.delta_excl = units.length_in(as_number(*it, path + ".delta_excl"));
    if (g.delta_excl < 0.0)
      fail(path + ".delta_excl", "expected a non-negative length");
  }
  if (auto it = o.find("monte_carlo"); it != o.end())
    g.monte_carlo = as_bool(*it, path + ".monte_carlo");
  if (auto it = o.find("mc_samples"); it != o.end()) {
    g.mc_samples = as_integer(*it, path + ".mc_samples");
    if (g.mc_samples < 64)
      fail(path + ".mc_samples", "expected at least 64");
  }
  if (auto it = o.find("seed"); it != o.end()) {
    long s = as_integer(*it, path + ".seed");
    if (s < 0)
      fail(path + ".seed", "expected a non-negative integer");
    g.seed = static_cast<std::uint64_t>(s);
  }
}

SweepSpec parse_sweep(const json &v, const std::string &path,
                      const UnitSystem &units) {
  const json &o = as_object(v, path);
  check_keys(o, path, {"variable", "min", "max", "points", "scale"});
  SweepSpec s;
  s.variable = as_string(member(o, path, "variable"), path + ".variable");
  static const std::set<std::string> known{"r_A", "r_AB", "scale",
                                           "density_scale"};
  if (!known.count(s.variable))
    fail(path + ".variable",
         "expected r_A, r_AB, scale or density_scale");
  bool is_length = s.variable == "r_A" || s.variable == "r_AB";
  double mn = as_number(member(o, path, "min"), path + ".min");
  double mx = as_number(member(o, path, "max"), path + ".max");
  s.min_value = is_length ? units.length_in(mn) : mn;
  s.max_value = is_length ? units.length_in(mx) : mx;
  s.points = static_cast<int>(as_integer(member(o, path, "points"),
                                         path + ".points"));
  if (s.points < 2 || s.points > 100000)
    fail(path + ".points", "expected between 2 and 100000");
  if (auto it = o.find("scale"); it != o.end()) {
    std::string sc = as_string(*it, path + ".scale");
    if (sc == "log")
      s.log_scale = true;
    else if (sc == "linear")
      s.log_scale = false;
    else
      fail(path + ".scale", "expected log or linear");
  }
  if (!(s.min_value < s.max_value))
    fail(path, "min must be less than max");
  if (s.log_scale && s.min_value <= 0.0)
    fail(path + ".min", "log scale requires a positive minimum");
  if (!is_length && s.min_value <= 0.0)
    fail(path + ".min", "scale factors must be positive");
  return s;
}

Composition parse_composition(const json &v, const std::string &path,
                              const RunConfig &cfg) {
  const json &a = as_array(v, path);
  if (a.empty())
    fail(path, "at least one component is required");
  Composition comp;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string cp = path + "[" + std::to_string(i) + "]";
    const json &co = as_object(a[i], cp);
    check_keys(co, cp, {"species", "density"});
    std::string name = as_string(member(co, cp, "species"), cp + ".species");
    auto it = cfg.species.find(name);
    if (it == cfg.species.end())
      fail(cp + ".species", "unknown species '" + name + "'");
    Component c;
    c.species = it->second;
    c.density = cfg.units.density_in(as_number(member(co, cp, "density"),
                                               cp + ".density"));
    if (c.density < 0.0)
      fail(cp + ".density", "expected a non-negative density");
    comp.push_back(c);
  }
  return comp;
}

} // namespace

RunConfig parse_config(const std::string &json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception &e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw ConfigError("config root must be an object");

  RunConfig cfg;
  cfg.echo = doc;
  const std::string root = "config";
  check_keys(doc, root,
             {"units", "reference_length_m", "species", "media", "bodies",
              "problem", "cp_sphere", "vdw_pair", "many_atom", "born",
              "micro", "verify", "check", "sweep", "quadrature", "grid",
              "output"});

  if (auto it = doc.find("units"); it != doc.end()) {
    std::string u = as_string(*it, root + ".units");
    if (u == "SI")
      cfg.units.si_input = true;
    else if (u == "natural")
      cfg.units.si_input = false;
    else
      fail(root + ".units", "expected natural or SI");
  }
  if (auto it = doc.find("reference_length_m"); it != doc.end())
    cfg.units.reference_length_m = as_number(*it,
                                             root + ".reference_length_m");
  try {
    cfg.units.validate();
  } catch (const Error &e) {
    fail(root + ".reference_length_m", e.what());
  }

  if (auto it = doc.find("species"); it != doc.end()) {
    const json &arr = as_array(*it, root + ".species");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string sp = root + ".species[" + std::to_string(i) + "]";
      AtomSpecies s = parse_species(arr[i], sp, cfg.units);
      if (cfg.species.count(s.name))
        fail(sp + ".name", "duplicate species '" + s.name + "'");
      cfg.species.emplace(s.name, std::move(s));
    }
  }
  if (auto it = doc.find("media"); it != doc.end()) {
    const json &arr = as_array(*it, root + ".media");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string mp = root + ".media[" + std::to_string(i) + "]";
      MediumModel m = parse_medium(arr[i], mp, cfg.units);
      if (cfg.media.count(m.name))
        fail(mp + ".name", "duplicate medium '" + m.name + "'");
      cfg.media.emplace(m.name, std::move(m));
    }
  }
  if (auto it = doc.find("bodies"); it != doc.end()) {
    const json &arr = as_array(*it, root + ".bodies");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string bp = root + ".bodies[" + std::to_string(i) + "]";
      const json &bo = as_object(arr[i], bp);
      check_keys(bo, bp, {"name", "geometry", "composition"});
      BodySpec b;
      b.name = as_string(member(bo, bp, "name"), bp + ".name");
      if (cfg.bodies.count(b.name))
        fail(bp + ".name", "duplicate body '" + b.name + "'");
      b.geometry = parse_geometry(member(bo, bp, "geometry"),
                                  bp + ".geometry", cfg.units);
      b.composition = parse_composition(member(bo, bp, "composition"),
                                        bp + ".composition", cfg);
      try {
        b.validate();
      } catch (const Error &e) {
        fail(bp, e.what());
      }
      cfg.bodies.emplace(b.name, std::move(b));
    }
  }

  if (auto it = doc.find("problem"); it != doc.end()) {
    cfg.problem = as_string(*it, root + ".problem");
    static const std::set<std::string> known{
        "cp-sphere", "vdw-pair", "many-atom", "born", "micro", "verify",
        "check"};
    if (!known.count(cfg.problem))
      fail(root + ".problem",
           "expected cp-sphere, vdw-pair, many-atom, born, micro, verify "
           "or check");
  }

  if (auto it = doc.find("cp_sphere"); it != doc.end()) {
    std::string p = root + ".cp_sphere";
    const json &o = as_object(*it, p);
    check_keys(o, p, {"atom", "sphere"});
    CpSphereProblem pr;
    pr.atom = parse_atom(member(o, p, "atom"), p + ".atom", cfg);
    std::string sp = p + ".sphere";
    const json &so = as_object(member(o, p, "sphere"), sp);
    check_keys(so, sp, {"radius", "medium", "center"});
    pr.sphere.radius = cfg.units.length_in(as_number(member(so, sp, "radius"),
                                                     sp + ".radius"));
    if (pr.sphere.radius <= 0.0)
      fail(sp + ".radius", "expected a positive length");
    std::string mname = as_string(member(so, sp, "medium"), sp + ".medium");
    auto mit = cfg.media.find(mname);
    if (mit == cfg.media.end())
      fail(sp + ".medium", "unknown medium '" + mname + "'");
    pr.sphere.medium = mit->second;
    if (auto cit = so.find("center"); cit != so.end())
      pr.sphere.center = parse_point(*cit, sp + ".center", cfg.units);
    cfg.cp_sphere = std::move(pr);
  }

  if (auto it = doc.find("vdw_pair"); it != doc.end()) {
    std::string p = root + ".vdw_pair";
    const json &o = as_object(*it, p);
    check_keys(o, p, {"atom_a", "atom_b", "background", "method"});
    VdwPairProblem pr;
    pr.a = parse_atom(member(o, p, "atom_a"), p + ".atom_a", cfg);
    pr.b = parse_atom(member(o, p, "atom_b"), p + ".atom_b", cfg);
    pr.bg = parse_background(o, p, cfg);
    if (auto mit = o.find("method"); mit != o.end()) {
      std::string m = as_string(*mit, p + ".method");
      if (m == "general")
        pr.use_bulk_form = false;
      else if (m == "bulk")
        pr.use_bulk_form = true;
      else
        fail(p + ".method", "expected general or bulk");
    }
    if (pr.use_bulk_form && pr.bg.kind != Background::Kind::bulk)
      fail(p + ".method", "bulk method requires a bulk background");
    cfg.vdw_pair = std::move(pr);
  }

  if (auto it = doc.find("many_atom"); it != doc.end()) {
    std::string p = root + ".many_atom";
    const json &o = as_object(*it, p);
    check_keys(o, p, {"atoms", "background"});
    ManyAtomProblem pr;
    const json &arr = as_array(member(o, p, "atoms"), p + ".atoms");
    if (arr.size() < 2 || arr.size() > 5)
      fail(p + ".atoms", "expected between 2 and 5 atoms");
    for (std::size_t i = 0; i < arr.size(); ++i)
      pr.atoms.push_back(parse_atom(arr[i],
                                    p + ".atoms[" + std::to_string(i) + "]",
                                    cfg));
    pr.bg = parse_background(o, p, cfg);
    cfg.many_atom = std::move(pr);
  }

  if (auto it = doc.find("born"); it != doc.end()) {
    std::string p = root + ".born";
    const json &o = as_object(*it, p);
    check_keys(o, p, {"atom", "body", "k", "background", "chi"});
    BornProblem pr;
    pr.atom = parse_atom(member(o, p, "atom"), p + ".atom", cfg);
    pr.body = parse_body_ref(o, p, cfg);
    pr.k = static_cast<int>(as_integer(member(o, p, "k"), p + ".k"));
    if (pr.k != 1 && pr.k != 2)
      fail(p + ".k", "expected 1 or 2");
    pr.bg = parse_background(o, p, cfg);
    if (auto cit = o.find("chi"); cit != o.end()) {
      std::string c = as_string(*cit, p + ".chi");
      if (c == "clausius_mosotti")
        pr.mode = ChiMode::clausius_mosotti;
      else if (c == "dilute")
        pr.mode = ChiMode::dilute;
      else
        fail(p + ".chi", "expected clausius_mosotti or dilute");
    }
    cfg.born = std::move(pr);
  }

  if (auto it = doc.find("micro"); it != doc.end()) {
    std::string p = root + ".micro";
    const json &o = as_object(*it, p);
    check_keys(o, p, {"atom", "body", "l", "background"});
    MicroProblem pr;
    pr.atom = parse_atom(member(o, p, "atom"), p + ".atom", cfg);
    pr.body = parse_body_ref(o, p, cfg);
    pr.l = static_cast<int>(as_integer(member(o, p, "l"), p + ".l"));
    if (pr.l != 1 && pr.l != 2)
      fail(p + ".l", "expected 1 or 2");
    pr.bg = parse_background(o, p, cfg);
    cfg.micro = std::move(pr);
  }

  if (auto it = doc.find("verify"); it != doc.end()) {
    std::string p = root + ".verify";
    const json &o = as_object(*it, p);
    check_keys(o, p, {"atom", "body", "orders", "refinements", "tolerance"});
    VerifyProblem pr;
    pr.atom = parse_atom(member(o, p, "atom"), p + ".atom", cfg);
    pr.body = parse_body_ref(o, p, cfg);
    if (auto oit = o.find("orders"); oit != o.end()) {
      std::string op = p + ".orders";
      const json &oo = as_object(*oit, op);
      check_keys(oo, op, {"K", "L"});
      if (auto kit = oo.find("K"); kit != oo.end())
        pr.orders.K = static_cast<int>(as_integer(*kit, op + ".K"));
      if (auto lit = oo.find("L"); lit != oo.end())
        pr.orders.L = static_cast<int>(as_integer(*lit, op + ".L"));
      if (pr.orders.K != 2)
        fail(op + ".K", "expected 2 (one- plus two-scattering terms)");
      if (pr.orders.L != 2)
        fail(op + ".L", "expected 2 (pair plus triplet clusters)");
    }
    if (auto rit = o.find("refinements"); rit != o.end()) {
      const json &ra = as_array(*rit, p + ".refinements");
      if (ra.empty() || ra.size() > 8)
        fail(p + ".refinements", "expected 1 to 8 entries");
      pr.refinements.clear();
      long prev = 0;
      for (std::size_t i = 0; i < ra.size(); ++i) {
        std::string rp = p + ".refinements[" + std::to_string(i) + "]";
        long n = as_integer(ra[i], rp);
        if (n < 2 || n > 64)
          fail(rp, "expected between 2 and 64");
        if (n <= prev)
          fail(rp, "refinements must be strictly increasing");
        prev = n;
        pr.refinements.push_back(static_cast<int>(n));
      }
    }
    pr.tolerance = number_or(o, p, "tolerance", pr.tolerance);
    if (pr.tolerance <= 0.0)
      fail(p + ".tolerance", "expected a positive relative tolerance");
    cfg.verify = std::move(pr);
  }

  if (auto it = doc.find("check"); it != doc.end()) {
    std::string p = root + ".check";
    const json &o = as_object(*it, p);
    check_keys(o, p, {"body", "packing_factor"});
    CheckProblem pr;
    if (o.find("body") != o.end())
      pr.body = parse_body_ref(o, p, cfg);
    pr.packing_factor = number_or(o, p, "packing_factor", pr.packing_factor);
    if (!(pr.packing_factor > 1.0))
      fail(p + ".packing_factor", "expected a factor greater than 1");
    cfg.check = std::move(pr);
  }

  if (auto it = doc.find("sweep"); it != doc.end())
    cfg.sweep = parse_sweep(*it, root + ".sweep", cfg.units);
  if (auto it = doc.find("quadrature"); it != doc.end())
    parse_quadrature(*it, root + ".quadrature", cfg.units, cfg.quadrature);
  if (auto it = doc.find("grid"); it != doc.end())
    parse_grid(*it, root + ".grid", cfg.units, cfg.grid);
  if (auto it = doc.find("output"); it != doc.end()) {
    std::string p = root + ".output";
    const json &o = as_object(*it, p);
    check_keys(o, p, {"path"});
    cfg.output_path = as_string(member(o, p, "path"), p + ".path");
    if (cfg.output_path.empty())
      fail(p + ".path", "expected a non-empty path");
  }

  return cfg;
}

} // namespace cpvdw
