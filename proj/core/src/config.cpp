#include "levrot/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "levrot/error.hpp"

namespace levrot::studio {
namespace {

using nlohmann::json;

// Reads the visited keys out of a JSON object and remembers them so the
// leftovers can be reported as unknown.
class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  template <class T>
  void operator()(const char* key, T& value) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!it->is_number()) throw ConfigError("expected a number");
        value = it->template get<double>();
      } else if constexpr (std::is_same_v<T, int>) {
        if (!it->is_number_integer()) throw ConfigError("expected an integer");
        value = it->template get<int>();
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!it->is_boolean()) throw ConfigError("expected a boolean");
        value = it->template get<bool>();
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!it->is_string()) throw ConfigError("expected a string");
        value = it->template get<std::string>();
      } else if constexpr (std::is_same_v<T, std::uint64_t>) {
        if (!it->is_number_unsigned()) throw ConfigError("expected a non-negative integer");
        value = it->template get<std::uint64_t>();
      } else {
        if (!it->is_array()) throw ConfigError("expected an array of numbers");
        value.clear();
        for (const auto& v : *it) {
          if (!v.is_number()) throw ConfigError("expected an array of numbers");
          value.push_back(v.template get<double>());
        }
      }
    } catch (const json::exception& e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (const auto& [key, _] : obj_.items())
      if (!seen_.contains(key)) throw ConfigError(path_ + ": unknown key '" + key + "'");
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

class Writer {
 public:
  template <class T>
  void operator()(const char* key, T& value) {
    obj[key] = value;
  }
  json obj = json::object();
};

template <class F>
void fields(F& f, PhysicalConstants& c) {
  f("hbar_Js", c.hbar_Js);
  f("k_B_JpK", c.k_B_JpK);
  f("elementary_charge_C", c.elementary_charge_C);
  f("gamma_nv_HzpT", c.gamma_nv_hz_per_t);
  f("zero_field_splitting_Hz", c.zero_field_splitting_hz);
  f("density_diamond_kgpm3", c.density_diamond_kgm3);
  f("density_silica_kgpm3", c.density_silica_kgm3);
}

// The drive is exposed in Hz; the struct keeps rad/s.
struct TrapView {
  double Vac_V, Vdc_V, drive_Hz, z0_m, efficiency;
};
template <class F>
void fields(F& f, TrapView& t) {
  f("Vac_V", t.Vac_V);
  f("Vdc_V", t.Vdc_V);
  f("drive_Hz", t.drive_Hz);
  f("z0_m", t.z0_m);
  f("efficiency", t.efficiency);
}

template <class F>
void fields(F& f, geometry::QuadratureSettings& q) {
  f("nodes", q.nodes);
  f("max_nodes", q.max_nodes);
  f("rel_tol", q.rel_tol);
}

template <class F>
void fields(F& f, Table1Config& c) {
  f("b_m", c.b_m);
  f("aspect_ratio", c.aspect_ratio);
  f("disk_ratios", c.disk_ratios);
}

template <class F>
void fields(F& f, ThermalCase& c) {
  f("particle", c.particle);
  f("omega_phi_Hz", c.omega_phi_hz);
}

template <class F>
void fields(F& f, ChargesConfig& c) {
  f("particle", c.particle);
  f("omega_phi_Hz", c.omega_phi_hz);
  f("ratio", c.ratio);
  f("reference_count", c.reference_count);
}

template <class F>
void fields(F& f, StabilityChartConfig& c) {
  f("a_min", c.a_min);
  f("a_max", c.a_max);
  f("a_points", c.a_points);
  f("q_min", c.q_min);
  f("q_max", c.q_max);
  f("q_points", c.q_points);
}

template <class F>
void fields(F& f, DynamicsConfig& c) {
  f("a", c.a);
  f("q", c.q);
  f("drive_Hz", c.drive_hz);
  f("phi1_rad", c.phi1_rad);
  f("phi2_rad", c.phi2_rad);
  f("duration_periods", c.duration_periods);
  f("nonlinear", c.nonlinear);
  f("damping_per_s", c.damping_per_s);
  f("samples_per_period", c.samples_per_period);
}

template <class F>
void fields(F& f, SpinRunConfig& c) {
  f("B_T", c.field_T);
  f("OmegaR_Hz", c.rabi_hz);
  f("detuning_Hz", c.detuning_hz);
}

template <class F>
void fields(F& f, ResonanceRunConfig& c) {
  f("OmegaR_Hz", c.rabi_hz);
  f("omega_phi_Hz", c.omega_phi_hz);
}

template <class F>
void fields(F& f, CouplingRunConfig& c) {
  f("particle", c.particle);
  f("omega_phi_Hz", c.omega_phi_hz);
  f("OmegaR_Hz", c.rabi_hz);
  f("T1_s", c.t1_s);
  f("T2_s", c.t2_s);
  f("mechanical_linewidth_Hz", c.mechanical_linewidth_hz);
}

template <class F>
void fields(F& f, Fig2Config& c) {
  f("particle", c.particle);
  f("omega_phi_Hz", c.omega_phi_hz);
  f("B_min_T", c.grid.field_min_T);
  f("B_max_T", c.grid.field_max_T);
  f("B_points", c.grid.field_points);
  f("psi_min_rad", c.grid.psi_min);
  f("psi_max_rad", c.grid.psi_max);
  f("psi_points", c.grid.psi_points);
  f("overlay_OmegaR_Hz", c.overlay_rabi_hz);
}

template <class F>
void fields(F& f, Fig4Config& c) {
  f("OmegaR_min_Hz", c.rabi_min_hz);
  f("OmegaR_max_Hz", c.rabi_max_hz);
  f("OmegaR_points", c.rabi_points);
}

template <class F>
void fields(F& f, JcConfig& c) {
  f("particle", c.particle);
  f("omega_phi_Hz", c.omega_phi_hz);
  f("OmegaR_Hz", c.rabi_hz);
  f("N_max", c.n_max);
  f("full_rabi", c.full_rabi);
  f("initial_phonons", c.initial_phonons);
  f("duration_periods", c.duration_periods);
  f("steps", c.steps);
  f("dissipative", c.dissipative);
  f("T1_s", c.t1_s);
  f("T2_star_s", c.t2_star_s);
  f("phonon_rate_per_s", c.phonon_rate_per_s);
}

template <class T>
void read_section(Reader& parent, const char* key, T& value, const std::string& path) {
  if (const json* j = parent.child(key)) {
    Reader r(*j, path + "." + key);
    fields(r, value);
    r.finish();
  }
}

template <class T>
json write_section(T& value) {
  Writer w;
  fields(w, value);
  return w.obj;
}

geometry::Material parse_material(const std::string& s, const std::string& path) {
  if (s == "diamond") return geometry::Material::Diamond;
  if (s == "silica") return geometry::Material::Silica;
  throw ConfigError(path + ": unknown material '" + s + "'");
}

std::string material_name(geometry::Material m) {
  return m == geometry::Material::Diamond ? "diamond" : "silica";
}

geometry::ParticleSpec parse_particle(const json& j, const std::string& path) {
  Reader r(j, path);
  std::string shape, material = "diamond", disk_material = "silica";
  double b = 0.0, a = 0.0, c = 0.0;
  bool zero_mass = false;
  r("shape", shape);
  r("material", material);
  r("b_m", b);
  r("a_m", a);
  r("c_m", c);
  r("disk_material", disk_material);
  r("zero_mass_disk", zero_mass);
  r.finish();
  geometry::ParticleSpec spec;
  spec.material = parse_material(material, path);
  if (shape == "sphere") {
    spec.shape = geometry::Sphere{b};
  } else if (shape == "prolate") {
    spec.shape = geometry::ProlateEllipsoid{a, b};
  } else if (shape == "oblate") {
    spec.shape = geometry::OblateEllipsoid{a, b};
  } else if (shape == "composite") {
    spec.shape = geometry::Composite{b, a, c, parse_material(disk_material, path), zero_mass};
  } else {
    throw ConfigError(path + ": unknown shape '" + shape + "'");
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return spec;
}

json write_particle(const geometry::ParticleSpec& spec) {
  json j;
  j["material"] = material_name(spec.material);
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        j["b_m"] = s.b_m;
        if constexpr (std::is_same_v<S, geometry::Sphere>) {
          j["shape"] = "sphere";
        } else if constexpr (std::is_same_v<S, geometry::ProlateEllipsoid>) {
          j["shape"] = "prolate";
          j["a_m"] = s.a_m;
        } else if constexpr (std::is_same_v<S, geometry::OblateEllipsoid>) {
          j["shape"] = "oblate";
          j["a_m"] = s.a_m;
        } else {
          j["shape"] = "composite";
          j["a_m"] = s.a_m;
          j["c_m"] = s.c_m;
          j["disk_material"] = material_name(s.disk_material);
          j["zero_mass_disk"] = s.zero_mass_disk;
        }
      },
      spec.shape);
  return j;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

std::map<std::string, geometry::ParticleSpec> RunConfig::default_particles() {
  using namespace geometry;
  std::map<std::string, ParticleSpec> p;
  for (double b : {20e-9, 80e-9}) {
    const std::string tag = b < 50e-9 ? "b20" : "b80";
    p["sphere_" + tag] = {Sphere{b}};
    p["prolate_" + tag] = {ProlateEllipsoid{2.5 * b, b}};
    p["oblate_" + tag] = {OblateEllipsoid{2.5 * b, b}};
    p["composite_" + tag + "_c8"] = {Composite{b, 2.5 * b, b / 8.0}};
    p["composite_" + tag + "_c16"] = {Composite{b, 2.5 * b, b / 16.0}};
    p["composite_" + tag + "_massless"] = {Composite{b, 2.5 * b, b / 8.0, Material::Silica, true}};
  }
  return p;
}

const geometry::ParticleSpec& RunConfig::particle(const std::string& name) const {
  const auto it = particles.find(name);
  if (it == particles.end()) throw ConfigError("unknown particle '" + name + "'");
  return it->second;
}

geometry::BodyProperties RunConfig::body(const std::string& name) const {
  return geometry::build_body(particle(name), geometry::ChargeModel::surface_density(surface_charge_Cm2),
                              quadrature, constants);
}

void RunConfig::validate() const {
  try {
    constants.validate();
    trap.validate();
    quadrature.validate();
    for (const auto& [name, spec] : particles) spec.validate();
    fig2_map.grid.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  require(surface_charge_Cm2 > 0.0, "surface_charge_Cpm2 must be > 0");
  require(table1.b_m > 0.0 && table1.aspect_ratio > 1.0, "table1: need b_m > 0 and aspect_ratio > 1");
  for (double r : table1.disk_ratios) require(r > 0.0 && r < 1.0, "table1: disk ratios in (0, 1)");
  require(thermal.temperature_K >= 0.0, "thermal: temperature must be >= 0");
  for (const auto& c : thermal.cases) {
    (void)particle(c.particle);
    require(c.omega_phi_hz > 0.0, "thermal: omega_phi_Hz must be > 0");
  }
  (void)particle(charges.particle);
  require(charges.omega_phi_hz > 0.0 && charges.ratio > 0.0, "charges: need positive target and ratio");
  require(stability_chart.a_points >= 1 && stability_chart.q_points >= 1,
          "stability_chart: need at least one point per axis");
  require(dynamics.drive_hz > 0.0 && dynamics.duration_periods > 0.0 && dynamics.samples_per_period >= 4,
          "dynamics: need positive drive, duration and >= 4 samples per period");
  require(spin.field_T >= 0.0 && spin.rabi_hz > 0.0, "spin: need B_T >= 0 and OmegaR_Hz > 0");
  require(resonance.rabi_hz > 0.0 && resonance.omega_phi_hz > 0.0, "resonance: need positive inputs");
  (void)particle(coupling.particle);
  require(coupling.omega_phi_hz > 0.0 && coupling.rabi_hz > 0.0, "coupling: need positive inputs");
  (void)particle(fig2_map.particle);
  require(fig2_map.omega_phi_hz > 0.0, "fig2_map: omega_phi_Hz must be > 0");
  require(fig4_curves.rabi_points >= 1 && fig4_curves.rabi_min_hz > 0.0 &&
              fig4_curves.rabi_max_hz >= fig4_curves.rabi_min_hz,
          "fig4_curves: bad Rabi range");
  for (const auto& cls : fig4_curves.classes) {
    require(cls.omega_phi_hz > 0.0, "fig4_curves: omega_phi_Hz must be > 0");
    for (const auto& p : cls.particles) (void)particle(p);
  }
  (void)particle(jc_sim.particle);
  require(jc_sim.n_max >= 1 && jc_sim.steps >= 8 && jc_sim.duration_periods > 0.0,
          "jc_sim: need N_max >= 1, steps >= 8, positive duration");
  require(jc_sim.initial_phonons >= 0 && jc_sim.initial_phonons <= jc_sim.n_max,
          "jc_sim: initial_phonons out of range");
}

std::string RunConfig::to_json() const {
  RunConfig c = *this;
  json j;
  j["constants"] = write_section(c.constants);
  TrapView tv{c.trap.v_ac_V, c.trap.v_dc_V, c.trap.drive_rad_s / kTwoPi, c.trap.gap_m,
              c.trap.efficiency};
  j["trap"] = write_section(tv);
  j["surface_charge_Cpm2"] = c.surface_charge_Cm2;
  j["quadrature"] = write_section(c.quadrature);
  json parts = json::object();
  for (const auto& [name, spec] : c.particles) parts[name] = write_particle(spec);
  j["particles"] = parts;
  j["table1"] = write_section(c.table1);
  json thermal;
  thermal["temperature_K"] = c.thermal.temperature_K;
  thermal["cases"] = json::array();
  for (auto& tc : c.thermal.cases) thermal["cases"].push_back(write_section(tc));
  j["thermal"] = thermal;
  j["charges"] = write_section(c.charges);
  j["stability_chart"] = write_section(c.stability_chart);
  j["dynamics"] = write_section(c.dynamics);
  j["spin"] = write_section(c.spin);
  j["resonance"] = write_section(c.resonance);
  j["coupling"] = write_section(c.coupling);
  j["fig2_map"] = write_section(c.fig2_map);
  json fig4 = write_section(c.fig4_curves);
  fig4["classes"] = json::array();
  for (const auto& cls : c.fig4_curves.classes)
    fig4["classes"].push_back(
        {{"id", cls.id}, {"omega_phi_Hz", cls.omega_phi_hz}, {"particles", cls.particles}});
  j["fig4_curves"] = fig4;
  j["jc_sim"] = write_section(c.jc_sim);
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  return j.dump(2);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t RunConfig::hash() const {
  RunConfig c = *this;
  c.output_dir.clear();
  return fnv1a64(c.to_json());
}

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  Reader r(root, "config");

  if (const json* j = r.child("constants")) {
    Reader s(*j, "config.constants");
    fields(s, cfg.constants);
    s.finish();
  }
  if (const json* j = r.child("trap")) {
    TrapView tv{cfg.trap.v_ac_V, cfg.trap.v_dc_V, cfg.trap.drive_rad_s / kTwoPi, cfg.trap.gap_m,
                cfg.trap.efficiency};
    Reader s(*j, "config.trap");
    fields(s, tv);
    s.finish();
    cfg.trap = {tv.Vac_V, tv.Vdc_V, kTwoPi * tv.drive_Hz, tv.z0_m, tv.efficiency};
  }
  r("surface_charge_Cpm2", cfg.surface_charge_Cm2);
  read_section(r, "quadrature", cfg.quadrature, "config");
  if (const json* j = r.child("particles")) {
    if (!j->is_object()) throw ConfigError("config.particles: expected an object");
    for (const auto& [name, pj] : j->items())
      cfg.particles[name] = parse_particle(pj, "config.particles." + name);
  }
  read_section(r, "table1", cfg.table1, "config");
  if (const json* j = r.child("thermal")) {
    Reader s(*j, "config.thermal");
    s("temperature_K", cfg.thermal.temperature_K);
    if (const json* cases = s.child("cases")) {
      if (!cases->is_array()) throw ConfigError("config.thermal.cases: expected an array");
      cfg.thermal.cases.clear();
      for (std::size_t i = 0; i < cases->size(); ++i) {
        ThermalCase tc;
        Reader cr((*cases)[i], "config.thermal.cases[" + std::to_string(i) + "]");
        fields(cr, tc);
        cr.finish();
        cfg.thermal.cases.push_back(tc);
      }
    }
    s.finish();
  }
  read_section(r, "charges", cfg.charges, "config");
  read_section(r, "stability_chart", cfg.stability_chart, "config");
  read_section(r, "dynamics", cfg.dynamics, "config");
  read_section(r, "spin", cfg.spin, "config");
  read_section(r, "resonance", cfg.resonance, "config");
  read_section(r, "coupling", cfg.coupling, "config");
  read_section(r, "fig2_map", cfg.fig2_map, "config");
  if (const json* j = r.child("fig4_curves")) {
    Reader s(*j, "config.fig4_curves");
    fields(s, cfg.fig4_curves);
    if (const json* classes = s.child("classes")) {
      if (!classes->is_array()) throw ConfigError("config.fig4_curves.classes: expected an array");
      cfg.fig4_curves.classes.clear();
      for (std::size_t i = 0; i < classes->size(); ++i) {
        const std::string path = "config.fig4_curves.classes[" + std::to_string(i) + "]";
        Reader cr((*classes)[i], path);
        Fig4Class cls;
        cr("id", cls.id);
        cr("omega_phi_Hz", cls.omega_phi_hz);
        if (const json* ps = cr.child("particles")) {
          if (!ps->is_array()) throw ConfigError(path + ".particles: expected an array");
          for (const auto& p : *ps) {
            if (!p.is_string()) throw ConfigError(path + ".particles: expected strings");
            cls.particles.push_back(p.get<std::string>());
          }
        }
        cr.finish();
        cfg.fig4_curves.classes.push_back(cls);
      }
    }
    s.finish();
  }
  read_section(r, "jc_sim", cfg.jc_sim, "config");
  r("output_dir", cfg.output_dir);
  r("seed", cfg.seed);
  r.finish();

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace levrot::studio
