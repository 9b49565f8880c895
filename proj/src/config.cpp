// SPDX-License-Identifier: Apache-2.0
//
// INI-style config loader.  Files carry plant-scale (volt/watt) quantities;
// this translates them onto the per-unit bases before validation:
//   S_base = s_base (default: p_ref), V_base = v_base (default: e_ref),
//   p_m = p_ref/S_base, damping d_damping = d / (2 S_base).

#include "vsgcl/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vsgcl/errors.hpp"
#include "vsgcl/log.hpp"

namespace vsgcl {

namespace {

struct Slot {
  const char* section;
  const char* key;
  double value;
  bool set = false;
};

// Raw key table with file-scale defaults.  Order here fixes the canonical
// dump order.
struct Draft {
  std::vector<Slot> slots = {
      {"system", "p_ref", 1000.0},   // W
      {"system", "e_ref", 380.0},    // V
      {"system", "v_grid", 380.0},   // V
      {"system", "omega0", 314.0},   // rad/s
      {"system", "j", 3.0},          // per-unit inertia constant (2H), s
      {"system", "d", 100.0},        // damping input, VA per rad/s (see below)
      {"system", "k", 0.05},         // droop gain, pu/pu
      {"system", "q_ref", 0.0},      // VAr
      {"system", "r_v", 0.0},        // pu
      {"system", "x_v", 0.3},        // pu
      {"system", "i_max", 2.4},      // pu
      {"system", "s_base", 0.0},     // VA; defaults to p_ref when unset
      {"system", "v_base", 0.0},     // V; defaults to e_ref when unset
      {"system", "l_f", 0.0},
      {"system", "c_f", 0.0},
      {"system", "l_g", 0.0},
      {"system", "u_dc", 0.0},
      {"fault", "t_fault", 0.5},
      {"fault", "t_clear", 0.8},
      {"fault", "v_retained", 0.2},  // pu
      {"fault", "t_end", 3.0},
      {"run", "dt", 2e-4},
      {"run", "stride", 5.0},
  };

  Slot* find(std::string_view section, std::string_view key) {
    for (auto& s : slots) {
      if (section == s.section && key == s.key) return &s;
    }
    return nullptr;
  }

  const Slot& at(std::string_view section, std::string_view key) const {
    for (const auto& s : slots) {
      if (section == s.section && key == s.key) return s;
    }
    throw Error("config draft: missing slot");  // programming error
  }

  double get(std::string_view section, std::string_view key) const {
    return at(section, key).value;
  }
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view text, const std::string& where) {
  std::string buf(trim(text));
  if (buf.empty()) {
    throw ConfigError("config: empty value for " + where);
  }
  char* end = nullptr;
  double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size()) {
    throw ConfigError("config: value for " + where + " is not a number: '" +
                      buf + "'");
  }
  return v;
}

void assign(Draft& draft, std::string_view section, std::string_view key,
            std::string_view value, const std::string& origin) {
  std::string where =
      std::string(section) + "." + std::string(key) + " (" + origin + ")";
  Slot* slot = draft.find(section, key);
  if (slot == nullptr) {
    throw ConfigError("config: unknown key " + std::string(section) + "." +
                      std::string(key) + " (" + origin + ")");
  }
  slot->value = parse_number(value, where);
  slot->set = true;
}

void parse_file(Draft& draft, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open file '" + path + "'");
  }
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s{line};
    if (auto hash = s.find('#'); hash != std::string_view::npos) {
      s = s.substr(0, hash);
    }
    s = trim(s);
    if (s.empty()) continue;
    std::string origin = path + ":" + std::to_string(lineno);
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3) {
        throw ConfigError("config: malformed section header (" + origin + ")");
      }
      section = std::string(trim(s.substr(1, s.size() - 2)));
      if (section != "system" && section != "fault" && section != "run") {
        throw ConfigError("config: unknown section [" + section + "] (" +
                          origin + ")");
      }
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config: expected 'key = value' (" + origin + ")");
    }
    if (section.empty()) {
      throw ConfigError("config: key before any [section] (" + origin + ")");
    }
    assign(draft, section, trim(s.substr(0, eq)), s.substr(eq + 1), origin);
  }
}

void parse_override(Draft& draft, const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("config: override must be section.key=value, got '" +
                      text + "'");
  }
  std::string_view lhs = trim(std::string_view(text).substr(0, eq));
  auto dot = lhs.find('.');
  if (dot == std::string_view::npos) {
    throw ConfigError("config: override key must be section.key, got '" +
                      std::string(lhs) + "'");
  }
  assign(draft, lhs.substr(0, dot), trim(lhs.substr(dot + 1)),
         std::string_view(text).substr(eq + 1), "--set");
}

LoadedConfig build(const Draft& draft) {
  LoadedConfig cfg;

  double p_ref = draft.get("system", "p_ref");
  double e_ref_v = draft.get("system", "e_ref");
  // Unless overridden, the bases follow the power and voltage references.
  const Slot& sb = draft.at("system", "s_base");
  const Slot& vb = draft.at("system", "v_base");
  double s_base = sb.set ? sb.value : p_ref;
  double v_base = vb.set ? vb.value : e_ref_v;

  SystemParams& p = cfg.system;
  p.base.s_base = s_base;
  p.base.v_base = v_base;
  p.base.omega_base = draft.get("system", "omega0");
  p.p_m = p_ref / s_base;
  p.e_ref = e_ref_v / v_base;
  p.v_grid = draft.get("system", "v_grid") / v_base;
  p.q_ref = draft.get("system", "q_ref") / s_base;
  p.k_avr = draft.get("system", "k");
  p.j_inertia = draft.get("system", "j");
  // The damping input is specified on the volt-ampere scale; the rotor model
  // wants pu power per rad/s.  The effective per-unit gain is d / (2 S_base)
  // (the factor 2 mirrors the inertia constant convention j = 2H).
  p.d_damping = draft.get("system", "d") / (2.0 * s_base);
  p.r_v = draft.get("system", "r_v");
  p.x_v = draft.get("system", "x_v");
  p.i_max = draft.get("system", "i_max");
  p.l_f = draft.get("system", "l_f");
  p.c_f = draft.get("system", "c_f");
  p.l_g = draft.get("system", "l_g");
  p.u_dc = draft.get("system", "u_dc");

  cfg.fault.t_fault = draft.get("fault", "t_fault");
  cfg.fault.t_clear = draft.get("fault", "t_clear");
  cfg.fault.v_retained = draft.get("fault", "v_retained");
  cfg.fault.t_end = draft.get("fault", "t_end");

  cfg.run.dt = draft.get("run", "dt");
  double stride = draft.get("run", "stride");
  if (!(stride >= 1.0 && stride <= 1e9) ||
      stride != static_cast<double>(static_cast<int>(stride))) {
    throw ConfigError(
        "config invariant violated: stride must be an integer >= 1");
  }
  cfg.run.stride = static_cast<int>(stride);

  validate(p);
  validate(cfg.fault);
  validate(cfg.run);

  // Canonical dump of the effective per-unit parameters.
  char buf[64];
  std::ostringstream os;
  auto put = [&](const char* name, double v) {
    std::snprintf(buf, sizeof buf, "%s=%.17g;", name, v);
    os << buf;
  };
  put("s_base", p.base.s_base);
  put("v_base", p.base.v_base);
  put("omega0", p.base.omega_base);
  put("p_m", p.p_m);
  put("q_ref", p.q_ref);
  put("e_ref", p.e_ref);
  put("k_avr", p.k_avr);
  put("j", p.j_inertia);
  put("d", p.d_damping);
  put("r_v", p.r_v);
  put("x_v", p.x_v);
  put("i_max", p.i_max);
  put("v_grid", p.v_grid);
  put("t_fault", cfg.fault.t_fault);
  put("t_clear", cfg.fault.t_clear);
  put("v_retained", cfg.fault.v_retained);
  put("t_end", cfg.fault.t_end);
  put("dt", cfg.run.dt);
  put("stride", cfg.run.stride);
  cfg.canonical = os.str();
  return cfg;
}

}  // namespace

LoadedConfig load_config(const std::optional<std::string>& path,
                         const std::vector<std::string>& overrides) {
  Draft draft;
  if (path.has_value()) {
    parse_file(draft, *path);
    log_info("loaded config file " + *path);
  }
  for (const auto& o : overrides) parse_override(draft, o);
  return build(draft);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64 offset basis
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string params_digest(const LoadedConfig& cfg, std::string_view strategy,
                          InertiaMode mode) {
  std::string all = cfg.canonical + "strategy=" + std::string(strategy) +
                    ";mode=" + mode_name(mode) + ";";
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(all)));
  return std::string(buf);
}

}  // namespace vsgcl
