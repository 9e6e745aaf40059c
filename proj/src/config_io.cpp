#include "tau2/config_io.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tau2 {

using json = nlohmann::ordered_json;

namespace {

json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::runtime_error("complex values must be [re, im] arrays");
  return {j[0].get<double>(), j[1].get<double>()};
}

json config_json(const ModelConfig& cfg) {
  json j;
  j["p"] = cfg.p;
  j["N"] = cfg.N;
  j["seed"] = cfg.seed;
  j["sites"] = json::array();
  for (const auto& s : cfg.sites) {
    json js;
    js["d_plus"] = cplx_to_json(s.dp);
    js["d_minus"] = cplx_to_json(s.dm);
    js["f_plus"] = cplx_to_json(s.fp);
    js["f_minus"] = cplx_to_json(s.fm);
    js["g_plus"] = cplx_to_json(s.gp);
    js["g_minus"] = cplx_to_json(s.gm);
    js["h_plus"] = cplx_to_json(s.hp);
    js["h_minus"] = cplx_to_json(s.hm);
    j["sites"].push_back(js);
  }
  json jb;
  jb["alpha_minus"] = cplx_to_json(cfg.boundary.am);
  jb["beta_minus"] = cplx_to_json(cfg.boundary.bm);
  jb["theta_minus"] = cplx_to_json(cfg.boundary.tm);
  jb["alpha_plus"] = cplx_to_json(cfg.boundary.ap);
  jb["beta_plus"] = cplx_to_json(cfg.boundary.bp);
  jb["theta_plus"] = cplx_to_json(cfg.boundary.tp);
  j["boundary"] = jb;
  return j;
}

}  // namespace

std::string config_to_json(const ModelConfig& cfg) {
  return config_json(cfg).dump(2) + "\n";
}

ModelConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw std::runtime_error(std::string("config parse error: ") + ex.what());
  }
  try {
    ModelConfig cfg;
    cfg.p = j.at("p").get<int>();
    cfg.N = j.at("N").get<int>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (cfg.p < 3 || cfg.p % 2 == 0)
      throw std::runtime_error("p must be odd >= 3");
    for (const auto& js : j.at("sites")) {
      SiteParams s;
      s.dp = cplx_from_json(js.at("d_plus"));
      s.dm = cplx_from_json(js.at("d_minus"));
      s.fp = cplx_from_json(js.at("f_plus"));
      s.fm = cplx_from_json(js.at("f_minus"));
      s.gp = cplx_from_json(js.at("g_plus"));
      s.gm = cplx_from_json(js.at("g_minus"));
      s.hp = cplx_from_json(js.at("h_plus"));
      s.hm = cplx_from_json(js.at("h_minus"));
      cfg.sites.push_back(s);
    }
    if (cfg.N != static_cast<int>(cfg.sites.size()))
      throw std::runtime_error("N does not match the number of sites");
    const auto& jb = j.at("boundary");
    cfg.boundary.am = cplx_from_json(jb.at("alpha_minus"));
    cfg.boundary.bm = cplx_from_json(jb.at("beta_minus"));
    cfg.boundary.tm = cplx_from_json(jb.at("theta_minus"));
    cfg.boundary.ap = cplx_from_json(jb.at("alpha_plus"));
    cfg.boundary.bp = cplx_from_json(jb.at("beta_plus"));
    cfg.boundary.tp = cplx_from_json(jb.at("theta_plus"));
    return cfg;
  } catch (const json::exception& ex) {
    throw std::runtime_error(std::string("config parse error: ") + ex.what());
  }
}

std::string config_digest(const ModelConfig& cfg) {
  std::uint64_t h = fnv1a(config_json(cfg).dump());
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

bool RunReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

std::string RunReport::to_json(bool include_timing) const {
  json j;
  j["config_digest"] = config_digest;
  j["version"] = version;
  j["checks"] = json::array();
  for (const auto& c : checks) {
    json jc;
    jc["name"] = c.name;
    jc["anchor"] = c.anchor;
    jc["residual"] = c.residual;
    jc["tolerance"] = c.tolerance;
    jc["pass"] = c.pass;
    if (!c.note.empty()) jc["note"] = c.note;
    j["checks"].push_back(jc);
  }
  j["all_pass"] = all_pass();
  if (include_timing) {
    json jt;
    for (const auto& [phase, secs] : timing_s) jt[phase] = secs;
    j["timing_s"] = jt;
  }
  return j.dump(2) + "\n";
}

}  // namespace tau2
