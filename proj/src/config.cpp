#include "hycurv/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hycurv {

using nlohmann::json;

std::string suite_name(Suite s) {
    switch (s) {
        case Suite::identities: return "identities";
        case Suite::monotonicity: return "monotonicity";
        case Suite::cutoff_inequality: return "cutoff-inequality";
        case Suite::corollary: return "corollary";
        case Suite::divergence_criterion: return "divergence-criterion";
    }
    throw std::logic_error("suite_name: unreachable");
}

Suite suite_from_name(const std::string& name) {
    for (Suite s : {Suite::identities, Suite::monotonicity, Suite::cutoff_inequality,
                    Suite::corollary, Suite::divergence_criterion})
        if (suite_name(s) == name) return s;
    throw ConfigError("unknown suite: " + name);
}

AmbientPoint CenterSpec::resolve(const ImmersedHypersurface& surface) const {
    if (coords) {
        if (coords->size() != surface.space.coord_dim())
            throw ConfigError("center coords have wrong dimension");
        return make_point(surface.space, *coords);
    }
    return canonical_center(surface, offset.value_or(0.0));
}

Vec GridSpec::radii() const {
    Vec r(count);
    if (count == 1) {
        r[0] = min;
        return r;
    }
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        r[i] = log_spacing ? min * std::pow(max / min, t)
                           : min + t * (max - min);
    }
    return r;
}

namespace {

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

double require_number(const json& obj, const std::string& key,
                      const std::string& where) {
    if (!obj.contains(key))
        throw ConfigError(where + ": missing key '" + key + "'");
    if (!obj[key].is_number())
        throw ConfigError(where + ": '" + key + "' must be a number");
    return obj[key].get<double>();
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    require_keys(j, "config",
                 {"space", "surface", "centers", "gamma", "r_grid", "r0",
                  "cutoff_m", "tolerances", "budget", "seed", "suites", "sweep"});

    ExperimentConfig cfg;

    if (!j.contains("space")) throw ConfigError("config: missing 'space'");
    require_keys(j["space"], "space", {"kappa", "n"});
    cfg.kappa = require_number(j["space"], "kappa", "space");
    const double n_raw = require_number(j["space"], "n", "space");
    cfg.n = static_cast<int>(n_raw);
    if (cfg.n != n_raw) throw ConfigError("space: 'n' must be an integer");
    if (!(cfg.kappa < 0.0)) throw ConfigError("space: kappa must be < 0");
    if (cfg.n < 3) throw ConfigError("space: n must be >= 3");

    if (!j.contains("surface")) throw ConfigError("config: missing 'surface'");
    const json& surf = j["surface"];
    require_keys(surf, "surface",
                 {"family", "param", "chart", "derivatives", "fd_step",
                  "orientation"});
    if (!surf.contains("family") || !surf["family"].is_string())
        throw ConfigError("surface: missing string key 'family'");
    try {
        cfg.surface.family = family_from_name(surf["family"].get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    cfg.surface.param =
        surf.contains("param") ? require_number(surf, "param", "surface") : 0.0;
    if (surf.contains("chart")) {
        const std::string style = surf["chart"].get<std::string>();
        if (style == "polar")
            cfg.surface.chart_style = ChartStyle::polar;
        else if (style == "cartesian")
            cfg.surface.chart_style = ChartStyle::cartesian;
        else
            throw ConfigError("surface: chart must be 'polar' or 'cartesian'");
    }
    if (surf.contains("derivatives")) {
        const std::string mode = surf["derivatives"].get<std::string>();
        if (mode == "analytic")
            cfg.surface.mode = DerivativeMode::analytic;
        else if (mode == "finite_difference")
            cfg.surface.mode = DerivativeMode::finite_difference;
        else
            throw ConfigError(
                "surface: derivatives must be 'analytic' or 'finite_difference'");
    }
    if (surf.contains("fd_step"))
        cfg.surface.fd_step = require_number(surf, "fd_step", "surface");
    if (surf.contains("orientation")) {
        const double o = require_number(surf, "orientation", "surface");
        if (o != -1.0 && o != 0.0 && o != 1.0)
            throw ConfigError("surface: orientation must be -1, 0 or 1");
        cfg.surface.orientation = static_cast<int>(o);
    }

    if (j.contains("centers")) {
        if (!j["centers"].is_array() || j["centers"].empty())
            throw ConfigError("centers: expected a non-empty array");
        for (const json& c : j["centers"]) {
            require_keys(c, "centers[]", {"offset", "coords"});
            CenterSpec spec;
            if (c.contains("offset") == c.contains("coords"))
                throw ConfigError(
                    "centers[]: give exactly one of 'offset' or 'coords'");
            if (c.contains("offset"))
                spec.offset = require_number(c, "offset", "centers[]");
            else {
                const json& arr = c["coords"];
                if (!arr.is_array()) throw ConfigError("centers[]: coords must be an array");
                Vec v(arr.size());
                for (std::size_t i = 0; i < arr.size(); ++i)
                    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
                spec.coords = v;
            }
            cfg.centers.push_back(spec);
        }
    } else {
        cfg.centers.push_back(CenterSpec{0.0, std::nullopt});
    }

    if (j.contains("gamma")) {
        if (j["gamma"].is_string()) {
            if (j["gamma"].get<std::string>() != "auto")
                throw ConfigError("gamma: must be a number or \"auto\"");
            cfg.gamma_auto = true;
        } else if (j["gamma"].is_number()) {
            cfg.gamma_auto = false;
            cfg.gamma = j["gamma"].get<double>();
            if (cfg.gamma < 0.0) throw ConfigError("gamma: must be >= 0");
        } else {
            throw ConfigError("gamma: must be a number or \"auto\"");
        }
    }

    if (!j.contains("r_grid")) throw ConfigError("config: missing 'r_grid'");
    require_keys(j["r_grid"], "r_grid", {"min", "max", "count", "spacing"});
    cfg.r_grid.min = require_number(j["r_grid"], "min", "r_grid");
    cfg.r_grid.max = require_number(j["r_grid"], "max", "r_grid");
    const double count_raw = require_number(j["r_grid"], "count", "r_grid");
    cfg.r_grid.count = static_cast<int>(count_raw);
    if (cfg.r_grid.count != count_raw || cfg.r_grid.count < 1)
        throw ConfigError("r_grid: count must be a positive integer");
    if (!(cfg.r_grid.min > 0.0)) throw ConfigError("r_grid: min must be > 0");
    if (cfg.r_grid.count > 1 && !(cfg.r_grid.max > cfg.r_grid.min))
        throw ConfigError("r_grid: max must exceed min");
    if (j["r_grid"].contains("spacing")) {
        const std::string sp = j["r_grid"]["spacing"].get<std::string>();
        if (sp == "linear")
            cfg.r_grid.log_spacing = false;
        else if (sp == "log")
            cfg.r_grid.log_spacing = true;
        else
            throw ConfigError("r_grid: spacing must be 'linear' or 'log'");
    }

    cfg.r0 = j.contains("r0") ? require_number(j, "r0", "config")
                              : 0.5 * cfg.r_grid.min;
    if (!(cfg.r0 > 0.0) || !(cfg.r0 < cfg.r_grid.min))
        throw ConfigError("r0: must satisfy 0 < r0 < r_grid.min");

    if (j.contains("cutoff_m")) {
        const double m = require_number(j, "cutoff_m", "config");
        cfg.cutoff_m = static_cast<int>(m);
        if (cfg.cutoff_m != m || cfg.cutoff_m < 1)
            throw ConfigError("cutoff_m: must be a positive integer");
    }

    if (j.contains("tolerances")) {
        require_keys(j["tolerances"], "tolerances",
                     {"quad_rel_tol", "fd_step", "verdict_tol"});
        if (j["tolerances"].contains("quad_rel_tol"))
            cfg.quad_rel_tol =
                require_number(j["tolerances"], "quad_rel_tol", "tolerances");
        if (j["tolerances"].contains("fd_step"))
            cfg.fd_step = require_number(j["tolerances"], "fd_step", "tolerances");
        if (j["tolerances"].contains("verdict_tol"))
            cfg.verdict_tol =
                require_number(j["tolerances"], "verdict_tol", "tolerances");
        if (!(cfg.quad_rel_tol > 0.0) || !(cfg.fd_step > 0.0) ||
            cfg.verdict_tol < 0.0)
            throw ConfigError("tolerances: values out of range");
    }

    if (j.contains("budget")) {
        const double b = require_number(j, "budget", "config");
        cfg.budget = static_cast<std::int64_t>(b);
        if (cfg.budget < 1000) throw ConfigError("budget: must be >= 1000");
    }
    if (j.contains("seed")) {
        const double s = require_number(j, "seed", "config");
        if (s < 0) throw ConfigError("seed: must be >= 0");
        cfg.seed = static_cast<std::uint64_t>(s);
    }

    if (j.contains("suites")) {
        if (!j["suites"].is_array() || j["suites"].empty())
            throw ConfigError("suites: expected a non-empty array");
        for (const json& s : j["suites"])
            cfg.suites.push_back(suite_from_name(s.get<std::string>()));
    } else {
        cfg.suites = {Suite::identities, Suite::monotonicity,
                      Suite::cutoff_inequality, Suite::corollary,
                      Suite::divergence_criterion};
    }

    if (j.contains("sweep")) {
        require_keys(j["sweep"], "sweep", {"param"});
        if (!j["sweep"].contains("param") || !j["sweep"]["param"].is_array())
            throw ConfigError("sweep: expected array key 'param'");
        for (const json& v : j["sweep"]["param"])
            cfg.sweep_params.push_back(v.get<double>());
    }

    // family-specific sanity shared with catalog_build, surfaced early
    if (cfg.surface.family != Family::horosphere && !(cfg.surface.param > 0.0) &&
        cfg.sweep_params.empty())
        throw ConfigError("surface: param must be > 0 for this family");

    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_digest(const std::string& json_text) {
    // FNV-1a over the raw text.
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : json_text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace hycurv
