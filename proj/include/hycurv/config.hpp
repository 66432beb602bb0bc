#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hycurv/surface.hpp"

namespace hycurv {

// Invalid or unparseable configuration; mapped to exit code 2 by the
// command-line driver.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Suite {
    identities,
    monotonicity,
    cutoff_inequality,
    corollary,
    divergence_criterion,
};

std::string suite_name(Suite s);
Suite suite_from_name(const std::string& name);

// Experiment center: either an offset along the family's canonical
// transversal direction or explicit ambient coordinates.
struct CenterSpec {
    std::optional<double> offset;
    std::optional<Vec> coords;
    AmbientPoint resolve(const ImmersedHypersurface& surface) const;
};

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    bool log_spacing = false;
    Vec radii() const;
};

struct ExperimentConfig {
    double kappa = -1.0;
    int n = 3;
    CatalogSpec surface;
    std::vector<CenterSpec> centers;
    bool gamma_auto = true;
    double gamma = 0.0;
    GridSpec r_grid;
    double r0 = 0.0;
    int cutoff_m = 20;
    double quad_rel_tol = 1e-6;
    double fd_step = 1e-4;
    double verdict_tol = 0.0;
    std::int64_t budget = 10'000'000;
    std::uint64_t seed = 1;
    std::vector<Suite> suites;
    std::vector<double> sweep_params;  // family parameters for `sweep`

    SpaceForm space() const { return SpaceForm(kappa, n); }
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Stable digest of the configuration text, recorded for provenance.
std::string config_digest(const std::string& json_text);

}  // namespace hycurv
