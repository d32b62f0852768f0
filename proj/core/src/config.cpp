#include "vdwmix/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace vdwmix {

namespace {

using nlohmann::json;

constexpr double kEtaSmall = 1e-3;
constexpr double kEtaLarge = 1.185186593672589;

MixtureParams two_species_params(double eta) {
    MixtureParams p;
    p.n = 2;
    p.a = {eta, eta, eta, 1.5 * eta};
    p.b = {1.0, 0.5};
    p.eps = 0.0;
    p.alpha = 1.0;
    p.beta = 0.0;
    return p;
}

}  // namespace

std::vector<std::string> validate(const RunConfig& config) {
    std::vector<std::string> bad = validate(config.params);

    if (config.grid.N < 2) bad.push_back("Grid: N must be >= 2");
    if (config.grid.boundary_data == BoundaryData::Equilibrium &&
        config.grid.kind != BoundaryKind::Dirichlet)
        bad.push_back("Grid: boundary_data \"equilibrium\" requires Dirichlet boundaries");

    const StepControl& c = config.control;
    if (!(c.tol_m > 0.0)) bad.push_back("StepControl: tol_m must be > 0");
    if (!(c.tol_m < c.tol_M)) bad.push_back("StepControl: tol_m must be < tol_M");
    if (!(c.grow > 1.0)) bad.push_back("StepControl: grow must be > 1");
    if (!(c.shrink > 0.0 && c.shrink < 1.0)) bad.push_back("StepControl: shrink must lie in (0,1)");
    if (!(c.tau_init > 0.0)) bad.push_back("StepControl: tau_init must be > 0");
    if (!(c.tau_min > 0.0)) bad.push_back("StepControl: tau_min must be > 0");

    const ProfileRecipe& r = config.recipe;
    const auto n = static_cast<std::size_t>(std::max(config.params.n, 0));
    if (r.z_A.size() != n || r.z_B.size() != n || r.exponents.size() != n) {
        bad.push_back("Recipe: z_A, z_B, exponents must have length n");
    } else {
        for (const auto* z : {&r.z_A, &r.z_B}) {
            double sum = 0.0;
            bool in_range = true;
            for (double v : *z) {
                if (!(v > 0.0 && v < 1.0)) in_range = false;
                sum += v;
            }
            if (!in_range) bad.push_back("Recipe: fractions must lie in (0,1)");
            if (std::abs(sum - 1.0) > 1e-12) bad.push_back("Recipe: fractions must sum to 1");
        }
        for (double e : r.exponents)
            if (!(e > 0.0)) bad.push_back("Recipe: exponents must be > 0");
    }
    if (!(r.p_target > 0.0)) bad.push_back("Recipe: p_target must be > 0");

    if (!(config.t_end >= 0.0)) bad.push_back("RunConfig: t_end must be >= 0");
    for (double t : config.output_times)
        if (t < 0.0 || t > config.t_end) {
            bad.push_back("RunConfig: output_times must lie in [0, t_end]");
            break;
        }
    return bad;
}

namespace {

RunConfig from_json(const json& j) {
    RunConfig cfg;
    const auto& jp = j.at("params");
    cfg.params.n = jp.at("n").get<int>();
    for (const auto& row : jp.at("a"))
        for (const auto& v : row) cfg.params.a.push_back(v.get<double>());
    cfg.params.b = jp.at("b").get<std::vector<double>>();
    cfg.params.eps = jp.value("eps", 0.0);
    cfg.params.alpha = jp.value("alpha", 1.0);
    cfg.params.beta = jp.value("beta", 0.0);

    if (j.contains("grid")) {
        const auto& jg = j.at("grid");
        cfg.grid.N = jg.value("N", 201);
        const std::string kind = jg.value("kind", "neumann");
        if (kind == "neumann")
            cfg.grid.kind = BoundaryKind::Neumann;
        else if (kind == "dirichlet")
            cfg.grid.kind = BoundaryKind::Dirichlet;
        else
            throw ConfigError("invalid configuration",
                              {"Grid: kind must be \"neumann\" or \"dirichlet\""});
        const std::string bd = jg.value("boundary_data", "recipe");
        if (bd == "recipe")
            cfg.grid.boundary_data = BoundaryData::Recipe;
        else if (bd == "equilibrium")
            cfg.grid.boundary_data = BoundaryData::Equilibrium;
        else
            throw ConfigError("invalid configuration",
                              {"Grid: boundary_data must be \"recipe\" or \"equilibrium\""});
    }

    if (j.contains("control")) {
        const auto& jc = j.at("control");
        cfg.control.tol_m = jc.value("tol_m", 4e-4);
        cfg.control.tol_M = jc.value("tol_M", 6e-4);
        cfg.control.grow = jc.value("grow", 1.25);
        cfg.control.shrink = jc.value("shrink", 0.5);
        cfg.control.tau_init = jc.value("tau_init", 1e-6);
        cfg.control.tau_min = jc.value("tau_min", 1e-12);
    }

    if (j.contains("recipe")) {
        const auto& jr = j.at("recipe");
        cfg.recipe.z_A = jr.at("z_A").get<std::vector<double>>();
        cfg.recipe.z_B = jr.at("z_B").get<std::vector<double>>();
        cfg.recipe.exponents = jr.at("exponents").get<std::vector<double>>();
        cfg.recipe.p_target = jr.value("p_target", 1.0);
    } else {
        cfg.recipe = default_recipe(cfg.params.n);
    }

    cfg.t_end = j.value("t_end", 1.0);
    cfg.output_times = j.value("output_times", std::vector<double>{});
    cfg.output_dir = j.value("output_dir", std::string("out"));
    cfg.seed = j.value("seed", std::uint64_t{0});
    return cfg;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what(), {});
    }
    RunConfig cfg;
    try {
        cfg = from_json(j);
    } catch (const ConfigError&) {
        throw;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config structure error: ") + e.what(), {});
    }
    auto bad = validate(cfg);
    if (!bad.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& b : bad) msg += "\n  " + b;
        throw ConfigError(msg, std::move(bad));
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string(), {});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string config_to_json(const RunConfig& config) {
    json j;
    json jp;
    jp["n"] = config.params.n;
    json rows = json::array();
    for (int i = 0; i < config.params.n; ++i) {
        json row = json::array();
        for (int k = 0; k < config.params.n; ++k) row.push_back(config.params.a_at(i, k));
        rows.push_back(row);
    }
    jp["a"] = rows;
    jp["b"] = config.params.b;
    jp["eps"] = config.params.eps;
    jp["alpha"] = config.params.alpha;
    jp["beta"] = config.params.beta;
    j["params"] = jp;

    j["grid"] = {{"N", config.grid.N},
                 {"kind", config.grid.kind == BoundaryKind::Neumann ? "neumann" : "dirichlet"},
                 {"boundary_data",
                  config.grid.boundary_data == BoundaryData::Recipe ? "recipe" : "equilibrium"}};
    j["control"] = {{"tol_m", config.control.tol_m},   {"tol_M", config.control.tol_M},
                    {"grow", config.control.grow},     {"shrink", config.control.shrink},
                    {"tau_init", config.control.tau_init}, {"tau_min", config.control.tau_min}};
    j["recipe"] = {{"z_A", config.recipe.z_A},
                   {"z_B", config.recipe.z_B},
                   {"exponents", config.recipe.exponents},
                   {"p_target", config.recipe.p_target}};
    j["t_end"] = config.t_end;
    j["output_times"] = config.output_times;
    j["output_dir"] = config.output_dir;
    j["seed"] = config.seed;
    return j.dump(2) + "\n";
}

RunConfig preset_config(CaseId id) {
    RunConfig cfg;
    const bool large_eta = (id == CaseId::II || id == CaseId::IV);
    cfg.params = two_species_params(large_eta ? kEtaLarge : kEtaSmall);
    cfg.grid.N = 201;
    cfg.grid.kind =
        (id == CaseId::I || id == CaseId::II) ? BoundaryKind::Neumann : BoundaryKind::Dirichlet;
    cfg.grid.boundary_data = BoundaryData::Recipe;
    cfg.control = StepControl{};
    cfg.recipe = default_recipe(2);
    cfg.t_end = 1.0;
    cfg.output_times = {0.0, 0.005, 0.05, 1.0};
    cfg.output_dir = "out";
    cfg.seed = 0;
    return cfg;
}

CaseId parse_case_id(const std::string& label) {
    if (label == "I" || label == "1") return CaseId::I;
    if (label == "II" || label == "2") return CaseId::II;
    if (label == "III" || label == "3") return CaseId::III;
    if (label == "IV" || label == "4") return CaseId::IV;
    throw ConfigError("unknown case label: " + label + " (expected I, II, III, or IV)", {});
}

std::string case_label(CaseId id) {
    switch (id) {
        case CaseId::I: return "I";
        case CaseId::II: return "II";
        case CaseId::III: return "III";
        case CaseId::IV: return "IV";
    }
    return "?";
}

}  // namespace vdwmix
