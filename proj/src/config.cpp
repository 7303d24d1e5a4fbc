#include "mcflow/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "mcflow/eos.hpp"
#include "mcflow/errors.hpp"

namespace mcf {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

struct KeyValue {
    std::string value;
    int line = 0;
    bool used = false;
};

using Section = std::map<std::string, KeyValue>;

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double to_double(const KeyValue& kv, const std::string& key) {
    try {
        std::size_t pos;
        const double v = std::stod(kv.value, &pos);
        if (pos != kv.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        fail(kv.line, "key '" + key + "': expected a number, got '" + kv.value + "'");
    }
}

int to_int(const KeyValue& kv, const std::string& key) {
    try {
        std::size_t pos;
        const int v = std::stoi(kv.value, &pos);
        if (pos != kv.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        fail(kv.line, "key '" + key + "': expected an integer, got '" + kv.value + "'");
    }
}

bool to_bool(const KeyValue& kv, const std::string& key) {
    if (kv.value == "on" || kv.value == "true" || kv.value == "1") return true;
    if (kv.value == "off" || kv.value == "false" || kv.value == "0") return false;
    fail(kv.line, "key '" + key + "': expected on/off, got '" + kv.value + "'");
}

BcType to_bc(const KeyValue& kv, const std::string& key) {
    if (kv.value == "periodic") return BcType::Periodic;
    if (kv.value == "zero_gradient") return BcType::ZeroGradient;
    if (kv.value == "reflective") return BcType::Reflective;
    fail(kv.line, "key '" + key + "': unknown boundary condition '" + kv.value + "'");
}

struct Parsed {
    std::map<std::string, Section> sections;

    KeyValue* find(const std::string& sec, const std::string& key) {
        auto s = sections.find(sec);
        if (s == sections.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        k->second.used = true;
        return &k->second;
    }
};

Parsed parse_raw(const std::string& text) {
    Parsed out;
    std::istringstream in(text);
    std::string line, section = "run";
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail(lineno, "empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (out.sections[section].count(key))
            fail(lineno, "duplicate key '" + key + "' in section [" + section + "]");
        out.sections[section][key] = {val, lineno, false};
    }
    return out;
}

// Inline case assembled from the [case], [materials] and [transport] sections.
CaseSpec build_inline_case(Parsed& p) {
    CaseSpec c;
    c.name = "inline";
    if (auto* kv = p.find("case", "ndim")) c.ndim = to_int(*kv, "ndim");
    if (auto* kv = p.find("case", "x0")) c.x0 = to_double(*kv, "x0");
    if (auto* kv = p.find("case", "x1")) c.x1 = to_double(*kv, "x1");
    if (auto* kv = p.find("case", "y0")) c.y0 = to_double(*kv, "y0");
    if (auto* kv = p.find("case", "y1")) c.y1 = to_double(*kv, "y1");
    auto bc_of = [&](const char* key, BcType dflt) {
        if (auto* kv = p.find("case", key)) return to_bc(*kv, key);
        return dflt;
    };
    c.bc[XLo] = bc_of("bc_xlo", BcType::Periodic);
    c.bc[XHi] = bc_of("bc_xhi", BcType::Periodic);
    c.bc[YLo] = bc_of("bc_ylo", BcType::Periodic);
    c.bc[YHi] = bc_of("bc_yhi", BcType::Periodic);

    for (int k = 0; k < 2; ++k) {
        const std::string idx = std::to_string(k + 1);
        Material& m = c.mats[k];
        m.name = "material" + idx;
        if (auto* kv = p.find("materials", "gamma" + idx)) m.gamma = to_double(*kv, "gamma" + idx);
        if (auto* kv = p.find("materials", "cv" + idx)) m.cv = to_double(*kv, "cv" + idx);
        if (auto* kv = p.find("materials", "mu" + idx)) m.mu = to_double(*kv, "mu" + idx);
        if (auto* kv = p.find("materials", "mub" + idx)) m.mu_b = to_double(*kv, "mub" + idx);
        if (auto* kv = p.find("materials", "lambda" + idx))
            m.lambda = to_double(*kv, "lambda" + idx);
        m.validate();
    }

    if (auto* kv = p.find("transport", "viscosity_law")) {
        if (kv->value == "constant") c.transport.viscosity.kind = ViscosityModel::Kind::Constant;
        else if (kv->value == "sutherland")
            c.transport.viscosity.kind = ViscosityModel::Kind::Sutherland;
        else fail(kv->line, "viscosity_law: expected constant or sutherland");
    }
    if (auto* kv = p.find("transport", "sutherland_mu_ref"))
        c.transport.viscosity.mu_ref = to_double(*kv, "sutherland_mu_ref");
    if (auto* kv = p.find("transport", "sutherland_t_ref"))
        c.transport.viscosity.T_ref = to_double(*kv, "sutherland_t_ref");
    if (auto* kv = p.find("transport", "sutherland_s"))
        c.transport.viscosity.S = to_double(*kv, "sutherland_s");
    if (auto* kv = p.find("transport", "diffusivity_law")) {
        if (kv->value == "constant") c.transport.diffusivity.kind = DiffusivityModel::Kind::Constant;
        else if (kv->value == "scaled") c.transport.diffusivity.kind = DiffusivityModel::Kind::Scaled;
        else fail(kv->line, "diffusivity_law: expected constant or scaled");
    }
    if (auto* kv = p.find("transport", "d0")) c.transport.diffusivity.D0 = to_double(*kv, "d0");
    if (auto* kv = p.find("transport", "t0")) c.transport.diffusivity.T0 = to_double(*kv, "t0");
    if (auto* kv = p.find("transport", "p0")) c.transport.diffusivity.p0 = to_double(*kv, "p0");

    // initial condition
    std::string init = "uniform";
    if (auto* kv = p.find("case", "init")) init = kv->value;
    auto num = [&](const std::string& key, double dflt) {
        if (auto* kv = p.find("init", key)) return to_double(*kv, key);
        return dflt;
    };
    if (init == "uniform") {
        const double rho1 = num("rho1", 1.0), rho2 = num("rho2", 1.0);
        const double u = num("u", 0.0), v = num("v", 0.0);
        const double pr = num("p", 1.0e5), a1 = num("alpha1", 0.5);
        c.init = [=](FieldSet& f, const MaterialPair& mats) {
            PrimitiveState w;
            w.rho1 = rho1; w.rho2 = rho2; w.u = u; w.v = v; w.p = pr;
            w.alpha1 = std::clamp(a1, kAlphaFloor, 1.0 - kAlphaFloor);
            const CellState cell = prim_to_cons(w, mats);
            const Grid& g = f.grid;
            for (int j = g.jbeg(); j < g.jend(); ++j)
                for (int i = g.ng; i < g.ng + g.nx; ++i) f.set_cell(g.idx(i, j), cell);
        };
    } else if (init == "riemann") {
        const double xi = num("interface", 0.5);
        PrimitiveState L, R;
        L.rho1 = num("left_rho1", 1.0); L.rho2 = num("left_rho2", 1.0);
        L.u = num("left_u", 0.0); L.p = num("left_p", 1.0e5);
        L.alpha1 = std::clamp(num("left_alpha1", 1.0 - kAlphaFloor), kAlphaFloor, 1.0 - kAlphaFloor);
        R.rho1 = num("right_rho1", 1.0); R.rho2 = num("right_rho2", 1.0);
        R.u = num("right_u", 0.0); R.p = num("right_p", 1.0e5);
        R.alpha1 = std::clamp(num("right_alpha1", kAlphaFloor), kAlphaFloor, 1.0 - kAlphaFloor);
        c.init = [=](FieldSet& f, const MaterialPair& mats) {
            const Grid& g = f.grid;
            const CellState cl = prim_to_cons(L, mats), cr = prim_to_cons(R, mats);
            for (int j = g.jbeg(); j < g.jend(); ++j)
                for (int i = g.ng; i < g.ng + g.nx; ++i)
                    f.set_cell(g.idx(i, j), g.xc(i) < xi ? cl : cr);
        };
    } else {
        throw ConfigError("config: unknown init '" + init + "' (uniform or riemann)");
    }
    return c;
}

HeatSource build_source(Parsed& p) {
    if (p.sections.find("source") == p.sections.end()) return {};
    auto num = [&](const std::string& key, double dflt) {
        if (auto* kv = p.find("source", key)) return to_double(*kv, key);
        return dflt;
    };
    const double i0 = num("i0", 0.0);
    const double x0 = num("x0", -1e300), x1 = num("x1", 1e300);
    const double y0 = num("y0", -1e300), y1 = num("y1", 1e300);
    const double t0 = num("t0", -1e300), t1 = num("t1", 1e300);
    if (i0 < 0.0) throw ConfigError("config: source intensity i0 must be >= 0");
    if (i0 == 0.0) return {};
    return [=](double x, double y, double t) {
        return (x >= x0 && x <= x1 && y >= y0 && y <= y1 && t >= t0 && t <= t1) ? i0 : 0.0;
    };
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    Parsed p = parse_raw(text);
    RunConfig rc;

    if (auto* kv = p.find("run", "case")) rc.case_name = kv->value;
    if (auto* kv = p.find("run", "output_dir")) rc.output_dir = kv->value;
    if (auto* kv = p.find("run", "cfl")) {
        rc.cfl = to_double(*kv, "cfl");
        if (!(rc.cfl > 0.0 && rc.cfl < 1.0)) fail(kv->line, "cfl must lie in (0, 1)");
    }
    if (auto* kv = p.find("run", "end_time")) {
        rc.end_time = to_double(*kv, "end_time");
        if (!(rc.end_time > 0.0)) fail(kv->line, "end_time must be positive");
    }
    if (auto* kv = p.find("run", "snapshot_interval")) {
        rc.snapshot_interval = to_double(*kv, "snapshot_interval");
        if (!(rc.snapshot_interval > 0.0)) fail(kv->line, "snapshot_interval must be positive");
    }
    if (auto* kv = p.find("run", "threads")) {
        rc.threads = to_int(*kv, "threads");
        if (rc.threads < 1) fail(kv->line, "threads must be >= 1");
    }
    if (auto* kv = p.find("run", "model")) {
        if (kv->value == "five_eq") rc.model = FlowModel::FiveEq;
        else if (kv->value == "four_eq") rc.model = FlowModel::FourEq;
        else fail(kv->line, "model: expected five_eq or four_eq");
    }
    if (auto* kv = p.find("run", "reconstruction")) {
        if (kv->value == "weno5") rc.recon = ReconstructionMode::weno5();
        else if (kv->value == "muscl-minmod") rc.recon = ReconstructionMode::muscl(Limiter::Minmod);
        else if (kv->value == "muscl-vanleer") rc.recon = ReconstructionMode::muscl(Limiter::VanLeer);
        else fail(kv->line, "reconstruction: expected weno5, muscl-minmod or muscl-vanleer");
    }
    if (auto* kv = p.find("run", "alpha_update")) {
        if (kv->value == "algebraic") rc.alpha_update = AlphaUpdate::Algebraic;
        else if (kv->value == "pde") rc.alpha_update = AlphaUpdate::Pde;
        else fail(kv->line, "alpha_update: expected algebraic or pde");
    }
    if (auto* kv = p.find("grid", "nx")) {
        rc.resolution_x = to_int(*kv, "nx");
        if (rc.resolution_x < 4) fail(kv->line, "nx must be at least 4");
    }
    if (auto* kv = p.find("grid", "ny")) {
        rc.resolution_y = to_int(*kv, "ny");
        if (rc.resolution_y < 1) fail(kv->line, "ny must be at least 1");
    }
    {
        PhysicsFlags ph;
        bool any = false;
        if (auto* kv = p.find("physics", "viscosity")) { ph.viscosity = to_bool(*kv, "viscosity"); any = true; }
        if (auto* kv = p.find("physics", "relaxation")) { ph.relaxation = to_bool(*kv, "relaxation"); any = true; }
        if (auto* kv = p.find("physics", "conduction")) { ph.conduction = to_bool(*kv, "conduction"); any = true; }
        if (auto* kv = p.find("physics", "diffusion")) { ph.diffusion = to_bool(*kv, "diffusion"); any = true; }
        if (any) rc.physics = ph;
    }

    rc.source = build_source(p);

    const bool has_inline = p.sections.count("case") || p.sections.count("materials") ||
                            p.sections.count("init") || p.sections.count("transport");
    if (has_inline) {
        if (!rc.case_name.empty())
            throw ConfigError("config: give either run.case or an inline [case], not both");
        if (rc.end_time <= 0.0) throw ConfigError("config: inline cases require run.end_time");
        rc.inline_case = build_inline_case(p);
    }

    // reject unknown keys
    for (const auto& [sec, kvs] : p.sections)
        for (const auto& [key, kv] : kvs)
            if (!kv.used) fail(kv.line, "unknown key '" + key + "' in section [" + sec + "]");

    return rc;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

CaseSpec RunConfig::resolve() const {
    CaseSpec c;
    if (inline_case) {
        c = *inline_case;
    } else {
        c = case_registry(case_name.empty() ? "pure_transport" : case_name);
    }
    if (cfl > 0.0) c.cfl = cfl;
    if (end_time > 0.0) c.end_time = end_time;
    if (snapshot_interval > 0.0) c.snapshot_interval = snapshot_interval;
    if (resolution_x > 0) c.nx = resolution_x;
    if (resolution_y > 0) c.ny = resolution_y;
    if (model) c.driver.model = *model;
    if (recon) c.driver.recon = *recon;
    if (alpha_update) c.driver.alpha_update = *alpha_update;
    if (physics) c.driver.physics = *physics;
    if (source) c.transport.source = source;
    return c;
}

}  // namespace mcf
