#include "curveflux/config.hpp"

#include <fstream>
#include <sstream>

#include "curveflux/errors.hpp"
#include "json.hpp"

namespace curveflux {
namespace {

using nlohmann::json;

class Checker {
public:
    void fail(const std::string& msg) { problems_.push_back(msg); }
    bool ok() const { return problems_.empty(); }

    void throw_if_failed() const {
        if (problems_.empty()) return;
        std::string msg;
        for (const auto& p : problems_) {
            if (!msg.empty()) msg += '\n';
            msg += p;
        }
        throw ConfigError(msg);
    }

    // Flags keys outside `allowed` at object `where`.
    void check_keys(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
        for (const auto& [key, value] : obj.items()) {
            (void)value;
            bool known = false;
            for (const char* a : allowed)
                if (key == a) known = true;
            if (!known) fail(where + ": unknown key \"" + key + "\"");
        }
    }

    std::optional<double> number(const json& obj, const std::string& where,
                                 const char* key, bool required) {
        if (!obj.contains(key)) {
            if (required) fail(where + "." + key + ": missing");
            return std::nullopt;
        }
        if (!obj[key].is_number()) {
            fail(where + "." + key + ": expected a number");
            return std::nullopt;
        }
        return obj[key].get<double>();
    }

    std::optional<int> integer(const json& obj, const std::string& where, const char* key) {
        if (!obj.contains(key)) return std::nullopt;
        if (!obj[key].is_number_integer()) {
            fail(where + "." + key + ": expected an integer");
            return std::nullopt;
        }
        return obj[key].get<int>();
    }

    std::optional<std::vector<double>> number_list(const json& obj, const std::string& where,
                                                   const char* key) {
        if (!obj.contains(key)) return std::nullopt;
        if (!obj[key].is_array()) {
            fail(where + "." + key + ": expected an array of numbers");
            return std::nullopt;
        }
        std::vector<double> out;
        for (const auto& e : obj[key]) {
            if (!e.is_number()) {
                fail(where + "." + key + ": expected an array of numbers");
                return std::nullopt;
            }
            out.push_back(e.get<double>());
        }
        return out;
    }

private:
    std::vector<std::string> problems_;
};

std::optional<Profile1D> parse_profile(Checker& ck, const json& root, const char* name,
                                       double u1, double u2) {
    if (!root.contains(name)) {
        ck.fail(std::string(name) + ": missing (need .poly or .samples)");
        return std::nullopt;
    }
    const json& obj = root[name];
    if (!obj.is_object()) {
        ck.fail(std::string(name) + ": expected an object");
        return std::nullopt;
    }
    ck.check_keys(obj, name, {"poly", "samples"});
    const bool has_poly = obj.contains("poly");
    const bool has_samples = obj.contains("samples");
    if (has_poly == has_samples) {
        ck.fail(std::string(name) + ": exactly one of .poly/.samples required");
        return std::nullopt;
    }
    const auto values = ck.number_list(obj, name, has_poly ? "poly" : "samples");
    if (!values) return std::nullopt;
    if (has_poly) {
        if (values->empty()) {
            ck.fail(std::string(name) + ".poly: needs at least one coefficient");
            return std::nullopt;
        }
        return Profile1D::poly(*values);
    }
    if (values->size() < 4) {
        ck.fail(std::string(name) + ".samples: needs at least 4 values");
        return std::nullopt;
    }
    return Profile1D::samples(*values, u1, u2);
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be a JSON object");

    Checker ck;

    // domain first: sampled profiles and sampled bases need it
    double u1 = 0.0, u2 = 1.0;
    if (!root.contains("domain")) {
        ck.fail("domain: missing");
    } else if (!root["domain"].is_object()) {
        ck.fail("domain: expected an object");
    } else {
        const json& dom = root["domain"];
        ck.check_keys(dom, "domain", {"u1", "u2"});
        const auto a = ck.number(dom, "domain", "u1", true);
        const auto b = ck.number(dom, "domain", "u2", true);
        if (a && b) {
            u1 = *a;
            u2 = *b;
            if (!(u1 < u2)) ck.fail("domain: u2 must be greater than u1");
        }
    }
    ck.throw_if_failed();  // everything below needs a usable domain

    ck.check_keys(root, "config",
                  {"base_curve", "v0", "w", "domain", "d0", "methods", "grid", "output",
                   "sweep"});

    ExperimentConfig cfg;

    // base curve
    if (!root.contains("base_curve") || !root["base_curve"].is_object()) {
        ck.fail("base_curve: missing or not an object");
    } else {
        const json& bc = root["base_curve"];
        ck.check_keys(bc, "base_curve", {"type", "k", "center_re", "center_im", "samples"});
        std::string type;
        if (!bc.contains("type") || !bc["type"].is_string())
            ck.fail("base_curve.type: expected \"line\", \"circle\" or \"samples\"");
        else
            type = bc["type"].get<std::string>();

        if (type == "line") {
            for (const char* key : {"k", "center_re", "center_im", "samples"})
                if (bc.contains(key))
                    ck.fail(std::string("base_curve.") + key + ": not valid for type \"line\"");
            if (ck.ok()) cfg.spec.base = PlaneCurve::line({1.0, 0.0}, {0.0, 0.0}, u1, u2);
        } else if (type == "circle") {
            const auto k = ck.number(bc, "base_curve", "k", true);
            const auto cre = ck.number(bc, "base_curve", "center_re", false);
            const auto cim = ck.number(bc, "base_curve", "center_im", false);
            if (bc.contains("samples"))
                ck.fail("base_curve.samples: not valid for type \"circle\"");
            if (k && std::abs(*k) < 1e-12)
                ck.fail("base_curve.k: circle curvature must be nonzero (use type \"line\")");
            if (ck.ok() && k)
                cfg.spec.base = PlaneCurve::circle(
                    *k, {cre.value_or(0.0), cim.value_or(0.0)}, 0.0, u1, u2);
        } else if (type == "samples") {
            for (const char* key : {"k", "center_re", "center_im"})
                if (bc.contains(key))
                    ck.fail(std::string("base_curve.") + key +
                            ": not valid for type \"samples\"");
            if (!bc.contains("samples") || !bc["samples"].is_array() ||
                bc["samples"].size() < 4) {
                ck.fail("base_curve.samples: expected an array of at least 4 [x, y] pairs");
            } else {
                std::vector<Complex> pts;
                bool shape_ok = true;
                for (const auto& e : bc["samples"]) {
                    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
                        !e[1].is_number()) {
                        shape_ok = false;
                        break;
                    }
                    pts.emplace_back(e[0].get<double>(), e[1].get<double>());
                }
                if (!shape_ok)
                    ck.fail("base_curve.samples: expected an array of [x, y] pairs");
                else if (ck.ok())
                    cfg.spec.base = PlaneCurve::sampled(
                        std::move(pts), u1,
                        (u2 - u1) / static_cast<double>(bc["samples"].size() - 1));
            }
        } else if (!type.empty()) {
            ck.fail("base_curve.type: unknown type \"" + type + "\"");
        }
    }

    // v0 / w profiles
    if (auto prof = parse_profile(ck, root, "v0", u1, u2)) cfg.spec.v0 = *prof;
    if (auto prof = parse_profile(ck, root, "w", u1, u2)) {
        cfg.spec.w = *prof;
        for (int i = 0; i <= 1000; ++i) {
            const double u = u1 + (u2 - u1) * i / 1000.0;
            if (!(cfg.spec.w.value(u) > 0)) {
                std::ostringstream msg;
                msg << "w: width must be positive (w(" << u << ") = " << cfg.spec.w.value(u)
                    << ")";
                ck.fail(msg.str());
                break;
            }
        }
    }

    // d0
    if (const auto d0 = ck.number(root, "config", "d0", true)) {
        if (!(*d0 > 0))
            ck.fail("d0: must be positive");
        else
            cfg.spec.d0 = *d0;
    }

    // methods
    if (!root.contains("methods") || !root["methods"].is_array() || root["methods"].empty()) {
        ck.fail("methods: expected a non-empty array of method tags");
    } else {
        for (const auto& e : root["methods"]) {
            if (!e.is_string()) {
                ck.fail("methods: entries must be strings");
                continue;
            }
            const auto m = parse_method(e.get<std::string>());
            if (!m)
                ck.fail("methods: unknown tag \"" + e.get<std::string>() + "\"");
            else
                cfg.methods.push_back(*m);
        }
    }

    // grid
    if (root.contains("grid")) {
        if (!root["grid"].is_object()) {
            ck.fail("grid: expected an object");
        } else {
            const json& g = root["grid"];
            ck.check_keys(g, "grid", {"n_profile", "nu", "nv"});
            if (const auto n = ck.integer(g, "grid", "n_profile")) {
                if (*n < 2) ck.fail("grid.n_profile: must be at least 2");
                else cfg.n_profile = *n;
            }
            if (const auto n = ck.integer(g, "grid", "nu")) {
                if (*n < 8) ck.fail("grid.nu: must be at least 8");
                else cfg.nu = *n;
            }
            if (const auto n = ck.integer(g, "grid", "nv")) {
                if (*n < 5 || *n % 2 == 0) ck.fail("grid.nv: must be odd and at least 5");
                else cfg.nv = *n;
            }
        }
    }

    // output
    if (root.contains("output")) {
        if (!root["output"].is_object()) {
            ck.fail("output: expected an object");
        } else {
            const json& o = root["output"];
            ck.check_keys(o, "output", {"profile", "compare", "sweep"});
            for (const char* key : {"profile", "compare", "sweep"}) {
                if (!o.contains(key)) continue;
                if (!o[key].is_string()) {
                    ck.fail(std::string("output.") + key + ": expected a string path");
                    continue;
                }
                const std::string path = o[key].get<std::string>();
                if (std::string(key) == "profile") cfg.out_profile = path;
                if (std::string(key) == "compare") cfg.out_compare = path;
                if (std::string(key) == "sweep") cfg.out_sweep = path;
            }
        }
    }

    // sweep
    if (root.contains("sweep")) {
        if (!root["sweep"].is_object()) {
            ck.fail("sweep: expected an object");
        } else {
            const json& s = root["sweep"];
            ck.check_keys(s, "sweep", {"k", "m_min", "m_max", "n"});
            if (const auto ks = ck.number_list(s, "sweep", "k")) cfg.sweep_k = *ks;
            if (const auto m = ck.number(s, "sweep", "m_min", false)) cfg.sweep_m_min = *m;
            if (const auto m = ck.number(s, "sweep", "m_max", false)) cfg.sweep_m_max = *m;
            if (const auto n = ck.integer(s, "sweep", "n")) {
                if (*n < 2) ck.fail("sweep.n: must be at least 2");
                else cfg.sweep_n = *n;
            }
            if (!(cfg.sweep_m_min < cfg.sweep_m_max))
                ck.fail("sweep: m_min must be less than m_max");
        }
    }

    ck.throw_if_failed();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace curveflux
