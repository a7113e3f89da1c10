#include "ptd/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "ptd/errors.hpp"

namespace ptd {

namespace {

const std::set<std::string> kPerturbedOnly = {"rho3", "delta", "pert.kind", "pert.amp",
                                              "pert.omega"};
const std::set<std::string> kGlobalOnly = {"schemes", "out", "seed"};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void key_error(const std::string& key, const std::string& what) {
    throw ConfigurationError("config key '" + key + "': " + what);
}

bool is_known_key(const std::string& key) {
    const auto& keys = known_config_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

double parse_real(const std::string& key, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
        key_error(key, "expected a finite real number, got '" + text + "'");
    }
    return v;
}

std::int64_t parse_integer(const std::string& key, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
        key_error(key, "expected an integer, got '" + text + "'");
    }
    return v;
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = trim(text.substr(start, comma == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : comma - start));
        if (!piece.empty()) out.push_back(piece);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

// Effective key lookup for one scheme: section value wins over global.
class Resolver {
public:
    Resolver(const KeyValues& global, const KeyValues* section)
        : global_(global), section_(section) {}

    std::optional<std::string> get(const std::string& key) const {
        if (section_ != nullptr) {
            if (auto it = section_->find(key); it != section_->end()) return it->second;
        }
        if (auto it = global_.find(key); it != global_.end()) return it->second;
        return std::nullopt;
    }

    std::string require(const std::string& key, const std::string& scheme) const {
        auto v = get(key);
        if (!v) key_error(key, "required by scheme '" + scheme + "' but not set");
        return *v;
    }

    double real(const std::string& key, const std::string& scheme) const {
        return parse_real(key, require(key, scheme));
    }

    double real_or(const std::string& key, double fallback) const {
        auto v = get(key);
        return v ? parse_real(key, *v) : fallback;
    }

private:
    const KeyValues& global_;
    const KeyValues* section_;
};

K1Family parse_family(const Resolver& r, const std::string& scheme) {
    const std::string name = r.require("kappa.family", scheme);
    auto reject = [&](const char* key) {
        if (r.get(key)) key_error(key, "not a parameter of kappa family '" + name + "'");
    };
    K1Family family;
    if (name == "beta") {
        reject("kappa.a");
        family = k1::BetaReg{r.real_or("kappa.a1", 1.0), r.real_or("kappa.a2", 1.0)};
    } else {
        reject("kappa.a1");
        reject("kappa.a2");
        if (name == "atan") {
            family = k1::Atan{r.real_or("kappa.a", 1.0)};
        } else if (name == "rational") {
            family = k1::Rational{r.real_or("kappa.a", 1.0)};
        } else if (name == "exponential") {
            family = k1::Exponential{r.real_or("kappa.a", 2.0)};
        } else if (name == "gamma") {
            family = k1::GammaReg{r.real_or("kappa.a", 1.0)};
        } else {
            key_error("kappa.family",
                      "unknown family '" + name + "' (atan, rational, exponential, gamma, beta)");
        }
    }
    try {
        (void)make_k1(family);
    } catch (const ParameterDomainError& e) {
        key_error(name == "beta" ? "kappa.a1" : "kappa.a", e.what());
    }
    return family;
}

Perturbation::Kind parse_pert_kind(const std::string& text) {
    if (text == "zero") return Perturbation::Kind::Zero;
    if (text == "constant") return Perturbation::Kind::Constant;
    if (text == "sinusoid") return Perturbation::Kind::Sinusoid;
    if (text == "adversarial") return Perturbation::Kind::Adversarial;
    key_error("pert.kind",
              "unknown perturbation '" + text + "' (zero, constant, sinusoid, adversarial)");
}

SchemeConfig resolve_scheme(Scheme scheme, const ConfigDocument& doc) {
    const std::string name(to_string(scheme));
    const KeyValues* section = nullptr;
    if (auto it = doc.sections.find(name); it != doc.sections.end()) section = &it->second;
    const Resolver r(doc.global, section);

    SchemeConfig cfg;
    cfg.scheme = scheme;
    cfg.kappa = parse_family(r, name);

    cfg.rho1 = r.real("rho1", name);
    if (!(cfg.rho1 > 0.0)) key_error("rho1", "must be positive");
    cfg.h = r.real("h", name);
    if (!(cfg.h > 0.0)) key_error("h", "must be positive");
    cfg.x0 = r.real("x0", name);

    if (auto steps = r.get("steps")) {
        cfg.steps = parse_integer("steps", *steps);
        if (cfg.steps < 1) key_error("steps", "must be at least 1");
    } else {
        cfg.steps = default_horizon(cfg.rho1, cfg.h);
    }

    if (section != nullptr) {
        for (const auto& [key, value] : *section) {
            if (!is_perturbed(scheme) && kPerturbedOnly.count(key) != 0) {
                key_error(key, "only applies to perturbed schemes, set in section [" + name + "]");
            }
            if (is_perturbed(scheme) && key == "rho2") {
                key_error(key, "only applies to unperturbed schemes, set in section [" + name + "]");
            }
        }
    }

    if (!is_perturbed(scheme)) {
        cfg.rho2 = r.real("rho2", name);
        if (!(cfg.rho2 >= 0.0 && cfg.rho2 < 1.0)) key_error("rho2", "must lie in [0, 1)");
        return cfg;
    }

    cfg.rho3 = r.real("rho3", name);
    if (!(cfg.rho3 >= 0.0)) key_error("rho3", "must be nonnegative");
    cfg.delta = r.real("delta", name);
    if (!(cfg.delta >= 0.0)) key_error("delta", "must be nonnegative");
    cfg.pert.kind = parse_pert_kind(r.get("pert.kind").value_or("zero"));
    switch (cfg.pert.kind) {
        case Perturbation::Kind::Constant:
            cfg.pert.amp = r.real("pert.amp", name);
            break;
        case Perturbation::Kind::Sinusoid:
            cfg.pert.amp = r.real("pert.amp", name);
            cfg.pert.omega = r.real("pert.omega", name);
            break;
        default:
            break;
    }
    if (std::fabs(cfg.pert.amp) > cfg.delta) {
        key_error("pert.amp", "magnitude exceeds the perturbation bound 'delta'");
    }
    try {
        (void)ControlParams(cfg.rho1, cfg.rho3, cfg.delta, make_k1(cfg.kappa));
    } catch (const ParameterDomainError& e) {
        key_error("kappa.family", e.what());
    }
    return cfg;
}

}  // namespace

const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys = {
        "kappa.family", "kappa.a", "kappa.a1", "kappa.a2", "rho1",  "rho2",
        "rho3",         "delta",   "pert.kind", "pert.amp", "pert.omega",
        "h",            "x0",      "steps",    "schemes",  "out",   "seed"};
    return keys;
}

ConfigDocument parse_config_text(std::string_view text) {
    ConfigDocument doc;
    KeyValues* current = &doc.global;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigurationError("config line " + std::to_string(line_no) +
                                         ": malformed section header '" + line + "'");
            }
            const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
            (void)parse_scheme(name);
            current = &doc.sections[name];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigurationError("config line " + std::to_string(line_no) +
                                     ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (!is_known_key(key)) key_error(key, "unknown key (line " + std::to_string(line_no) + ")");
        if (current != &doc.global && kGlobalOnly.count(key) != 0) {
            key_error(key, "may only appear outside scheme sections");
        }
        (*current)[key] = value;
    }
    return doc;
}

ConfigDocument load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_override(ConfigDocument& doc, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigurationError("override '" + std::string(assignment) +
                                 "' must have the form key=value");
    }
    std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    if (is_known_key(key)) {
        doc.global[key] = value;
        return;
    }
    // section.key, e.g. euler.h=0.01
    const auto dot = key.find('.');
    if (dot != std::string::npos) {
        const std::string section = key.substr(0, dot);
        const std::string inner = key.substr(dot + 1);
        bool is_scheme = true;
        try {
            (void)parse_scheme(section);
        } catch (const ConfigurationError&) {
            is_scheme = false;
        }
        if (is_scheme && is_known_key(inner) && kGlobalOnly.count(inner) == 0) {
            doc.sections[section][inner] = value;
            return;
        }
    }
    key_error(key, "unknown key in override");
}

RunConfig build_run_config(const ConfigDocument& doc) {
    RunConfig rc;
    auto schemes_it = doc.global.find("schemes");
    if (schemes_it == doc.global.end()) key_error("schemes", "required but not set");
    std::vector<Scheme> schemes;
    for (const auto& name : split_list(schemes_it->second)) {
        Scheme s;
        try {
            s = parse_scheme(name);
        } catch (const ConfigurationError& e) {
            key_error("schemes", e.what());
        }
        if (std::find(schemes.begin(), schemes.end(), s) != schemes.end()) {
            key_error("schemes", "scheme '" + name + "' listed twice");
        }
        schemes.push_back(s);
    }
    if (schemes.empty()) key_error("schemes", "must list at least one scheme");

    for (const auto& [section, values] : doc.sections) {
        (void)values;
        if (std::find(schemes.begin(), schemes.end(), parse_scheme(section)) == schemes.end()) {
            throw ConfigurationError("config section [" + section +
                                     "] names a scheme not listed in 'schemes'");
        }
    }

    const bool any_perturbed = std::any_of(schemes.begin(), schemes.end(), is_perturbed);
    const bool any_plain =
        std::any_of(schemes.begin(), schemes.end(), [](Scheme s) { return !is_perturbed(s); });
    for (const auto& [key, value] : doc.global) {
        (void)value;
        if (!any_perturbed && kPerturbedOnly.count(key) != 0) {
            key_error(key, "only applies to perturbed schemes, none are listed");
        }
        if (!any_plain && key == "rho2") {
            key_error(key, "only applies to unperturbed schemes, none are listed");
        }
    }

    for (Scheme s : schemes) rc.schemes.push_back(resolve_scheme(s, doc));

    if (auto it = doc.global.find("out"); it != doc.global.end()) {
        if (it->second.empty()) key_error("out", "must not be empty");
        rc.out = it->second;
    }
    if (auto it = doc.global.find("seed"); it != doc.global.end()) {
        const auto seed = parse_integer("seed", it->second);
        if (seed < 0) key_error("seed", "must be nonnegative");
        rc.seed = static_cast<std::uint64_t>(seed);
    }
    return rc;
}

RunParams make_run_params(const SchemeConfig& cfg) {
    if (is_perturbed(cfg.scheme)) {
        return ControlParams(cfg.rho1, cfg.rho3, cfg.delta, make_k1(cfg.kappa));
    }
    return SystemParams(cfg.rho1, cfg.rho2, make_k1(cfg.kappa));
}

std::optional<Perturbation> make_perturbation(const SchemeConfig& cfg) {
    if (!is_perturbed(cfg.scheme)) return std::nullopt;
    switch (cfg.pert.kind) {
        case Perturbation::Kind::Constant: return Perturbation::constant(cfg.pert.amp, cfg.delta);
        case Perturbation::Kind::Sinusoid:
            return Perturbation::sinusoid(cfg.pert.amp, cfg.pert.omega, cfg.delta);
        case Perturbation::Kind::Adversarial: return Perturbation::adversarial(cfg.delta);
        default: return Perturbation::zero(cfg.delta);
    }
}

}  // namespace ptd
