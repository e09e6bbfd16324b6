#include "bioecon/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "bioecon/csv.hpp"
#include "bioecon/errors.hpp"

namespace bioecon {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& s, long line) {
    double value = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ConfigError("malformed number '" + s + "'", line);
    }
    return value;
}

long long parse_int(const std::string& s, long line) {
    long long value = 0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("malformed integer '" + s + "'", line);
    }
    return value;
}

std::uint64_t parse_u64(const std::string& s, long line) {
    std::uint64_t value = 0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("malformed unsigned integer '" + s + "'", line);
    }
    return value;
}

bool parse_bool(const std::string& s, long line) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw ConfigError("expected true or false, got '" + s + "'", line);
}

std::vector<double> parse_list(const std::string& s, long line) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty element in list '" + s + "'", line);
        out.push_back(parse_double(item, line));
    }
    if (out.empty()) throw ConfigError("empty list", line);
    return out;
}

using Setter = std::function<void(FullConfig&, const std::string&, long)>;

struct KeySpec {
    const char* section;
    const char* key;
    Setter set;
};

void check_range(bool ok, const char* key, const std::string& value, long line) {
    if (!ok) throw ConfigError(std::string("value out of range for ") + key + ": " + value, line);
}

// One entry per reachable parameter; nothing is compiled in.
const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> table = [] {
        std::vector<KeySpec> t;
        auto add = [&t](const char* sec, const char* key, Setter s) {
            t.push_back({sec, key, std::move(s)});
        };

        auto dbl = [](double SimConfig::* field, auto check) {
            return [field, check](FullConfig& c, const std::string& v, long line) {
                const double x = parse_double(v, line);
                check(x, v, line);
                c.sim.*field = x;
            };
        };
        auto nonneg = [](const char* key) {
            return [key](double x, const std::string& v, long line) {
                check_range(x >= 0.0, key, v, line);
            };
        };
        auto positive = [](const char* key) {
            return [key](double x, const std::string& v, long line) {
                check_range(x > 0.0, key, v, line);
            };
        };
        auto unit = [](const char* key) {
            return [key](double x, const std::string& v, long line) {
                check_range(x >= 0.0 && x <= 1.0, key, v, line);
            };
        };

        // [simulation]
        add("simulation", "years", [](FullConfig& c, const std::string& v, long line) {
            const long long x = parse_int(v, line);
            check_range(x >= 1, "years", v, line);
            c.sim.years = static_cast<int>(x);
        });
        add("simulation", "members", [](FullConfig& c, const std::string& v, long line) {
            const long long x = parse_int(v, line);
            check_range(x >= 1, "members", v, line);
            c.sim.members = static_cast<int>(x);
        });
        add("simulation", "land_ha", dbl(&SimConfig::land_ha, positive("land_ha")));
        add("simulation", "initial_prevalence",
            dbl(&SimConfig::initial_prevalence, unit("initial_prevalence")));
        add("simulation", "cure_prob", dbl(&SimConfig::cure_prob, unit("cure_prob")));
        add("simulation", "allow_harvest", [](FullConfig& c, const std::string& v, long line) {
            c.sim.allow_harvest = parse_bool(v, line);
        });
        add("simulation", "dt", dbl(&SimConfig::dt, positive("dt")));
        add("simulation", "seed", [](FullConfig& c, const std::string& v, long line) {
            c.sim.seed = parse_u64(v, line);
        });
        add("simulation", "infection_draws", [](FullConfig& c, const std::string& v, long line) {
            if (v == "all_members") {
                c.sim.infection_draws = InfectionDraws::AllMembers;
            } else if (v == "susceptible_only") {
                c.sim.infection_draws = InfectionDraws::SusceptibleOnly;
            } else {
                throw ConfigError("infection_draws must be all_members or susceptible_only", line);
            }
        });

        // [ecology]
        auto eco = [&add, &nonneg](const char* key, double EcoParams::* field) {
            add("ecology", key, [field, key, nonneg](FullConfig& c, const std::string& v, long line) {
                const double x = parse_double(v, line);
                nonneg(key)(x, v, line);
                c.sim.eco.*field = x;
            });
        };
        eco("r", &EcoParams::r);
        add("ecology", "cap_k", [](FullConfig& c, const std::string& v, long line) {
            const double x = parse_double(v, line);
            check_range(x > 0.0, "cap_k", v, line);
            c.sim.eco.cap_k = x;
        });
        eco("rho", &EcoParams::rho);
        eco("n0", &EcoParams::n0);
        eco("lambda_cap2", &EcoParams::lambda_cap2);
        eco("beta1", &EcoParams::beta1);
        add("ecology", "beta2", [](FullConfig& c, const std::string& v, long line) {
            const double x = parse_double(v, line);
            check_range(x >= 0.0 && x <= 1.0, "beta2", v, line);
            c.sim.eco.beta2 = x;
        });
        eco("mu2", &EcoParams::mu2);
        eco("mu3", &EcoParams::mu3);
        eco("mu4", &EcoParams::mu4);
        eco("delta2", &EcoParams::delta2);
        eco("lambda1", &EcoParams::lambda1);
        eco("lambda2", &EcoParams::lambda2);
        eco("alpha1", &EcoParams::alpha1);
        eco("m0", &EcoParams::m0);
        eco("epsilon", &EcoParams::epsilon);
        eco("chi", &EcoParams::chi);
        eco("k_eggs", &EcoParams::k_eggs);
        eco("eta", &EcoParams::eta);
        auto eco_init = [&add](const char* key, double EcoState::* field) {
            add("ecology", key, [field, key](FullConfig& c, const std::string& v, long line) {
                const double x = parse_double(v, line);
                check_range(x >= 0.0, key, v, line);
                c.sim.eco_init.*field = x;
            });
        };
        eco_init("init_n_veg", &EcoState::n_veg);
        eco_init("init_s_snails", &EcoState::s_snails);
        eco_init("init_i_snails", &EcoState::i_snails);
        eco_init("init_miracidia", &EcoState::miracidia);
        eco_init("init_cercariae", &EcoState::cercariae);

        // [household]
        auto hh = [&add](const char* key, double HouseholdParams::* field, auto check) {
            add("household", key, [field, check](FullConfig& c, const std::string& v, long line) {
                const double x = parse_double(v, line);
                check(x, v, line);
                c.sim.hh.*field = x;
            });
        };
        hh("theta_f", &HouseholdParams::theta_f, unit("theta_f"));
        hh("theta_g", &HouseholdParams::theta_g, unit("theta_g"));
        hh("theta_h", &HouseholdParams::theta_h, unit("theta_h"));
        hh("theta_l", &HouseholdParams::theta_l, unit("theta_l"));
        hh("h_f", &HouseholdParams::h_f, nonneg("h_f"));
        hh("alpha_d", &HouseholdParams::alpha_d, unit("alpha_d"));
        hh("alpha_l", &HouseholdParams::alpha_l, unit("alpha_l"));
        hh("alpha_u", &HouseholdParams::alpha_u, unit("alpha_u"));
        hh("alpha_v", &HouseholdParams::alpha_v, unit("alpha_v"));
        hh("phi", &HouseholdParams::phi, [](double x, const std::string& v, long line) {
            check_range(x > 0.0 && x < 1.0, "phi", v, line);
        });
        hh("omega", &HouseholdParams::omega, [](double x, const std::string& v, long line) {
            check_range(x > 0.0 && x < 1.0, "omega", v, line);
        });
        hh("beta_v", &HouseholdParams::beta_v, nonneg("beta_v"));
        hh("gamma1", &HouseholdParams::gamma1, nonneg("gamma1"));
        hh("scale_f", &HouseholdParams::scale_f, positive("scale_f"));
        hh("tau", &HouseholdParams::tau, [](double x, const std::string& v, long line) {
            check_range(x >= 0.0 && x < 1.0, "tau", v, line);
        });
        hh("fert_max_per_ha", &HouseholdParams::fert_max_per_ha, positive("fert_max_per_ha"));

        // [prices]
        auto price = [&add, &positive](const char* key, double Prices::* field) {
            add("prices", key, [field, key, positive](FullConfig& c, const std::string& v, long line) {
                const double x = parse_double(v, line);
                positive(key)(x, v, line);
                c.sim.prices.*field = x;
            });
        };
        price("p_f", &Prices::p_f);
        price("p_g", &Prices::p_g);
        price("p_u", &Prices::p_u);

        // [experiment]
        add("experiment", "replicates", [](FullConfig& c, const std::string& v, long line) {
            const long long x = parse_int(v, line);
            check_range(x >= 1, "replicates", v, line);
            c.experiment.replicates = static_cast<int>(x);
        });
        add("experiment", "threads", [](FullConfig& c, const std::string& v, long line) {
            const long long x = parse_int(v, line);
            check_range(x >= 0, "threads", v, line);
            c.experiment.threads = static_cast<int>(x);
        });
        auto grid = [&add](const char* key, std::vector<double> ExperimentSettings::* field) {
            add("experiment", key, [field](FullConfig& c, const std::string& v, long line) {
                c.experiment.*field = parse_list(v, line);
            });
        };
        grid("rho_grid", &ExperimentSettings::rho_grid);
        grid("r_grid", &ExperimentSettings::r_grid);
        grid("n0_grid", &ExperimentSettings::n0_grid);
        grid("p_u_grid", &ExperimentSettings::p_u_grid);
        grid("p_h_grid", &ExperimentSettings::p_h_grid);
        grid("prevalence_grid", &ExperimentSettings::prevalence_grid);
        add("experiment", "percentile", [](FullConfig& c, const std::string& v, long line) {
            if (v != "linear") {
                throw ConfigError("percentile must be 'linear' (interpolation between "
                                  "closest ranks); got '" + v + "'", line);
            }
            c.experiment.percentile = v;
        });

        return t;
    }();
    return table;
}

} // namespace

const std::vector<double>& ExperimentSettings::grid_for(const std::string& param) const {
    if (param == "rho") return rho_grid;
    if (param == "r") return r_grid;
    if (param == "n0") return n0_grid;
    if (param == "p_u") return p_u_grid;
    if (param == "p_h") return p_h_grid;
    throw InvalidStateError("no default grid for parameter '" + param + "'");
}

FullConfig parse_config(const std::string& text) {
    FullConfig config;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    long line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
            section = trim(line.substr(1, line.size() - 2));
            bool known = false;
            for (const auto& spec : key_table()) {
                if (section == spec.section) {
                    known = true;
                    break;
                }
            }
            if (!known) throw ConfigError("unknown section [" + section + "]", line_no);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected key = value, got '" + line + "'", line_no);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (section.empty()) throw ConfigError("key '" + key + "' outside any section", line_no);

        const KeySpec* found = nullptr;
        for (const auto& spec : key_table()) {
            if (section == spec.section && key == spec.key) {
                found = &spec;
                break;
            }
        }
        if (!found) throw ConfigError("unknown key '" + key + "' in section [" + section + "]",
                                      line_no);
        found->set(config, value, line_no);
    }

    config.sim.validate();
    return config;
}

FullConfig load_config_file(const std::string& path) {
    if (path.empty()) return FullConfig{};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (ConfigError& e) {
        throw ConfigError(path + ": " + e.what(), 0);
    }
}

namespace {

std::string list_to_string(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += format_double(values[i]);
    }
    return out;
}

} // namespace

std::string render_config(const FullConfig& c) {
    std::ostringstream out;
    const auto d = [](double v) { return format_double(v); };

    out << "[simulation]\n";
    out << "years = " << c.sim.years << "\n";
    out << "members = " << c.sim.members << "\n";
    out << "land_ha = " << d(c.sim.land_ha) << "\n";
    out << "initial_prevalence = " << d(c.sim.initial_prevalence) << "\n";
    out << "cure_prob = " << d(c.sim.cure_prob) << "\n";
    out << "allow_harvest = " << (c.sim.allow_harvest ? "true" : "false") << "\n";
    out << "dt = " << d(c.sim.dt) << "\n";
    out << "seed = " << c.sim.seed << "\n";
    out << "infection_draws = "
        << (c.sim.infection_draws == InfectionDraws::AllMembers ? "all_members"
                                                                : "susceptible_only")
        << "\n";

    out << "\n[ecology]\n";
    const EcoParams& e = c.sim.eco;
    out << "r = " << d(e.r) << "\n";
    out << "cap_k = " << d(e.cap_k) << "\n";
    out << "rho = " << d(e.rho) << "\n";
    out << "n0 = " << d(e.n0) << "\n";
    out << "lambda_cap2 = " << d(e.lambda_cap2) << "\n";
    out << "beta1 = " << d(e.beta1) << "\n";
    out << "beta2 = " << d(e.beta2) << "\n";
    out << "mu2 = " << d(e.mu2) << "\n";
    out << "mu3 = " << d(e.mu3) << "\n";
    out << "mu4 = " << d(e.mu4) << "\n";
    out << "delta2 = " << d(e.delta2) << "\n";
    out << "lambda1 = " << d(e.lambda1) << "\n";
    out << "lambda2 = " << d(e.lambda2) << "\n";
    out << "alpha1 = " << d(e.alpha1) << "\n";
    out << "m0 = " << d(e.m0) << "\n";
    out << "epsilon = " << d(e.epsilon) << "\n";
    out << "chi = " << d(e.chi) << "\n";
    out << "k_eggs = " << d(e.k_eggs) << "\n";
    out << "eta = " << d(e.eta) << "\n";
    const EcoState& s = c.sim.eco_init;
    out << "init_n_veg = " << d(s.n_veg) << "\n";
    out << "init_s_snails = " << d(s.s_snails) << "\n";
    out << "init_i_snails = " << d(s.i_snails) << "\n";
    out << "init_miracidia = " << d(s.miracidia) << "\n";
    out << "init_cercariae = " << d(s.cercariae) << "\n";

    out << "\n[household]\n";
    const HouseholdParams& h = c.sim.hh;
    out << "theta_f = " << d(h.theta_f) << "\n";
    out << "theta_g = " << d(h.theta_g) << "\n";
    out << "theta_h = " << d(h.theta_h) << "\n";
    out << "theta_l = " << d(h.theta_l) << "\n";
    out << "h_f = " << d(h.h_f) << "\n";
    out << "alpha_d = " << d(h.alpha_d) << "\n";
    out << "alpha_l = " << d(h.alpha_l) << "\n";
    out << "alpha_u = " << d(h.alpha_u) << "\n";
    out << "alpha_v = " << d(h.alpha_v) << "\n";
    out << "phi = " << d(h.phi) << "\n";
    out << "omega = " << d(h.omega) << "\n";
    out << "beta_v = " << d(h.beta_v) << "\n";
    out << "gamma1 = " << d(h.gamma1) << "\n";
    out << "scale_f = " << d(h.scale_f) << "\n";
    out << "tau = " << d(h.tau) << "\n";
    out << "fert_max_per_ha = " << d(h.fert_max_per_ha) << "\n";

    out << "\n[prices]\n";
    out << "p_f = " << d(c.sim.prices.p_f) << "\n";
    out << "p_g = " << d(c.sim.prices.p_g) << "\n";
    out << "p_u = " << d(c.sim.prices.p_u) << "\n";

    out << "\n[experiment]\n";
    out << "replicates = " << c.experiment.replicates << "\n";
    out << "threads = " << c.experiment.threads << "\n";
    out << "rho_grid = " << list_to_string(c.experiment.rho_grid) << "\n";
    out << "r_grid = " << list_to_string(c.experiment.r_grid) << "\n";
    out << "n0_grid = " << list_to_string(c.experiment.n0_grid) << "\n";
    out << "p_u_grid = " << list_to_string(c.experiment.p_u_grid) << "\n";
    out << "p_h_grid = " << list_to_string(c.experiment.p_h_grid) << "\n";
    out << "prevalence_grid = " << list_to_string(c.experiment.prevalence_grid) << "\n";
    out << "percentile = " << c.experiment.percentile << "\n";
    return out.str();
}

} // namespace bioecon
