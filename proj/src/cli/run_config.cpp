#include "fracrobin/cli/run_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fracrobin/text_io.hpp"

namespace fracrobin::cli {

namespace pt = boost::property_tree;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        const auto e = item.find_last_not_of(" \t");
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

template <class T>
T get(const pt::ptree& sec, const std::string& section, const std::string& key, T fallback) {
    const auto v = sec.get_optional<std::string>(key);
    if (!v) return fallback;
    std::istringstream in(*v);
    T out{};
    if (!(in >> out) || !(in >> std::ws).eof())
        throw std::invalid_argument("config [" + section + "] " + key + ": cannot parse '" + *v + "'");
    return out;
}

std::string get_str(const pt::ptree& sec, const std::string& key, const std::string& fallback) {
    return sec.get<std::string>(key, fallback);
}

bool get_bool(const pt::ptree& sec, const std::string& section, const std::string& key, bool fallback) {
    const auto v = sec.get_optional<std::string>(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "on" || *v == "1" || *v == "enforce") return true;
    if (*v == "false" || *v == "off" || *v == "0") return false;
    throw std::invalid_argument("config [" + section + "] " + key + ": expected true/false, got '" + *v + "'");
}

void check_keys(const pt::ptree& tree) {
    static const std::map<std::string, std::set<std::string>> allowed = {
        {"problem",
         {"alpha", "T", "domain", "length", "lx", "ly", "nodes", "nx", "ny", "lambda", "lambda_left", "lambda_right",
          "lambda_bottom", "lambda_top", "u0", "f", "g", "b", "b_left", "b_right", "b_bottom", "b_top", "b_profile",
          "compat", "comp_tol"}},
        {"solver", {"modes", "steps", "fd_intervals"}},
        {"verify", {"checks", "tol", "skip_hypotheses", "suite_runs", "suite_modes", "suite_steps", "seed"}},
        {"converge", {"study", "levels"}},
    };
    for (const auto& [section, body] : tree) {
        const auto it = allowed.find(section);
        if (it == allowed.end()) throw std::invalid_argument("config: unknown section [" + section + "]");
        for (const auto& [key, value] : body) {
            (void)value;
            if (!it->second.count(key))
                throw std::invalid_argument("config: unknown key '" + key + "' in [" + section + "]");
        }
    }
}

RunConfig from_tree(const pt::ptree& tree) {
    check_keys(tree);
    RunConfig rc;
    const pt::ptree empty;
    const auto& p = tree.get_child("problem", empty);
    auto& pc = rc.problem;
    pc.alpha = get(p, "problem", "alpha", pc.alpha);
    pc.T = get(p, "problem", "T", pc.T);
    const auto domain = get_str(p, "domain", "interval");
    if (domain != "interval" && domain != "rectangle")
        throw std::invalid_argument("config [problem] domain: expected interval or rectangle");
    pc.rectangle = domain == "rectangle";
    pc.lx = get(p, "problem", "length", pc.lx);
    pc.lx = get(p, "problem", "lx", pc.lx);
    pc.ly = get(p, "problem", "ly", pc.ly);
    pc.nx = get(p, "problem", "nodes", pc.nx);
    pc.nx = get(p, "problem", "nx", pc.nx);
    pc.ny = get(p, "problem", "ny", pc.rectangle ? pc.nx : pc.ny);
    const double lam = get(p, "problem", "lambda", 1.0);
    pc.lambda = {get(p, "problem", "lambda_left", lam), get(p, "problem", "lambda_right", lam),
                 get(p, "problem", "lambda_bottom", lam), get(p, "problem", "lambda_top", lam)};
    const double b = get(p, "problem", "b", 0.0);
    pc.b = {get(p, "problem", "b_left", b), get(p, "problem", "b_right", b), get(p, "problem", "b_bottom", b),
            get(p, "problem", "b_top", b)};
    pc.u0 = get_str(p, "u0", pc.u0);
    pc.f = get_str(p, "f", pc.f);
    pc.g = get_str(p, "g", pc.g);
    pc.b_profile = get_str(p, "b_profile", pc.b_profile);
    pc.enforce_compat = get_bool(p, "problem", "compat", pc.enforce_compat);
    pc.comp_tol = get(p, "problem", "comp_tol", pc.comp_tol);

    const auto& s = tree.get_child("solver", empty);
    rc.solver.modes = get(s, "solver", "modes", rc.solver.modes);
    rc.solver.steps = get(s, "solver", "steps", rc.solver.steps);
    rc.solver.fd_intervals = get(s, "solver", "fd_intervals", rc.solver.fd_intervals);

    const auto& v = tree.get_child("verify", empty);
    if (auto checks = v.get_optional<std::string>("checks")) rc.verify.checks = split_list(*checks);
    rc.verify.tol = get(v, "verify", "tol", rc.verify.tol);
    rc.verify.skip_hypotheses = get_bool(v, "verify", "skip_hypotheses", rc.verify.skip_hypotheses);
    rc.verify.suite_runs = get(v, "verify", "suite_runs", rc.verify.suite_runs);
    rc.verify.suite_modes = get(v, "verify", "suite_modes", rc.verify.suite_modes);
    rc.verify.suite_steps = get(v, "verify", "suite_steps", rc.verify.suite_steps);
    rc.seed = get<std::uint64_t>(v, "verify", "seed", rc.seed);

    const auto& c = tree.get_child("converge", empty);
    rc.converge.study = get_str(c, "study", rc.converge.study);
    if (auto levels = c.get_optional<std::string>("levels")) {
        rc.converge.levels.clear();
        for (const auto& item : split_list(*levels)) {
            std::istringstream in(item);
            std::size_t n = 0;
            if (!(in >> n) || !(in >> std::ws).eof())
                throw std::invalid_argument("config [converge] levels: bad entry '" + item + "'");
            rc.converge.levels.push_back(n);
        }
    }
    return rc;
}

}  // namespace

std::string RunConfig::canonical() const {
    std::ostringstream o;
    const auto& p = problem;
    o << "alpha=" << format_real(p.alpha) << "\nT=" << format_real(p.T)
      << "\ndomain=" << (p.rectangle ? "rectangle" : "interval") << "\nlx=" << format_real(p.lx)
      << "\nly=" << format_real(p.ly) << "\nnx=" << p.nx << "\nny=" << p.ny;
    for (double l : p.lambda) o << "\nlambda=" << format_real(l);
    for (double b : p.b) o << "\nb=" << format_real(b);
    o << "\nu0=" << p.u0 << "\nf=" << p.f << "\ng=" << p.g << "\nb_profile=" << p.b_profile
      << "\ncompat=" << p.enforce_compat << "\ncomp_tol=" << format_real(p.comp_tol);
    o << "\nmodes=" << solver.modes << "\nsteps=" << solver.steps << "\nfd_intervals=" << solver.fd_intervals;
    o << "\nchecks=";
    for (const auto& c : verify.checks) o << c << ';';
    o << "\ntol=" << format_real(verify.tol) << "\nskip_hypotheses=" << verify.skip_hypotheses
      << "\nsuite_runs=" << verify.suite_runs << "\nsuite_modes=" << verify.suite_modes
      << "\nsuite_steps=" << verify.suite_steps;
    o << "\nstudy=" << converge.study << "\nlevels=";
    for (auto l : converge.levels) o << l << ';';
    o << "\nseed=" << seed << '\n';
    return o.str();
}

std::uint64_t RunConfig::hash() const { return fnv1a64(canonical()); }

RunConfig parse_run_config(const std::string& text) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return from_tree(tree);
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

}  // namespace fracrobin::cli
