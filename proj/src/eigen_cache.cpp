#include "fracrobin/eigen_cache.hpp"

#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fracrobin/text_io.hpp"

namespace fracrobin {

namespace {

std::mutex& write_mutex() {
    static std::mutex m;
    return m;
}

SpectrumMethod method_for(const RobinCoefficient& lambda) {
    return lambda.variable() ? SpectrumMethod::fd : SpectrumMethod::analytic;
}

[[noreturn]] void corrupt(const std::string& why) { throw std::runtime_error("corrupt eigen cache: " + why); }

}  // namespace

std::string spectrum_parameters(const Domain& dom, const RobinCoefficient& lambda, std::size_t count,
                                SpectrumMethod method) {
    std::ostringstream p;
    p << "domain " << (dom.kind() == DomainKind::interval ? "interval" : "rectangle") << '\n';
    p << "lengths " << format_real(dom.lx()) << ' ' << format_real(dom.ly()) << '\n';
    p << "mesh " << dom.nx() << ' ' << dom.ny() << '\n';
    for (Face f : dom.faces()) {
        p << "lambda " << to_string(f);
        for (std::size_t m = 0; m < (lambda.variable() ? dom.face_size(f) : 1); ++m)
            p << ' ' << format_real(lambda.at(f, m));
        p << '\n';
    }
    p << "modes " << count << '\n';
    p << "method " << (method == SpectrumMethod::analytic ? "analytic" : "fd") << '\n';
    return p.str();
}

void write_spectrum(std::ostream& out, const Spectrum& s) {
    out << "fracrobin-eigen v1\n";
    out << spectrum_parameters(s.domain, s.lambda, s.modes.size(), s.method);
    for (const auto& m : s.modes) {
        out << m.index << ' ' << format_real(m.mu) << '\n';
        for (std::size_t i = 0; i < m.psi.size(); ++i) out << (i ? " " : "") << format_real(m.psi[i]);
        out << '\n';
    }
}

Spectrum read_spectrum(std::istream& in, const Domain& dom, const RobinCoefficient& lambda, std::size_t count) {
    std::string line;
    if (!std::getline(in, line) || line != "fracrobin-eigen v1") corrupt("bad header");
    const auto method = method_for(lambda);
    const std::string expected = spectrum_parameters(dom, lambda, count, method);
    std::istringstream exp_lines(expected);
    std::string want;
    while (std::getline(exp_lines, want)) {
        if (!std::getline(in, line)) corrupt("truncated parameter block");
        if (line != want) corrupt("parameter mismatch: '" + line + "'");
    }
    const auto rule = method == SpectrumMethod::analytic ? Quadrature::gregory : Quadrature::trapezoid;
    Spectrum s{dom, lambda, method, quadrature_weights(dom, rule), {}};
    const std::size_t nodes = dom.node_count();
    for (std::size_t n = 1; n <= count; ++n) {
        EigenPair p;
        if (!std::getline(in, line)) corrupt("missing mode " + std::to_string(n));
        {
            std::istringstream hs(line);
            std::string mu_text;
            if (!(hs >> p.index >> mu_text) || p.index != n) corrupt("bad mode line '" + line + "'");
            try {
                std::size_t used = 0;
                p.mu = std::stod(mu_text, &used);
                if (used != mu_text.size()) corrupt("bad eigenvalue");
            } catch (const std::logic_error&) {
                corrupt("bad eigenvalue");
            }
        }
        if (!std::getline(in, line)) corrupt("missing samples for mode " + std::to_string(n));
        std::istringstream vs(line);
        p.psi.reserve(nodes);
        std::string tok;
        while (vs >> tok) {
            try {
                p.psi.push_back(std::stod(tok));
            } catch (const std::logic_error&) {
                corrupt("bad sample");
            }
        }
        if (p.psi.size() != nodes) corrupt("wrong sample count for mode " + std::to_string(n));
        s.modes.push_back(std::move(p));
    }
    if (std::getline(in, line) && !line.empty()) corrupt("trailing data");
    return s;
}

EigenCache::EigenCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path EigenCache::path_for(const Domain& dom, const RobinCoefficient& lambda,
                                           std::size_t count) const {
    const auto key = fnv1a64(spectrum_parameters(dom, lambda, count, method_for(lambda)));
    return dir_ / ("eigen-" + hex64(key) + ".txt");
}

EigenCache::Result EigenCache::get_or_compute(const Domain& dom, const RobinCoefficient& lambda, std::size_t count) {
    lambda.validate(dom);
    const auto path = path_for(dom, lambda, count);
    std::string warning;
    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        try {
            return {read_spectrum(in, dom, lambda, count), true, {}};
        } catch (const std::runtime_error& e) {
            warning = std::string(e.what()) + " (" + path.string() + "); recomputing";
        }
    }
    Spectrum s = eigen_auto(dom, lambda, count);
    std::ostringstream text;
    write_spectrum(text, s);
    {
        std::lock_guard<std::mutex> lock(write_mutex());
        std::filesystem::create_directories(dir_);
        atomic_write(path, text.str());
    }
    // Hand back exactly what a later cache hit would read, so hit and miss agree bit for bit.
    std::istringstream back(text.str());
    Spectrum loaded = read_spectrum(back, dom, lambda, count);
    for (std::size_t i = 0; i < loaded.modes.size(); ++i) loaded.modes[i].analytic = s.modes[i].analytic;
    return {std::move(loaded), false, warning};
}

}  // namespace fracrobin
