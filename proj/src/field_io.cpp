#include "fracrobin/field_io.hpp"

#include <istream>
#include <sstream>
#include <stdexcept>

#include "fracrobin/text_io.hpp"

namespace fracrobin {

namespace {

[[noreturn]] void bad_field(const std::string& why) { throw std::runtime_error("unreadable field file: " + why); }

std::vector<double> split_reals(const std::string& line) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const auto comma = line.find(',', pos);
        const auto tok = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) bad_field("bad number '" + tok + "'");
        } catch (const std::logic_error&) {
            bad_field("bad number '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

std::string header_lines(const char* format_tag, const OutputHeader& h) {
    std::ostringstream o;
    o << "# " << format_tag << '\n';
    o << "# config_hash " << hex64(h.config_hash) << " tool_version " << kToolVersion << " seed " << h.seed << '\n';
    return o.str();
}

std::string field_csv(const SolutionField& f, const OutputHeader& h) {
    std::ostringstream o;
    const bool two_d = f.dom.kind() == DomainKind::rectangle;
    o << header_lines("fracrobin-field v1", h);
    o << "# grid " << (two_d ? "rectangle" : "interval") << ' ' << f.dom.nx() << ' ' << f.dom.ny() << ' '
      << format_real(f.dom.lx()) << ' ' << format_real(f.dom.ly()) << ' ' << f.steps << ' ' << format_real(f.T)
      << '\n';
    o << (two_d ? "t,x,y,u,u1,u2,u3,lift\n" : "t,x,u,u1,u2,u3,lift\n");
    const std::size_t nodes = f.nodes();
    for (std::size_t k = 0; k < f.time_count(); ++k) {
        const std::string t = format_real(f.time(k));
        for (std::size_t i = 0; i < nodes; ++i) {
            const auto p = f.dom.point(i);
            const std::size_t j = k * nodes + i;
            o << t << ',' << format_real(p[0]);
            if (two_d) o << ',' << format_real(p[1]);
            o << ',' << format_real(f.u[j]) << ',' << format_real(f.u1[j]) << ',' << format_real(f.u2[j]) << ','
              << format_real(f.u3[j]) << ',' << format_real(f.lift[j]) << '\n';
        }
    }
    return o.str();
}

SolutionField read_field_csv(std::istream& in, OutputHeader* header) {
    std::string line;
    if (!std::getline(in, line) || line != "# fracrobin-field v1") bad_field("missing format line");
    std::string kind;
    std::size_t nx = 0, ny = 0, steps = 0;
    double lx = 0.0, ly = 0.0, T = 0.0;
    bool have_grid = false;
    while (std::getline(in, line) && line.rfind("#", 0) == 0) {
        if (line.rfind("# grid ", 0) == 0) {
            std::istringstream g(line.substr(7));
            if (!(g >> kind >> nx >> ny >> lx >> ly >> steps >> T)) bad_field("bad grid line");
            have_grid = true;
        } else if (header && line.rfind("# config_hash ", 0) == 0) {
            std::istringstream h(line.substr(14));
            std::string hash, key, version, seed_key;
            if (h >> hash >> key >> version >> seed_key >> header->seed && seed_key == "seed") {
                try {
                    header->config_hash = std::stoull(hash, nullptr, 16);
                } catch (const std::logic_error&) {
                    bad_field("bad config_hash " + hash);
                }
            }
        }
    }
    if (!have_grid) bad_field("missing grid line");
    const bool two_d = kind == "rectangle";
    if (!two_d && kind != "interval") bad_field("unknown domain kind " + kind);
    const Domain dom = two_d ? Domain::rectangle(lx, ly, nx, ny) : Domain::interval(lx, nx);
    SolutionField f(dom, T, steps);
    const std::size_t cols = two_d ? 8 : 7;
    const std::size_t rows = f.u.size();
    for (std::size_t j = 0; j < rows; ++j) {
        if (!std::getline(in, line)) bad_field("truncated data");
        const auto v = split_reals(line);
        if (v.size() != cols) bad_field("wrong column count");
        const std::size_t o = two_d ? 3 : 2;
        f.u[j] = v[o];
        f.u1[j] = v[o + 1];
        f.u2[j] = v[o + 2];
        f.u3[j] = v[o + 3];
        f.lift[j] = v[o + 4];
    }
    return f;
}

std::string spectrum_csv(const Spectrum& s, const OutputHeader& h) {
    std::ostringstream o;
    o << header_lines("fracrobin-spectrum v1", h);
    o << "n,mu\n";
    for (const auto& m : s.modes) o << m.index << ',' << format_real(m.mu) << '\n';
    return o.str();
}

std::string verdict_csv(const std::vector<Verdict>& verdicts, int dim, const OutputHeader& h) {
    std::ostringstream o;
    o << header_lines("fracrobin-verdict v1", h);
    o << (dim == 2 ? "check,pass,witness_t,witness_x,witness_y,value,margin,tol\n"
                   : "check,pass,witness_t,witness_x,value,margin,tol\n");
    for (const auto& v : verdicts) {
        const char* pass = v.status == VerdictStatus::pass ? "1" : v.status == VerdictStatus::fail ? "0" : "na";
        o << v.check << ',' << pass << ',' << format_real(v.witness_t) << ',' << format_real(v.witness_x[0]);
        if (dim == 2) o << ',' << format_real(v.witness_x[1]);
        o << ',' << format_real(v.value) << ',' << format_real(v.margin) << ',' << format_real(v.tol) << '\n';
    }
    return o.str();
}

std::string residual_csv(const ResidualReport& r, const SolutionField& f, const OutputHeader& h) {
    std::ostringstream o;
    o << header_lines("fracrobin-residual v1", h);
    o << "quantity,value\n";
    o << "interior_max," << format_real(r.interior_max) << '\n';
    o << "interior_l2," << format_real(r.interior_l2) << '\n';
    o << "boundary_max," << format_real(r.boundary_max) << '\n';
    o << "boundary_l2," << format_real(r.boundary_l2) << '\n';
    o << "initial_error," << format_real(f.initial_error) << '\n';
    o << "tail_u0," << format_real(f.tail_u0) << '\n';
    o << "tail_f," << format_real(f.tail_f) << '\n';
    o << "modes_used," << f.modes_used << '\n';
    return o.str();
}

}  // namespace fracrobin
