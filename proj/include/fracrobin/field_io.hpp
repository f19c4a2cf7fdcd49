#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fracrobin/principles.hpp"
#include "fracrobin/problem.hpp"
#include "fracrobin/robin_spectrum.hpp"
#include "fracrobin/spectral_solver.hpp"

namespace fracrobin {

/// Provenance written as comment lines at the top of every CSV.
struct OutputHeader {
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
};

std::string header_lines(const char* format_tag, const OutputHeader& h);

/// `# fracrobin-field v1`, provenance, a `# grid` line, then
/// t,x[,y],u,u1,u2,u3,lift rows (time-major).
std::string field_csv(const SolutionField& f, const OutputHeader& h);
/// Fills `header` (when given) from the provenance line if one is present.
SolutionField read_field_csv(std::istream& in, OutputHeader* header = nullptr);

std::string spectrum_csv(const Spectrum& s, const OutputHeader& h);
std::string verdict_csv(const std::vector<Verdict>& verdicts, int dim, const OutputHeader& h);
std::string residual_csv(const ResidualReport& r, const SolutionField& f, const OutputHeader& h);

}  // namespace fracrobin
