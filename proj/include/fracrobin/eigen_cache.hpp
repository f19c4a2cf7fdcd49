#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "fracrobin/robin_spectrum.hpp"

namespace fracrobin {

/// Parameter block identifying a spectrum (domain, mesh, lambda, modes, method).
std::string spectrum_parameters(const Domain& dom, const RobinCoefficient& lambda, std::size_t count,
                                SpectrumMethod method);

void write_spectrum(std::ostream& out, const Spectrum& s);
/// Parses a cache file and checks that it describes the requested spectrum.
/// Analytic axis factors are not stored, so loaded modes carry samples only.
Spectrum read_spectrum(std::istream& in, const Domain& dom, const RobinCoefficient& lambda, std::size_t count);

/// On-disk spectra keyed by a hash of the parameter block. Writes are
/// serialized process-wide and land atomically.
class EigenCache {
public:
    explicit EigenCache(std::filesystem::path dir);

    struct Result {
        Spectrum spectrum;
        bool hit;
        std::string warning;  // set when an unreadable cache file was replaced
    };

    Result get_or_compute(const Domain& dom, const RobinCoefficient& lambda, std::size_t count);
    std::filesystem::path path_for(const Domain& dom, const RobinCoefficient& lambda, std::size_t count) const;

private:
    std::filesystem::path dir_;
};

}  // namespace fracrobin
