#pragma once

#include <string>
#include <vector>

#include "freering/config.hpp"
#include "freering/outliers.hpp"
#include "freering/subordination.hpp"

namespace freering {

/// CSV with header "re,im", one row per eigenvalue, %.17g formatting so
/// values round-trip exactly.
std::string eigenvalues_csv(const std::vector<Complex>& eigenvalues);

/// Metadata record accompanying a spectrum run.
std::string spectrum_metadata_json(const ModelSpec& model, long n, std::uint64_t seed);

/// CSV with header "x,y,class"; class in {out, in, none}.
std::string domain_grid_csv(const DomainGrid& grid);

/// CSV rows (x, y, re_omega1, im_omega1, re_omega2, im_omega2, re_G,
/// im_G, residual) for each grid node z = x + i y with y > 0.
std::string subordination_csv(const std::vector<SubordinationSolution>& solutions);

std::string report_json(const OutlierReport& report);
OutlierReport report_from_json(const std::string& text);

std::string certificate_json(const SupportGapCertificate& cert);

/// Standalone SVG scatter: classified background cells, eigenvalues as
/// dots, spikes as crosses.
std::string scatter_svg(const DomainGrid& grid, const std::vector<Complex>& eigenvalues,
                        const std::vector<Complex>& spikes);

void write_file(const std::string& path, const std::string& content);

}  // namespace freering
