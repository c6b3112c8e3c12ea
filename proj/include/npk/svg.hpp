#pragma once

#include <string>

#include "npk/spectra.hpp"

namespace npk::svg {

// Self-contained semilog plot of enclosure bands [lo, hi] against n.
// `key` selects the series: "lambda0" or an aux column name. The band is
// drawn as a filled polygon between the two log-scaled edges so the
// certification width stays visible.
std::string semilog_band_plot(const Trajectory& t, const std::string& key,
                              const std::string& title);

}  // namespace npk::svg
