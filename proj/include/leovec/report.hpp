#pragma once

// ---------------------------------------------------------------------------
// Reshapes run summaries into plot-ready tables.  No rendering: the output
// is plain CSV a bar-chart or box-plot tool consumes directly.
// ---------------------------------------------------------------------------

#include <string>
#include <vector>

#include "leovec/errors.hpp"

namespace leovec {

struct ReportError : Error {
  using Error::Error;
};

struct ReportPaths {
  std::string bars_csv;       // policy,sigma,t_o_max,P_RT,P_D
  std::string mix_csv;        // C_LEO,s,frac_onboard,frac_offload,frac_drop,rho
  std::string delay_box_csv;  // policy,sigma,t_o_max,min,q1,median,q3,max
  int runs = 0;               // summaries consumed
};

// Scans results_dir (non-recursive) for summary JSONs and writes the three
// tables into out_dir, one row per run, rows sorted by their key columns.
// Throws ReportError when the directory holds no summaries.
ReportPaths write_report(const std::string& results_dir,
                         const std::string& out_dir);

}  // namespace leovec
