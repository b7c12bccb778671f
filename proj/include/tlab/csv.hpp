#pragma once

// Deterministic CSV output. Numbers render with "%.12g" so identical runs
// produce identical bytes; the seconds column stays empty unless timings
// were requested, keeping default outputs reproducible.

#include <string>
#include <vector>

#include "tlab/experiments.hpp"

namespace tlab {

std::string csv_double(double v);
std::string csv_field(const std::string& s);

// header: m,p,d,quantity,lower,upper,certified,method,iterations,residual,seconds
std::string rows_to_csv(const std::vector<ExperimentRow>& rows, bool timings);

// write via a temp file in the same directory, then rename into place
void atomic_write(const std::string& path, const std::string& content);

}  // namespace tlab
