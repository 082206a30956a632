#pragma once

#include "dyneval/config.hpp"
#include "dyneval/dataset.hpp"
#include "dyneval/report.hpp"

namespace dyneval {

/// Scores every (element, mode, characteristic, criterion) cell, runs both
/// hierarchies and the global check. Pure: identical inputs give identical reports.
ReportDocument evaluate(const Dataset& dataset, const RunConfig& config,
                        double examination_time = 0.0);

}  // namespace dyneval
