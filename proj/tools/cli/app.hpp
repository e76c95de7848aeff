#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "knotbb/elastic.hpp"

namespace knotbb::cli {

// Dispatches one invocation. Exit codes: 0 success, 1 domain error (invalid
// fraction, delta mismatch, guard trips), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Curve export, byte-deterministic for a fixed curve.
void export_curve(const elastic::PolygonalCurve& c, const std::string& path,
                  const std::string& format);

// One JSON record per input line; parse failures are recorded per line
// without aborting the batch.
void batch_classify(std::istream& in, std::ostream& out);

}  // namespace knotbb::cli
