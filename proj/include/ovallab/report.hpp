#ifndef OVALLAB_REPORT_HPP
#define OVALLAB_REPORT_HPP

#include <map>
#include <string>

#include <json.hpp>

#include "ovallab/bridge.hpp"
#include "ovallab/curve_operator.hpp"
#include "ovallab/optimize.hpp"
#include "ovallab/schrodinger.hpp"

namespace ovallab {

using json = nlohmann::json;

json to_json(const UniformGrid& g);
json to_json(const GridFunction& f);
json to_json(const CurveSpec& c);
json to_json(const ClosureResidual& r);
json to_json(const HalfBoundCertificate& c);
json to_json(const BridgeReport& r);
json to_json(const SingleBridgeReport& r);
json to_json(const XYReport& r);
json to_json(const LTReport& r);
json to_json(const OptimizationTrace& t);
json to_json(const Spectrum& s);

/// Key/value block reproduced at the top of every output so a run can be
/// replayed exactly: tool version, resolved config, seed, discretization.
using Metadata = std::map<std::string, std::string>;

std::string csv_metadata_header(const Metadata& meta);
json json_metadata(const Metadata& meta);

/// Four-column curve export `s,R,phi,kappa`.
std::string bridge_curve_csv(const BridgeReport& r, const Metadata& meta);

/// Full reproduction record for a candidate violation of the lowest-eigenvalue
/// conjecture at g = 1: the curve, both discretizations at doubled resolution,
/// and the Fourier certificate. Returns the path written. Safe to call from
/// concurrent sweeps.
std::string write_counterexample_dump(const CurveSpec& curve, double g, int resolution,
                                      const std::string& directory);

}  // namespace ovallab

#endif
