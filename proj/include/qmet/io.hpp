#pragma once

#include "qmet/bounds.hpp"
#include "qmet/estimator.hpp"
#include "qmet/spectra.hpp"
#include "qmet/states.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace qmet::io {

// Text grammar `kind:arg1,arg2,...` with `@path.json` escape.  Generators:
//   jz:n | jz_pow:n,q | n_jz:n | roy_h:n | roy_a:n | multipass:K |
//   number_fn:cutoff[,power]
// States:
//   ghz:n | plus_product:K | coherent:mean[,mass] | minmax:<generator spec>
// JSON objects use {"kind": ..., ...}; generators add "sum" (with "parts"),
// number_fn accepts explicit "values"; states add "tensor" and "mixture".
// Throws SpecParseError naming the offending key.
SpectralGenerator parse_generator(const std::string& spec);
SpectralGenerator generator_from_json(const nlohmann::json& j);
PureState parse_state(const std::string& spec);
PureState state_from_json(const nlohmann::json& j);

// Nearest double to x rounded to `digits` significant decimal digits.
double round_sig(double x, int digits = 9);

// Serializers.  All numeric values are rounded to 9 significant digits.
// When `bits` is set, entropic quantities are reported in bits (divided by
// ln 2) and tagged by an "entropy_units" field; default is nats.
nlohmann::json to_json(const ResourceAccount& r);
nlohmann::json to_json(const BoundReport& r, bool bits = false);
nlohmann::json to_json(const EstimationReport& r, bool bits = false);
nlohmann::json to_json(const ScanReport& r);

void write_csv(std::ostream& os, const std::vector<TrialRecord>& records);

} // namespace qmet::io
