#pragma once

#include <string>

#include <json.hpp>

#include "sievelab/gpy.hpp"
#include "sievelab/largegap.hpp"
#include "sievelab/mk.hpp"
#include "sievelab/montecarlo.hpp"
#include "sievelab/sieve.hpp"
#include "sievelab/stats.hpp"
#include "sievelab/tuples.hpp"

namespace sievelab {

using Json = nlohmann::ordered_json;

Json to_json(const GapRecord& g);
Json to_json(const AdmissibleTuple& t);
Json to_json(const Refutation& r);
Json to_json(const StatReport& s);
Json to_json(const PigeonholeReport& r);
Json to_json(const MertensSums& m);
Json to_json(const ErdosKacResult& e);
Json to_json(const GpyParams& p);
Json to_json(const GpyReport& r);
Json to_json(const MkCertificate& c);
Json to_json(const GBoundResult& g);
Json to_json(const GapBoundReport& r);
Json to_json(const IJEstimate& e);
Json to_json(const CoveringSystem& s);
Json to_json(const CompositeRun& r);

/// Prime -> avoided residue, keys as decimal strings.
Json certificate_json(const AdmissibleTuple& t);

/// Inverse of to_json(MkCertificate) for the poly method.
MkCertificate certificate_from_json(const Json& j);

/// One "path,value" line per scalar leaf, in document order. Values use the
/// same number formatting as the JSON dump.
std::string flatten_csv(const Json& j);

/// Header "x,statistic,value,reference,deviation" plus one row per report.
std::string stat_rows_csv(const Json& rows);

}  // namespace sievelab
