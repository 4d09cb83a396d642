#pragma once

#include <string>

#include "mcm/partitions.hpp"
#include "mcm/report.hpp"
#include "mcm/series.hpp"

#include "json.hpp"

namespace mcm {

using Json = nlohmann::ordered_json;

// Canonical series form: {"vars": [...], "caps": [...], "mins": [...],
// "terms": [[[e...], "num/den"], ...]} with terms sorted lexicographically by
// exponent tuple. Round-trips bit-exactly.
Json series_to_json(const TruncSeries& s);
TruncSeries series_from_json(const Json& j);

Json partition_to_json(const Partition& lam);
Partition partition_from_json(const Json& j);

Json plane_partition_to_json(const PlanePartition& pi);
PlanePartition plane_partition_from_json(const Json& j);

Json report_to_json(const VerificationReport& rep);
std::string report_to_csv(const VerificationReport& rep);

}  // namespace mcm
