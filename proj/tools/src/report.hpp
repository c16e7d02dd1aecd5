#pragma once

#include <json.hpp>

#include "harmvmd/baselines.hpp"
#include "harmvmd/fbd.hpp"
#include "harmvmd/hht.hpp"
#include "harmvmd/kselect.hpp"
#include "harmvmd/vmd.hpp"

namespace harmvmd::report {

using nlohmann::ordered_json;

inline constexpr int schema_version = 1;

std::string to_string(VmdInit init);

ordered_json to_json(const ToneSpec& t);
ordered_json to_json(const VmdParams& p);
ordered_json to_json(const FbdOptions& o);
ordered_json to_json(const PruneConfig& p);
ordered_json to_json(const KSelectConfig& c);
ordered_json to_json(const HhtConfig& c);
ordered_json to_json(const EmdConfig& c);

ordered_json decomposition_meta(const VmdDecomposition& d);
ordered_json to_json(const KSelectionTrace& t);
ordered_json to_json(const ComponentSummary& c);
ordered_json to_json(const DetectionReport& r);
ordered_json to_json(const FbdEstimate& e);
ordered_json to_json(const MethodComparison& m);

/// Non-finite doubles become null; everything else is kept as is.
ordered_json number(double v);

}  // namespace harmvmd::report
