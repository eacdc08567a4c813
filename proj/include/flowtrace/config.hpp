// run configuration: input paths, per-family start months, analysis knobs
#pragma once

#include <map>
#include <string>

#include "flowtrace/dates.hpp"
#include "flowtrace/econ.hpp"
#include "flowtrace/flows.hpp"

namespace flowtrace {

struct RunConfig {
    std::string ledger;
    std::string seeds;
    std::string tags;
    std::string rates;
    std::string out_dir = "out";
    IndegreeMode indegree_mode = IndegreeMode::DistinctSources;
    Bucket bucket = Bucket::Month;
    bool interpolate_rates = false;
    std::map<std::string, YearMonth> starts;  // family → campaign start month
};

// INI config: global keys ledger/seeds/tags/rates/out/indegree_mode/bucket/
// interpolate_rates plus one `[family]` section per family with `start`
RunConfig load_run_config(const std::string& path);

std::string_view indegree_mode_name(IndegreeMode mode);
std::string_view bucket_name(Bucket bucket);

} // namespace flowtrace
