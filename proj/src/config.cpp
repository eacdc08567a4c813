#include "flowtrace/config.hpp"

#include "flowtrace/error.hpp"
#include "flowtrace/ini.hpp"

namespace flowtrace {

std::string_view indegree_mode_name(IndegreeMode mode) {
    return mode == IndegreeMode::DistinctSources ? "distinct_sources" : "distinct_txs";
}

std::string_view bucket_name(Bucket bucket) {
    switch (bucket) {
        case Bucket::Day: return "day";
        case Bucket::Week: return "week";
        case Bucket::Month: return "month";
    }
    return "month";
}

RunConfig load_run_config(const std::string& path) {
    IniFile ini = parse_ini(path);
    RunConfig cfg;
    for (const auto& [key, value] : ini.globals) {
        if (key == "ledger")
            cfg.ledger = value;
        else if (key == "seeds")
            cfg.seeds = value;
        else if (key == "tags")
            cfg.tags = value;
        else if (key == "rates")
            cfg.rates = value;
        else if (key == "out")
            cfg.out_dir = value;
        else if (key == "indegree_mode") {
            if (value == "distinct_sources")
                cfg.indegree_mode = IndegreeMode::DistinctSources;
            else if (value == "distinct_txs")
                cfg.indegree_mode = IndegreeMode::DistinctTxs;
            else
                fail_input(path + ": unknown indegree_mode '" + value + "'");
        } else if (key == "bucket") {
            if (value == "day")
                cfg.bucket = Bucket::Day;
            else if (value == "week")
                cfg.bucket = Bucket::Week;
            else if (value == "month")
                cfg.bucket = Bucket::Month;
            else
                fail_input(path + ": unknown bucket '" + value + "'");
        } else if (key == "interpolate_rates")
            cfg.interpolate_rates = value == "true" || value == "1";
        else
            fail_input(path + ": unknown config key '" + key + "'");
    }
    for (const auto& [family, section] : ini.sections) {
        for (const auto& [key, value] : section) {
            if (key != "start")
                fail_input(path + ": unknown key '" + key + "' in [" + family + "]");
            auto ym = parse_month(value);
            if (!ym)
                fail_input(path + ": bad start month '" + value + "' in [" + family + "]");
            cfg.starts[family] = *ym;
        }
    }
    return cfg;
}

} // namespace flowtrace
