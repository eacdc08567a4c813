// flowtrace CLI: ledger forensics pipeline driver
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flowtrace/config.hpp"
#include "flowtrace/dates.hpp"
#include "flowtrace/error.hpp"
#include "flowtrace/report.hpp"

namespace {

// option storage shared by the analysis subcommands (exactly one parses)
struct Opts {
    std::string config;
    std::string ledger, seeds, tags, rates, out;
    std::string mode, bucket;
    std::vector<std::string> starts;
    bool interpolate = false;
    bool force = false;
    bool json = false;
};

void add_common(CLI::App* sub, Opts& o) {
    sub->add_option("-c,--config", o.config, "run configuration file (INI)");
    sub->add_option("--ledger", o.ledger, "ledger JSONL path");
    sub->add_option("--out", o.out, "artifact output directory");
    sub->add_flag("--force", o.force, "recompute even when cached artifacts are fresh");
}

void add_analysis(CLI::App* sub, Opts& o) {
    sub->add_option("--seeds", o.seeds, "seed address CSV path");
    sub->add_option("--tags", o.tags, "tag CSV path");
    sub->add_option("--rates", o.rates, "daily close rate CSV path");
    sub->add_option("--indegree-mode", o.mode, "key address indegree mode")
        ->check(CLI::IsMember({"distinct_sources", "distinct_txs"}));
    sub->add_option("--bucket", o.bucket, "series bucket granularity")
        ->check(CLI::IsMember({"day", "week", "month"}));
    sub->add_flag("--interpolate-rates", o.interpolate,
                  "fill rate gaps by linear interpolation");
    sub->add_option("--start", o.starts, "campaign start month override, FAMILY=YYYY-MM")
        ->type_name("FAMILY=YYYY-MM");
}

flowtrace::RunConfig make_config(const Opts& o) {
    flowtrace::RunConfig cfg;
    if (!o.config.empty()) cfg = flowtrace::load_run_config(o.config);
    if (!o.ledger.empty()) cfg.ledger = o.ledger;
    if (!o.seeds.empty()) cfg.seeds = o.seeds;
    if (!o.tags.empty()) cfg.tags = o.tags;
    if (!o.rates.empty()) cfg.rates = o.rates;
    if (!o.out.empty()) cfg.out_dir = o.out;
    if (!o.mode.empty())
        cfg.indegree_mode = o.mode == "distinct_txs" ? flowtrace::IndegreeMode::DistinctTxs
                                                     : flowtrace::IndegreeMode::DistinctSources;
    if (!o.bucket.empty())
        cfg.bucket = o.bucket == "day"    ? flowtrace::Bucket::Day
                     : o.bucket == "week" ? flowtrace::Bucket::Week
                                          : flowtrace::Bucket::Month;
    if (o.interpolate) cfg.interpolate_rates = true;
    for (const auto& s : o.starts) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) flowtrace::fail_input("bad --start '" + s + "'");
        auto ym = flowtrace::parse_month(s.substr(eq + 1));
        if (!ym) flowtrace::fail_input("bad --start month in '" + s + "'");
        cfg.starts[s.substr(0, eq)] = *ym;
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"flowtrace: address-graph forensics over a transaction ledger"};
    app.require_subcommand(1);

    Opts o;
    CLI::App* ing = app.add_subcommand("ingest", "validate the ledger and index addresses");
    CLI::App* clu = app.add_subcommand("cluster", "group addresses by co-spending");
    CLI::App* exp = app.add_subcommand("expand", "expand seed addresses into campaign sets");
    CLI::App* flo = app.add_subcommand("flows", "trace outgoing flows and key addresses");
    CLI::App* eco = app.add_subcommand("econ", "estimate lower-bound financial impact");
    CLI::App* rep = app.add_subcommand("report", "run the full pipeline and write all artifacts");
    for (CLI::App* sub : {ing, clu, exp, flo, eco, rep}) add_common(sub, o);
    for (CLI::App* sub : {exp, flo, eco, rep}) add_analysis(sub, o);
    for (CLI::App* sub : {eco, rep})
        sub->add_flag("--json", o.json, "echo the summary JSON to stdout");

    std::string spec_path, synth_out = "out";
    std::uint64_t seed = 0;
    CLI::App* syn = app.add_subcommand("synth", "generate a synthetic world with ground truth");
    syn->add_option("spec", spec_path, "world spec file (INI)")->required();
    syn->add_option("--out", synth_out, "output directory");
    CLI::Option* seed_opt = syn->add_option("--seed", seed, "override the spec RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*syn) {
            std::optional<std::uint64_t> s;
            if (seed_opt->count() > 0) s = seed;
            flowtrace::cmd_synth(spec_path, synth_out, s, std::cerr);
            return 0;
        }
        flowtrace::RunConfig cfg = make_config(o);
        flowtrace::RunFlags flags{o.force, o.json};
        if (*ing) flowtrace::cmd_ingest(cfg, flags, std::cerr);
        if (*clu) flowtrace::cmd_cluster(cfg, flags, std::cerr);
        if (*exp) flowtrace::cmd_expand(cfg, flags, std::cerr);
        if (*flo) flowtrace::cmd_flows(cfg, flags, std::cerr);
        if (*eco) flowtrace::cmd_econ(cfg, flags, std::cerr, std::cout);
        if (*rep) flowtrace::cmd_report(cfg, flags, std::cerr, std::cout);
        return 0;
    } catch (const flowtrace::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
