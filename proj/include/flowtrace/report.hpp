// pipeline orchestration: stage caching, artifact writers, CLI subcommands
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "flowtrace/config.hpp"

namespace flowtrace {

struct RunFlags {
    bool force = false;       // recompute even when stage stamps are fresh
    bool print_json = false;  // echo the summary JSON to stdout
};

// Each command validates its inputs, recomputes what it needs in memory, and
// rewrites only the artifacts whose stage inputs changed.  All throw Error.
void cmd_ingest(const RunConfig& cfg, const RunFlags& flags, std::ostream& log);
void cmd_cluster(const RunConfig& cfg, const RunFlags& flags, std::ostream& log);
void cmd_expand(const RunConfig& cfg, const RunFlags& flags, std::ostream& log);
void cmd_flows(const RunConfig& cfg, const RunFlags& flags, std::ostream& log);
void cmd_econ(const RunConfig& cfg, const RunFlags& flags, std::ostream& log, std::ostream& out);
void cmd_report(const RunConfig& cfg, const RunFlags& flags, std::ostream& log, std::ostream& out);

void cmd_synth(const std::string& spec_path, const std::string& out_dir,
               std::optional<std::uint64_t> seed_override, std::ostream& log);

// content hash used for stage stamps
std::uint64_t fnv64(std::string_view data);
std::uint64_t hash_file(const std::string& path);

} // namespace flowtrace
