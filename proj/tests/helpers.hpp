// shared test fixtures: scratch dirs, tiny on-disk ledgers, flat rate tables
#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "flowtrace/dates.hpp"
#include "flowtrace/ledger.hpp"
#include "flowtrace/rates.hpp"

namespace testutil {

struct TempDir {
    std::filesystem::path path;

    TempDir() {
        std::string tmpl = (std::filesystem::temp_directory_path() / "ft_test_XXXXXX").string();
        path = ::mkdtemp(tmpl.data());
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline std::string write_file(const TempDir& dir, const std::string& name,
                              const std::string& content) {
    std::string p = dir.file(name);
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

using Slots = std::vector<std::pair<std::string, std::uint64_t>>;

// one JSONL transaction record; txid is the zero-padded decimal of `id`
inline std::string tx_line(unsigned id, std::int64_t height, std::int64_t time, const Slots& ins,
                           const Slots& outs) {
    std::ostringstream os;
    char txid[80];
    std::snprintf(txid, sizeof(txid), "%064u", id);
    os << "{\"txid\":\"" << txid << "\",\"height\":" << height << ",\"time\":" << time << ",";
    auto slots = [&os](const char* key, const Slots& ss) {
        os << '"' << key << "\":[";
        for (std::size_t i = 0; i < ss.size(); ++i) {
            if (i) os << ',';
            os << "{\"addr\":\"" << ss[i].first << "\",\"value\":" << ss[i].second << '}';
        }
        os << ']';
    };
    slots("inputs", ins);
    os << ',';
    slots("outputs", outs);
    os << '}';
    return os.str();
}

inline flowtrace::LedgerStore ingest_lines(const TempDir& dir,
                                           const std::vector<std::string>& lines,
                                           const std::string& name = "ledger.jsonl") {
    std::ostringstream os;
    for (const auto& l : lines) os << l << '\n';
    return flowtrace::LedgerStore::ingest(write_file(dir, name, os.str()));
}

// flat table covering [day_lo, day_hi] at a fixed cents-per-BTC close
inline flowtrace::RateTable flat_rates(std::int64_t day_lo, std::int64_t day_hi,
                                       flowtrace::Cents close) {
    flowtrace::RateTable t;
    for (std::int64_t d = day_lo; d <= day_hi; ++d) t.set(d, close);
    return t;
}

inline flowtrace::RateTable rates_for(const flowtrace::LedgerStore& store,
                                      flowtrace::Cents close) {
    std::int64_t lo = 0, hi = 0;
    bool first = true;
    for (const auto& tx : store.transactions()) {
        std::int64_t d = flowtrace::day_of_epoch_seconds(tx.timestamp);
        if (first || d < lo) lo = d;
        if (first || d > hi) hi = d;
        first = false;
    }
    return flat_rates(lo - 1, hi + 1, close);
}

} // namespace testutil
