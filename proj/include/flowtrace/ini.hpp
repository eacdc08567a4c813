// minimal INI reader: top-level keys, [section] blocks, # / ; comments
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace flowtrace {

struct IniFile {
    using Section = std::map<std::string, std::string>;
    Section globals;
    std::vector<std::pair<std::string, Section>> sections;  // file order
};

// values are trimmed; surrounding double quotes are stripped; duplicate
// keys or duplicate section names are fatal
IniFile parse_ini(const std::string& path);

} // namespace flowtrace
