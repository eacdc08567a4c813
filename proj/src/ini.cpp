#include "flowtrace/ini.hpp"

#include <fstream>

#include "flowtrace/error.hpp"

namespace flowtrace {

namespace {
std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return s.substr(1, s.size() - 2);
    return s;
}
} // namespace

IniFile parse_ini(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_input("cannot open config file: " + path);

    IniFile ini;
    IniFile::Section* current = &ini.globals;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t.front() == '#' || t.front() == ';') continue;

        auto where = [&] { return path + ":" + std::to_string(lineno) + ": "; };
        if (t.front() == '[') {
            if (t.back() != ']') fail_input(where() + "unterminated section header");
            std::string name = trim(t.substr(1, t.size() - 2));
            if (name.empty()) fail_input(where() + "empty section name");
            for (const auto& [n, s] : ini.sections)
                if (n == name) fail_input(where() + "duplicate section [" + name + "]");
            ini.sections.emplace_back(name, IniFile::Section{});
            current = &ini.sections.back().second;
            continue;
        }

        std::size_t eq = t.find('=');
        if (eq == std::string::npos) fail_input(where() + "expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = unquote(trim(t.substr(eq + 1)));
        if (key.empty()) fail_input(where() + "empty key");
        if (!current->emplace(key, value).second)
            fail_input(where() + "duplicate key '" + key + "'");
    }
    return ini;
}

} // namespace flowtrace
