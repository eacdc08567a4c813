#include <doctest.h>

#include <sstream>

#include "flowtrace/csv.hpp"
#include "flowtrace/error.hpp"
#include "flowtrace/ini.hpp"
#include "helpers.hpp"

using namespace flowtrace;
using testutil::TempDir;
using testutil::write_file;

TEST_CASE("csv line splitting") {
    std::vector<std::string> f;
    CHECK(split_csv_line("a,b,c", f));
    CHECK(f == std::vector<std::string>{"a", "b", "c"});

    CHECK(split_csv_line("a,,c", f));
    CHECK(f == std::vector<std::string>{"a", "", "c"});

    CHECK(split_csv_line("\"x,y\",z", f));
    CHECK(f == std::vector<std::string>{"x,y", "z"});

    CHECK(split_csv_line("\"he said \"\"hi\"\"\",b", f));
    CHECK(f == std::vector<std::string>{"he said \"hi\"", "b"});

    CHECK(split_csv_line("", f));
    CHECK(f == std::vector<std::string>{""});

    CHECK(!split_csv_line("\"unbalanced", f));
}

TEST_CASE("csv escaping and writing") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("with,comma") == "\"with,comma\"");
    CHECK(csv_escape("with\"quote") == "\"with\"\"quote\"");
    CHECK(csv_escape("") == "");

    std::ostringstream os;
    write_csv_row(os, {"a", "b,c", "d"});
    CHECK(os.str() == "a,\"b,c\",d\n");
}

TEST_CASE("csv file reading") {
    TempDir dir;
    auto path = write_file(dir, "t.csv", "x,y\n1,2\n\n\"a,b\",3\n");
    auto rows = read_csv(path, {"x", "y"});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].line == 2);
    CHECK(rows[0].fields == std::vector<std::string>{"1", "2"});
    CHECK(rows[1].line == 4);  // blank line skipped but counted
    CHECK(rows[1].fields == std::vector<std::string>{"a,b", "3"});

    CHECK_THROWS_AS(read_csv(path, {"x", "z"}), Error);
    auto bad = write_file(dir, "bad.csv", "x,y\n1,2,3\n");
    CHECK_THROWS_WITH_AS(read_csv(bad, {"x", "y"}),
                         doctest::Contains("expected 2 fields"), Error);
    CHECK_THROWS_AS(read_csv(dir.file("missing.csv"), {"x"}), Error);
}

TEST_CASE("ini parsing") {
    TempDir dir;
    auto path = write_file(dir, "c.ini",
                           "# comment\n"
                           "alpha = 1\n"
                           "name = \"quoted value\"\n"
                           "; another comment\n"
                           "[first]\n"
                           "k = v\n"
                           "[second]\n"
                           "k = w\n");
    IniFile ini = parse_ini(path);
    CHECK(ini.globals.at("alpha") == "1");
    CHECK(ini.globals.at("name") == "quoted value");
    REQUIRE(ini.sections.size() == 2);
    CHECK(ini.sections[0].first == "first");
    CHECK(ini.sections[0].second.at("k") == "v");
    CHECK(ini.sections[1].first == "second");
    CHECK(ini.sections[1].second.at("k") == "w");
}

TEST_CASE("ini errors carry file and line") {
    TempDir dir;
    auto dup = write_file(dir, "dup.ini", "a = 1\na = 2\n");
    CHECK_THROWS_WITH_AS(parse_ini(dup), doctest::Contains(":2:"), Error);

    auto dupsec = write_file(dir, "ds.ini", "[s]\nk=1\n[s]\nk=2\n");
    CHECK_THROWS_AS(parse_ini(dupsec), Error);

    auto noeq = write_file(dir, "ne.ini", "just words\n");
    CHECK_THROWS_WITH_AS(parse_ini(noeq), doctest::Contains(":1:"), Error);

    CHECK_THROWS_AS(parse_ini(dir.file("missing.ini")), Error);
}
