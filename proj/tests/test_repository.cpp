#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <string>

#include "tql/csv.hpp"
#include "tql/render.hpp"
#include "tql/repository.hpp"

using namespace tql;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tql_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int n = 0;
        return n;
    }
    void file(const std::string& name, const std::string& text) const {
        std::ofstream out(path / name, std::ios::binary);
        out << text;
    }
};

void expect_csv_error(const std::string& text, std::size_t line, std::size_t col,
                      const std::string& needle) {
    CAPTURE(text);
    try {
        parse_csv(text, "d");
        FAIL("expected a CSV error");
    } catch (const CsvError& e) {
        CAPTURE(e.what());
        CHECK(e.line == line);
        CHECK(e.column == col);
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
}

}  // namespace

TEST_CASE("columns become numeric only when every cell parses as a number") {
    const Dataset d = parse_csv("id,label\n007,x1\n2.50,9\n", "d");
    REQUIRE(d.kinds() == std::vector<Kind>{Kind::Number, Kind::Text});
    REQUIRE(d.row_count() == 2);
    CHECK(d.rows()[0][0] == Value(2.5));
    CHECK(d.rows()[1][0] == Value(7.0));
    CHECK(d.rows()[1][1] == Value("x1"));
}

TEST_CASE("quoted fields carry commas, doubled quotes, and newlines") {
    const Dataset d = parse_csv("a,b\n\"x,y\",\"say \"\"hi\"\"\"\n\"two\nlines\",plain\n", "d");
    REQUIRE(d.row_count() == 2);
    CHECK(d.rows()[0][0] == Value("two\nlines"));
    CHECK(d.rows()[0][1] == Value("plain"));
    CHECK(d.rows()[1][0] == Value("x,y"));
    CHECK(d.rows()[1][1] == Value("say \"hi\""));
}

TEST_CASE("byte order marks and CRLF line endings are tolerated") {
    const Dataset d = parse_csv("\xEF\xBB\xBFq,r\r\n1,2\r\n", "d");
    CHECK(d.attributes() == std::vector<std::string>{"q", "r"});
    REQUIRE(d.row_count() == 1);
    CHECK(d.rows()[0][1] == Value(2.0));
}

TEST_CASE("a header-only document yields an empty all-text dataset") {
    const Dataset d = parse_csv("a,b\n", "d");
    CHECK(d.row_count() == 0);
    CHECK(d.kinds() == std::vector<Kind>{Kind::Text, Kind::Text});
}

TEST_CASE("duplicate rows collapse under set semantics") {
    const Dataset d = parse_csv("a\n1\n1\n2\n1\n", "d");
    CHECK(d.row_count() == 2);
}

TEST_CASE("malformed CSV input is rejected with its position") {
    expect_csv_error("", 1, 1, "empty input");
    expect_csv_error("a,b\n1\n", 2, 1, "row has 1 cell(s), expected 2");
    expect_csv_error("a,b\n1,\n", 2, 3, "empty cell");
    expect_csv_error("a,a\n", 1, 3, "duplicate header 'a'");
    expect_csv_error("a,\n", 1, 3, "empty header name");
    expect_csv_error("a\n1e999\n", 2, 1, "non-finite numeric literal '1e999'");
    expect_csv_error("a\nnan\n", 2, 1, "non-finite numeric literal 'nan'");
    expect_csv_error("a\n\"x\n", 2, 1, "unterminated quoted field");
    expect_csv_error("a\n\"x\"y\n", 2, 4, "content after a closing quote");
    expect_csv_error("a\nx\"y\n", 2, 2, "quote inside an unquoted field");
}

TEST_CASE("a repository loads every csv in a directory by file stem") {
    TempDir dir;
    dir.file("people.csv", "name,age\nann,34\nbob,22\n");
    dir.file("sales.csv", "qty\n7\n");
    dir.file("notes.txt", "not a dataset");

    const Repository repo = load_repository(dir.path);
    CHECK(repo.size() == 2);
    CHECK(repo.names() == std::vector<std::string>{"people", "sales"});
    CHECK(repo.lookup("people").row_count() == 2);
    CHECK(repo.lookup("sales").kinds() == std::vector<Kind>{Kind::Number});
    CHECK(repo.contains("people"));
    CHECK_FALSE(repo.contains("notes"));
}

TEST_CASE("loading reports each bad file with path, line, and column") {
    TempDir dir;
    dir.file("good.csv", "a\n1\n");
    dir.file("bad.csv", "a,b\n1,\n");
    try {
        load_repository(dir.path);
        FAIL("expected a load failure");
    } catch (const RepositoryError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("repository load failed") != std::string::npos);
        CHECK(msg.find("bad.csv:2:3: empty cell") != std::string::npos);
    }
    CHECK_THROWS_AS(load_repository(dir.path / "missing"), RepositoryError);
}

TEST_CASE("unknown dataset lookups suggest close names") {
    Repository repo;
    repo.add(Dataset("people", {"a"}, {Kind::Text}, {}));
    repo.add(Dataset("peoples", {"a"}, {Kind::Text}, {}));
    repo.add(Dataset("unrelated", {"a"}, {Kind::Text}, {}));

    CHECK_THROWS_WITH(repo.lookup("zzzzzz"), "unknown dataset 'zzzzzz'");
    CHECK_THROWS_WITH(repo.lookup("pple"), Catch::Matchers::ContainsSubstring(
                                               "did you mean 'people'?"));
    CHECK_THROWS_WITH(repo.lookup("poople"),
                      Catch::Matchers::ContainsSubstring(
                          "did you mean one of: 'people' 'peoples'?"));

    CHECK_THROWS_WITH(repo.add(Dataset("people", {"x"}, {Kind::Text}, {})),
                      "duplicate dataset name 'people'");
    CHECK_THROWS_WITH(repo.add(Dataset("", {"x"}, {Kind::Text}, {})),
                      "dataset has no name");
}

TEST_CASE("csv rendering round trips through the parser") {
    const Dataset d("tricky", {"label", "qty"}, {Kind::Text, Kind::Number},
                    {{Value("a,b"), Value(1.0)},
                     {Value("say \"hi\""), Value(2.5)},
                     {Value(" padded "), Value(-3.0)}});
    const std::string csv = render_dataset(d, OutputFormat::Csv);
    const Dataset back = parse_csv(csv, "tricky");
    CHECK(back == d);
    CHECK(csv.find("\"a,b\"") != std::string::npos);
    CHECK(csv.find("\"say \"\"hi\"\"\"") != std::string::npos);
    CHECK(csv.find("\" padded \"") != std::string::npos);
}

TEST_CASE("table rendering aligns columns under a header rule") {
    const Dataset d("people", {"name", "age"}, {Kind::Text, Kind::Number},
                    {{Value("ann"), Value(34.0)}, {Value("bob"), Value(22.0)}});
    CHECK(render_dataset(d, OutputFormat::Table) ==
          "name | age\n"
          "-----+----\n"
          "ann  | 34\n"
          "bob  | 22\n");

    const Dataset solo("q", {"qty"}, {Kind::Number}, {{Value(7.0)}});
    CHECK(render_dataset(solo, OutputFormat::Csv) == "qty\n7\n");
}
