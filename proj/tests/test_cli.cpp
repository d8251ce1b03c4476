#include "bohr/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using bohr::cli::run_cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        v.push_back(line);
    }
    return v;
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("bohr_cli_test_" + name);
}

} // namespace

TEST_CASE("format_real")
{
    using bohr::cli::format_real;
    CHECK(format_real(1.0 / 3.0) == "0.333333333333");
    CHECK(format_real(0.4) == "0.4");
    CHECK(format_real(1.0) == "1");
    CHECK(format_real(1.5e-20) == "1.5e-20");
}

TEST_CASE("table writers")
{
    bohr::cli::Table t{{"a", "b", "c"}, {{std::int64_t{1}, 0.5, std::string("x")}, {std::int64_t{-2}, 1e-3, std::string("y")}}};
    std::ostringstream csv;
    bohr::cli::write_table(t, bohr::cli::Format::Csv, csv);
    CHECK(csv.str() == "a,b,c\n1,0.5,x\n-2,0.001,y\n");
    std::ostringstream jl;
    bohr::cli::write_table(t, bohr::cli::Format::JsonLines, jl);
    const auto ls = lines(jl.str());
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == R"({"a":1,"b":0.5,"c":"x"})");
    const auto obj = nlohmann::json::parse(ls[1]);
    CHECK(obj["a"] == -2);
    CHECK(obj["c"] == "y");
}

TEST_CASE("radii command")
{
    const Run r = run({"radii", "--family", "auto-phi", "--N", "1", "--m", "0"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "family,N,m,k,a,radius,residual");
    CHECK(ls[1].find(",0.333333333333,") != std::string::npos);

    const Run rr = run({"radii", "--family", "refined-root", "--k", "1", "--m", "0", "--a", "0.5"});
    CHECK(rr.code == 0);
    CHECK(lines(rr.out)[1].find(",0.4,") != std::string::npos);

    const Run bad = run({"radii", "--family", "phi2", "--N", "1", "--m", "1"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("requires N>2m") != std::string::npos);

    CHECK(run({"radii", "--family", "phi9"}).code == 2);
    CHECK(run({"radii"}).code == 2);
    CHECK(run({"radii", "--family", "refined-root", "--a", "1.5"}).code == 2);
    CHECK(run({"radii", "--family", "auto-phi", "--N", "x"}).code == 2);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"radii", "--family", "auto-phi", "--format", "xml"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"verify", "--functional", "c", "--samples", "0"}).code == 2);
    CHECK(run({"verify", "--functional", "c", "--r-max", "1.0"}).code == 2);
    CHECK(run({"verify", "--functional", "nope"}).code == 2);
}

TEST_CASE("verify command exit codes")
{
    const Run lemma = run({"verify", "--functional", "lemma12", "--N", "3", "--samples", "200", "--seed", "7"});
    CHECK(lemma.code == 0);
    CHECK(lemma.err.find("violates=0") != std::string::npos);

    const Run c = run({"verify", "--functional", "c", "--k", "2", "--m", "1", "--samples", "200"});
    CHECK(c.code == 0);
    const auto ls = lines(c.out);
    REQUIRE(ls.size() > 1);
    CHECK(ls[0] == "sample_id,r,lhs,threshold,tail,margin,verdict");

    const Run past = run({"verify", "--functional", "c", "--k", "2", "--m", "1", "--r-max", "0.99"});
    CHECK(past.code == 1);
    CHECK(past.out.find("VIOLATES") != std::string::npos);
}

TEST_CASE("verify output is deterministic and thread independent")
{
    const std::vector<std::string> base{"verify", "--functional", "harmonic", "--k", "2", "--m", "1",
                                        "--samples", "30", "--seed", "11"};
    const Run a = run(base);
    auto threaded = base;
    threaded.insert(threaded.end(), {"--threads", "3"});
    const Run b = run(threaded);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("verify jsonl mirrors csv")
{
    const std::vector<std::string> base{"verify", "--functional", "n1", "--samples", "3", "--no-extremal"};
    const Run csv = run(base);
    auto j = base;
    j.insert(j.end(), {"--format", "jsonl"});
    const Run jl = run(j);
    const auto c_lines = lines(csv.out);
    const auto j_lines = lines(jl.out);
    REQUIRE(c_lines.size() == j_lines.size() + 1);
    for (std::size_t i = 0; i < j_lines.size(); ++i) {
        const auto obj = nlohmann::ordered_json::parse(j_lines[i]);
        std::vector<std::string> keys;
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            keys.push_back(it.key());
        }
        CHECK(keys == std::vector<std::string>{"sample_id", "r", "lhs", "threshold", "tail", "margin", "verdict"});
        CHECK(c_lines[i + 1].rfind(std::to_string(obj["sample_id"].get<long>()) + ",", 0) == 0);
        CHECK(c_lines[i + 1].find(obj["verdict"].get<std::string>()) != std::string::npos);
    }
}

TEST_CASE("sharpness command")
{
    const Run r = run({"sharpness", "--k", "1", "--m", "0", "--a", "0.2,0.5,0.8", "--tol", "1e-6"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[0] == "k,m,a,r_cross,r_theory,gap");
    CHECK(run({"sharpness", "--k", "2", "--m", "1", "--a", "0.5"}).code == 0);
    CHECK(run({"sharpness", "--k", "2", "--m", "1", "--a", "0.5", "--harmonic"}).code == 0);
    CHECK(run({"sharpness", "--k", "1", "--m", "0"}).code == 2);
    CHECK(run({"sharpness", "--k", "1", "--m", "2", "--a", "0.5"}).code == 2);
    CHECK(run({"sharpness", "--k", "200", "--m", "0", "--a", "0.0"}).code == 1);
}

TEST_CASE("output file and config file")
{
    const auto out_path = temp_file("radii.csv");
    const auto cfg_path = temp_file("radii.cfg");
    {
        std::ofstream cfg(cfg_path);
        cfg << "# radius query\nfamily = phi3\nN=2\nm = 1\n\nformat=jsonl\n";
    }
    const Run r = run({"radii", "--config", cfg_path.string(), "--out", out_path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out_path);
    std::string line;
    std::getline(in, line);
    const auto obj = nlohmann::json::parse(line);
    CHECK(obj["family"] == "phi3");
    CHECK(obj["radius"].get<double>() == doctest::Approx(0.6).epsilon(1e-12));

    // Command-line flags win over the file.
    const Run over = run({"radii", "--config", cfg_path.string(), "--format", "csv", "--family", "auto-phi", "--N", "1",
                          "--m", "0"});
    CHECK(over.code == 0);
    CHECK(lines(over.out)[1].rfind("auto-phi,1,0,", 0) == 0);

    {
        std::ofstream cfg(cfg_path);
        cfg << "colour=blue\n";
    }
    CHECK(run({"radii", "--family", "auto-phi", "--config", cfg_path.string()}).code == 2);
    {
        std::ofstream cfg(cfg_path);
        cfg << "this line has no equals sign\n";
    }
    CHECK(run({"radii", "--family", "auto-phi", "--config", cfg_path.string()}).code == 2);
    CHECK(run({"radii", "--family", "auto-phi", "--config", "/nonexistent/bohr.cfg"}).code == 2);
    CHECK(run({"radii", "--family", "auto-phi", "--out", "/nonexistent/dir/out.csv"}).code == 2);

    {
        std::ofstream cfg(cfg_path);
        cfg << "functional=c\nk=2\nm=1\nsamples=5\nno-extremal=true\n";
    }
    const Run v = run({"verify", "--config", cfg_path.string()});
    CHECK(v.code == 0);
    CHECK(lines(v.out).size() > 1);

    std::filesystem::remove(out_path);
    std::filesystem::remove(cfg_path);
}
