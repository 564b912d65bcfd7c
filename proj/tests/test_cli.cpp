#include <catch2/catch_amalgamated.hpp>

#include <zs/cache.hpp>
#include <zs/cli.hpp>
#include <zs/spectral.hpp>
#include <zs/symfunc.hpp>

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#ifdef _WIN32
#error "posix exit-status decoding assumed"
#endif
#include <sys/wait.h>

using nlohmann::json;
using zs::Rat;
using zs::RunConfig;
using zs::RunResult;

namespace {

RunConfig make(zs::Command cmd, int n, int t = 1, zs::Format fmt = zs::Format::pretty,
               bool fmtSet = true) {
  RunConfig cfg;
  cfg.command = cmd;
  cfg.n = n;
  cfg.t = t;
  cfg.format = fmt;
  cfg.format_set = fmtSet;
  return cfg;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == '\n') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("zs_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("certify json round-trips the certificate") {
  const RunResult res = zs::run(make(zs::Command::certify, 4, 1, zs::Format::json));
  REQUIRE(res.code == 0);
  const json doc = json::parse(res.out);
  const auto c = zs::certify(4, 1);

  CHECK(doc["command"] == "certify");
  CHECK(doc["n"] == 4);
  CHECK(doc["t"] == 1);
  CHECK(doc["zeta"] == "-1/6");
  CHECK(doc["weights"]["4"] == "1/48");
  CHECK(doc["eigenvalues"].size() == 5);
  for (std::size_t i = 0; i < c.eigen.labels.size(); ++i)
    CHECK(zs::parse_rat(doc["eigenvalues"][c.eigen.labels[i].str()].get<std::string>()) ==
          c.eigen.values[i]);
  CHECK(doc["fattest"]["label"] == "3,1");
  CHECK(zs::parse_rat(doc["fattest"]["eta"].get<std::string>()) == c.fattest_eig);
  CHECK(doc["min_eigenvalue"] == "-1/6");
  CHECK(doc["minimizers"] == json::array({"3,1"}));
  CHECK(doc["min_is_zeta"] == true);
  CHECK(doc["minimizers_all_fat"] == true);
  CHECK(doc["hoffman"] == "15");
  CHECK(doc["valid"] == true);
}

TEST_CASE("certify exit codes and pretty trailer") {
  const RunResult good = zs::run(make(zs::Command::certify, 4, 1, zs::Format::pretty));
  CHECK(good.code == 0);
  const auto goodLines = lines(good.out);
  REQUIRE_FALSE(goodLines.empty());
  CHECK(goodLines.back() == "VALID: bound 15");

  const RunResult bad = zs::run(make(zs::Command::certify, 8, 2, zs::Format::pretty));
  CHECK(bad.code == 2);
  const auto badLines = lines(bad.out);
  REQUIRE_FALSE(badLines.empty());
  CHECK(badLines.back() == "INVALID: bound not certified");

  const RunResult badJson = zs::run(make(zs::Command::certify, 8, 2, zs::Format::json));
  CHECK(badJson.code == 2);
  CHECK(json::parse(badJson.out)["valid"] == false);

  const RunResult err = zs::run(make(zs::Command::certify, 3, 2));
  CHECK(err.code == 1);
  CHECK(err.out.empty());
  CHECK(err.err.find("error:") != std::string::npos);
}

TEST_CASE("certify csv shape") {
  const RunResult res = zs::run(make(zs::Command::certify, 4, 1, zs::Format::csv));
  REQUIRE(res.code == 0);
  const auto ls = lines(res.out);
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "lambda,eta,fat,minimizer");
  CHECK(ls[1] == "4,1,true,false");
  CHECK(ls[2] == "\"3,1\",-1/6,true,true");
  CHECK(ls[5] == "\"1,1,1,1\",-1/8,false,false");
}

TEST_CASE("scan output") {
  RunConfig cfg = make(zs::Command::scan, 0, 2, zs::Format::csv);
  cfg.n_min = 5;
  cfg.n_max = 12;
  const RunResult res = zs::run(cfg);
  REQUIRE(res.code == 0);
  const auto ls = lines(res.out);
  REQUIRE(ls.size() == 10);
  CHECK(ls[0] == "n,valid,zeta,min_eigenvalue,minimizers,fattest_eig,hoffman");
  CHECK(ls[1].substr(0, 8) == "5,false,");
  CHECK(ls[7].substr(0, 7) == "11,true");
  CHECK(ls.back() == "# first_contiguous_valid_n=11");

  cfg.format = zs::Format::json;
  const json doc = json::parse(zs::run(cfg).out);
  CHECK(doc["first_contiguous_valid_n"] == 11);
  REQUIRE(doc["rows"].size() == 8);
  CHECK(doc["rows"][5]["n"] == 10);
  CHECK(doc["rows"][5]["valid"] == false);
  CHECK(doc["rows"][5]["minimizers"].size() == 4);

  cfg.n_max = 4;
  CHECK(zs::run(cfg).code == 1);
}

TEST_CASE("matrix command") {
  RunConfig cfg = make(zs::Command::matrix, 4, 1, zs::Format::json);
  cfg.kind = "zonal";
  const RunResult res = zs::run(cfg);
  REQUIRE(res.code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["command"] == "matrix");
  CHECK(doc["kind"] == "zonal");
  const zs::RationalMatrix w = zs::zonal_character_table(4);
  for (const auto& lam : w.row_labels)
    for (const auto& rho : w.col_labels)
      CHECK(zs::parse_rat(doc["rows"][lam.str()][rho.str()].get<std::string>()) ==
            w.at(lam, rho));

  cfg.format = zs::Format::csv;
  const auto ls = lines(zs::run(cfg).out);
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "lambda\\rho,4,\"3,1\",\"2,2\",\"2,1,1\",\"1,1,1,1\"");
  CHECK(ls[1] == "4,1,1,1,1,1");
  CHECK(ls[2] == "\"3,1\",-1/6,1/8,-1/6,5/12,1");

  cfg.kind = "char";
  CHECK(zs::run(cfg).code == 0);
  cfg.kind = "bogus";
  CHECK(zs::run(cfg).code == 1);
  cfg.kind = "alpha-kostka";
  cfg.alpha = Rat(-1);
  CHECK(zs::run(cfg).code == 1);
}

TEST_CASE("scheme table emission") {
  RunConfig cfg = make(zs::Command::scheme, 4, 1, zs::Format::csv);
  const RunResult res = zs::run(cfg);
  REQUIRE(res.code == 0);
  const auto ls = lines(res.out);
  REQUIRE(ls.size() == 6);
  CHECK(ls[1] == "4,48,32,12,12,1");
  CHECK(ls[2] == "\"3,1\",-8,4,-2,5,1");
  CHECK(ls[5] == "\"1,1,1,1\",-6,8,3,-6,1");

  cfg.emit = "json";
  const json doc = json::parse(zs::run(cfg).out);
  CHECK(doc["4"]["4"] == "48");
  CHECK(doc["1,1,1,1"]["2,1,1"] == "-6");

  cfg.emit = "bogus";
  CHECK(zs::run(cfg).code == 1);
}

TEST_CASE("partitions and matchings listings") {
  const auto pres = zs::run(make(zs::Command::partitions, 4, 1, zs::Format::csv));
  REQUIRE(pres.code == 0);
  const auto pls = lines(pres.out);
  REQUIRE(pls.size() == 6);
  CHECK(pls[0] == "partition,length,units,z,sphere,dim");
  CHECK(pls[2] == "\"3,1\",2,1,3,32,20");
  CHECK(pls[5] == "\"1,1,1,1\",4,4,24,1,14");

  const auto mres = zs::run(make(zs::Command::matchings, 2, 1, zs::Format::csv));
  REQUIRE(mres.code == 0);
  const auto mls = lines(mres.out);
  REQUIRE(mls.size() == 4);
  CHECK(mls[0] == "index,matching,type");
  CHECK(mls[1] == "0,1 2|3 4,\"1,1\"");
  CHECK(mls[2] == "1,1 3|2 4,2");

  CHECK(zs::run(make(zs::Command::matchings, 8, 1, zs::Format::csv)).code == 1);
}

TEST_CASE("derange command") {
  const auto pretty = zs::run(make(zs::Command::derange, 4, 1, zs::Format::pretty));
  CHECK(pretty.code == 0);
  CHECK(pretty.out == "60\n");

  const json doc = json::parse(zs::run(make(zs::Command::derange, 4, 2, zs::Format::json)).out);
  CHECK(doc["count"] == "92");

  const auto csv = zs::run(make(zs::Command::derange, 4, 1, zs::Format::csv));
  CHECK(lines(csv.out) == std::vector<std::string>{"n,t,count", "4,1,60"});

  CHECK(zs::run(make(zs::Command::derange, 4, 0)).code == 1);
}

TEST_CASE("oracle command self-checks") {
  const auto pretty = zs::run(make(zs::Command::oracle, 3, 1, zs::Format::pretty));
  REQUIRE(pretty.code == 0);
  CHECK(lines(pretty.out).back() == "AGREES: zonal table");

  const json doc = json::parse(zs::run(make(zs::Command::oracle, 3, 1, zs::Format::json)).out);
  CHECK(doc["agrees"] == true);
  CHECK(doc["table"]["2,1"]["3"] == "-1/4");

  CHECK(zs::run(make(zs::Command::oracle, 5, 1)).code == 1);
}

TEST_CASE("brute command skips, forces, and crosses") {
  const auto skipped = zs::run(make(zs::Command::brute, 4, 1, zs::Format::json));
  REQUIRE(skipped.code == 0);
  const json sdoc = json::parse(skipped.out);
  CHECK(sdoc["skipped"] == true);
  CHECK(sdoc["reason"] == "certificate valid; bound already proven");
  CHECK(sdoc["bound"] == "15");

  RunConfig forced = make(zs::Command::brute, 4, 1, zs::Format::json);
  forced.force_brute = true;
  const json fdoc = json::parse(zs::run(forced).out);
  CHECK(fdoc["skipped"] == false);
  CHECK(fdoc["forced"] == true);
  CHECK(fdoc["optimum"] == "15");
  CHECK(fdoc["matches_canonical"] == true);
  CHECK(fdoc["witness"].size() == 15);

  // 2t = n: no certificate regime, so the search runs without forcing.
  const json bdoc = json::parse(zs::run(make(zs::Command::brute, 4, 2, zs::Format::json)).out);
  CHECK(bdoc["skipped"] == false);
  CHECK(bdoc["optimum"] == "3");

  RunConfig cross = make(zs::Command::brute, 3, 1, zs::Format::json);
  cross.cross = true;
  cross.seed = 5;
  cross.samples = 40;
  const json cdoc = json::parse(zs::run(cross).out);
  CHECK(cdoc["mode"] == "cross");
  CHECK(cdoc["bound"] == "3");
  CHECK(cdoc["pairwise_consistent"] == true);
  CHECK(cdoc["seed"] == 5);
  CHECK(cdoc["sampled_within_bound"] == true);

  const auto csv = zs::run(make(zs::Command::brute, 4, 2, zs::Format::csv));
  CHECK(lines(csv.out)[0] == "n,t,skipped,optimum,matches_canonical");
  CHECK(lines(csv.out)[1] == "4,2,false,3,true");
}

TEST_CASE("per-command format defaults") {
  const auto brute = zs::run(make(zs::Command::brute, 4, 2, zs::Format::pretty, false));
  CHECK(brute.out.front() == '{');  // defaults to json

  RunConfig scan = make(zs::Command::scan, 0, 1, zs::Format::pretty, false);
  scan.n_min = 4;
  scan.n_max = 5;
  CHECK(lines(zs::run(scan).out)[0] ==
        "n,valid,zeta,min_eigenvalue,minimizers,fattest_eig,hoffman");  // csv

  const auto cert = zs::run(make(zs::Command::certify, 4, 1, zs::Format::csv, false));
  CHECK(lines(cert.out).back() == "VALID: bound 15");  // pretty
}

TEST_CASE("matrix caching") {
  TempDir tmp;
  RunConfig cfg = make(zs::Command::matrix, 5, 1, zs::Format::json);
  cfg.kind = "zonal";
  cfg.cache_dir = tmp.path;

  const RunResult cold = zs::run(cfg);
  REQUIRE(cold.code == 0);
  const auto file = zs::cache_file(tmp.path, "zonal", 5, std::nullopt);
  REQUIRE(std::filesystem::exists(file));
  const std::string coldBytes = read_file(file);

  const RunResult warm = zs::run(cfg);
  CHECK(warm.out == cold.out);
  CHECK(read_file(file) == coldBytes);

  // Corrupt the payload; the command must recompute and heal the file.
  {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(40);
    char b = 0;
    f.seekg(40);
    f.read(&b, 1);
    b = static_cast<char>(b ^ 0x5a);
    f.seekp(40);
    f.write(&b, 1);
  }
  CHECK(read_file(file) != coldBytes);
  const RunResult healed = zs::run(cfg);
  CHECK(healed.out == cold.out);
  CHECK(read_file(file) == coldBytes);

  // Truncation is also recovered.
  std::filesystem::resize_file(file, 10);
  CHECK(zs::run(cfg).out == cold.out);
  CHECK(read_file(file) == coldBytes);

  RunConfig ak = make(zs::Command::matrix, 3, 1, zs::Format::json);
  ak.kind = "alpha-kostka";
  ak.alpha = Rat(5, 2);
  ak.cache_dir = tmp.path;
  REQUIRE(zs::run(ak).code == 0);
  CHECK(std::filesystem::exists(tmp.path / "zs_alpha-kostka_n3_a5_2.zsmat"));
}

TEST_CASE("cache primitives reject anomalies") {
  TempDir tmp;
  const zs::RationalMatrix m = zs::zonal_character_table(4);
  const auto file = zs::cache_file(tmp.path, "zonal", 4, std::nullopt);
  REQUIRE(zs::cache_store(file, "zonal", 4, std::nullopt, m));

  const auto loaded = zs::cache_load(file, "zonal", 4, std::nullopt);
  REQUIRE(loaded.has_value());
  CHECK(*loaded == m);

  CHECK_FALSE(zs::cache_load(file, "kostka", 4, std::nullopt).has_value());
  CHECK_FALSE(zs::cache_load(file, "zonal", 5, std::nullopt).has_value());
  CHECK_FALSE(zs::cache_load(tmp.path / "missing.zsmat", "zonal", 4, std::nullopt).has_value());

  const std::string bytes = read_file(file);
  {
    std::ofstream f(file, std::ios::binary | std::ios::trunc);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()) - 3);
  }
  CHECK_FALSE(zs::cache_load(file, "zonal", 4, std::nullopt).has_value());

  {
    std::string flipped = bytes;
    flipped[flipped.size() / 2] = static_cast<char>(flipped[flipped.size() / 2] ^ 0x20);
    std::ofstream f(file, std::ios::binary | std::ios::trunc);
    f.write(flipped.data(), static_cast<std::streamsize>(flipped.size()));
  }
  CHECK_FALSE(zs::cache_load(file, "zonal", 4, std::nullopt).has_value());

  CHECK_THROWS_AS(zs::cached_transition_matrix(tmp.path, "bogus", 3, std::nullopt),
                  zs::domain_error);
  CHECK(zs::cached_transition_matrix("", "kostka", 3, std::nullopt) == zs::kostka_matrix(3));
}

#ifdef ZS_BIN_PATH
TEST_CASE("binary exit statuses") {
  const std::string bin = ZS_BIN_PATH;
  auto status = [&](const std::string& args) {
    const int rc = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
  };
  CHECK(status("--help") == 0);
  CHECK(status("certify --help") == 0);
  CHECK(status("bogus") == 64);
  CHECK(status("certify --n 4") == 64);         // missing required --t
  CHECK(status("certify --n 4 --t 1") == 0);
  CHECK(status("certify --n 8 --t 2") == 2);
  CHECK(status("certify --n 3 --t 2") == 1);
  CHECK(status("derange --n 4 --t 1") == 0);
  CHECK(status("matrix --n 4") == 64);          // missing required --kind
  CHECK(status("matrix --kind zonal --n 4 --format bogus") == 64);

  TempDir tmp;
  const int rc = std::system(("ZS_CACHE_DIR=" + tmp.path.string() + " " + bin +
                              " matrix --kind zonal --n 3 --format csv >/dev/null 2>&1")
                                 .c_str());
  REQUIRE(WIFEXITED(rc));
  CHECK(WEXITSTATUS(rc) == 0);
  CHECK(std::filesystem::exists(zs::cache_file(tmp.path, "zonal", 3, std::nullopt)));
}
#endif
