// End-to-end checks of the command line binary: exit codes, report files,
// determinism.  Driven through std::system against the built executable.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
    if (!ok)
        ++failures;
}

int run(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(LLREL_CLI_PATH) + " " + args + " >" + log.string() +
                            " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json load_json(const fs::path& p) {
    std::ifstream in(p);
    return json::parse(in);
}

} // namespace

int main() {
    const fs::path tmp = fs::temp_directory_path() / "llrel_cli_test";
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    const fs::path log = tmp / "out.txt";
    const std::string grinder = std::string(LLREL_DATA_DIR) + "/grinder.csv";
    const std::string reactor = std::string(LLREL_DATA_DIR) + "/reactor.csv";

    // fit
    check(run("fit --data " + grinder + " --out " + (tmp / "fit.json").string(), log) == 0,
          "fit exits 0");
    {
        const json doc = load_json(tmp / "fit.json");
        check(doc.at("command") == "fit", "fit report command tag");
        check(doc.at("dataset").at("n") == 12, "fit report sample size");
        const double alpha = doc.at("fits").at("mle").at("alpha").get<double>();
        check(std::abs(alpha - 2.762) < 0.01, "fit report MLE shape");
        check(doc.contains("llrel_version"), "fit report records the version");
    }

    // gof with published values
    check(run("gof --data " + reactor + " --fit mle --out " + (tmp / "gof.json").string(),
              log) == 0,
          "gof exits 0");
    {
        const json doc = load_json(tmp / "gof.json");
        const auto& rep = doc.at("gof").at(0);
        check(std::abs(rep.at("statistic").get<double>() - 0.090) <= 0.005,
              "reactor MLE KS statistic near 0.090");
        check(std::abs(rep.at("p_value").get<double>() - 0.984) <= 0.02,
              "reactor MLE KS p-value near 0.984");
    }

    // ci with a fixed seed reproduces the published quartile interval loosely
    check(run("ci --data " + grinder +
                  " --t 65.55 --level 0.95 --method gpq --seed 42 --out " +
                  (tmp / "ci.json").string(),
              log) == 0,
          "ci exits 0");
    {
        const json doc = load_json(tmp / "ci.json");
        check(doc.at("provenance").at("seed") == 42, "ci report records the seed");
        check(doc.at("provenance").at("gpq_draws") == 2000, "ci report records M");
        const auto& row = doc.at("intervals").at(0);
        check(row.at("method") == "lse-gpq", "ci row method tag");
        const double lo = row.at("lower").get<double>();
        const double hi = row.at("upper").get<double>();
        check(std::abs(lo - 0.315) <= 0.03 && std::abs(hi - 0.789) <= 0.03,
              "ci near the published (0.315, 0.789)");
        check(doc.contains("gof") && doc.at("gof").size() >= 1, "ci report embeds gof results");
        const double len = row.at("length").get<double>();
        check(std::abs(len - (hi - lo)) < 1e-12, "interval length consistency");
    }

    // seed is generated and printed when omitted from a stochastic command
    check(run("ci --data " + grinder + " --t 96.05 --method gpq --gpq-draws 200", log) == 0,
          "ci without a seed exits 0");
    check(slurp(log).find("seed:") != std::string::npos, "generated seed is printed");
    check(run("ci --data " + grinder + " --t 96.05 --method wald", log) == 0,
          "deterministic ci exits 0");
    check(slurp(log).find("seed:") == std::string::npos,
          "deterministic ci does not invent a seed");

    // exit codes: usage, data, numerical
    check(run("frobnicate", log) == 2, "unknown subcommand exits 2");
    check(run("ci --data " + grinder, log) == 2, "missing required option exits 2");
    check(run("fit --data " + (tmp / "missing.csv").string(), log) == 3,
          "missing data file exits 3");
    {
        std::ofstream bad(tmp / "bad.csv");
        bad << "time\n-1\n";
    }
    check(run("fit --data " + (tmp / "bad.csv").string(), log) == 3, "bad data exits 3");
    {
        std::ofstream degenerate(tmp / "degenerate.csv");
        degenerate << "1.0\n1.0\n"; // zero spread: MLE diverges
    }
    check(run("fit --data " + (tmp / "degenerate.csv").string() + " --method mle", log) == 4,
          "degenerate data exits 4");

    // simulate: byte-identical reports for the same seed, scenario file driven
    {
        std::ofstream scen(tmp / "scen.json");
        scen << R"([{"n":10,"t":1.0,"alpha":2.0,"beta":1.0,"level":0.9,)"
             << R"("replicates":25,"gpq_draws":200,"bootstrap_reps":120}])";
    }
    const std::string sim_args = "simulate --scenarios " + (tmp / "scen.json").string() +
                                 " --seed 7 --workers 2 --out ";
    check(run(sim_args + (tmp / "sim1.json").string(), log) == 0, "simulate exits 0");
    check(run(sim_args + (tmp / "sim2.json").string(), log) == 0, "simulate rerun exits 0");
    check(slurp(tmp / "sim1.json") == slurp(tmp / "sim2.json"),
          "simulate reports are byte-identical across reruns");
    {
        const json doc = load_json(tmp / "sim1.json");
        check(doc.at("rows").size() == 1, "simulate row count");
        const auto& methods = doc.at("rows").at(0).at("methods");
        for (const char* m : {"lse-gpq", "pb", "ai"}) {
            const double cov = methods.at(m).at("coverage").get<double>();
            check(cov >= 0.0 && cov <= 1.0, std::string("coverage in range for ") + m);
        }
    }
    check(run("simulate --preset table9 --seed 1", log) == 2, "unknown preset exits 2");

    // relgrid: row count and ranges
    check(run("relgrid --t 1 --t 5 --alpha-range 0.5:2 --beta-range 0.5:2 --steps 5 --out " +
                  (tmp / "grid.json").string(),
              log) == 0,
          "relgrid exits 0");
    {
        const json doc = load_json(tmp / "grid.json");
        check(doc.at("rows").size() == 2 * 5 * 5, "relgrid row count");
        const auto& first = doc.at("rows").at(0);
        check(first.at("reliability").get<double>() >= 0.0 &&
                  first.at("reliability").get<double>() <= 1.0,
              "relgrid reliability in range");
    }
    check(run("relgrid --alpha-range 5:1", log) == 2, "inverted range exits 2");

    std::cout << (failures == 0 ? "ALL OK\n" : "FAILURES\n");
    return failures == 0 ? 0 : 1;
}
