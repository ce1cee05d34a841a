#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct TempDir {
    std::filesystem::path dir;
    TempDir() {
        dir = std::filesystem::temp_directory_path() /
              ("rhythmkit_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
    }
    ~TempDir() { std::filesystem::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(RK_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("") == 2);
    CHECK(run_cli("no-such-command") == 2);
    CHECK(run_cli("entrain") == 2);                      // missing required flags
    CHECK(run_cli("entrain --train x.csv") == 2);        // missing --out
    CHECK(run_cli("stimgen periodic --period -1 --out /tmp/x.csv") == 2);
}

TEST_CASE("--version exits cleanly") {
    CHECK(run_cli("--version") == 0);
}

TEST_CASE("missing input files exit with code 2") {
    TempDir tmp;
    CHECK(run_cli("entrain --train " + tmp.path("nope.csv") + " --out " +
                  tmp.path("out.json")) == 2);
    CHECK(run_cli("beats --wav " + tmp.path("nope.wav") + " --out " +
                  tmp.path("out.csv")) == 2);
}

TEST_CASE("stimgen then entrain produces a trace with echoed parameters") {
    TempDir tmp;
    const std::string train = tmp.path("train.csv");
    REQUIRE(run_cli("stimgen periodic --period 0.6 --count 12 --start 0.6 --out " + train) == 0);
    CHECK(std::filesystem::exists(train));
    CHECK(std::filesystem::exists(train + ".meta.json"));

    const std::string trace = tmp.path("trace.json");
    REQUIRE(run_cli("entrain --train " + train + " --dt 0.005 --gamma 0 --out " + trace) == 0);
    const json doc = json::parse(slurp(trace));
    CHECK(doc.at("params").at("adaptation_rate").get<double>() == 0.3);
    CHECK(doc.at("resets").size() >= 10);

    const json meta = json::parse(slurp(trace + ".meta.json"));
    CHECK(meta.at("command").get<std::string>() == "entrain");
    CHECK(meta.at("params").at("dt_s").get<double>() == 0.005);
    CHECK(meta.at("params").at("oscillator").at("gamma").get<double>() == 0.0);
}

TEST_CASE("seeded runs are byte-identical") {
    TempDir tmp;
    const std::string a = tmp.path("a.csv"), b = tmp.path("b.csv");
    const std::string gen = "stimgen jittered --period 0.5 --count 25 --jitter-sd 0.02 --seed 42 --out ";
    REQUIRE(run_cli(gen + a) == 0);
    REQUIRE(run_cli(gen + b) == 0);
    CHECK(slurp(a) == slurp(b));

    const std::string wa = tmp.path("a.wav"), wb = tmp.path("b.wav");
    const std::string wav = "stimgen wav --onsets 0.2,0.5,0.8 --seed 9 --out ";
    REQUIRE(run_cli(wav + wa) == 0);
    REQUIRE(run_cli(wav + wb) == 0);
    CHECK(slurp(wa) == slurp(wb));
}

TEST_CASE("beats subcommand reads config files with flag overrides") {
    TempDir tmp;
    const std::string wav = tmp.path("in.wav");
    REQUIRE(run_cli("stimgen wav --onsets 0.2,0.5,0.8,1.1,1.4 --dur-ms 150 --total-s 1.8 "
                    "--seed 17 --out " + wav) == 0);

    const std::string cfg = tmp.path("beats.cfg");
    std::ofstream(cfg) << "# comment\nbands = 6\nmin_rise_fraction = 0.1\n";
    const std::string out = tmp.path("beats.csv");
    REQUIRE(run_cli("beats --wav " + wav + " --config " + cfg + " --out " + out) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("time_s,magnitude\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);  // header + 5 beats

    const json meta = json::parse(slurp(out + ".meta.json"));
    CHECK(meta.at("params").at("config").at("bands").get<int>() == 6);
    CHECK(meta.at("params").at("beats_found").get<int>() == 5);

    std::ofstream(cfg) << "bogus_key = 1\n";
    CHECK(run_cli("beats --wav " + wav + " --config " + cfg + " --out " + out) == 2);
}

TEST_CASE("meter subcommand reports a planted meter") {
    TempDir tmp;
    const std::string train = tmp.path("train.csv");
    REQUIRE(run_cli("stimgen hierarchical --beat-period 0.4 --beats-per-measure 3 "
                    "--measures 10 --out " + train) == 0);
    const std::string out = tmp.path("meter.json");
    REQUIRE(run_cli("meter --train " + train + " --out " + out) == 0);
    const json doc = json::parse(slurp(out));
    CHECK(doc.at("beats_per_measure").get<int>() == 3);
}

TEST_CASE("mora and discriminate subcommands emit verdict JSON") {
    TempDir tmp;
    const std::string data = tmp.path("mora.csv");
    REQUIRE(run_cli("stimgen mora --mean-mora 0.15 --max-moras 6 --reps 3 "
                    "--compensation 1.0 --out " + data) == 0);
    const std::string reg = tmp.path("reg.json");
    REQUIRE(run_cli("mora --data " + data + " --out " + reg) == 0);
    CHECK(json::parse(slurp(reg)).at("r_squared").get<double>() == doctest::Approx(1.0));

    const std::string a = tmp.path("a.csv"), b = tmp.path("b.csv");
    REQUIRE(run_cli("stimgen periodic --period 0.5 --count 5 --start 0.5 --out " + a) == 0);
    REQUIRE(run_cli("stimgen periodic --period 0.5 --count 5 --start 0.5 --out " + b) == 0);
    const std::string verdict = tmp.path("verdict.json");
    REQUIRE(run_cli("discriminate --a " + a + " --b " + b + " --reset-per-trial --out " +
                    verdict) == 0);
    CHECK(json::parse(slurp(verdict)).at("verdict").get<std::string>() == "equal");
}

TEST_CASE("phases subcommand writes phases CSV and a mode report") {
    TempDir tmp;
    // Beats every 0.3 s against anchors every 0.3 s: one tight phase mode.
    const std::string wav = tmp.path("in.wav");
    REQUIRE(run_cli("stimgen wav --onsets 0.2,0.5,0.8,1.1,1.4 --dur-ms 150 --total-s 1.8 "
                    "--seed 17 --out " + wav) == 0);
    const std::string beats = tmp.path("beats.csv");
    REQUIRE(run_cli("beats --wav " + wav + " --out " + beats) == 0);

    const std::string anchors = tmp.path("anchors.csv");
    std::ofstream out(anchors);
    out << "time_s\n";
    for (int i = 0; i < 8; ++i) out << (0.05 + 0.3 * i) << "\n";
    out.close();

    const std::string phases = tmp.path("phases.csv");
    REQUIRE(run_cli("phases --beats " + beats + " --anchors " + anchors +
                    " --bandwidth 0.05 --out " + phases) == 0);
    CHECK(slurp(phases).rfind("trial,group,phi\n", 0) == 0);
    const json modes = json::parse(slurp(phases + ".modes.json"));
    CHECK(modes.at("modes").size() == 1);
}

TEST_CASE("takecards and drop generators write their outputs") {
    TempDir tmp;
    const std::string sched = tmp.path("sched.json");
    REQUIRE(run_cli("stimgen takecards --phi 0.3 --cycle 1.5 --reps 8 --out " + sched) == 0);
    CHECK(json::parse(slurp(sched)).at("anchor_times_s").size() == 8);

    const std::string train = tmp.path("t.csv");
    REQUIRE(run_cli("stimgen periodic --period 0.5 --count 10 --start 0.5 --out " + train) == 0);
    const std::string dropped = tmp.path("d.csv");
    REQUIRE(run_cli("stimgen drop --train " + train + " --indices 2,5 --out " + dropped) == 0);
    const std::string csv = slurp(dropped);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
    CHECK(run_cli("stimgen drop --train " + train + " --indices 99 --out " + dropped) == 2);
}
