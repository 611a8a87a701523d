#include <doctest.h>

#include <fstream>
#include <string>

#include <json.hpp>

#include "support/subprocess.hpp"
#include "thicket/json_io.hpp"
#include "thicket/zoo.hpp"

using namespace thicket;
using thicket::testing::cli_path;
using thicket::testing::run_command;
using thicket::testing::scratch_dir;

namespace {

std::string write_class(const std::string& name, const concept_class& cls) {
    auto path = scratch_dir() + "/" + name;
    save_class_file(cls, path);
    return path;
}

} // namespace

TEST_CASE("dim reports the requested dimensions") {
    auto path = write_class("cli_powerset3.json", make_powerset(3));
    auto r = run_command(cli_path() + " dim --class " + path + " --ldim");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["ldim"] == 3);
    CHECK(j.contains("version"));
    CHECK(j["config"]["subcommand"] == "dim");

    auto both = run_command(cli_path() + " dim --class " + path + " --ldim --vc --rank");
    auto jb = nlohmann::json::parse(both.out);
    CHECK(jb["vc"] == 3);
    CHECK(jb["rank"] == 3);
}

TEST_CASE("play against the optimal adversary forces exactly the dimension") {
    auto path = write_class("cli_thresholds3.json", make_thresholds(3));
    auto r = run_command(cli_path() + " play --class " + path +
                         " --learner soa --adversary optimal");
    REQUIRE(r.exit_code == 0);
    // sum the loss column of the CSV
    int mistakes = 0;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line); // header
    CHECK(line == "round,example,prediction,label,loss,ldim_after");
    while (std::getline(in, line)) {
        auto last_comma = line.rfind(',');
        auto prev_comma = line.rfind(',', last_comma - 1);
        mistakes += std::stoi(line.substr(prev_comma + 1, last_comma - prev_comma - 1));
    }
    CHECK(mistakes == 2);
}

TEST_CASE("pac estimate validates the trial count") {
    auto path = write_class("cli_thresholds8.json", make_thresholds(8));
    auto r = run_command(cli_path() + " pac estimate --class " + path +
                         " --target 4 --eps 0.1 --delta 0.1 --trials 50 --seed 1");
    CHECK(r.exit_code == 1);
}

TEST_CASE("cap violations exit with code 2") {
    auto r = run_command(cli_path() + " zoo generate powerset --n 25");
    CHECK(r.exit_code == 2);
}

TEST_CASE("unknown flags exit with code 1") {
    auto r = run_command(cli_path() + " dim --nonsense");
    CHECK(r.exit_code == 1);
}

TEST_CASE("zoo generate emits a loadable class file") {
    auto out = scratch_dir() + "/cli_cosets.json";
    auto r = run_command(cli_path() + " zoo generate cosets --m 6 -o " + out);
    REQUIRE(r.exit_code == 0);
    auto cls = load_class_file(out);
    CHECK(cls == make_cosets(6));
}

TEST_CASE("zoo growth emits the dimension table") {
    auto r = run_command(cli_path() + " zoo growth thresholds --sizes 2,4,8");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "size,num_concepts,vc,ldim,half_graph");
    std::string row;
    std::getline(in, row);
    CHECK(row == "2,3,1,1,2");
    std::getline(in, row);
    CHECK(row == "4,5,1,2,4");
    std::getline(in, row);
    CHECK(row == "8,9,1,3,8");
}

TEST_CASE("experts run reports the ledger and bound") {
    auto path = write_class("cli_powerset2.json", make_powerset(2));
    auto seq = scratch_dir() + "/cli_seq.csv";
    {
        std::ofstream out(seq);
        out << "example,label\n0,1\n1,0\n0,1\n1,1\n";
    }
    auto r = run_command(cli_path() + " experts run --class " + path +
                         " --sequence " + seq + " --eta auto");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("expected_loss"));
    CHECK(j.contains("best_expert_loss"));
    CHECK(j.contains("regret"));
    CHECK(j.contains("bound"));
    CHECK(j["bound_satisfied"].is_boolean());
    CHECK(j["n_experts"] == 4);

    auto ra = run_command(cli_path() + " experts run --class " + path +
                          " --sequence " + seq + " --eta auto --agnostic");
    REQUIRE(ra.exit_code == 0);
    auto ja = nlohmann::json::parse(ra.out);
    CHECK(ja["n_experts"] == 11); // horizon 4, dimension 2
}

TEST_CASE("noisy run reports both disagreement metrics") {
    auto path = write_class("cli_singles4.json", make_singletons(4));
    auto r = run_command(cli_path() + " noisy run --class " + path +
                         " --gamma 0.25 --horizon 20 --trials 30 --seed 5 --target 1");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("mean_disagreement_target"));
    CHECK(j.contains("mean_disagreement_labels"));
    CHECK(j.contains("bound"));
    CHECK(j["trials"] == 30);
    CHECK(j["config"]["seed"] == 5);
}

TEST_CASE("same seed same bytes; omitted seed is recorded") {
    auto path = write_class("cli_singles5.json", make_singletons(5));
    std::string cmd = cli_path() + " noisy run --class " + path +
                      " --gamma 0.1 --horizon 15 --trials 20 --seed 77";
    auto a = run_command(cmd);
    auto b = run_command(cmd);
    CHECK(a.out == b.out);

    auto no_seed = run_command(cli_path() + " noisy run --class " + path +
                               " --gamma 0.1 --horizon 15 --trials 20");
    REQUIRE(no_seed.exit_code == 0);
    auto j = nlohmann::json::parse(no_seed.out);
    CHECK(j["config"]["seed"].is_number()); // generated seed is embedded
}
