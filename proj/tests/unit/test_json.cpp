#include <doctest.h>

#include <fstream>
#include <string>

#include "support/subprocess.hpp"
#include "thicket/json_io.hpp"
#include "thicket/zoo.hpp"

using namespace thicket;

namespace {

template <typename F>
std::string thrown_message(F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("class JSON round-trips") {
    auto cls = make_cosets(6);
    auto j = class_to_json(cls);
    auto back = class_from_json(j);
    CHECK(back == cls);
    CHECK(j["domain_size"] == 6);
    CHECK(j["concepts"].size() == static_cast<std::size_t>(cls.size()));
}

TEST_CASE("class JSON rejects malformed input with distinct messages") {
    nlohmann::json wrong_len = {{"domain_size", 3}, {"concepts", {"01"}}};
    CHECK(thrown_message([&] { class_from_json(wrong_len); })
              .find("wrong length") != std::string::npos);

    nlohmann::json dup = {{"domain_size", 2}, {"concepts", {"01", "01"}}};
    CHECK(thrown_message([&] { class_from_json(dup); })
              .find("duplicate concept") != std::string::npos);

    nlohmann::json empty = {{"domain_size", 2}, {"concepts", nlohmann::json::array()}};
    CHECK(thrown_message([&] { class_from_json(empty); })
              .find("empty class") != std::string::npos);

    nlohmann::json bad_char = {{"domain_size", 2}, {"concepts", {"0x"}}};
    CHECK(thrown_message([&] { class_from_json(bad_char); })
              .find("invalid character") != std::string::npos);
}

TEST_CASE("bit-strings put example 0 leftmost") {
    auto cls = concept_class::from_sets(3, {{0}});
    auto j = class_to_json(cls);
    CHECK(j["concepts"][0] == "100");
}

TEST_CASE("stable_dump is deterministic with fixed float formatting") {
    nlohmann::json j;
    j["b"] = 1.0 / 3.0;
    j["a"] = 42;
    j["c"] = {{"nested", true}, {"list", {1, 2.5, "s"}}};
    std::string s = stable_dump(j);
    CHECK(s == stable_dump(j));
    CHECK(s.find("0.333333333333") != std::string::npos); // 12 significant digits
    CHECK(s.find("\"a\":42") != std::string::npos);
    // keys appear sorted
    CHECK(s.find("\"a\"") < s.find("\"b\""));
    CHECK(s.find("\"b\"") < s.find("\"c\""));

    nlohmann::json bad;
    bad["x"] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(stable_dump(bad), std::invalid_argument);
}

TEST_CASE("class files save and load") {
    auto dir = testing::scratch_dir();
    auto path = dir + "/roundtrip_class.json";
    auto cls = make_thresholds(5);
    save_class_file(cls, path);
    CHECK(load_class_file(path) == cls);
}

TEST_CASE("sequence CSV parses with and without a header") {
    auto dir = testing::scratch_dir();
    auto path = dir + "/seq.csv";
    {
        std::ofstream out(path);
        out << "example,label\n0,1\n2,0\n";
    }
    auto seq = load_sequence_csv(path);
    REQUIRE(seq.size() == 2);
    CHECK(seq[0].example == 0);
    CHECK(seq[0].label == 1);
    CHECK(seq[1].example == 2);

    {
        std::ofstream out(path);
        out << "1,1\n";
    }
    CHECK(load_sequence_csv(path).size() == 1);

    {
        std::ofstream out(path);
        out << "0,7\n";
    }
    CHECK_THROWS_AS(load_sequence_csv(path), std::invalid_argument);
}

TEST_CASE("shatter report JSON carries the witness arrays") {
    auto report = thicket_shatter(make_powerset(2), 2);
    auto j = shatter_report_to_json(report);
    CHECK(j["height"] == 2);
    CHECK(j["max_well_labeled"] == 4);
    CHECK(j["witness"]["internal_labels"].size() == 3);
    CHECK(j["witness"]["leaf_labels"].size() == 4);
}
