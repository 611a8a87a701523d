#include "thicket/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace thicket {

namespace {

void dump_value(const nlohmann::json& v, std::string& out) {
    using value_t = nlohmann::json::value_t;
    switch (v.type()) {
        case value_t::null:
            out += "null";
            break;
        case value_t::boolean:
            out += v.get<bool>() ? "true" : "false";
            break;
        case value_t::number_integer:
            out += std::to_string(v.get<std::int64_t>());
            break;
        case value_t::number_unsigned:
            out += std::to_string(v.get<std::uint64_t>());
            break;
        case value_t::number_float: {
            double d = v.get<double>();
            if (!std::isfinite(d))
                throw std::invalid_argument("stable_dump: NaN/Infinity not representable");
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.12g", d);
            out += buf;
            break;
        }
        case value_t::string:
            out += nlohmann::json(v.get<std::string>()).dump();
            break;
        case value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& item : v) {
                if (!first) out += ',';
                first = false;
                dump_value(item, out);
            }
            out += ']';
            break;
        }
        case value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += nlohmann::json(it.key()).dump();
                out += ':';
                dump_value(it.value(), out);
            }
            out += '}';
            break;
        }
        default:
            throw std::invalid_argument("stable_dump: unsupported JSON value type");
    }
}

} // namespace

std::string stable_dump(const nlohmann::json& value) {
    std::string out;
    dump_value(value, out);
    return out;
}

nlohmann::json class_to_json(const concept_class& cls) {
    nlohmann::json j;
    j["domain_size"] = cls.domain_size();
    auto& arr = j["concepts"] = nlohmann::json::array();
    for (int c = 0; c < cls.size(); ++c) {
        std::string bits(static_cast<std::size_t>(cls.domain_size()), '0');
        for (int x = 0; x < cls.domain_size(); ++x)
            if (cls.member(c, x)) bits[static_cast<std::size_t>(x)] = '1';
        arr.push_back(bits);
    }
    return j;
}

concept_class class_from_json(const nlohmann::json& value) {
    if (!value.is_object() || !value.contains("domain_size") || !value.contains("concepts"))
        throw std::invalid_argument(
            "class file must be an object with domain_size and concepts");
    if (!value["domain_size"].is_number_integer())
        throw std::invalid_argument("domain_size must be an integer");
    int n = value["domain_size"].get<int>();
    if (n <= 0)
        throw std::invalid_argument("domain_size must be positive");
    if (!value["concepts"].is_array() || value["concepts"].empty())
        throw std::invalid_argument("empty class: concepts must be a non-empty array");

    std::vector<bitvec> concepts;
    std::unordered_set<std::string> seen;
    for (const auto& item : value["concepts"]) {
        if (!item.is_string())
            throw std::invalid_argument("concepts must be bit-strings");
        std::string bits = item.get<std::string>();
        if (static_cast<int>(bits.size()) != n)
            throw std::invalid_argument("concept string has wrong length: \"" + bits +
                                        "\" (expected " + std::to_string(n) + " bits)");
        if (!seen.insert(bits).second)
            throw std::invalid_argument("duplicate concept: \"" + bits + "\"");
        bitvec b(n);
        for (int x = 0; x < n; ++x) {
            char ch = bits[static_cast<std::size_t>(x)];
            if (ch != '0' && ch != '1')
                throw std::invalid_argument("invalid character in concept string: \"" +
                                            bits + "\"");
            if (ch == '1') b.set(x);
        }
        concepts.push_back(std::move(b));
    }
    return concept_class::from_bitvecs(n, std::move(concepts));
}

concept_class load_class_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open class file: " + path);
    nlohmann::json j;
    in >> j;
    return class_from_json(j);
}

void save_class_file(const concept_class& cls, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("cannot write class file: " + path);
    out << stable_dump(class_to_json(cls)) << '\n';
}

nlohmann::json element_tree_to_json(const element_tree& tree) {
    nlohmann::json j;
    j["height"] = tree.height;
    j["internal_labels"] = tree.internal_labels;
    j["leaf_labels"] = tree.leaf_labels;
    return j;
}

nlohmann::json shatter_report_to_json(const shatter_report& report) {
    nlohmann::json j;
    j["height"] = report.height;
    j["max_well_labeled"] = report.max_well_labeled;
    if (report.witness)
        j["witness"] = element_tree_to_json(*report.witness);
    return j;
}

nlohmann::json regret_ledger_to_json(const regret_ledger& ledger) {
    nlohmann::json j;
    j["expected_loss"] = ledger.expected_loss;
    j["best_expert_loss"] = ledger.best_expert_loss;
    j["regret"] = ledger.regret;
    j["round_probability"] = ledger.round_probability;
    j["round_loss"] = ledger.round_loss;
    if (!ledger.realized.empty()) {
        j["realized"] = ledger.realized;
        j["realized_loss"] = ledger.realized_loss;
    }
    return j;
}

nlohmann::json noisy_report_to_json(const noisy_report& report) {
    nlohmann::json j;
    j["horizon"] = report.horizon;
    j["trials"] = report.trials;
    j["gamma"] = report.gamma;
    j["mean_disagreement_target"] = report.mean_disagreement_target;
    j["mean_disagreement_labels"] = report.mean_disagreement_labels;
    j["bound"] = report.bound;
    j["bound_ratio"] = report.bound_ratio;
    return j;
}

nlohmann::json pac_result_to_json(const pac_result& result) {
    nlohmann::json j;
    j["epsilon"] = result.epsilon;
    j["delta"] = result.delta;
    j["sample_size"] = result.sample_size;
    j["trials"] = result.trials;
    j["failure_fraction"] = result.failure_fraction;
    j["mean_error"] = result.mean_error;
    return j;
}

nlohmann::json half_graph_to_json(const half_graph_witness& witness) {
    nlohmann::json j;
    j["size"] = witness.size;
    j["rows"] = witness.rows;
    j["cols"] = witness.cols;
    return j;
}

std::vector<labeled_example> load_sequence_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open sequence file: " + path);
    std::vector<labeled_example> sequence;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first && line.find("example") != std::string::npos) {
            first = false;
            continue; // header row
        }
        first = false;
        std::istringstream row(line);
        std::string ex, lab;
        if (!std::getline(row, ex, ',') || !std::getline(row, lab, ','))
            throw std::invalid_argument("sequence row must be example,label: " + line);
        labeled_example le;
        le.example = std::stoi(ex);
        le.label = std::stoi(lab);
        if (le.label != 0 && le.label != 1)
            throw std::invalid_argument("sequence label must be 0 or 1: " + line);
        sequence.push_back(le);
    }
    return sequence;
}

} // namespace thicket
