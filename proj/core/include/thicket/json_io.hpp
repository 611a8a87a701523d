#pragma once

#include <string>

#include <json.hpp>

#include "thicket/concept_class.hpp"
#include "thicket/dimensions.hpp"
#include "thicket/experts.hpp"
#include "thicket/noise.hpp"
#include "thicket/pac.hpp"
#include "thicket/zoo.hpp"

namespace thicket {

/// Deterministic JSON rendering: keys in sorted order (nlohmann objects are
/// backed by std::map), floats printed with 12 significant digits, UTF-8, no
/// NaN or infinity (those throw). Identical values always give identical
/// bytes, which is what the reproducibility contract requires.
std::string stable_dump(const nlohmann::json& value);

/// Class file format: {"domain_size": n, "concepts": ["0110...", ...]} with
/// index 0 leftmost in each bit-string. Wrong-length strings, bad characters
/// and duplicate concepts are rejected with distinct messages.
nlohmann::json class_to_json(const concept_class& cls);
concept_class class_from_json(const nlohmann::json& value);
concept_class load_class_file(const std::string& path);
void save_class_file(const concept_class& cls, const std::string& path);

nlohmann::json element_tree_to_json(const element_tree& tree);
nlohmann::json shatter_report_to_json(const shatter_report& report);
nlohmann::json regret_ledger_to_json(const regret_ledger& ledger);
nlohmann::json noisy_report_to_json(const noisy_report& report);
nlohmann::json pac_result_to_json(const pac_result& result);
nlohmann::json half_graph_to_json(const half_graph_witness& witness);

/// Parses "example,label" CSV (optional header) into a labeled sequence.
std::vector<labeled_example> load_sequence_csv(const std::string& path);

} // namespace thicket
