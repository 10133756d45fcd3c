#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fairshot/errors.hpp"
#include "fairshot/record.hpp"

namespace fairshot {

enum class FeatureKind { numeric, categorical };

struct FeatureDef {
    std::string name;
    FeatureKind kind = FeatureKind::categorical;
    std::string unit; ///< optional, informational only
};

/// Derived numeric column: the arithmetic mean of the source columns.
struct AverageGroup {
    std::string name;
    std::vector<std::string> sources;
};

struct LabelSpec {
    std::string column;
    std::string positive_value; ///< raw code mapping to y=1
    std::string negative_value; ///< raw code mapping to y=0
    std::string positive_text;  ///< display string for y=1 in prompts
    std::string negative_text;  ///< display string for y=0 in prompts
    bool model_visible = false; ///< never rendered as a query feature by default
};

struct SensitiveSpec {
    std::string column;
    std::string minority_value; ///< raw code mapping to z=0
    std::string majority_value; ///< raw code mapping to z=1
    bool model_visible = true;  ///< rendered as a feature line by default
};

/// Declarative description of one tabular dataset: columns, preprocessing
/// (drops and column averaging), label/sensitive binarization, and display
/// value mappings used when rendering prompts.
class DatasetSchema {
public:
    std::string name;
    std::vector<FeatureDef> features; ///< non-label, non-sensitive columns, in render order
    LabelSpec label;
    SensitiveSpec sensitive;
    std::vector<std::string> drop_columns;
    std::vector<AverageGroup> average_groups;
    /// column -> raw value -> display string
    std::map<std::string, std::map<std::string, std::string>> value_maps;
    std::vector<std::string> missing_values{"", "?"};

    void validate() const {
        if (label.column.empty()) throw SchemaError("schema '" + name + "': label column missing");
        if (sensitive.column.empty()) throw SchemaError("schema '" + name + "': sensitive column missing");
        if (label.column == sensitive.column) {
            throw SchemaError("schema '" + name + "': label and sensitive columns must be distinct");
        }
        if (label.positive_value == label.negative_value) {
            throw SchemaError("schema '" + name + "': label values must differ");
        }
        if (sensitive.minority_value == sensitive.majority_value) {
            throw SchemaError("schema '" + name + "': sensitive values must differ");
        }
        if (label.positive_text.empty() || label.negative_text.empty()) {
            throw SchemaError("schema '" + name + "': label display texts must be non-empty");
        }
        for (const auto& f : features) {
            if (f.name == label.column || f.name == sensitive.column) {
                throw SchemaError("schema '" + name + "': feature list must not contain label or sensitive column");
            }
        }
        for (const auto& g : average_groups) {
            if (g.sources.empty()) throw SchemaError("schema '" + name + "': average group '" + g.name + "' has no sources");
        }
    }

    bool is_missing_code(const std::string& raw) const {
        return std::find(missing_values.begin(), missing_values.end(), raw) != missing_values.end();
    }

    bool is_averaged(const std::string& feature_name) const {
        for (const auto& g : average_groups) {
            if (g.name == feature_name) return true;
        }
        return false;
    }

    /// Display string for a raw categorical value (value map applied).
    std::string display_value(const std::string& column, const std::string& raw) const {
        auto col = value_maps.find(column);
        if (col != value_maps.end()) {
            auto it = col->second.find(raw);
            if (it != col->second.end()) return it->second;
        }
        return raw;
    }

    std::string sensitive_display(int z) const {
        return display_value(sensitive.column, z == 0 ? sensitive.minority_value : sensitive.majority_value);
    }

    std::string label_text(int y) const { return y == 1 ? label.positive_text : label.negative_text; }

    int feature_index(const std::string& feature_name) const {
        for (std::size_t i = 0; i < features.size(); ++i) {
            if (features[i].name == feature_name) return static_cast<int>(i);
        }
        return -1;
    }

    static DatasetSchema from_json(const nlohmann::json& j) {
        DatasetSchema s;
        s.name = j.value("dataset_name", "");
        for (const auto& f : j.at("features")) {
            FeatureDef def;
            def.name = f.at("name").get<std::string>();
            const std::string kind = f.value("kind", "categorical");
            if (kind == "numeric") {
                def.kind = FeatureKind::numeric;
            } else if (kind == "categorical") {
                def.kind = FeatureKind::categorical;
            } else {
                throw SchemaError("unknown feature kind '" + kind + "' for '" + def.name + "'");
            }
            def.unit = f.value("unit", "");
            s.features.push_back(std::move(def));
        }
        const auto& lab = j.at("label");
        s.label.column = lab.at("column").get<std::string>();
        s.label.positive_value = lab.at("positive_value").get<std::string>();
        s.label.negative_value = lab.at("negative_value").get<std::string>();
        s.label.positive_text = lab.at("positive_text").get<std::string>();
        s.label.negative_text = lab.at("negative_text").get<std::string>();
        s.label.model_visible = lab.value("model_visible", false);
        const auto& sen = j.at("sensitive");
        s.sensitive.column = sen.at("column").get<std::string>();
        s.sensitive.minority_value = sen.at("minority_value").get<std::string>();
        s.sensitive.majority_value = sen.at("majority_value").get<std::string>();
        s.sensitive.model_visible = sen.value("model_visible", true);
        s.drop_columns = j.value("drop_columns", std::vector<std::string>{});
        if (j.contains("average_groups")) {
            for (const auto& g : j.at("average_groups")) {
                AverageGroup grp;
                grp.name = g.at("name").get<std::string>();
                grp.sources = g.at("sources").get<std::vector<std::string>>();
                s.average_groups.push_back(std::move(grp));
            }
        }
        if (j.contains("value_maps")) {
            for (const auto& [col, mapping] : j.at("value_maps").items()) {
                for (const auto& [raw, display] : mapping.items()) {
                    s.value_maps[col][raw] = display.get<std::string>();
                }
            }
        }
        if (j.contains("missing_values")) {
            s.missing_values = j.at("missing_values").get<std::vector<std::string>>();
        }
        s.validate();
        return s;
    }
};

} // namespace fairshot
