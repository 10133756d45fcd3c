#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "fairshot/errors.hpp"

namespace fairshot {

/// Distinguished value for a feature that was absent in the source row.
struct Missing {
    friend bool operator==(Missing, Missing) { return true; }
};

/// Numeric features are kept as doubles from load time; categorical values
/// stay raw strings until prompt rendering or clustering encoding.
using FeatureValue = std::variant<double, std::string, Missing>;

inline bool is_missing(const FeatureValue& v) {
    return std::holds_alternative<Missing>(v);
}

/// One tabular row. Feature values follow the schema's feature order; the
/// label and sensitive columns live only in y and z, so flipping either
/// never touches the feature vector.
struct SampleRecord {
    std::int64_t id = 0;
    std::vector<FeatureValue> features;
    int y = 0; ///< binary label
    int z = 0; ///< binary sensitive attribute, z=0 is the minority group

    friend bool operator==(const SampleRecord& a, const SampleRecord& b) {
        return a.id == b.id && a.y == b.y && a.z == b.z && a.features == b.features;
    }
};

struct Ratios {
    double r_z = 0.0; ///< fraction of records with z=0
    double r_y = 0.0; ///< fraction of records with y=0
};

/// id -> record lookup over a stable record store.
class RecordIndex {
public:
    RecordIndex() = default;
    explicit RecordIndex(const std::vector<SampleRecord>& records) {
        by_id_.reserve(records.size());
        for (const auto& r : records) by_id_.emplace(r.id, &r);
    }

    const SampleRecord& at(std::int64_t id) const {
        auto it = by_id_.find(id);
        if (it == by_id_.end()) {
            throw Error("record id " + std::to_string(id) + " not found in index");
        }
        return *it->second;
    }

    bool contains(std::int64_t id) const { return by_id_.count(id) != 0; }
    std::size_t size() const { return by_id_.size(); }

private:
    std::unordered_map<std::int64_t, const SampleRecord*> by_id_;
};

} // namespace fairshot
