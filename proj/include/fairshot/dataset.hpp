#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "fairshot/errors.hpp"
#include "fairshot/record.hpp"
#include "fairshot/rng.hpp"
#include "fairshot/schema.hpp"

namespace fairshot {

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (std::isspace(static_cast<unsigned char>(s[b])) != 0)) ++b;
    while (e > b && (std::isspace(static_cast<unsigned char>(s[e - 1])) != 0)) --e;
    return s.substr(b, e - b);
}

/// Comma-split with minimal double-quote support; fields are trimmed.
inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(trim(field));
    return out;
}

inline double parse_numeric(const std::string& raw, const std::string& column, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos])) != 0) ++pos;
        if (pos != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw LoadError("line " + std::to_string(line_no) + ": column '" + column +
                        "' has non-numeric value '" + raw + "'");
    }
}

} // namespace detail

/// Loads and preprocesses a CSV stream per the schema: drops declared
/// columns, collapses average groups into their mean, binarizes label and
/// sensitive values, and rejects rows whose label or sensitive value is
/// missing. Feature values follow schema feature order.
inline std::vector<SampleRecord> load_dataset_csv(std::istream& in, const DatasetSchema& schema) {
    schema.validate();
    std::string line;
    if (!std::getline(in, line)) throw LoadError("dataset is empty: no header row");
    const std::vector<std::string> header = detail::split_csv_line(line);

    std::unordered_map<std::string, int> col_of;
    for (std::size_t i = 0; i < header.size(); ++i) col_of[header[i]] = static_cast<int>(i);

    auto require = [&](const std::string& name) {
        auto it = col_of.find(name);
        if (it == col_of.end()) throw LoadError("header is missing required column '" + name + "'");
        return it->second;
    };

    const int label_col = require(schema.label.column);
    const int sensitive_col = require(schema.sensitive.column);

    struct SourceSpec {
        bool averaged = false;
        int column = -1;                 // direct features
        std::vector<int> source_cols;    // averaged features
        FeatureKind kind = FeatureKind::categorical;
    };
    std::vector<SourceSpec> sources;
    sources.reserve(schema.features.size());
    for (const auto& f : schema.features) {
        SourceSpec spec;
        spec.kind = f.kind;
        bool found_group = false;
        for (const auto& g : schema.average_groups) {
            if (g.name == f.name) {
                spec.averaged = true;
                for (const auto& src : g.sources) spec.source_cols.push_back(require(src));
                found_group = true;
                break;
            }
        }
        if (!found_group) spec.column = require(f.name);
        sources.push_back(std::move(spec));
    }

    // Header must carry nothing the schema does not account for.
    for (const auto& col : header) {
        if (col == schema.label.column || col == schema.sensitive.column) continue;
        bool known = false;
        for (const auto& f : schema.features) {
            if (f.name == col && !schema.is_averaged(col)) known = true;
        }
        for (const auto& g : schema.average_groups) {
            for (const auto& src : g.sources) {
                if (src == col) known = true;
            }
        }
        for (const auto& d : schema.drop_columns) {
            if (d == col) known = true;
        }
        if (!known) throw LoadError("header column '" + col + "' is not declared by schema '" + schema.name + "'");
    }

    std::vector<SampleRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const std::vector<std::string> fields = detail::split_csv_line(line);
        if (fields.size() != header.size()) {
            throw LoadError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " columns, found " +
                            std::to_string(fields.size()));
        }

        const std::string label_raw = fields[static_cast<std::size_t>(label_col)];
        const std::string sensitive_raw = fields[static_cast<std::size_t>(sensitive_col)];
        if (schema.is_missing_code(label_raw) || schema.is_missing_code(sensitive_raw)) {
            continue; // rows without label or sensitive value carry no signal
        }

        SampleRecord rec;
        if (label_raw == schema.label.positive_value) {
            rec.y = 1;
        } else if (label_raw == schema.label.negative_value) {
            rec.y = 0;
        } else {
            throw SchemaError("line " + std::to_string(line_no) + ": unknown label value '" + label_raw + "'");
        }
        if (sensitive_raw == schema.sensitive.minority_value) {
            rec.z = 0;
        } else if (sensitive_raw == schema.sensitive.majority_value) {
            rec.z = 1;
        } else {
            throw SchemaError("line " + std::to_string(line_no) + ": unknown sensitive value '" + sensitive_raw + "'");
        }

        rec.features.reserve(sources.size());
        for (std::size_t i = 0; i < sources.size(); ++i) {
            const auto& spec = sources[i];
            const std::string& fname = schema.features[i].name;
            if (spec.averaged) {
                double sum = 0.0;
                bool missing = false;
                for (int src : spec.source_cols) {
                    const std::string& raw = fields[static_cast<std::size_t>(src)];
                    if (schema.is_missing_code(raw)) {
                        missing = true;
                        break;
                    }
                    sum += detail::parse_numeric(raw, fname, line_no);
                }
                if (missing) {
                    rec.features.emplace_back(Missing{});
                } else {
                    rec.features.emplace_back(sum / static_cast<double>(spec.source_cols.size()));
                }
            } else {
                const std::string& raw = fields[static_cast<std::size_t>(spec.column)];
                if (schema.is_missing_code(raw)) {
                    rec.features.emplace_back(Missing{});
                } else if (spec.kind == FeatureKind::numeric) {
                    rec.features.emplace_back(detail::parse_numeric(raw, fname, line_no));
                } else {
                    rec.features.emplace_back(raw);
                }
            }
        }
        rec.id = static_cast<std::int64_t>(records.size());
        records.push_back(std::move(rec));
    }
    return records;
}

inline std::vector<SampleRecord> load_dataset(const std::filesystem::path& path, const DatasetSchema& schema) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open dataset file '" + path.string() + "'");
    return load_dataset_csv(in, schema);
}

struct SplitRatio {
    int train = 9;
    int dev = 1;
    int test = 10;
};

struct DatasetSplit {
    std::vector<SampleRecord> train;
    std::vector<SampleRecord> dev;
    std::vector<SampleRecord> test;
    std::uint64_t seed = 0;
    SplitRatio ratio;
};

/// Seeded shuffle, then contiguous slicing in (train, dev, test) order.
/// Slice boundaries are the rounded cumulative proportions, so sizes are
/// exact whenever the ratio divides the record count.
inline DatasetSplit split_dataset(const std::vector<SampleRecord>& records, std::uint64_t seed,
                                  SplitRatio ratio = {}) {
    if (ratio.train <= 0 || ratio.dev <= 0 || ratio.test <= 0) {
        throw SplitError("split ratio components must be positive");
    }
    if (records.size() < 3) {
        throw SplitError("cannot split " + std::to_string(records.size()) + " records into three parts");
    }
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng = Rng::derive(seed, {0x5p117ull});
    rng.shuffle(order);

    const double total = static_cast<double>(ratio.train + ratio.dev + ratio.test);
    const auto n = static_cast<double>(records.size());
    const auto b1 = static_cast<std::size_t>(std::llround(n * ratio.train / total));
    const auto b2 = static_cast<std::size_t>(std::llround(n * (ratio.train + ratio.dev) / total));

    DatasetSplit split;
    split.seed = seed;
    split.ratio = ratio;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const SampleRecord& r = records[order[i]];
        if (i < b1) {
            split.train.push_back(r);
        } else if (i < b2) {
            split.dev.push_back(r);
        } else {
            split.test.push_back(r);
        }
    }
    return split;
}

/// The four (z,y) subgroups over a record slice, stored as id lists:
/// g1(Z=1,Y=0), g2(Z=1,Y=1), g3(Z=0,Y=0), g4(Z=0,Y=1).
struct SubgroupPartition {
    std::array<std::vector<std::int64_t>, 4> groups;

    static int index_of(int z, int y) { return z == 1 ? (y == 0 ? 0 : 1) : (y == 0 ? 2 : 3); }

    static const char* name_of(int index) {
        static const char* names[4] = {"g1", "g2", "g3", "g4"};
        return names[index];
    }

    const std::vector<std::int64_t>& group(int z, int y) const {
        return groups[static_cast<std::size_t>(index_of(z, y))];
    }

    std::size_t total() const {
        std::size_t n = 0;
        for (const auto& g : groups) n += g.size();
        return n;
    }
};

inline SubgroupPartition partition_subgroups(std::span<const SampleRecord> records) {
    SubgroupPartition part;
    for (const auto& r : records) {
        part.groups[static_cast<std::size_t>(SubgroupPartition::index_of(r.z, r.y))].push_back(r.id);
    }
    return part;
}

inline SubgroupPartition partition_subgroups(const std::vector<SampleRecord>& records) {
    return partition_subgroups(std::span<const SampleRecord>(records));
}

inline Ratios compute_ratios(std::span<const SampleRecord> subset) {
    if (subset.empty()) throw MetricError("ratios are undefined for an empty subset");
    std::size_t z0 = 0;
    std::size_t y0 = 0;
    for (const auto& r : subset) {
        if (r.z == 0) ++z0;
        if (r.y == 0) ++y0;
    }
    const auto n = static_cast<double>(subset.size());
    return Ratios{static_cast<double>(z0) / n, static_cast<double>(y0) / n};
}

inline Ratios compute_ratios(const std::vector<SampleRecord>& subset) {
    return compute_ratios(std::span<const SampleRecord>(subset));
}

/// Draws an evaluation slice with exactly balanced (z,y) cells: size/4 per
/// cell plus one extra for the first size%4 cells. Records keep cell-major
/// order, deterministic per seed.
inline std::vector<SampleRecord> extract_balanced_subset(const std::vector<SampleRecord>& slice,
                                                         std::size_t size, std::uint64_t seed) {
    if (size == 0) throw QuotaError("balanced extraction needs a positive size");
    const SubgroupPartition part = partition_subgroups(slice);
    const RecordIndex index(slice);
    std::vector<SampleRecord> out;
    out.reserve(size);
    for (std::size_t cell = 0; cell < 4; ++cell) {
        const std::size_t quota = size / 4 + (cell < size % 4 ? 1 : 0);
        const auto& ids = part.groups[cell];
        if (ids.size() < quota) {
            throw QuotaError(std::string("cell ") + SubgroupPartition::name_of(static_cast<int>(cell)) +
                             " holds " + std::to_string(ids.size()) + " records, need " + std::to_string(quota));
        }
        std::vector<std::int64_t> sorted = ids;
        std::sort(sorted.begin(), sorted.end());
        Rng rng = Rng::derive(seed, {0xba1a9ced, cell});
        for (std::size_t pick : rng.sample_without_replacement(sorted.size(), quota)) {
            out.push_back(index.at(sorted[pick]));
        }
    }
    return out;
}

} // namespace fairshot
