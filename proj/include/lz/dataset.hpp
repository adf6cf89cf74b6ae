#ifndef LZ_DATASET_HPP
#define LZ_DATASET_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "lz/core.hpp"
#include "lz/integrate.hpp"

namespace lz::dataset {

enum class Format { csv, json };

/// Column-oriented numeric table.
struct ColumnSet {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    void add(std::string name, std::vector<double> values);
    std::size_t rows() const;
    const std::vector<double>& column(const std::string& name) const;
};

/// Ordered key/value block emitted ahead of the data.  Deliberately carries
/// no timestamps so identical configurations produce identical bytes.
struct Metadata {
    std::vector<std::pair<std::string, std::string>> entries;
    void add(std::string key, std::string value);
};

/// Shortest decimal representation that round-trips to the same double
/// (never more than 17 significant digits).
std::string format_double(double x);

/// CSV: '#'-prefixed metadata lines, a header row, then data rows.
/// JSON: one object {"meta": {...}, "data": {column: [...]}}.
void write_dataset(const std::filesystem::path& path, Format format, const Metadata& meta,
                   const ColumnSet& data);

/// Reads back a CSV written by write_dataset ('#' lines ignored).
ColumnSet read_csv(const std::filesystem::path& path);

/// Standard column layouts.
ColumnSet trajectory_columns(const Trajectory& traj);
ColumnSet riccati_columns(const RiccatiSolution& sol);

/// Library version string baked in at configure time.
std::string build_version();

}  // namespace lz::dataset

#endif
