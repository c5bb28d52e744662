#include "gravicollapse/report.hpp"

#include <fstream>
#include <sstream>

#include "gravicollapse/errors.hpp"

namespace gravicollapse {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : path_(path), columns_(columns.size()) {
    std::ostringstream head;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) head << ',';
        head << columns[i];
    }
    head << '\n';
    buffer_ = head.str();
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_)
        throw IoError("CsvWriter: row width mismatch for " + path_);
    std::ostringstream line;
    line.precision(17);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line << ',';
        line << values[i];
    }
    line << '\n';
    buffer_ += line.str();
}

void CsvWriter::raw_row(const std::string& line) { buffer_ += line + "\n"; }

void CsvWriter::flush() {
    std::ofstream out(path_);
    if (!out) throw IoError("cannot open " + path_);
    out << buffer_;
    if (!out) throw IoError("write failed: " + path_);
}

CsvWriter::~CsvWriter() {
    try {
        flush();
    } catch (...) {
        // destructor must not throw; a failed flush surfaces via the
        // unreadable file
    }
}

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    CsvWriter csv(path, {"t", "norm2", "mean_x", "var_x", "mean_p", "var_p", "energy",
                         "u_g", "counterterm_gap"});
    for (const auto& r : traj.series)
        csv.row({r.t, r.norm_squared, r.mean_x, r.var_x, r.mean_p, r.var_p, r.energy,
                 r.u_g, r.counterterm_gap});
}

void write_dm_trajectory_csv(const std::string& path, const DmTrajectory& traj) {
    CsvWriter csv(path, {"t", "trace", "purity", "mean_x", "var_x", "min_eigenvalue"});
    for (const auto& r : traj.series)
        csv.row({r.t, r.trace, r.purity, r.mean_x, r.var_x, r.min_eigenvalue});
}

void write_stochastic_csv(const std::string& path, const TrajectoryRecord& rec) {
    CsvWriter csv(path, {"t", "preproj_norm2", "mean_x", "var_x", "mean_p", "var_p",
                         "u_g", "left_fraction"});
    for (const auto& r : rec.series)
        csv.row({r.t, r.preproj_norm_squared, r.mean_x, r.var_x, r.mean_p, r.var_p,
                 r.u_g, r.left_fraction});
}

} // namespace gravicollapse
