#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gravicollapse/evolution.hpp"
#include "gravicollapse/stochastic.hpp"
#include "gravicollapse/vnne.hpp"

namespace gravicollapse {

// Minimal CSV writer: one header, fixed column count, UTF-8, '\n' endings.
// Contents are written out when the writer goes out of scope.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    ~CsvWriter();
    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);

  private:
    void flush();
    std::string path_;
    std::size_t columns_;
    std::string buffer_;
};

std::uint64_t fnv1a_hash(const std::string& text);

void write_trajectory_csv(const std::string& path, const Trajectory& traj);
void write_dm_trajectory_csv(const std::string& path, const DmTrajectory& traj);
void write_stochastic_csv(const std::string& path, const TrajectoryRecord& rec);

} // namespace gravicollapse
