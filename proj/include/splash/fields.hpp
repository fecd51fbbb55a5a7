#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "splash/grid.hpp"

namespace splash {

using Field = Eigen::VectorXd;               // size N (scalar) or 2N (vector)
using FieldHistory = std::vector<Field>;     // one entry per time node

/// Uniform time grid t_k = k dt, k = 0..steps.
struct TimeGrid {
    double T = 0.0;
    double dt = 0.0;
    int steps = 0;

    static TimeGrid make(double T, int steps) {
        TimeGrid g;
        g.T = T;
        g.steps = steps;
        g.dt = T / steps;
        return g;
    }
    double time(int k) const { return k * dt; }
    int nodes() const { return steps + 1; }
};

/// Writes `node_id value(s)` rows keyed to the domain checksum.
void write_snapshot(const std::string& path, const DiscreteDomain& dom, const Field& f);
/// Reads a snapshot; throws ChecksumMismatch when it belongs to another domain.
Field read_snapshot(const std::string& path, const DiscreteDomain& dom);

}  // namespace splash
