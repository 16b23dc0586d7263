#pragma once

#include "vcl/field.hpp"

#include <string>

namespace vcl {

// VCL1 snapshot: magic "VCL1", u32 N, f64 period, f64 time, f64 nu,
// u32 name length, name bytes, then N*N row-major f64 values, little-endian.
struct Snapshot {
    ScalarField2D field;
    double time = 0;
    double nu = 0;
    std::string name;
};

void save_snapshot(const std::string& path, const Snapshot& s);
Snapshot load_snapshot(const std::string& path);

} // namespace vcl
