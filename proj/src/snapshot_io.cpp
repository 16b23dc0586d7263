#include "vcl/snapshot_io.hpp"

#include "vcl/errors.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace vcl {

static_assert(std::endian::native == std::endian::little,
              "VCL1 writer assumes a little-endian host");

namespace {
template <class T>
void put(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <class T>
T get(std::ifstream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}
} // namespace

void save_snapshot(const std::string& path, const Snapshot& s) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("save_snapshot: cannot open " + path);
    os.write("VCL1", 4);
    put<uint32_t>(os, static_cast<uint32_t>(s.field.grid().n()));
    put<double>(os, s.field.grid().period());
    put<double>(os, s.time);
    put<double>(os, s.nu);
    put<uint32_t>(os, static_cast<uint32_t>(s.name.size()));
    os.write(s.name.data(), static_cast<std::streamsize>(s.name.size()));
    auto v = s.field.values();
    os.write(reinterpret_cast<const char*>(v.data()),
             static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!os) throw IoError("save_snapshot: write failed for " + path);
}

Snapshot load_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("load_snapshot: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "VCL1", 4) != 0)
        throw IoError("load_snapshot: bad magic in " + path);
    const auto n = get<uint32_t>(is);
    const double period = get<double>(is);
    const double time = get<double>(is);
    const double nu = get<double>(is);
    const auto name_len = get<uint32_t>(is);
    std::string name(name_len, '\0');
    is.read(name.data(), name_len);
    Grid2D g(static_cast<int>(n), period);
    std::vector<double> vals(g.size());
    is.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(vals.size() * sizeof(double)));
    if (!is) throw IoError("load_snapshot: truncated file " + path);
    return {ScalarField2D::from_values(g, std::move(vals)), time, nu, name};
}

} // namespace vcl
