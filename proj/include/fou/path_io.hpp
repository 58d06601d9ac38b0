#pragma once

#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "fou/sample_path.hpp"

namespace fou {

/// Binary path dump: 16-byte header (magic "FOUPATH1", then the step as a
/// 64-bit float), followed by the values as little-endian 64-bit floats.
inline constexpr char kPathDumpMagic[8] = {'F', 'O', 'U', 'P', 'A', 'T', 'H', '1'};

inline void write_path_dump(const SamplePath& path, std::ostream& os) {
    os.write(kPathDumpMagic, 8);
    os.write(reinterpret_cast<const char*>(&path.step), 8);
    os.write(reinterpret_cast<const char*>(path.values.data()),
             static_cast<std::streamsize>(path.values.size() * 8));
    if (!os) throw std::runtime_error("path dump: write failed");
}

inline void write_path_dump(const SamplePath& path, const std::string& filename) {
    std::ofstream os(filename, std::ios::binary);
    if (!os) throw std::runtime_error("path dump: cannot open " + filename);
    write_path_dump(path, os);
}

inline SamplePath read_path_dump(std::istream& is) {
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kPathDumpMagic, 8) != 0)
        throw std::runtime_error("path dump: bad magic");
    double step = 0.0;
    is.read(reinterpret_cast<char*>(&step), 8);
    if (!is) throw std::runtime_error("path dump: truncated header");
    std::vector<double> values;
    double v;
    while (is.read(reinterpret_cast<char*>(&v), 8)) values.push_back(v);
    if (values.empty()) throw std::runtime_error("path dump: no values");
    return SamplePath(step, std::move(values));
}

inline SamplePath read_path_dump(const std::string& filename) {
    std::ifstream is(filename, std::ios::binary);
    if (!is) throw std::runtime_error("path dump: cannot open " + filename);
    return read_path_dump(is);
}

} // namespace fou
