#include "nsbl/nsf1.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nsbl {

namespace {

// Little-endian host assumed (checked once); the format is defined LE.
void check_endianness() {
    const std::uint32_t probe = 1;
    char b;
    std::memcpy(&b, &probe, 1);
    if (b != 1) throw std::runtime_error("NSF1 io: big-endian hosts are not supported");
}

void write_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }
void write_f64(std::ostream& os, double v) { os.write(reinterpret_cast<const char*>(&v), 8); }

std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v;
    is.read(reinterpret_cast<char*>(&v), 4);
    return v;
}
double read_f64(std::istream& is) {
    double v;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

void write_magic(std::ostream& os) { os.write("NSF1", 4); }

void read_magic(std::istream& is) {
    char m[4];
    is.read(m, 4);
    if (!is || std::memcmp(m, "NSF1", 4) != 0) throw std::runtime_error("NSF1 io: bad magic");
}

}  // namespace

void write_nsf1(const std::string& path, const VectorField& f) {
    check_endianness();
    const VectorField fp = to_physical(f);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("NSF1 io: cannot open " + path);
    write_magic(os);
    write_u32(os, static_cast<std::uint32_t>(fp.grid().n));
    write_f64(os, fp.grid().length);
    for (int c = 0; c < 3; ++c) {
        const auto& v = fp[c].samples();
        os.write(reinterpret_cast<const char*>(v.data()),
                 static_cast<std::streamsize>(v.size() * sizeof(double)));
    }
    if (!os) throw std::runtime_error("NSF1 io: write failed for " + path);
}

VectorField read_nsf1(const std::string& path) {
    check_endianness();
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("NSF1 io: cannot open " + path);
    read_magic(is);
    const std::uint32_t n = read_u32(is);
    const double L = read_f64(is);
    GridSpec g(static_cast<int>(n), L);
    std::array<ScalarField, 3> comps;
    for (int c = 0; c < 3; ++c) {
        std::vector<double> v(g.num_points());
        is.read(reinterpret_cast<char*>(v.data()),
                static_cast<std::streamsize>(v.size() * sizeof(double)));
        if (!is) throw std::runtime_error("NSF1 io: truncated file " + path);
        comps[c] = ScalarField::physical(g, std::move(v));
    }
    return VectorField(std::move(comps));
}

void write_nsf1_compact(const std::string& path, const CompactField& f) {
    check_endianness();
    if (f.ncomp() != 3) throw std::invalid_argument("NSF1 io: compact files store 3 components");
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("NSF1 io: cannot open " + path);
    write_magic(os);
    write_u32(os, static_cast<std::uint32_t>(f.n()));
    write_f64(os, 2.0 * f.extent());
    write_f64(os, f.extent());
    for (int c = 0; c < 3; ++c) {
        const auto& v = f.comp(c);
        os.write(reinterpret_cast<const char*>(v.data()),
                 static_cast<std::streamsize>(v.size() * sizeof(double)));
    }
    if (!os) throw std::runtime_error("NSF1 io: write failed for " + path);
}

CompactField read_nsf1_compact(const std::string& path, double support_radius) {
    check_endianness();
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("NSF1 io: cannot open " + path);
    read_magic(is);
    const std::uint32_t n = read_u32(is);
    const double L = read_f64(is);
    const double R = read_f64(is);
    if (L != 2.0 * R) throw std::runtime_error("NSF1 io: inconsistent compact header");
    std::vector<std::vector<double>> data(3);
    const std::size_t npts = static_cast<std::size_t>(n) * n * n;
    for (int c = 0; c < 3; ++c) {
        data[c].resize(npts);
        is.read(reinterpret_cast<char*>(data[c].data()),
                static_cast<std::streamsize>(npts * sizeof(double)));
        if (!is) throw std::runtime_error("NSF1 io: truncated file " + path);
    }
    return CompactField::raw(static_cast<int>(n), R, support_radius, std::move(data));
}

}  // namespace nsbl
