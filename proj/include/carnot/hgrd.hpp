#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "carnot/grid.hpp"

namespace carnot {

// Binary grid format "HGRD": magic, u16 version=1, u16 ell, u16 nc, u32 Nz,
// u32 Nt, f64 L, f64 T, then row-major complex samples as little-endian
// f64 pairs (re, im).

namespace detail {

inline void put_u16(std::string& out, std::uint16_t v)
{
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

inline void put_u32(std::string& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_f64(std::string& out, double d)
{
    const std::uint64_t v = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

struct ByteReader {
    const std::string& buf;
    std::size_t pos = 0;

    bool need(std::size_t n) const { return pos + n <= buf.size(); }
    std::uint16_t u16()
    {
        std::uint16_t v = 0;
        for (int i = 0; i < 2; ++i) v |= std::uint16_t(std::uint8_t(buf[pos++])) << (8 * i);
        return v;
    }
    std::uint32_t u32()
    {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(std::uint8_t(buf[pos++])) << (8 * i);
        return v;
    }
    double f64()
    {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(std::uint8_t(buf[pos++])) << (8 * i);
        return std::bit_cast<double>(v);
    }
};

}  // namespace detail

inline void export_grid(const GridFunction& f, const std::string& path)
{
    std::string out;
    out.reserve(28 + 16 * f.size());
    out += "HGRD";
    detail::put_u16(out, 1);
    detail::put_u16(out, static_cast<std::uint16_t>(f.grid.ell));
    detail::put_u16(out, static_cast<std::uint16_t>(f.grid.nc));
    detail::put_u32(out, static_cast<std::uint32_t>(f.grid.Nz));
    detail::put_u32(out, static_cast<std::uint32_t>(f.grid.Nt));
    detail::put_f64(out, f.grid.L);
    detail::put_f64(out, f.grid.T);
    for (const cplx& v : f.data) {
        detail::put_f64(out, v.real());
        detail::put_f64(out, v.imag());
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("export_grid: cannot open '" + path + "' for writing");
    os.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!os) throw IoError("export_grid: write failed for '" + path + "'");
}

inline GridFunction import_grid(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("import_grid: cannot open '" + path + "'");
    std::string buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (buf.size() < 30 || buf.compare(0, 4, "HGRD") != 0)
        throw IoError("import_grid: bad magic in '" + path + "'");
    detail::ByteReader r{buf, 4};
    const std::uint16_t version = r.u16();
    if (version != 1)
        throw IoError("import_grid: unsupported HGRD version " + std::to_string(version));
    Grid g;
    g.ell = r.u16();
    g.nc = r.u16();
    g.Nz = static_cast<int>(r.u32());
    g.Nt = static_cast<int>(r.u32());
    g.L = r.f64();
    g.T = r.f64();
    if (g.ell < 1 || g.nc < 1 || g.Nz < 2 || g.Nt < 2 || !(g.L > 0) || !(g.T > 0))
        throw IoError("import_grid: invalid header dimensions");
    GridFunction f(g);
    const std::size_t expected = r.pos + 16 * f.size();
    if (buf.size() != expected)
        throw IoError("import_grid: expected " + std::to_string(expected) + " bytes, got "
                      + std::to_string(buf.size()));
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double re = r.f64();
        const double im = r.f64();
        if (!std::isfinite(re) || !std::isfinite(im))
            throw IoError("import_grid: non-finite sample at index " + std::to_string(i));
        f[i] = cplx(re, im);
    }
    return f;
}

}  // namespace carnot
