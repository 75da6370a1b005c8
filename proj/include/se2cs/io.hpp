// File formats: F2D1 / SE2F binary fields, PGM/PPM images with key=value sidecars,
// CSV for circle signals. Every writer goes through a temp file + rename.
#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "angular.hpp"
#include "bargmann.hpp"
#include "grid2d.hpp"

namespace se2cs::io {

namespace fs = std::filesystem;

// Writes bytes to path.tmp then renames; the temp file is removed on failure.
inline void write_atomic(const fs::path& path, const std::string& bytes) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os.write(bytes.data(), std::streamsize(bytes.size()));
        os.flush();
        if (!os) {
            os.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("write failed for " + path.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string());
    }
}

inline std::string read_file(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

namespace detail {

template <class T>
void put_le(std::string& out, T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    out.append(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get_le(const std::string& in, std::size_t& pos, const char* what) {
    if (pos + sizeof(T) > in.size()) throw std::runtime_error(std::string("truncated input reading ") + what);
    unsigned char b[sizeof(T)];
    std::memcpy(b, in.data() + pos, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    pos += sizeof(T);
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
}

inline void expect_magic(const std::string& in, std::size_t& pos, const char* magic) {
    if (in.compare(pos, 4, magic) != 0) throw std::runtime_error(std::string("bad magic, expected ") + magic);
    pos += 4;
}

}  // namespace detail

inline void encode_f2d(std::string& out, const Field2D& f, bool complex_values) {
    out.append("F2D1");
    detail::put_le<std::uint32_t>(out, std::uint32_t(f.n()));
    detail::put_le<std::uint32_t>(out, complex_values ? 1u : 0u);
    detail::put_le<double>(out, f.h());
    for (const auto& x : f.values()) {
        detail::put_le<double>(out, x.real());
        if (complex_values) detail::put_le<double>(out, x.imag());
    }
}

inline Field2D decode_f2d(const std::string& in, std::size_t& pos) {
    detail::expect_magic(in, pos, "F2D1");
    const auto n = detail::get_le<std::uint32_t>(in, pos, "N");
    const auto flags = detail::get_le<std::uint32_t>(in, pos, "flags");
    const auto h = detail::get_le<double>(in, pos, "h");
    Field2D f(Grid{int(n), h});
    for (auto& x : f.values()) {
        const double re = detail::get_le<double>(in, pos, "values");
        const double im = (flags & 1u) ? detail::get_le<double>(in, pos, "values") : 0.0;
        x = cplx(re, im);
    }
    return f;
}

inline void write_f2d(const fs::path& path, const Field2D& f, bool complex_values) {
    std::string out;
    encode_f2d(out, f, complex_values);
    write_atomic(path, out);
}

inline Field2D read_f2d(const fs::path& path) {
    const auto in = read_file(path);
    std::size_t pos = 0;
    auto f = decode_f2d(in, pos);
    if (pos != in.size()) throw std::runtime_error("trailing bytes in " + path.string());
    return f;
}

// SE2F: magic, u32 N, u32 n_theta, f64 h, lambda, omega, then one complete complex F2D1 record per theta.
inline void write_se2f(const fs::path& path, const SE2Field& f) {
    std::string out("SE2F");
    detail::put_le<std::uint32_t>(out, std::uint32_t(f.grid().n));
    detail::put_le<std::uint32_t>(out, std::uint32_t(f.n_theta()));
    detail::put_le<double>(out, f.grid().h);
    detail::put_le<double>(out, f.lambda());
    detail::put_le<double>(out, f.omega());
    for (int t = 0; t < f.n_theta(); ++t) encode_f2d(out, f.slice(t), true);
    write_atomic(path, out);
}

inline SE2Field read_se2f(const fs::path& path) {
    const auto in = read_file(path);
    std::size_t pos = 0;
    detail::expect_magic(in, pos, "SE2F");
    const auto n = detail::get_le<std::uint32_t>(in, pos, "N");
    const auto nt = detail::get_le<std::uint32_t>(in, pos, "N_theta");
    const auto h = detail::get_le<double>(in, pos, "h");
    const auto lambda = detail::get_le<double>(in, pos, "lambda");
    const auto omega = detail::get_le<double>(in, pos, "omega");
    SE2Field f(Grid{int(n), h}, int(nt), lambda, omega);
    for (int t = 0; t < int(nt); ++t) {
        f.slice(t) = decode_f2d(in, pos);
        if (!(f.slice(t).grid() == f.grid())) throw std::runtime_error("SE2F slice grid mismatch in " + path.string());
    }
    return f;
}

using Meta = std::map<std::string, std::string>;

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_meta(const fs::path& image_path, const Meta& meta) {
    std::string out;
    for (const auto& [k, v] : meta) out += k + "=" + v + "\n";
    fs::path p = image_path;
    p += ".meta";
    write_atomic(p, out);
}

inline Meta read_meta(const fs::path& path) {
    Meta m;
    std::istringstream is(read_file(path));
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        m[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return m;
}

inline std::string pnm_header(const char* magic, int width, int height, int maxval, const std::string& comment) {
    std::string h = std::string(magic) + "\n" + std::to_string(width) + " " + std::to_string(height) + "\n";
    if (!comment.empty()) h += "# " + comment + "\n";
    return h + std::to_string(maxval) + "\n";
}

// Real part mapped affinely [lo, hi] -> [0, 65535], 16-bit big-endian samples.
inline void write_pgm(const fs::path& path, const Field2D& f, double lo, double hi, const std::string& comment,
                      Meta meta = {}) {
    std::string out = pnm_header("P5", f.n(), f.n(), 65535, comment);
    const double span = hi > lo ? hi - lo : 1.0;
    for (const auto& x : f.values()) {
        const double t = std::clamp((x.real() - lo) / span, 0.0, 1.0);
        const auto v = std::uint16_t(std::lround(t * 65535.0));
        out.push_back(char(v >> 8));
        out.push_back(char(v & 0xff));
    }
    write_atomic(path, out);
    meta["min"] = format_double(lo);
    meta["max"] = format_double(hi);
    meta["scale"] = format_double(65535.0 / span);
    meta["offset"] = format_double(lo);
    meta["format"] = "P5 maxval 65535 big-endian; value = offset + sample / scale";
    write_meta(path, meta);
}

inline void write_pgm(const fs::path& path, const Field2D& f, const std::string& comment, Meta meta = {}) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& x : f.values()) {
        lo = std::min(lo, x.real());
        hi = std::max(hi, x.real());
    }
    write_pgm(path, f, lo, hi, comment, std::move(meta));
}

struct PnmImage {
    std::string magic;
    int width = 0, height = 0, maxval = 0;
    std::vector<std::string> comments;
    std::string data;
};

inline PnmImage read_pnm(const fs::path& path) {
    const auto in = read_file(path);
    PnmImage img;
    std::size_t pos = 0;
    auto token = [&]() {
        for (;;) {
            while (pos < in.size() && std::isspace(static_cast<unsigned char>(in[pos]))) ++pos;
            if (pos < in.size() && in[pos] == '#') {
                const auto e = in.find('\n', pos);
                img.comments.push_back(in.substr(pos + 1, e - pos - 1));
                pos = e == std::string::npos ? in.size() : e + 1;
                continue;
            }
            break;
        }
        const auto start = pos;
        while (pos < in.size() && !std::isspace(static_cast<unsigned char>(in[pos]))) ++pos;
        return in.substr(start, pos - start);
    };
    img.magic = token();
    img.width = std::stoi(token());
    img.height = std::stoi(token());
    img.maxval = std::stoi(token());
    img.data = in.substr(pos + 1);
    return img;
}

inline void write_ppm(const fs::path& path, int width, int height, const std::vector<std::uint8_t>& rgb,
                      const std::string& comment) {
    if (rgb.size() != std::size_t(width) * height * 3) throw std::invalid_argument("write_ppm: pixel count mismatch");
    std::string out = pnm_header("P6", width, height, 255, comment);
    out.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
    write_atomic(path, out);
}

inline void write_csv(const fs::path& path, const AngularSignal& s, bool with_imag = true) {
    std::ostringstream os;
    se2cs::write_csv(os, s, with_imag);
    write_atomic(path, os.str());
}

}  // namespace se2cs::io
