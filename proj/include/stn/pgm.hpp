#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "stn/image.hpp"

namespace stn {

namespace detail_pgm {

/// Cursor over a fully buffered file so every diagnostic can carry an exact
/// byte offset.
struct Cursor {
    const std::string& buf;
    std::size_t pos = 0;

    bool eof() const { return pos >= buf.size(); }
    char peek() const { return buf[pos]; }

    void skip_space_and_comments() {
        while (!eof()) {
            const char c = buf[pos];
            if (c == '#') {
                while (!eof() && buf[pos] != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' ||
                       c == '\f' || c == '\v') {
                ++pos;
            } else {
                break;
            }
        }
    }

    int read_number(const char* what, long max_value) {
        skip_space_and_comments();
        const std::size_t start = pos;
        if (eof() || buf[pos] < '0' || buf[pos] > '9')
            throw ParseError(std::string("expected ") + what, start);
        long value = 0;
        while (!eof() && buf[pos] >= '0' && buf[pos] <= '9') {
            value = value * 10 + (buf[pos] - '0');
            if (value > max_value)
                throw ParseError(std::string(what) + " out of range", start);
            ++pos;
        }
        return static_cast<int>(value);
    }
};

} // namespace detail_pgm

/// Decodes an 8-bit grayscale PGM (binary P5 or ASCII P2, maxval 255) into
/// intensities 0..255. Malformed content raises a parse error carrying the
/// byte offset of the problem.
inline Image read_pgm(std::istream& in) {
    std::ostringstream whole;
    whole << in.rdbuf();
    const std::string buf = whole.str();
    detail_pgm::Cursor cur{buf};

    if (buf.size() < 2 || buf[0] != 'P' || (buf[1] != '5' && buf[1] != '2'))
        throw ParseError("expected PGM magic 'P5' or 'P2'", 0);
    const bool binary = buf[1] == '5';
    cur.pos = 2;

    const int width = cur.read_number("width", 1 << 20);
    const int height = cur.read_number("height", 1 << 20);
    if (width < 1 || height < 1)
        throw ParseError("image dimensions must be positive", cur.pos);
    cur.skip_space_and_comments();
    const std::size_t maxval_at = cur.pos;
    const int maxval = cur.read_number("maxval", 1 << 20);
    if (maxval != 255)
        throw ParseError("unsupported maxval " + std::to_string(maxval) +
                         " (only 255 is handled)", maxval_at);

    Image img(width, height);
    if (binary) {
        if (cur.eof())
            throw ParseError("missing whitespace before pixel payload", cur.pos);
        ++cur.pos;  // single whitespace byte separates header from payload
        const std::size_t need = static_cast<std::size_t>(width) * height;
        if (buf.size() - cur.pos < need)
            throw ParseError("pixel payload truncated (expected " +
                             std::to_string(need) + " bytes)", buf.size());
        for (std::size_t k = 0; k < need; ++k)
            img.data[k] = static_cast<unsigned char>(buf[cur.pos + k]);
    } else {
        for (std::size_t k = 0; k < img.data.size(); ++k) {
            cur.skip_space_and_comments();
            if (cur.eof())
                throw ParseError("pixel list truncated (expected " +
                                 std::to_string(img.data.size()) + " values)",
                                 buf.size());
            img.data[k] = cur.read_number("pixel value", 255);
        }
    }
    return img;
}

inline Image read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    return read_pgm(in);
}

/// How out-of-range doubles become bytes. clamp is for nonnegative
/// components (u); center shifts by +128 first, the display convention for
/// signed components (v, w, residual).
enum class WriteMode { clamp, center };

inline unsigned char quantize(double x, WriteMode mode) {
    if (mode == WriteMode::center) x += 128.0;
    x = std::min(255.0, std::max(0.0, x));
    return static_cast<unsigned char>(std::lround(x));
}

inline void write_pgm(std::ostream& out, const Image& img, WriteMode mode) {
    require_finite(img, "write_pgm");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::string bytes(img.data.size(), '\0');
    for (std::size_t k = 0; k < img.data.size(); ++k)
        bytes[k] = static_cast<char>(quantize(img.data[k], mode));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline void write_pgm(const std::string& path, const Image& img, WriteMode mode) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    write_pgm(out, img, mode);
    out.flush();
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

} // namespace stn
