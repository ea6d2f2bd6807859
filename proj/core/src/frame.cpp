#include "panogaze/frame.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "panogaze/csv.hpp"

namespace panogaze {

double sample_bilinear(const FrameGray& f, double x, double y) {
    const double px = x * f.width - 0.5;
    const double py = y * f.height - 0.5;
    double fx = std::floor(px);
    double fy = std::floor(py);
    const double ax = px - fx;
    const double ay = py - fy;

    int x0 = static_cast<int>(fx);
    int x1 = x0 + 1;
    // columns wrap
    x0 = ((x0 % f.width) + f.width) % f.width;
    x1 = ((x1 % f.width) + f.width) % f.width;
    // rows clamp
    const int y0 = std::clamp(static_cast<int>(fy), 0, f.height - 1);
    const int y1 = std::clamp(static_cast<int>(fy) + 1, 0, f.height - 1);

    const double v00 = f.at(x0, y0), v10 = f.at(x1, y0);
    const double v01 = f.at(x0, y1), v11 = f.at(x1, y1);
    return (1.0 - ay) * ((1.0 - ax) * v00 + ax * v10) + ay * ((1.0 - ax) * v01 + ax * v11);
}

namespace {

int read_pnm_token(std::istream& in) {
    // skips whitespace and '#' comments per the PNM grammar
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF) throw std::runtime_error("pgm: truncated header");
    int value = 0;
    bool any = false;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        any = true;
        c = in.get();
    }
    if (!any) throw std::runtime_error("pgm: malformed header token");
    return value;
}

} // namespace

FrameGray load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("pgm: cannot open " + path.string());
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || magic[1] != '5')
        throw std::runtime_error("pgm: not a binary P5 file: " + path.string());
    const int width = read_pnm_token(in);
    const int height = read_pnm_token(in);
    const int maxval = read_pnm_token(in);
    if (width < 1 || height < 1)
        throw std::runtime_error("pgm: bad dimensions in " + path.string());
    int depth;
    if (maxval <= 255) depth = 8;
    else if (maxval <= 1023) depth = 10;
    else throw std::runtime_error("pgm: unsupported maxval (only 8/10-bit) in " + path.string());

    FrameGray f(width, height, depth);
    const std::size_t n = f.values.size();
    if (maxval <= 255) {
        std::vector<unsigned char> buf(n);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in.gcount()) != n)
            throw std::runtime_error("pgm: truncated pixel data in " + path.string());
        for (std::size_t i = 0; i < n; ++i) f.values[i] = buf[i];
    } else {
        std::vector<unsigned char> buf(2 * n);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(2 * n));
        if (static_cast<std::size_t>(in.gcount()) != 2 * n)
            throw std::runtime_error("pgm: truncated pixel data in " + path.string());
        for (std::size_t i = 0; i < n; ++i)
            f.values[i] = static_cast<float>((buf[2 * i] << 8) | buf[2 * i + 1]);
    }
    return f;
}

void save_pgm(const FrameGray& frame, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("pgm: cannot write " + path.string());
    const int maxval = frame.bit_depth <= 8 ? 255 : 1023;
    out << "P5\n" << frame.width << " " << frame.height << "\n" << maxval << "\n";
    if (maxval <= 255) {
        std::vector<unsigned char> buf(frame.values.size());
        for (std::size_t i = 0; i < buf.size(); ++i) {
            const double v = std::clamp(std::llround(frame.values[i]), 0ll, 255ll);
            buf[i] = static_cast<unsigned char>(v);
        }
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size()));
    } else {
        std::vector<unsigned char> buf(2 * frame.values.size());
        for (std::size_t i = 0; i < frame.values.size(); ++i) {
            const long long v = std::clamp(std::llround(frame.values[i]), 0ll, 1023ll);
            buf[2 * i] = static_cast<unsigned char>(v >> 8);
            buf[2 * i + 1] = static_cast<unsigned char>(v & 0xff);
        }
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size()));
    }
    if (!out) throw std::runtime_error("pgm: write failed for " + path.string());
}

FrameGray load_csv_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv matrix: cannot open " + path.string());
    std::vector<std::vector<float>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = csv::split_line(line);
        std::vector<float> row;
        row.reserve(fields.size());
        for (const auto& fld : fields)
            row.push_back(static_cast<float>(csv::parse_double(fld, lineno)));
        if (!rows.empty() && row.size() != rows.front().size())
            throw csv::CsvError("csv matrix: ragged row", lineno);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("csv matrix: empty file " + path.string());
    FrameGray f(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
    for (int j = 0; j < f.height; ++j)
        for (int i = 0; i < f.width; ++i)
            f.at(i, j) = rows[j][i];
    return f;
}

std::vector<std::filesystem::path> list_pgm_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> out;
    if (!std::filesystem::is_directory(dir)) return out;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace panogaze
