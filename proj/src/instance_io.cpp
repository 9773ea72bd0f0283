#include "fairmsr/instance_io.hpp"

#include "fairmsr/errors.hpp"

#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace fairmsr {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            return out;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

constexpr std::size_t no_col = static_cast<std::size_t>(-1);

int intern_color(ColorTable& table,
                 std::unordered_map<std::string, int>& ids,
                 const std::string& label) {
    auto it = ids.find(label);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(table.labels.size());
    table.labels.push_back(label);
    ids.emplace(label, id);
    return id;
}

} // namespace

Instance read_instance_csv(std::istream& in) {
    Instance inst;
    std::unordered_map<std::string, int> color_ids;

    bool started = false;
    bool header_mode = false;
    std::size_t header_cols = 0;
    std::size_t color_col = no_col;
    std::size_t dim = 0;
    bool with_colors = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_fields(line);

        if (!started) {
            // A first row with any non-numeric field is a header.
            bool all_numeric = true;
            double tmp;
            for (const auto& f : fields)
                if (!parse_double(f, tmp) &&
                    f.rfind("color:", 0) != 0) {
                    all_numeric = false;
                    break;
                }
            if (!all_numeric) {
                header_mode = true;
                header_cols = fields.size();
                for (std::size_t c = 0; c < fields.size(); ++c) {
                    if (fields[c] == "color") {
                        if (color_col != no_col)
                            throw InstanceError(
                                "duplicate color column in header", line_no);
                        color_col = c;
                    } else if (fields[c].empty()) {
                        throw InstanceError("empty header field", line_no);
                    }
                }
                dim = header_cols - (color_col != no_col ? 1 : 0);
                if (dim == 0)
                    throw InstanceError("header has no coordinate columns",
                                        line_no);
                with_colors = color_col != no_col;
                inst.points = PointSet(dim);
                started = true;
                continue;
            }
            started = true; // headerless; fall through as a data row
        }

        std::vector<double> coords;
        std::string label;
        bool row_colored = false;
        if (header_mode) {
            if (fields.size() != header_cols)
                throw InstanceError("expected " +
                                        std::to_string(header_cols) +
                                        " fields, got " +
                                        std::to_string(fields.size()),
                                    line_no);
            for (std::size_t c = 0; c < fields.size(); ++c) {
                if (c == color_col) {
                    if (fields[c].empty())
                        throw InstanceError("empty color label", line_no);
                    label = fields[c];
                    row_colored = true;
                    continue;
                }
                double v;
                if (!parse_double(fields[c], v))
                    throw InstanceError("bad coordinate '" + fields[c] + "'",
                                        line_no);
                coords.push_back(v);
            }
        } else {
            std::size_t ncoord = fields.size();
            if (!fields.empty() && fields.back().rfind("color:", 0) == 0) {
                label = trim(fields.back().substr(6));
                if (label.empty())
                    throw InstanceError("empty color label", line_no);
                row_colored = true;
                --ncoord;
            }
            if (ncoord == 0)
                throw InstanceError("row has no coordinates", line_no);
            for (std::size_t c = 0; c < ncoord; ++c) {
                double v;
                if (!parse_double(fields[c], v))
                    throw InstanceError("bad coordinate '" + fields[c] + "'",
                                        line_no);
                coords.push_back(v);
            }
        }

        if (inst.points.dim() == 0 && inst.points.empty()) {
            dim = coords.size();
            with_colors = row_colored;
            inst.points = PointSet(dim);
        }
        if (coords.size() != dim)
            throw InstanceError("expected " + std::to_string(dim) +
                                    " coordinates, got " +
                                    std::to_string(coords.size()),
                                line_no);
        if (row_colored != with_colors)
            throw InstanceError("inconsistent color annotations", line_no);
        inst.points.push_back(coords);
        if (with_colors)
            inst.colors.color_of.push_back(
                intern_color(inst.colors, color_ids, label));
    }
    if (inst.points.empty()) throw InstanceError("empty instance");
    return inst;
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InstanceError("cannot open '" + path + "'");
    return read_instance_csv(in);
}

void write_instance_csv(std::ostream& out, const PointSet& pts,
                        const ColorTable* colors) {
    char buf[64];
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::span<const double> p = pts[i];
        for (std::size_t c = 0; c < p.size(); ++c) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p[c]);
            (void)ec;
            if (c) out << ',';
            out.write(buf, ptr - buf);
        }
        if (colors && !colors->color_of.empty())
            out << ",color:" << colors->labels[colors->color_of[i]];
        out << '\n';
    }
}

namespace {

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
}

void fnv_u64(std::uint64_t& h, std::uint64_t v) { fnv_bytes(h, &v, 8); }

} // namespace

std::string instance_digest(const PointSet& pts, const ColorTable* colors) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    fnv_u64(h, pts.size());
    fnv_u64(h, pts.dim());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::span<const double> p = pts[i];
        for (double v : p) {
            std::uint64_t bits;
            std::memcpy(&bits, &v, 8);
            fnv_u64(h, bits);
        }
    }
    if (colors && !colors->color_of.empty()) {
        fnv_u64(h, colors->labels.size());
        for (const std::string& s : colors->labels)
            fnv_bytes(h, s.data(), s.size());
        for (int c : colors->color_of)
            fnv_u64(h, static_cast<std::uint64_t>(c));
    } else {
        fnv_u64(h, 0);
    }
    char out[17];
    static const char* hexd = "0123456789abcdef";
    for (int i = 0; i < 16; ++i)
        out[i] = hexd[(h >> (60 - 4 * i)) & 0xF];
    out[16] = '\0';
    return std::string(out);
}

} // namespace fairmsr
