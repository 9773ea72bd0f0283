#pragma once

#include "fairmsr/constraints.hpp"
#include "fairmsr/geometry.hpp"

#include <iosfwd>
#include <string>

namespace fairmsr {

struct Instance {
    PointSet points;
    ColorTable colors;

    bool has_colors() const { return !colors.labels.empty(); }
};

// CSV instance format, one point per row. Two shapes are accepted:
//   headerless:  "x,y[,color:label]"  (the color: prefix marks the label)
//   with header: "x,y,color" naming the columns; the column literally
//                named "color" holds labels, all others are coordinates.
// Rows must agree on dimension, and either all or none carry a color.
// Blank lines are skipped. Throws InstanceError with the 1-based line.
Instance read_instance_csv(std::istream& in);
Instance read_instance_file(const std::string& path);

// Headerless writer, lossless double round-trip.
void write_instance_csv(std::ostream& out, const PointSet& pts,
                        const ColorTable* colors);

// 16-hex-digit FNV-1a fingerprint over shape, coordinates and colors.
std::string instance_digest(const PointSet& pts, const ColorTable* colors);

} // namespace fairmsr
