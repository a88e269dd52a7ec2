#ifndef CTFRAMES_SERIALIZE_HPP
#define CTFRAMES_SERIALIZE_HPP

#include <ostream>
#include <string>
#include <Eigen/Dense>

#include "ctframes/frame.hpp"
#include "ctframes/measure.hpp"
#include "ctframes/multiplier.hpp"
#include "ctframes/quantum.hpp"

namespace ctf {

/// Shortest-form %.17g rendering; round-trips every finite double exactly.
std::string format_double(double v);

std::string json_escape(const std::string& s);

/// {"points": [[..], ..], "weights": [..]}
std::string to_json(const MeasureSpace& space);
MeasureSpace space_from_json(const std::string& text);

/// {"dim": n, "space": {...}, "vectors": [[re, im], ...]} column-major.
std::string to_json(const Frame& frame);
Frame frame_from_json(const std::string& text);

/// {"p":, "norm":, "bound":, "slack":, "singular_values": [..]}; p = inf is
/// written as the string "inf", an unset bound as null.
std::string to_json(const SchattenReport& report);

/// {"trace":, "min_eig":, "purity":, "reduced_left": {...}, "reduced_right": {...}}
std::string density_report_json(const SeparableDensity& d);

/// Row-major complex matrix with the one-line header "rows,cols,complex-interleaved".
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXcd& m);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXcd& m);

/// Real grid payloads (spectrograms, symbol masks) use the same layout with
/// zero imaginary parts.
void write_grid_csv(const std::string& path, const Eigen::MatrixXd& grid);

}  // namespace ctf

#endif
