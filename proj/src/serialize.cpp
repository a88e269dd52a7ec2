#include "ctframes/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ctf {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

}  // namespace

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string to_json(const MeasureSpace& space) {
  std::ostringstream out;
  out << "{\"points\": [";
  for (Eigen::Index k = 0; k < space.atom_count(); ++k) {
    if (k) out << ", ";
    out << '[';
    for (Eigen::Index d = 0; d < space.coord_dim(); ++d) {
      if (d) out << ", ";
      out << json_number(space.points()(d, k));
    }
    out << ']';
  }
  out << "], \"weights\": [";
  for (Eigen::Index k = 0; k < space.atom_count(); ++k) {
    if (k) out << ", ";
    out << json_number(space.weights()[k]);
  }
  out << "]}";
  return out.str();
}

namespace {

MeasureSpace space_from_parsed(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("points") || !j.contains("weights"))
    throw std::invalid_argument("measure space JSON needs points and weights");
  const auto& points = j.at("points");
  const auto& weights = j.at("weights");
  if (!points.is_array() || !weights.is_array() || points.size() != weights.size() ||
      points.empty())
    throw std::invalid_argument("measure space JSON: malformed points/weights");
  const auto dim = points.at(0).is_array() ? points.at(0).size() : 1;
  Eigen::MatrixXd coords(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(points.size()));
  Eigen::VectorXd w(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& p = points.at(k);
    if (p.is_array()) {
      if (p.size() != dim) throw std::invalid_argument("measure space JSON: ragged points");
      for (std::size_t d = 0; d < dim; ++d)
        coords(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(k)) = p.at(d).get<double>();
    } else {
      coords(0, static_cast<Eigen::Index>(k)) = p.get<double>();
    }
    w[static_cast<Eigen::Index>(k)] = weights.at(k).get<double>();
  }
  return MeasureSpace(std::move(coords), std::move(w));
}

}  // namespace

MeasureSpace space_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  return space_from_parsed(j);
}

std::string to_json(const Frame& frame) {
  std::ostringstream out;
  out << "{\"dim\": " << frame.dim() << ", \"space\": " << to_json(frame.space())
      << ", \"vectors\": [";
  bool first = true;
  for (Eigen::Index k = 0; k < frame.atom_count(); ++k) {
    for (Eigen::Index i = 0; i < frame.dim(); ++i) {
      if (!first) out << ", ";
      first = false;
      const std::complex<double> v = frame.vectors()(i, k);
      out << '[' << json_number(v.real()) << ", " << json_number(v.imag()) << ']';
    }
  }
  out << "]}";
  return out.str();
}

Frame frame_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object() || !j.contains("dim") || !j.contains("space") || !j.contains("vectors"))
    throw std::invalid_argument("frame JSON needs dim, space and vectors");
  MeasureSpace space = space_from_parsed(j.at("space"));
  const auto dim = j.at("dim").get<Eigen::Index>();
  const auto& vec = j.at("vectors");
  if (dim < 1 || !vec.is_array() ||
      static_cast<Eigen::Index>(vec.size()) != dim * space.atom_count())
    throw std::invalid_argument("frame JSON: vector payload has the wrong length");
  Eigen::MatrixXcd columns(dim, space.atom_count());
  Eigen::Index pos = 0;
  for (Eigen::Index k = 0; k < space.atom_count(); ++k) {
    for (Eigen::Index i = 0; i < dim; ++i, ++pos) {
      const auto& entry = vec.at(static_cast<std::size_t>(pos));
      if (!entry.is_array() || entry.size() != 2)
        throw std::invalid_argument("frame JSON: entries must be [re, im] pairs");
      columns(i, k) = {entry.at(0).get<double>(), entry.at(1).get<double>()};
    }
  }
  return Frame(std::move(space), std::move(columns));
}

std::string to_json(const SchattenReport& report) {
  std::ostringstream out;
  out << "{\"p\": ";
  if (std::isinf(report.p))
    out << "\"inf\"";
  else
    out << json_number(report.p);
  out << ", \"norm\": " << json_number(report.norm) << ", \"bound\": "
      << (report.bound ? json_number(*report.bound) : "null")
      << ", \"slack\": " << (report.bound ? json_number(report.slack()) : "null")
      << ", \"singular_values\": [";
  for (Eigen::Index i = 0; i < report.singular_values.size(); ++i) {
    if (i) out << ", ";
    out << json_number(report.singular_values[i]);
  }
  out << "]}";
  return out.str();
}

namespace {

std::string density_entry(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho.op());
  std::ostringstream out;
  out << "{\"trace\": " << json_number(rho.op().trace().real())
      << ", \"min_eig\": " << json_number(eig.eigenvalues().minCoeff())
      << ", \"purity\": " << json_number(purity(rho)) << "}";
  return out.str();
}

}  // namespace

std::string density_report_json(const SeparableDensity& d) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(d.rho.op());
  std::ostringstream out;
  out << "{\"trace\": " << json_number(d.rho.op().trace().real())
      << ", \"min_eig\": " << json_number(eig.eigenvalues().minCoeff())
      << ", \"purity\": " << json_number(purity(d.rho))
      << ", \"reduced_left\": " << density_entry(d.reduced_left)
      << ", \"reduced_right\": " << density_entry(d.reduced_right) << "}";
  return out.str();
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXcd& m) {
  out << m.rows() << ',' << m.cols() << ",complex-interleaved\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag());
    }
    out << '\n';
  }
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXcd& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_matrix_csv(out, m);
  if (!out.good()) throw std::runtime_error("failed while writing " + path);
}

void write_grid_csv(const std::string& path, const Eigen::MatrixXd& grid) {
  write_matrix_csv(path, grid.cast<std::complex<double>>());
}

}  // namespace ctf
