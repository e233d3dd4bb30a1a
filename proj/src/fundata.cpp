#include "bcv/fundata.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bcv/errors.hpp"

namespace bcv {

using nlohmann::json;

FundamentalData FundamentalData::zeros(const SpaceParams& params, const Chart& chart) {
  chart.validate();
  return {params,
          chart,
          RealField(chart, 1.0),
          RealField(chart, 0.0),
          RealField(chart, 0.0),
          ComplexField(chart, cplx{}),
          ComplexField(chart, cplx{})};
}

void FundamentalData::validate(double u_slack) const {
  chart.validate();
  if (!lambda.matches(chart) || !u.matches(chart) || !H.matches(chart) || !p.matches(chart) ||
      !A.matches(chart)) {
    throw PreconditionError("field shape does not match chart");
  }
  for (std::size_t k = 0; k < chart.size(); ++k) {
    const double l = lambda.values()[k];
    const double uu = u.values()[k];
    if (!std::isfinite(l) || !std::isfinite(uu) || !std::isfinite(H.values()[k]) ||
        !std::isfinite(p.values()[k].real()) || !std::isfinite(p.values()[k].imag()) ||
        !std::isfinite(A.values()[k].real()) || !std::isfinite(A.values()[k].imag())) {
      throw PreconditionError("fundamental data contain non-finite values");
    }
    if (!(l > 0.0)) throw PreconditionError("conformal factor lambda must be positive");
    if (std::abs(uu) > 1.0 + u_slack) throw PreconditionError("angle function must satisfy |u| <= 1");
  }
}

CanonicalSurface parse_canonical(std::string_view name) {
  if (name == "slice" || name == "Slice") return CanonicalSurface::Slice;
  if (name == "cylinder" || name == "GeodesicCylinder" || name == "geodesic-cylinder") {
    return CanonicalSurface::GeodesicCylinder;
  }
  throw PreconditionError("unknown canonical surface '" + std::string(name) + "'");
}

FundamentalData synthesize_canonical(CanonicalSurface which, const SpaceParams& params,
                                     const Chart& chart) {
  if (!params.is_product()) {
    throw PreconditionError("canonical surfaces are defined in product spaces (tau = 0)");
  }
  auto data = FundamentalData::zeros(params, chart);
  const double kappa = params.kappa();
  switch (which) {
    case CanonicalSurface::Slice:
      for (int j = 0; j < chart.nt; ++j) {
        for (int i = 0; i < chart.ns; ++i) {
          const double r2 = std::norm(chart.z(i, j));
          const double denom = 1.0 + 0.25 * kappa * r2;
          if (!(denom > 0.0)) {
            throw PreconditionError("chart leaves the disk model of M^2(kappa): need |z|^2 < 4/|kappa|");
          }
          data.lambda(i, j) = 1.0 / (denom * denom);
          data.u(i, j) = 1.0;
        }
      }
      break;
    case CanonicalSurface::GeodesicCylinder:
      std::fill(data.A.values().begin(), data.A.values().end(), cplx(0.0, -0.5));
      break;
  }
  return data;
}

FundamentalData rescale_parameter(const FundamentalData& data, double a) {
  if (!(std::isfinite(a) && a != 0.0)) throw PreconditionError("rescale factor must be finite and nonzero");
  FundamentalData out = data;
  const Chart& c = data.chart;
  if (a > 0.0) {
    out.chart = {c.s_min / a, c.s_max / a, c.t_min / a, c.t_max / a, c.ns, c.nt};
  } else {
    out.chart = {c.s_max / a, c.s_min / a, c.t_max / a, c.t_min / a, c.ns, c.nt};
  }
  for (int j = 0; j < c.nt; ++j) {
    for (int i = 0; i < c.ns; ++i) {
      const int si = a > 0.0 ? i : c.ns - 1 - i;
      const int sj = a > 0.0 ? j : c.nt - 1 - j;
      out.lambda(i, j) = a * a * data.lambda(si, sj);
      out.u(i, j) = data.u(si, sj);
      out.H(i, j) = data.H(si, sj);
      out.p(i, j) = a * a * data.p(si, sj);
      out.A(i, j) = a * data.A(si, sj);
    }
  }
  return out;
}

PitchNormalized normalize_pitch(const FundamentalData& data, double target, const Tolerances& tol) {
  const auto& vals = data.A.values();
  const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end(), [](const cplx& x, const cplx& y) {
    return x.imag() < y.imag();
  });
  if (hi->imag() - lo->imag() > tol.alg) throw PreconditionError("Im A is not constant on the chart");
  double mean = 0.0;
  for (const auto& x : vals) mean += x.imag();
  mean /= static_cast<double>(vals.size());
  if (std::abs(mean) <= tol.alg) throw PreconditionError("Im A \xE2\x89\x88 0: data carry no pitch");
  const double a = target / mean;
  return {rescale_parameter(data, a), a};
}

namespace {

json real_array(const RealField& f) { return json(f.values()); }

json part_array(const ComplexField& f, bool imag) {
  json arr = json::array();
  for (const auto& x : f.values()) arr.push_back(imag ? x.imag() : x.real());
  return arr;
}

std::vector<double> read_array(const json& doc, const char* key, std::size_t expected) {
  if (!doc.contains(key)) throw IoError(std::string("missing field '") + key + "'");
  const json& arr = doc.at(key);
  if (!arr.is_array()) throw IoError(std::string("field '") + key + "' is not an array");
  if (arr.size() != expected) {
    std::ostringstream msg;
    msg << "shape mismatch: field '" << key << "' has " << arr.size() << " entries, expected " << expected;
    throw PreconditionError(msg.str());
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& v : arr) {
    if (!v.is_number()) throw PreconditionError(std::string("field '") + key + "' contains NaN or non-numeric entries");
    out.push_back(v.get<double>());
  }
  return out;
}

double read_number(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number()) {
    throw IoError(std::string("missing or non-numeric field '") + key + "'");
  }
  return obj.at(key).get<double>();
}

int read_count(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number_integer()) {
    throw IoError(std::string("missing or non-integer field '") + key + "'");
  }
  return obj.at(key).get<int>();
}

}  // namespace

std::string to_json_string(const FundamentalData& data) {
  json doc;
  doc["kappa"] = data.params.kappa();
  doc["tau"] = data.params.tau();
  doc["chart"] = {{"s_min", data.chart.s_min}, {"s_max", data.chart.s_max},
                  {"t_min", data.chart.t_min}, {"t_max", data.chart.t_max},
                  {"ns", data.chart.ns},       {"nt", data.chart.nt}};
  doc["lambda"] = real_array(data.lambda);
  doc["u"] = real_array(data.u);
  doc["H"] = real_array(data.H);
  doc["p_re"] = part_array(data.p, false);
  doc["p_im"] = part_array(data.p, true);
  doc["A_re"] = part_array(data.A, false);
  doc["A_im"] = part_array(data.A, true);
  return doc.dump();
}

FundamentalData from_json_string(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed fundamental-data file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("chart") || !doc.at("chart").is_object()) {
    throw IoError("malformed fundamental-data file: missing chart");
  }
  const json& c = doc.at("chart");
  Chart chart{read_number(c, "s_min"), read_number(c, "s_max"), read_number(c, "t_min"),
              read_number(c, "t_max"), read_count(c, "ns"),      read_count(c, "nt")};
  chart.validate();
  const SpaceParams params(read_number(doc, "kappa"), read_number(doc, "tau"));

  auto data = FundamentalData::zeros(params, chart);
  const std::size_t n = chart.size();
  data.lambda.values() = read_array(doc, "lambda", n);
  data.u.values() = read_array(doc, "u", n);
  data.H.values() = read_array(doc, "H", n);
  const auto p_re = read_array(doc, "p_re", n);
  const auto p_im = read_array(doc, "p_im", n);
  const auto a_re = read_array(doc, "A_re", n);
  const auto a_im = read_array(doc, "A_im", n);
  for (std::size_t k = 0; k < n; ++k) {
    data.p.values()[k] = {p_re[k], p_im[k]};
    data.A.values()[k] = {a_re[k], a_im[k]};
  }
  data.validate(0.0);
  return data;
}

void save(const FundamentalData& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << to_json_string(data) << '\n';
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

FundamentalData load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_string(buf.str());
}

}  // namespace bcv
