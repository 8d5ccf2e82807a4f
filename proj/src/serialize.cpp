#include "phasecoh/serialize.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace phasecoh {

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail("invalid JSON in " + path + ": " + e.what());
  }
}

Json parse_spec_json(const std::string& spec) {
  try {
    return Json::parse(spec);
  } catch (const Json::exception& e) {
    fail(std::string("invalid JSON spec: ") + e.what());
  }
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      require(used == item.size(), "bad number '" + item + "'");
    } catch (const std::logic_error&) {
      fail("bad number '" + item + "'");
    }
  }
  return out;
}

double parse_number(const std::string& s, const std::string& what) {
  auto v = parse_list(s);
  require(v.size() == 1, "expected one number for " + what);
  return v[0];
}

Json dims_to_json(const SystemDims& d) {
  Json out = Json::array();
  for (int i = 0; i < d.size(); ++i) out.push_back({{"label", d.labels()[i]}, {"dim", d.dims()[i]}});
  return out;
}

SystemDims dims_from_json(const Json& j) {
  Labels labels;
  std::vector<int> dims;
  for (const auto& e : j) {
    labels.push_back(e.at("label").get<std::string>());
    dims.push_back(e.at("dim").get<int>());
  }
  return SystemDims(labels, dims);
}

std::vector<int> dims_list(const SystemDims& d) { return d.dims(); }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string timestamp_utc() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json matrix_to_json(const MatC& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json r = Json::array(), s = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      r.push_back(m(i, k).real());
      s.push_back(m(i, k).imag());
    }
    re.push_back(r);
    im.push_back(s);
  }
  return {{"re", re}, {"im", im}};
}

MatC matrix_from_json(const Json& j) {
  try {
    const auto& re = j.at("re");
    const auto rows = static_cast<Eigen::Index>(re.size());
    const auto cols = rows ? static_cast<Eigen::Index>(re[0].size()) : 0;
    MatC m = MatC::Zero(rows, cols);
    const bool has_im = j.contains("im");
    for (Eigen::Index i = 0; i < rows; ++i) {
      require(static_cast<Eigen::Index>(re[i].size()) == cols, "ragged matrix in JSON", ErrorKind::DimensionMismatch);
      for (Eigen::Index k = 0; k < cols; ++k)
        m(i, k) = cd(re[i][k].get<double>(), has_im ? j.at("im")[i][k].get<double>() : 0.0);
    }
    return m;
  } catch (const Json::exception& e) {
    fail(std::string("malformed matrix JSON: ") + e.what());
  }
}

Json cost_to_json(const CostFunction& c, int max_k) {
  Json j;
  Json params = Json::object();
  switch (c.kind()) {
    case CostFunction::Kind::Holevo:
      j["kind"] = "holevo";
      break;
    case CostFunction::Kind::Window:
      j["kind"] = "window";
      params["delta"] = c.window_delta();
      break;
    case CostFunction::Kind::PeriodizedMse:
      j["kind"] = "periodized-mse";
      break;
    case CostFunction::Kind::FourierSeries:
      j["kind"] = "fourier-series";
      break;
    case CostFunction::Kind::Sampled: {
      j["kind"] = "sampled";
      std::vector<double> s = c.samples();
      if (s.empty()) {
        int n = c.quadrature_order();
        for (int k = 0; k < n; ++k) s.push_back(c.raw(2 * std::numbers::pi * k / n));
      }
      params["samples"] = s;
      break;
    }
  }
  j["params"] = params;
  j["shift"] = c.shift();
  Json coeffs = Json::array();
  if (c.kind() == CostFunction::Kind::FourierSeries) {
    for (const auto& [k, v] : c.series()) coeffs.push_back({k, v.real(), v.imag()});
  } else {
    int bw = c.bandwidth();
    int kmax = bw >= 0 ? std::min(bw, max_k) : max_k;
    if (c.kind() == CostFunction::Kind::Sampled) kmax = std::min(kmax, (c.quadrature_order() - 1) / 2);
    for (int k = -kmax; k <= kmax; ++k) {
      cd v = c.raw_coefficient(k);
      coeffs.push_back({k, v.real(), v.imag()});
    }
  }
  j["coefficients"] = coeffs;
  return j;
}

CostFunction cost_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    Json params = j.value("params", Json::object());
    if (kind == "holevo") return CostFunction::holevo();
    if (kind == "window") return CostFunction::window(params.at("delta").get<double>());
    if (kind == "periodized-mse") return CostFunction::periodized_mse();
    if (kind == "constant") return CostFunction::constant(params.at("value").get<double>());
    if (kind == "fourier-series") {
      std::map<int, cd> series;
      for (const auto& e : j.at("coefficients")) series[e.at(0).get<int>()] += cd(e.at(1).get<double>(), e.at(2).get<double>());
      return CostFunction::fourier_series(series);
    }
    if (kind == "sampled") return CostFunction::from_samples(params.at("samples").get<std::vector<double>>());
    fail("unknown cost kind '" + kind + "'");
  } catch (const Json::exception& e) {
    fail(std::string("malformed cost JSON: ") + e.what());
  }
}

CostFunction cost_from_spec(const std::string& spec) {
  require(!spec.empty(), "empty cost spec");
  if (spec.front() == '{') return cost_from_json(parse_spec_json(spec));
  if (ends_with(spec, ".json")) return cost_from_json(read_json_file(spec));
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (name == "holevo") return CostFunction::holevo();
  if (name == "periodized-mse" || name == "mse") return CostFunction::periodized_mse();
  if (name == "window") return CostFunction::window(parse_number(arg, "window width"));
  if (name == "constant") return CostFunction::constant(parse_number(arg, "constant cost"));
  fail("unknown cost spec '" + spec + "'");
}

Json density_to_json(const DensityMatrix& rho) {
  Json j = matrix_to_json(rho.mat());
  j["dim"] = rho.dim();
  return j;
}

DensityMatrix density_from_json(const Json& j) {
  MatC m = matrix_from_json(j);
  if (j.contains("dim")) require(j["dim"].get<int>() == m.rows(), "dim does not match matrix size", ErrorKind::DimensionMismatch);
  return DensityMatrix(m, "0", 1e-8);
}

DensityMatrix state_from_spec(const std::string& spec, int d) {
  require(!spec.empty(), "empty state spec");
  if (spec.front() == '{') return density_from_json(parse_spec_json(spec));
  if (ends_with(spec, ".json")) return density_from_json(read_json_file(spec));
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (name == "plus") return max_coherent(2);
  if (name == "max-coherent") return max_coherent(d);
  if (name == "isotropic") return isotropic_state(d, parse_number(arg, "isotropic weight"));
  if (name == "diagonal") {
    auto p = parse_list(arg);
    require(!p.empty(), "diagonal state needs probabilities");
    return diagonal_state(p);
  }
  if (name == "pure") {
    auto a = parse_list(arg);
    require(!a.empty(), "pure state needs amplitudes");
    VecC v(static_cast<Eigen::Index>(a.size()));
    for (size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i];
    require(v.norm() > 0, "pure state amplitudes are all zero");
    v.normalize();
    return DensityMatrix(MatC(v * v.adjoint()));
  }
  if (name == "random") {
    auto seed = static_cast<std::uint64_t>(parse_number(arg, "random seed"));
    return random_density(d, seed);
  }
  fail("unknown state spec '" + spec + "'");
}

Json choi_to_json(const ChoiMatrix& j) {
  Json out = matrix_to_json(j.mat().mat());
  out["dim"] = j.mat().rows();
  out["in"] = dims_to_json(j.in());
  out["out"] = dims_to_json(j.out());
  out["in_dims"] = dims_list(j.in());
  out["out_dims"] = dims_list(j.out());
  return out;
}

ChoiMatrix choi_from_json(const Json& j) {
  try {
    return ChoiMatrix(dims_from_json(j.at("in")), dims_from_json(j.at("out")), matrix_from_json(j));
  } catch (const Json::exception& e) {
    fail(std::string("malformed Choi JSON: ") + e.what());
  }
}

Json comb_to_json(const Comb& c) {
  Json out = matrix_to_json(c.mat().mat());
  out["slots"] = c.slots();
  out["io"] = c.io();
  out["systems"] = dims_to_json(c.mat().dims());
  return out;
}

Comb comb_from_json(const Json& j) {
  try {
    CMatrix m(dims_from_json(j.at("systems")), matrix_from_json(j));
    return Comb(m, j.at("io").get<std::vector<Labels>>());
  } catch (const Json::exception& e) {
    fail(std::string("malformed comb JSON: ") + e.what());
  }
}

Json result_to_json(const EstimationResult& r, bool with_optimizer) {
  Json j{{"value", r.value},  {"dual", r.dual_value},          {"gap", r.gap},
         {"shift", r.shift},  {"status", to_string(r.status)}, {"message", r.message}};
  if (with_optimizer && r.optimizer_choi) j["optimizer"] = choi_to_json(*r.optimizer_choi);
  return j;
}

EstimationResult result_from_json(const Json& j) {
  EstimationResult r;
  try {
    r.value = j.at("value").get<double>();
    r.dual_value = j.at("dual").get<double>();
    r.gap = j.at("gap").get<double>();
    r.shift = j.value("shift", 0.0);
    r.message = j.value("message", "");
    std::string st = j.value("status", "numerical-failure");
    for (auto s : {SdpStatus::Optimal, SdpStatus::Infeasible, SdpStatus::Unbounded, SdpStatus::NumericalFailure})
      if (st == to_string(s)) r.status = s;
    if (j.contains("optimizer")) r.optimizer_choi = choi_from_json(j["optimizer"]);
  } catch (const Json::exception& e) {
    fail(std::string("malformed result JSON: ") + e.what());
  }
  return r;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, const std::string& stamp) {
  if (!stamp.empty()) os << "# generated " << stamp << "\n";
  os << "index,weight,robustness_scaled,cmin,weight_bound,advantage,status\n";
  for (const auto& r : rows) {
    os << r.index << ',' << format_double(r.weight) << ',' << format_double(r.robustness_scaled) << ','
       << format_double(r.cmin) << ',' << format_double(r.weight_bound) << ',' << format_double(r.advantage) << ','
       << (r.ok ? "ok" : "failed");
    if (!r.ok && !r.note.empty()) {
      std::string note = r.note;
      for (char& ch : note)
        if (ch == ',' || ch == '\n') ch = ';';
      os << ':' << note;
    }
    os << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  std::vector<SweepRow> rows;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      require(line.rfind("index,", 0) == 0, "sweep CSV: missing header");
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    require(f.size() == 7, "sweep CSV: expected 7 columns in '" + line + "'");
    SweepRow r;
    try {
      r.index = std::stoi(f[0]);
      r.weight = std::stod(f[1]);
      r.robustness_scaled = std::stod(f[2]);
      r.cmin = std::stod(f[3]);
      r.weight_bound = std::stod(f[4]);
      r.advantage = std::stod(f[5]);
    } catch (const std::logic_error&) {
      fail("sweep CSV: bad number in '" + line + "'");
    }
    r.ok = f[6] == "ok";
    if (!r.ok && f[6].size() > 7) r.note = f[6].substr(7);
    rows.push_back(r);
  }
  return rows;
}

void write_protocol_csv(std::ostream& os, const ProtocolRun& run, const std::vector<double>& grid) {
  std::vector<VecR> p;
  for (double phi : grid) p.push_back(run.probabilities(phi));
  os << "x,estimate";
  for (double phi : grid) os << ",p@" << format_double(phi);
  os << '\n';
  for (int x = 0; x < run.m; ++x) {
    os << x << ',' << format_double(run.estimates[x]);
    for (const auto& v : p) os << ',' << format_double(v(x));
    os << '\n';
  }
}

}  // namespace phasecoh
