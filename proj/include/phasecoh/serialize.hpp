#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "phasecoh/combs.hpp"
#include "phasecoh/cost.hpp"
#include "phasecoh/estimate.hpp"
#include "phasecoh/protocol.hpp"
#include "phasecoh/states.hpp"

namespace phasecoh {

using Json = nlohmann::json;

Json matrix_to_json(const MatC& m);  // {"re": [[..]], "im": [[..]]}
MatC matrix_from_json(const Json& j);

/// {kind, params, coefficients: [[k, re, im], ...]}. Function-sampled costs are
/// written as their samples on the quadrature grid.
Json cost_to_json(const CostFunction& c, int max_k = 16);
CostFunction cost_from_json(const Json& j);
/// Builtin name ("holevo", "window:δ", "periodized-mse", "constant:c"),
/// inline JSON object, or path to a JSON file.
CostFunction cost_from_spec(const std::string& spec);

Json density_to_json(const DensityMatrix& rho);  // {dim, re, im}
DensityMatrix density_from_json(const Json& j);
/// "plus", "max-coherent", "diagonal:p0,p1,..", "isotropic:p", "pure:a0,a1,..",
/// "random:seed", a JSON object, or a JSON file path. `d` sizes the builtins.
DensityMatrix state_from_spec(const std::string& spec, int d);

Json choi_to_json(const ChoiMatrix& j);
ChoiMatrix choi_from_json(const Json& j);
Json comb_to_json(const Comb& c);
Comb comb_from_json(const Json& j);

Json result_to_json(const EstimationResult& r, bool with_optimizer = false);
EstimationResult result_from_json(const Json& j);

struct SweepRow {
  int index = 0;
  double weight = 0.0;
  double robustness_scaled = 0.0;  // C_R/(d−1)
  double cmin = 0.0;
  double weight_bound = 0.0;
  double advantage = 0.0;
  bool ok = true;
  std::string note;
};

/// CSV with a leading "# generated <timestamp>" line (omitted when `stamp` is empty).
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, const std::string& stamp);
std::vector<SweepRow> read_sweep_csv(std::istream& is);

/// Columns x, estimate, then p(x|φ) per grid point.
void write_protocol_csv(std::ostream& os, const ProtocolRun& run, const std::vector<double>& grid);

std::string format_double(double v);
std::string timestamp_utc();

}  // namespace phasecoh
