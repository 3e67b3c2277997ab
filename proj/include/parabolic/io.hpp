#pragma once

// JSON and CSV exchange formats.

#include <string>
#include <vector>

#include "json.hpp"
#include "parabolic/gevrey.hpp"
#include "parabolic/invariance.hpp"
#include "parabolic/jet_flow.hpp"

namespace parabolic {

using Json = nlohmann::ordered_json;

/// Schema violation at a JSON pointer location.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& location, const std::string& detail)
      : Error(ErrorCode::SchemaError, location + ": " + detail), location_(location), detail_(detail) {}
  const std::string& location() const noexcept { return location_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string location_;
  std::string detail_;
};

template <Scalar T>
Json scalar_json(const T& v);

/// Accepts "p/q" strings, decimal strings and JSON numbers.
template <Scalar T>
T scalar_from_json(const Json& j, const std::string& where);

/// Target name of component c: "x", "y" / "y_i", "z" / "z_j".
std::string component_name(int c, int d, int d_prime);

template <Scalar T>
Json map_to_json(const PolyMap<T>& F);

template <Scalar T>
PolyMap<T> map_from_json(const Json& j);

Json field_to_json(const PeriodicField& X);
PeriodicField field_from_json(const Json& j);

/// True when the document looks like a periodic field rather than a map.
bool is_periodic_field_json(const Json& j);

template <Scalar T>
Json form_to_json(const MapForm<T>& f);

template <Scalar T>
Json solution_to_json(const FormalSolution<T>& sol);

/// K, R, c and the orders; the structural form is left default.
template <Scalar T>
FormalSolution<T> solution_from_json(const Json& j);

Json certificate_to_json(const std::vector<CertificateRow>& rows);

/// Header l,comp_0,...,comp_k,norm_inf and one row per order.
template <Scalar T>
std::string series_csv(const VectorSeries<T>& K);

/// log sup-norm per order from a coefficient CSV (component columns when
/// present, else norm_inf); -inf for zero rows.
std::vector<double> log_norms_from_csv(const std::string& text);

Json fit_to_json(const GevreyFit& fit);
Json bounds_to_json(const BoundReport& rep);
std::string scan_csv(const std::vector<ScanRow>& rows);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);
Json parse_json(const std::string& text, const std::string& source);

}  // namespace parabolic
