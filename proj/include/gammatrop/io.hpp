#pragma once

#include "gammatrop/cohomology.hpp"
#include "gammatrop/periods.hpp"
#include "gammatrop/quadrature.hpp"
#include "gammatrop/tropical.hpp"
#include "gammatrop/verification.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace gammatrop {

using Json = nlohmann::ordered_json;

/// Malformed configuration or command-line input.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Reads the "quadrature" section; missing keys keep their defaults.
QuadratureConfig quadrature_from_json(const Json& section);
Json to_json(const QuadratureConfig& cfg);

/// {"ambient": n, "degree": d | null}
ManifoldModel model_from_json(const Json& j);

/// {"dim": n, "terms": [{"coeff": [re, im], "texp": "p/q", "exp": [...]}]}
LaurentFamily family_from_json(const Json& j);
Json to_json(const LaurentFamily& f);

Json to_json(const Symbolic& s);
/// {"coeffs": [[re, im], ...], "symbolic": "...", "exact": ["...", ...]}
Json to_json(const PeriodPolynomial& p);
Json to_json(const GradedElement<Symbolic>& x);

Json to_json(const RationalVector& v);
Json to_json(const CellComplex& cx);
Json to_json(const LatticePolytope& p);
Json to_json(const IntegrationResult& r);

/// "start:end:logN" (e.g. "1e-2:1e-6:log8"), N >= 2 log-spaced points.
std::vector<double> parse_t_grid(const std::string& text);

/// Header t,L,value,error_estimate; numbers with 17 significant digits.
void write_period_csv(std::ostream& os, const std::vector<PeriodSample>& samples);

/// {"suite", "pass", "checks": [{check, expected, observed, tolerance, pass}]};
/// runtimes and thread count only go under "metadata", and only if asked.
Json to_json(const VerificationReport& r, bool with_metadata = true);

}  // namespace gammatrop
