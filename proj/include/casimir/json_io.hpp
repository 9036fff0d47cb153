#pragma once

#include <json.hpp>

#include "casimir/closed_forms.hpp"
#include "casimir/monodromy.hpp"
#include "casimir/series.hpp"
#include "casimir/sl2_rep.hpp"
#include "casimir/verify.hpp"

namespace casimir {

using Json = nlohmann::ordered_json;

/// {"variable":"q","order":"N","terms":[["exponent","num/den"],...]}
Json to_json(const QSeries& s);
/// {"variables":["q","x"],"q_order":"N","terms":[["qexp","xexp","num/den"],...]}
Json to_json(const BiSeries& s);
/// Rows of rational strings.
Json to_json(const RatMatrix& m);
Json to_json(const ModuleExpr& expr, const WeightMatrix& m);
Json to_json(const SpectralData& d);
/// {"terms":[{"c":..,"j":..,"matrix":[..]},...]}
Json to_json(const FlatSectionExpr& f);
/// Entries as lists of [qexp, [mu coefficients]].
Json to_json(const MonodromyMatrix& m);
Json to_json(const ConeSeries& c);
Json to_json(const CheckReport& r);

QSeries qseries_from_json(const Json& j);

}  // namespace casimir
