#pragma once

#include <nlohmann/json.hpp>

#include <ostream>
#include <vector>

#include "qsusy/fock.hpp"
#include "qsusy/oracle.hpp"
#include "qsusy/params.hpp"
#include "qsusy/susy.hpp"
#include "qsusy/verification.hpp"

namespace qsusy {

using json = nlohmann::json;

/// {"q": number | "p/q", "eps": ±1, "eps_prime": ±1, "eps_dprime": ±1, "picture": "A"|"B"}.
/// A string q goes through parse_q; a JSON number is always a double.
DeformationParams params_from_json(const json& j);
json to_json(const DeformationParams& p);

/// {"terms": [{"n": int, "nu": 0|1, "coeff": "p/q"}]}, terms in (n, nu) order.
json to_json(const ExactStateVector& v);

json basis_labels(const TruncatedBasis& b);
/// {"basis": [...], "a1": [[row, col, value], ...], "a2": ..., "a1dag": ..., "a2dag": ...}
json to_json(const LadderMatrices& m);
/// Header "operator,row,col,value", nonzero entries only.
void write_csv(std::ostream& os, const LadderMatrices& m);

json to_json(const SpectrumReport& s);
/// Columns n,nu,energy,pair_id; the unpaired ground state has pair_id 0.
void write_levels_csv(std::ostream& os, const SpectrumReport& s);
/// Columns index,gap.
void write_gaps_csv(std::ostream& os, const SpectrumReport& s);

json to_json(const ResidualCheck& c);
json to_json(const RelationReport& r);
json to_json(const ObstructionReport& r);
json to_json(const PositivityReport& r);
json to_json(const std::vector<PsiComparisonRow>& rows);
json to_json(const DegeneracyReport& r);
json to_json(const NilpotencyReport& r);

}  // namespace qsusy
