#include "qsusy/io.hpp"

#include <iomanip>
#include <limits>

#include "qsusy/errors.hpp"

namespace qsusy {

namespace {

int sign_field(const json& j, const char* key) {
  if (!j.contains(key)) return 1;
  if (!j.at(key).is_number_integer())
    throw ParamError(ParamError::Code::BadSign, std::string(key) + " must be an integer +1 or -1");
  return j.at(key).get<int>();
}

json sparse_entries(const Matrix& m) {
  json out = json::array();
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r)
      if (m(r, c) != 0.0) out.push_back({r, c, m(r, c)});
  return out;
}

}  // namespace

DeformationParams params_from_json(const json& j) {
  if (!j.is_object() || !j.contains("q")) throw ParamError(ParamError::Code::Parse, "parameters need a \"q\" field");
  const json& jq = j.at("q");
  QLiteral q;
  if (jq.is_string()) q = parse_q(jq.get<std::string>());
  else if (jq.is_number()) q = jq.get<double>();
  else throw ParamError(ParamError::Code::Parse, "q must be a number or a \"p/q\" string");

  Picture picture = Picture::A;
  if (j.contains("picture")) {
    const std::string s = j.at("picture").get<std::string>();
    if (s == "A") picture = Picture::A;
    else if (s == "B") picture = Picture::B;
    else throw ParamError(ParamError::Code::Parse, "picture must be \"A\" or \"B\"");
  }
  return validate_params(q, sign_field(j, "eps"), sign_field(j, "eps_prime"), sign_field(j, "eps_dprime"), picture);
}

json to_json(const DeformationParams& p) {
  json j;
  if (p.is_exact()) j["q"] = to_fraction_string(*p.q_exact());
  else j["q"] = p.q();
  j["eps"] = value(p.eps());
  j["eps_prime"] = value(p.eps_prime());
  j["eps_dprime"] = value(p.eps_dprime());
  j["picture"] = to_string(p.picture());
  return j;
}

json to_json(const ExactStateVector& v) {
  json terms = json::array();
  for (const auto& [m, c] : v.terms()) terms.push_back({{"n", m.n}, {"nu", m.nu}, {"coeff", to_fraction_string(c)}});
  return {{"terms", terms}};
}

json basis_labels(const TruncatedBasis& b) {
  json out = json::array();
  for (Index i = 0; i < b.dim(); ++i) {
    const FockState s = b.state(i);
    out.push_back({{"idx", i}, {"n", s.n}, {"nu", s.nu}});
  }
  return out;
}

json to_json(const LadderMatrices& m) {
  return {{"params", to_json(m.params())},
          {"n_max", m.basis().n_max()},
          {"dim", m.basis().dim()},
          {"basis", basis_labels(m.basis())},
          {"a1", sparse_entries(m.a1())},
          {"a2", sparse_entries(m.a2())},
          {"a1dag", sparse_entries(m.a1dag())},
          {"a2dag", sparse_entries(m.a2dag())}};
}

void write_csv(std::ostream& os, const LadderMatrices& m) {
  os << "operator,row,col,value\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
  const std::pair<const char*, const Matrix*> ops[] = {
      {"a1", &m.a1()}, {"a2", &m.a2()}, {"a1dag", &m.a1dag()}, {"a2dag", &m.a2dag()}};
  for (const auto& [name, mat] : ops)
    for (Index c = 0; c < mat->cols(); ++c)
      for (Index r = 0; r < mat->rows(); ++r)
        if ((*mat)(r, c) != 0.0) os << name << ',' << r << ',' << c << ',' << (*mat)(r, c) << '\n';
}

json to_json(const SpectrumReport& s) {
  json levels = json::array();
  for (const Level& l : s.levels) levels.push_back({{"n", l.n}, {"nu", l.nu}, {"energy", l.energy}});
  json pairs = json::array();
  for (const LevelPair& p : s.pairs)
    pairs.push_back({{"pair_id", p.id},
                     {"boson", {{"n", p.n}, {"nu", 0}, {"energy", p.energy_boson}}},
                     {"fermion", {{"n", p.n - 1}, {"nu", 1}, {"energy", p.energy_fermion}}},
                     {"energy", p.energy()}});
  json unpaired = json::array();
  for (const Level& l : s.unpaired) unpaired.push_back({{"n", l.n}, {"nu", l.nu}, {"energy", l.energy}});
  return {{"levels", levels},
          {"pairs", pairs},
          {"unpaired", unpaired},
          {"gaps", s.gaps},
          {"equidistant", s.equidistant},
          {"equidistance_deviation", s.equidistance_deviation},
          {"max_pair_splitting", s.max_pair_splitting},
          {"min_energy", s.min_energy}};
}

void write_levels_csv(std::ostream& os, const SpectrumReport& s) {
  os << "n,nu,energy,pair_id\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const Level& l : s.unpaired) os << l.n << ',' << l.nu << ',' << l.energy << ",0\n";
  for (const LevelPair& p : s.pairs) {
    os << p.n << ",0," << p.energy_boson << ',' << p.id << '\n';
    os << p.n - 1 << ",1," << p.energy_fermion << ',' << p.id << '\n';
  }
}

void write_gaps_csv(std::ostream& os, const SpectrumReport& s) {
  os << "index,gap\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < s.gaps.size(); ++i) os << i << ',' << s.gaps[i] << '\n';
}

json to_json(const ResidualCheck& c) {
  return {{"name", c.name},
          {"max_abs_residual", c.max_abs_residual},
          {"scale", c.scale},
          {"relative", c.relative()},
          {"masked_dim", c.masked_dim},
          {"pass", c.pass}};
}

json to_json(const RelationReport& r) {
  json rel = json::array();
  for (const auto& c : r.relations) rel.push_back(to_json(c));
  return {{"relations", rel}, {"pass", r.pass()}, {"worst_relative", r.worst_relative()}};
}

json to_json(const ObstructionReport& r) {
  return {{"residual_total_N", r.residual_total_N},
          {"residual_N1", r.residual_N1},
          {"residual_N2", r.residual_N2},
          {"verdict", to_string(r.verdict)}};
}

json to_json(const PositivityReport& r) {
  const auto findings = [](const std::vector<PositivityFinding>& v) {
    json out = json::array();
    for (const auto& f : v)
      out.push_back({{"q", f.q}, {"eps", f.eps}, {"n", f.n}, {"nu", f.nu}, {"sign", f.sign}, {"log_abs", f.log_abs}});
    return out;
  };
  json j{{"violations", findings(r.violations)}, {"evaluations", r.evaluations}};
  if (!r.boundary.empty()) j["boundary"] = findings(r.boundary);
  return j;
}

json to_json(const std::vector<PsiComparisonRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"n", r.n},
                   {"nu", r.nu},
                   {"composed", r.composed},
                   {"printed", r.printed},
                   {"matrix_q12", r.matrix_q12},
                   {"matrix_q21", r.matrix_q21},
                   {"composed_matches_q12", r.composed_matches_q12},
                   {"composed_psi21_relation", r.composed_psi21_relation},
                   {"printed_matches_q12", r.printed_matches_q12},
                   {"printed_psi21_relation", r.printed_psi21_relation},
                   {"verdict", r.verdict}});
  return out;
}

json to_json(const DegeneracyReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels)
    levels.push_back({{"total", l.total},
                      {"rank", l.rank},
                      {"representatives_span", l.representatives_span},
                      {"families_collinear", l.families_collinear},
                      {"failures", l.failures}});
  return {{"levels", levels}, {"pass", r.pass}};
}

json to_json(const NilpotencyReport& r) {
  return {{"q12_squared_norm", r.q12_squared_norm}, {"q12_norm_squared", r.q12_norm_squared}, {"ratio", r.ratio()}};
}

}  // namespace qsusy
