#include "abelfft/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace abelfft::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) fail("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
  return *it;
}

double finite_number(const json& j) {
  if (!j.is_number()) fail("expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail("non-finite number");
  return v;
}

bool boolean(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_boolean()) fail(std::string("field \"") + key + "\" must be a boolean");
  return v.get<bool>();
}

std::vector<std::size_t> permutation(const json& j, std::size_t size) {
  if (!j.is_array() || j.size() != size) fail("permutation must list every group element once");
  std::vector<std::size_t> perm;
  std::vector<bool> seen(size, false);
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) fail("permutation entries must be non-negative integers");
    const auto p = v.get<std::size_t>();
    if (p >= size || seen[p]) fail("permutation is not a bijection");
    seen[p] = true;
    perm.push_back(p);
  }
  return perm;
}

}  // namespace

json group_to_json(const Group& g) { return json{{"orders", g.orders()}}; }

Group group_from_json(const json& j) {
  const json& orders = field(j, "orders");
  if (!orders.is_array() || orders.empty()) fail("\"orders\" must be a non-empty array");
  std::vector<std::int64_t> n;
  for (const auto& v : orders) {
    if (!v.is_number_integer()) fail("cyclic orders must be integers");
    n.push_back(v.get<std::int64_t>());
  }
  try {
    return make_group(n);
  } catch (const InvalidGroup& e) {
    fail(e.what());
  }
}

json side_to_json(Side s) { return std::string(to_string(s)); }

Side side_from_json(const json& j) {
  if (j == "primal") return Side::primal;
  if (j == "dual") return Side::dual;
  fail("side must be \"primal\" or \"dual\"");
}

json complex_to_json(Complex v) { return json::array({v.real(), v.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) fail("complex values are [re, im] pairs");
  return {finite_number(j[0]), finite_number(j[1])};
}

json function_to_json(const GFunction& f) {
  json values = json::array();
  for (const auto& v : f.values()) values.push_back(complex_to_json(v));
  return json{{"group", group_to_json(f.group())}, {"side", side_to_json(f.side())}, {"values", values}};
}

GFunction function_from_json(const json& j) {
  Group g = group_from_json(field(j, "group"));
  const Side side = side_from_json(field(j, "side"));
  const json& values = field(j, "values");
  if (!values.is_array() || values.size() != g.size()) {
    fail("\"values\" must hold one [re, im] pair per group element");
  }
  std::vector<Complex> v;
  v.reserve(values.size());
  for (const auto& e : values) v.push_back(complex_from_json(e));
  return GFunction(std::move(g), side, std::move(v));
}

Operator OperatorFile::to_operator() const {
  return Operator::from_matrix(group, input_side, output_side, matrix);
}

json operator_to_json(const OperatorFile& op) {
  const std::size_t n = op.group.size();
  json rows = json::array();
  for (std::size_t r = 0; r < n; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < n; ++c) row.push_back(complex_to_json(op.matrix.entries[r * n + c]));
    rows.push_back(std::move(row));
  }
  return json{{"group", group_to_json(op.group)},
              {"input_side", side_to_json(op.input_side)},
              {"output_side", side_to_json(op.output_side)},
              {"conjugate_input", op.matrix.conjugate_input},
              {"matrix", std::move(rows)}};
}

OperatorFile operator_from_json(const json& j) {
  OperatorFile op{group_from_json(field(j, "group")), side_from_json(field(j, "input_side")),
                  side_from_json(field(j, "output_side")), MatrixForm{}};
  op.matrix.conjugate_input = boolean(j, "conjugate_input");
  const std::size_t n = op.group.size();
  const json& rows = field(j, "matrix");
  if (!rows.is_array() || rows.size() != n) fail("matrix must be square with the group's size");
  op.matrix.entries.reserve(n * n);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n) fail("matrix must be square with the group's size");
    for (const auto& e : row) op.matrix.entries.push_back(complex_from_json(e));
  }
  return op;
}

json truth_to_json(const TruthFile& t) {
  return json{{"group", group_to_json(t.group)},
              {"psi", t.psi},
              {"conjugation", t.conjugation},
              {"form", std::string(to_string(t.form))}};
}

TruthFile truth_from_json(const json& j) {
  TruthFile t{group_from_json(field(j, "group")), {}, boolean(j, "conjugation"), OperatorForm::U};
  t.psi = permutation(field(j, "psi"), t.group.size());
  const json& form = field(j, "form");
  if (form == "T") {
    t.form = OperatorForm::T;
  } else if (form != "U") {
    fail("form must be \"T\" or \"U\"");
  }
  return t;
}

json hypotheses_to_json(const HypothesisReport& r) {
  return json{{"max_err_a", r.max_err_a}, {"max_err_b", r.max_err_b}, {"max_err_c", r.max_err_c},
              {"pass_a", r.pass_a()},     {"pass_b", r.pass_b()},     {"pass_c", r.pass_c()},
              {"pass", r.pass()},         {"trials", r.trials},       {"basis_pairs", r.basis_pairs},
              {"tol", r.tol},             {"seed", r.seed}};
}

json diagnostics_to_json(const RecoveryDiagnostics& d) {
  return json{{"unit_error", d.unit_error},
              {"idempotency_error", d.idempotency_error},
              {"singleton_supports", d.singleton_supports},
              {"bijective", d.bijective},
              {"fixes_identity", d.fixes_identity},
              {"homomorphism", d.homomorphism},
              {"m_x_independence_error", d.m_x_independence_error},
              {"m_multiplicativity_error", d.m_multiplicativity_error},
              {"m_conjugate_additivity_error", d.m_conjugate_additivity_error},
              {"vanishing_correspondence", d.vanishing_correspondence}};
}

json report_to_json(const RecoveryReport& r, std::uint64_t seed,
                    const std::optional<HypothesisReport>& hypotheses) {
  json samples = json::array();
  for (const auto& [alpha, m] : r.m_samples) {
    samples.push_back(json{{"alpha", complex_to_json(alpha)}, {"m", complex_to_json(m)}});
  }
  json out{{"tool", kToolName},
           {"version", kToolVersion},
           {"seed", seed},
           {"status", "recovered"},
           {"group", group_to_json(r.psi.group())},
           {"psi", r.psi.perm()},
           {"conjugation", r.conjugation},
           {"residual", r.residual},
           {"m_samples", std::move(samples)},
           {"diagnostics", diagnostics_to_json(r.diagnostics)}};
  if (hypotheses) out["hypotheses"] = hypotheses_to_json(*hypotheses);
  return out;
}

ReportSummary report_from_json(const json& j) {
  const Group g = group_from_json(field(j, "group"));
  ReportSummary s;
  s.psi = permutation(field(j, "psi"), g.size());
  s.conjugation = boolean(j, "conjugation");
  s.residual = finite_number(field(j, "residual"));
  return s;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail("cannot write " + path.string());
  out << j.dump() << '\n';
  if (!out) fail("cannot write " + path.string());
}

}  // namespace abelfft::io
