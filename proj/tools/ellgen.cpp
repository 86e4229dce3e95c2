#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "ellgen/errors.hpp"
#include "ellgen/genus.hpp"
#include "ellgen/io.hpp"
#include "ellgen/modforms.hpp"
#include "ellgen/reduce.hpp"
#include "ellgen/selfcheck.hpp"

using namespace ellgen;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitSpan = 2;
constexpr int kExitParse = 3;
constexpr int kExitPrecision = 4;

struct JobConfig {
  int level = 0;
  std::optional<std::size_t> prec_q;
  std::optional<std::size_t> prec_p;
  std::optional<std::size_t> prec_x;
  std::optional<int> degree;
  std::optional<int> weight;
  std::string input;
  std::string out;
  bool machine = false;

  void validate(bool needs_degree) const {
    if (level < 4) throw ParseError("--level must be at least 4");
    for (const auto* p : {&prec_q, &prec_p, &prec_x})
      if (*p && **p == 0) throw ParseError("precisions must be positive");
    if (needs_degree) {
      if (!degree) throw ParseError("--degree is required");
      if (*degree < 4 || *degree % 2 != 0) throw ParseError("--degree must be even and at least 4");
    }
  }
};

/// Explicit precision if given, else max(sturm, fallback); explicit values below the floor are rejected.
std::size_t resolve_prec(const std::optional<std::size_t>& given, std::size_t sturm, std::size_t fallback,
                         const char* flag) {
  if (!given) return std::max(sturm, fallback);
  if (*given < sturm)
    throw PrecisionInsufficient(std::string(flag) + " " + std::to_string(*given) + " is below the Sturm bound " +
                                std::to_string(sturm));
  return *given;
}

Json read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return parse_json_text(ss.str());
  }
  return read_json_file(path);
}

void emit(const JobConfig& cfg, const Json& record, const std::string& human) {
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) throw std::runtime_error("cannot write '" + cfg.out + "'");
    f << record.dump(1) << '\n';
  }
  if (cfg.machine) {
    if (cfg.out.empty()) std::cout << record.dump() << '\n';
  } else {
    std::cout << human;
  }
}

std::string describe_series(const QSeries& s, const char* var) {
  std::ostringstream os;
  for (std::size_t j = 0; j < s.prec(); ++j)
    if (!s[j].is_zero()) os << "  " << var << "^" << j << ": " << to_display(s[j]) << '\n';
  if (s.is_zero()) os << "  0\n";
  return os.str();
}

std::string describe_cosets(const std::vector<NZCoset>& cosets, const char* var) {
  std::ostringstream os;
  for (std::size_t j = 0; j < cosets.size(); ++j)
    if (!cosets[j].is_zero()) os << "  " << var << "^" << j << ": " << to_display(cosets[j].rep) << '\n';
  return os.str();
}

int cmd_genus(const JobConfig& cfg) {
  cfg.validate(false);
  const ChernData m = chern_from_json(read_input(cfg.input));
  const int weight = m.dim;
  const std::size_t sturm = sturm_bound(cfg.level, weight);
  const std::size_t prec = resolve_prec(cfg.prec_q, sturm, 12, "--prec-q");
  const QSeries s = genus(m, cfg.level, prec, cfg.prec_x.value_or(0));

  Json integral = Json::array();
  bool all_integral = true;
  for (const auto& c : s.coeffs()) {
    integral.push_back(in_NZ(c));
    all_integral = all_integral && in_NZ(c);
  }
  const ModFormBasis basis = weight_basis(cfg.level, weight, prec);
  const bool modular = is_in_span(s, basis).member;

  Json record{{"command", "genus"},  {"level", cfg.level},        {"dim", m.dim},
              {"weight", weight},    {"prec_q", prec},            {"sturm", sturm},
              {"series", qseries_to_json(s)}, {"integral", integral}, {"all_integral", all_integral},
              {"modular", modular},  {"basis_certificate_hash", basis_hash(basis)}};
  std::ostringstream os;
  os << "elliptic genus of level " << cfg.level << ", dimension " << m.dim << " (z = zeta_" << cfg.level << ")\n"
     << describe_series(s, "q") << "integral over Z[1/" << cfg.level << ", z]: " << (all_integral ? "yes" : "no")
     << '\n'
     << "modular of weight " << weight << ": " << (modular ? "yes" : "no") << " (precision " << prec
     << ", Sturm bound " << sturm << ")\n";
  emit(cfg, record, os.str());
  return kExitOk;
}

int cmd_frep(const JobConfig& cfg) {
  cfg.validate(false);
  const SplitChernData x = split_chern_from_json(read_input(cfg.input));
  const int degree = 2 * x.dim();
  const std::size_t sturm = sturm_bound(cfg.level, x.dim());
  const std::size_t prec_p = resolve_prec(cfg.prec_p, sturm, sturm + 1, "--prec-p");
  const std::size_t prec_q = resolve_prec(cfg.prec_q, sturm, sturm + 1, "--prec-q");
  const PQSeries f = genus_bivariate(x, cfg.level, prec_p, prec_q, cfg.prec_x.value_or(0));

  bool all_integral = true;
  for (const auto& row : f.rows())
    for (const auto& c : row.coeffs()) all_integral = all_integral && in_NZ(c);
  Json record{{"command", "f-rep"}, {"level", cfg.level}, {"dim0", x.dim0},     {"dim1", x.dim1},
              {"degree", degree},   {"prec_p", prec_p},   {"prec_q", prec_q},   {"sturm", sturm},
              {"series", pqseries_to_json(f)},            {"all_integral", all_integral}};
  std::ostringstream os;
  os << "two-variable representative at level " << cfg.level << ", degree " << degree << " (" << prec_p << " x "
     << prec_q << ", Sturm bound " << sturm << ")\n";
  for (std::size_t i = 0; i < f.prec_p(); ++i)
    for (std::size_t j = 0; j < f.prec_q(); ++j)
      if (!f.at(i, j).is_zero()) os << "  p^" << i << " q^" << j << ": " << to_display(f.at(i, j)) << '\n';
  os << "integral over Z[1/" << cfg.level << ", z]: " << (all_integral ? "yes" : "no") << '\n';
  emit(cfg, record, os.str());
  return kExitOk;
}

int cmd_reduce_u(const JobConfig& cfg) {
  cfg.validate(true);
  const QSeries s = qseries_from_json(CycloField::get(cfg.level), read_input(cfg.input));
  const std::size_t sturm = sturm_bound(cfg.level, *cfg.degree / 2);
  const std::size_t prec = resolve_prec(cfg.prec_q, sturm, s.prec(), "--prec-q");
  if (prec > s.prec())
    throw PrecisionInsufficient("series has " + std::to_string(s.prec()) + " coefficients, precision " +
                                std::to_string(prec) + " requested");
  const UqClass c = reduce_Uq(s, cfg.level, *cfg.degree, prec);
  Json record = uq_report(c);
  record["command"] = "reduce-u";
  std::ostringstream os;
  os << "class in U^q at level " << cfg.level << ", degree " << c.degree << " (precision " << c.prec
     << ", Sturm bound " << c.sturm << "): " << (c.trivial ? "trivial" : "nontrivial") << '\n';
  if (!c.trivial) os << "residual modulo Z[1/" << cfg.level << ", z]:\n" << describe_cosets(c.cosets, "q");
  emit(cfg, record, os.str());
  return kExitOk;
}

int cmd_reduce_w(const JobConfig& cfg) {
  cfg.validate(true);
  PQSeries s = pqseries_from_json(CycloField::get(cfg.level), read_input(cfg.input));
  const std::size_t sturm = sturm_bound(cfg.level, *cfg.degree / 2);
  const std::size_t prec_p = resolve_prec(cfg.prec_p, sturm, s.prec_p(), "--prec-p");
  const std::size_t prec_q = resolve_prec(cfg.prec_q, sturm, s.prec_q(), "--prec-q");
  if (prec_p > s.prec_p() || prec_q > s.prec_q())
    throw PrecisionInsufficient("series is " + std::to_string(s.prec_p()) + " x " + std::to_string(s.prec_q()) +
                                ", precision " + std::to_string(prec_p) + " x " + std::to_string(prec_q) +
                                " requested");
  std::vector<QSeries> rows;
  for (std::size_t i = 0; i < prec_p; ++i) rows.push_back(s.rows()[i].truncated(prec_q));
  s = PQSeries(std::move(rows));

  const WtClass c = reduce_Wtilde(s, cfg.level, *cfg.degree);
  Json record = wt_report(c);
  record["command"] = "reduce-w";
  std::ostringstream os;
  os << "class in W~ at level " << cfg.level << ", degree " << c.degree << " (" << c.prec_p << " x " << c.prec_q
     << ", Sturm bound " << sturm << "): " << (c.trivial ? "trivial" : "nontrivial") << '\n';
  if (!c.p_series.trivial) os << "q -> 0 residual:\n" << describe_cosets(c.p_series.cosets, "p");
  if (!c.q_series.trivial) os << "p -> 0 residual:\n" << describe_cosets(c.q_series.cosets, "q");
  for (std::size_t i = 1; i < c.mixed.size(); ++i)
    for (std::size_t j = 1; j < c.mixed[i].size(); ++j)
      if (!c.mixed[i][j].is_zero())
        os << "  p^" << i << " q^" << j << ": " << to_display(c.mixed[i][j].rep) << '\n';
  emit(cfg, record, os.str());
  return kExitOk;
}

int cmd_basis(const JobConfig& cfg) {
  cfg.validate(false);
  if (cfg.weight.has_value() == cfg.degree.has_value()) throw ParseError("give exactly one of --weight and --degree");
  int weight = 0;
  if (cfg.weight) {
    weight = *cfg.weight;
  } else {
    if (*cfg.degree % 2 != 0) throw ParseError("--degree must be even");
    weight = *cfg.degree / 2;
  }
  if (weight < 1) throw ParseError("weight must be at least 1");
  const std::size_t sturm = sturm_bound(cfg.level, weight);
  const std::size_t prec = resolve_prec(cfg.prec_q, sturm, sturm, "--prec-q");
  const ModFormBasis b = weight_basis(cfg.level, weight, prec);
  Json record = basis_to_json(b);
  record["command"] = "basis";
  record["hash"] = basis_hash(b);
  std::ostringstream os;
  os << "M_" << weight << "(Gamma_1(" << cfg.level << ")): dimension " << b.certificate.dimension << ", rank "
     << b.certificate.rank << " from " << b.certificate.candidates << " candidates (precision " << prec
     << ", Sturm bound " << sturm << ", coefficients in Q(zeta_" << b.field().level() << "))\n";
  for (std::size_t i = 0; i < b.elements.size(); ++i)
    os << "element " << i << " (pivot q^" << b.pivots[i] << "):\n" << describe_series(b.elements[i], "q");
  os << "certificate sha256: " << record["hash"].get<std::string>() << '\n';
  emit(cfg, record, os.str());
  return kExitOk;
}

int cmd_selfcheck(const JobConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto results = run_selfcheck();
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = total <= kSelfcheckLimit;
  Json list = Json::array();
  std::ostringstream os;
  for (const auto& r : results) {
    ok = ok && r.passed;
    list.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    os << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << r.name << " ("
       << std::fixed << std::setprecision(3) << r.seconds << " s): " << r.detail << '\n';
  }
  os << (ok ? "all criteria passed" : "some criteria FAILED") << " in " << std::fixed << std::setprecision(2)
     << total << " s\n";
  Json record{{"command", "selfcheck"}, {"passed", ok}, {"criteria", list}};
  emit(cfg, record, os.str());
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level-N elliptic genera, modular form bases and quotient reductions"};
  app.require_subcommand(1);
  JobConfig cfg;

  auto common = [&](CLI::App* sub, bool with_input) {
    if (with_input) sub->add_option("input", cfg.input, "Input JSON file, or - for stdin")->required();
    sub->add_option("--out", cfg.out, "Also write the JSON record to this file");
    sub->add_flag("--machine", cfg.machine, "Print the JSON record instead of the human summary");
  };
  auto level = [&](CLI::App* sub) { sub->add_option("--level", cfg.level, "Level N >= 4")->required(); };

  auto* genus_cmd = app.add_subcommand("genus", "Elliptic genus of a manifold given by Chern numbers");
  common(genus_cmd, true);
  level(genus_cmd);
  genus_cmd->add_option("--prec-q", cfg.prec_q, "Number of q-coefficients");
  genus_cmd->add_option("--prec-x", cfg.prec_x, "Number of x-coefficients of the characteristic series");

  auto* frep_cmd = app.add_subcommand("f-rep", "Two-variable representative from split Chern numbers");
  common(frep_cmd, true);
  level(frep_cmd);
  frep_cmd->add_option("--prec-p", cfg.prec_p, "Number of p-coefficients");
  frep_cmd->add_option("--prec-q", cfg.prec_q, "Number of q-coefficients");
  frep_cmd->add_option("--prec-x", cfg.prec_x, "Number of x-coefficients of the characteristic series");

  auto* ru_cmd = app.add_subcommand("reduce-u", "Canonical representative of a q-series in U^q");
  common(ru_cmd, true);
  level(ru_cmd);
  ru_cmd->add_option("--degree", cfg.degree, "Degree m+2 (even, >= 4)")->required();
  ru_cmd->add_option("--prec-q", cfg.prec_q, "Number of q-coefficients to reduce");

  auto* rw_cmd = app.add_subcommand("reduce-w", "Canonical representative of a (p,q)-series in W~");
  common(rw_cmd, true);
  level(rw_cmd);
  rw_cmd->add_option("--degree", cfg.degree, "Degree m+2 (even, >= 4)")->required();
  rw_cmd->add_option("--prec-p", cfg.prec_p, "Number of p-coefficients to reduce");
  rw_cmd->add_option("--prec-q", cfg.prec_q, "Number of q-coefficients to reduce");

  auto* basis_cmd = app.add_subcommand("basis", "Echelonized basis of M_k(Gamma_1(N))");
  common(basis_cmd, false);
  level(basis_cmd);
  basis_cmd->add_option("--weight", cfg.weight, "Weight k");
  basis_cmd->add_option("--degree", cfg.degree, "Degree 2k");
  basis_cmd->add_option("--prec-q", cfg.prec_q, "Number of q-coefficients");

  auto* self_cmd = app.add_subcommand("selfcheck", "Run the built-in acceptance corpus");
  common(self_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (genus_cmd->parsed()) return cmd_genus(cfg);
    if (frep_cmd->parsed()) return cmd_frep(cfg);
    if (ru_cmd->parsed()) return cmd_reduce_u(cfg);
    if (rw_cmd->parsed()) return cmd_reduce_w(cfg);
    if (basis_cmd->parsed()) return cmd_basis(cfg);
    if (self_cmd->parsed()) return cmd_selfcheck(cfg);
  } catch (const SpanFailure& e) {
    std::cerr << "span failure: " << e.what() << '\n';
    return kExitSpan;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const PrecisionInsufficient& e) {
    std::cerr << "precision insufficient: " << e.what() << '\n';
    return kExitPrecision;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
