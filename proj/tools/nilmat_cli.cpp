// nilmat: membership checks, normal forms, dimensions, determinant
// identities, and the proposition verification suite.

#include "nilmat/matrix.hpp"
#include "nilmat/verifier.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace nilmat;

std::pair<int, int> parse_grid(const std::string& grid) {
  auto xpos = grid.find('x');
  if (xpos == std::string::npos)
    throw Error(ErrorCode::ParseError, "--grid expects MxN, got '" + grid + "'");
  try {
    int m = std::stoi(grid.substr(0, xpos));
    int n = std::stoi(grid.substr(xpos + 1));
    return {m, n};
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "--grid expects MxN, got '" + grid + "'");
  }
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::ParseError, "--in: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, "--in: invalid JSON in '" + path + "': " + e.what());
  }
  return matrix_from_json(j);
}

int run_check(const std::string& pred, const std::string& path, bool as_json) {
  Matrix x = load_matrix(path);
  bool result = false;
  if (pred == "d") {
    result = is_in_D(x);
  } else if (pred == "dtilde") {
    result = is_in_dtilde(x);
  } else if (pred == "special") {
    result = is_special(x);
  } else if (pred == "simplex") {
    std::vector<Matrix> points;
    for (int i = 1; i <= x.rows(); ++i) points.push_back(x.row(i));
    result = is_infinitesimal_simplex(points);
  } else {
    throw Error(ErrorCode::ParseError, "--pred must be one of d, dtilde, special, simplex");
  }
  if (as_json)
    std::cout << nlohmann::json{{"pred", pred}, {"result", result}}.dump() << "\n";
  else
    std::cout << (result ? "true" : "false") << "\n";
  return 0;
}

int run_nf(const std::string& grid, const std::string& expr, bool as_json) {
  auto [m, n] = parse_grid(grid);
  NormalForm nf(parse_polynomial(expr), m, n);
  if (as_json)
    std::cout << nlohmann::json{{"grid", grid}, {"normal_form", nf.str()}}.dump() << "\n";
  else
    std::cout << nf.str() << "\n";
  return 0;
}

int run_dim(const std::string& grid, bool sweep, bool as_json) {
  auto [m, n] = parse_grid(grid);
  if (sweep) {
    // TSV dimension table over all grids up to m x n
    nlohmann::json rows = nlohmann::json::array();
    for (int a = 1; a <= m; ++a)
      for (int b = 1; b <= n; ++b) {
        auto basis = algebra_dimension(a, b);
        if (as_json)
          rows.push_back({{"m", a}, {"n", b}, {"dim", basis.dimension.str()}});
        else
          std::cout << a << '\t' << b << '\t' << basis.dimension << "\n";
      }
    if (as_json) std::cout << rows.dump() << "\n";
    return 0;
  }
  auto basis = algebra_dimension(m, n);
  if (as_json)
    std::cout << nlohmann::json{{"m", m}, {"n", n}, {"dim", basis.dimension.str()}}.dump()
              << "\n";
  else
    std::cout << basis.dimension << "\n";
  return 0;
}

int run_basis(const std::string& grid, bool as_json) {
  auto [m, n] = parse_grid(grid);
  auto basis = algebra_dimension(m, n);
  if (as_json) {
    nlohmann::json labels = nlohmann::json::array();
    for (const auto& l : basis.labels)
      labels.push_back({{"label", l.str()}, {"degree", l.degree()}});
    std::cout << nlohmann::json{{"dim", basis.dimension.str()}, {"basis", labels}}.dump()
              << "\n";
  } else {
    for (const auto& l : basis.labels)
      std::cout << l.str() << '\t' << l.degree() << "\n";
  }
  return 0;
}

int run_det(const std::string& path, bool as_json) {
  Matrix x = load_matrix(path);
  RingElement d = det(x);
  Integer fact = 1;
  for (int k = 2; k <= x.rows(); ++k) fact *= k;
  RingElement scaled_trace = x.ring().from_integer(fact) * mult_trace(x);
  bool equal = d == scaled_trace;
  if (as_json) {
    std::cout << nlohmann::json{{"det", d.str()},
                                {"n_factorial_tr_m", scaled_trace.str()},
                                {"equal", equal}}
                     .dump()
              << "\n";
  } else {
    std::cout << "det " << d.str() << "\n";
    std::cout << x.rows() << "!*tr_m " << scaled_trace.str() << "\n";
    std::cout << "equal: " << (equal ? "true" : "false") << "\n";
  }
  return 0;
}

int run_verify(const std::string& prop, const std::string& mode, int cases,
               std::uint64_t seed) {
  Budget budget;
  budget.cases = cases;
  budget.seed = seed;
  std::vector<PropId> ids;
  if (prop == "all") {
    ids = all_prop_ids();
  } else if (auto id = prop_id_from_name(prop)) {
    ids.push_back(*id);
  } else {
    throw Error(ErrorCode::ParseError, "--prop: unknown proposition id '" + prop + "'");
  }
  std::vector<Mode> modes;
  if (mode == "randomized")
    modes = {Mode::Randomized};
  else if (mode == "symbolic")
    modes = {Mode::Symbolic};
  else if (mode == "both")
    modes = {Mode::Randomized, Mode::Symbolic};
  else
    throw Error(ErrorCode::ParseError,
                "--mode must be randomized, symbolic, or both");
  bool any_fail = false;
  for (PropId id : ids)
    for (Mode m : modes) {
      PropositionReport rep = verify(id, m, budget);
      std::cout << rep.json_line() << "\n";
      any_fail |= rep.status == PropositionReport::Status::Fail;
    }
  return any_fail ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact nilpotent-matrix calculus"};
  app.require_subcommand(1);

  std::string pred, in_path, grid, expr, prop = "all", mode = "both";
  int cases = 1000;
  std::uint64_t seed = 0;
  bool as_json = false, sweep = false;

  auto* check = app.add_subcommand("check", "evaluate a membership predicate");
  check->add_option("--pred", pred, "d | dtilde | special | simplex")->required();
  check->add_option("--in", in_path, "matrix JSON file")->required();
  check->add_flag("--json", as_json, "machine-readable output");

  auto* nf = app.add_subcommand("nf", "normal form in the full quotient algebra");
  nf->add_option("--grid", grid, "MxN")->required();
  nf->add_option("--expr", expr, "polynomial expression")->required();
  nf->add_flag("--json", as_json, "machine-readable output");

  auto* dim = app.add_subcommand("dim", "dimension of the quotient algebra");
  dim->add_option("--grid", grid, "MxN")->required();
  dim->add_flag("--sweep", sweep, "TSV table over all grids up to MxN");
  dim->add_flag("--json", as_json, "machine-readable output");

  auto* basis = app.add_subcommand("basis", "basis labels of the quotient algebra");
  basis->add_option("--grid", grid, "MxN")->required();
  basis->add_flag("--json", as_json, "machine-readable output");

  auto* detcmd = app.add_subcommand("det", "determinant and n! tr_m");
  detcmd->add_option("--in", in_path, "matrix JSON file")->required();
  detcmd->add_flag("--json", as_json, "machine-readable output");

  auto* verifycmd = app.add_subcommand("verify", "run proposition checks");
  verifycmd->add_option("--prop", prop, "proposition id or 'all'");
  verifycmd->add_option("--mode", mode, "randomized | symbolic | both");
  verifycmd->add_option("--cases", cases, "randomized cases per proposition");
  verifycmd->add_option("--seed", seed, "randomized-mode seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return 2;
  }

  try {
    if (check->parsed()) return run_check(pred, in_path, as_json);
    if (nf->parsed()) return run_nf(grid, expr, as_json);
    if (dim->parsed()) return run_dim(grid, sweep, as_json);
    if (basis->parsed()) return run_basis(grid, as_json);
    if (detcmd->parsed()) return run_det(in_path, as_json);
    if (verifycmd->parsed()) return run_verify(prop, mode, cases, seed);
  } catch (const nilmat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
