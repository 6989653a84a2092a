// sparkforge command-line front end. Every subcommand prints one JSON document
// on stdout; exit 0 = holds / computed, 1 = refuted, 2 = bad input, 3 = budget.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "sparkforge/sparkforge.hpp"

using namespace sparkforge;
using json = nlohmann::json;

namespace {

constexpr int kHolds = 0;
constexpr int kRefuted = 1;
constexpr int kInputError = 2;
constexpr int kBudget = 3;

json stamp(json j) {
  j["schema_version"] = io::kSchemaVersion;
  return j;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

std::string slurp(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json read_json(const std::string& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw Error(Errc::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

// "0,1,4", "0 1 4", or a path to a file holding such a list.
std::vector<std::int64_t> parse_list(const std::string& text) {
  std::string src = text;
  if (!std::regex_match(text, std::regex(R"([-0-9,\s]*)"))) {
    if (!std::filesystem::exists(text)) throw Error(Errc::InvalidInput, "not a list or file: " + text);
    src = slurp(text);
  }
  for (auto& c : src)
    if (c == ',') c = ' ';
  std::istringstream in(src);
  std::vector<std::int64_t> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw Error(Errc::InvalidInput, "bad integer '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

VandermondeBase parse_base(const std::string& tok) {
  static const std::regex root(R"(w(\d+)\^(-?\d+))");
  static const std::regex cplx(R"(\((-?[0-9.eE+-]+),(-?[0-9.eE+-]+)\))");
  std::smatch m;
  if (std::regex_match(tok, m, root)) return RootOfUnity{std::stoll(m[1]), std::stoll(m[2])};
  if (std::regex_match(tok, m, cplx)) return std::complex<double>(std::stod(m[1]), std::stod(m[2]));
  try {
    std::size_t used = 0;
    const auto v = std::stoll(tok, &used);
    if (used == tok.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::InvalidInput, "bad base '" + tok + "' (use 3, w7^2 or (0.5,-1))");
}

// Bases separated by ';' or whitespace so that complex pairs keep their comma.
std::vector<VandermondeBase> parse_bases(std::string text) {
  std::vector<VandermondeBase> out;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(parse_base(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == ',' && depth == 0) || c == ';' || std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      cur += c;
  }
  flush();
  return out;
}

IndexSet parse_rows(std::int64_t n, const std::string& rows) {
  if (rows == "qr") return quadratic_residue_rows(n);
  return IndexSet(n, parse_list(rows));
}

std::uint64_t budget_from_env() {
  const char* env = std::getenv("SPARKFORGE_BUDGET");
  if (!env) return kDefaultBudget;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used == std::string(env).size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::InvalidInput, std::string("SPARKFORGE_BUDGET must be a positive integer, got ") + env);
}

struct Options {
  unsigned threads = default_threads();

  std::string matrix;
  std::string graph;
  std::string rows;
  std::string bases;
  std::int64_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  double delta = 0;
  double tol = 1e-10;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  std::uint64_t cap = 1'000'000;
  std::size_t orbit_cap = kDefaultOrbitCap;
  std::string method = "hall";
  std::int64_t dft = 0;

  bool vandermonde = false, harmonic = false, harmonic_identity = false, optimal = false,
       parseval = false, normalize = false, no_cap = false, loose = false;

  SweepOptions sweep() const { return {budget_from_env(), threads}; }
};

// Spark of whatever the matrix file holds; exact when an exact copy exists.
SparkCertificate spark_of(const io::MatrixFile& mf, const Options& o, bool full_only) {
  const auto opt = o.sweep();
  switch (mf.kind) {
    case io::MatrixKind::Integer:
      return full_only ? is_full_spark(mf.integer, opt) : spark(mf.integer, opt);
    case io::MatrixKind::Cyclotomic:
      return full_only ? is_full_spark(mf.cyclotomic, opt) : spark(mf.cyclotomic, opt);
    case io::MatrixKind::ComplexFloat:
      if (mf.frame.exact_shadow) {
        const auto& s = *mf.frame.exact_shadow;
        return full_only ? is_full_spark(s, opt) : spark(s, opt);
      }
      std::cerr << "note: no exact shadow, using the floating-point screen (tol " << o.tol << ")\n";
      return numeric_spark_probe(mf.frame, o.tol, opt);
  }
  throw Error(Errc::InvalidInput, "unknown matrix kind");
}

ComplexMatrix to_complex(const CycMatrix& a) {
  const auto v = evaluate(a);
  ComplexMatrix out(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  for (std::size_t i = 0; i < v.size(); ++i)
    out(static_cast<Eigen::Index>(i / a.cols()), static_cast<Eigen::Index>(i % a.cols())) = v[i];
  return out;
}

ComplexMatrix as_complex(const io::MatrixFile& mf) {
  switch (mf.kind) {
    case io::MatrixKind::Integer:
      return to_complex(to_cyclotomic(mf.integer));
    case io::MatrixKind::Cyclotomic:
      return to_complex(mf.cyclotomic);
    case io::MatrixKind::ComplexFloat:
      return mf.frame.entries;
  }
  return {};
}

Frame as_frame(const io::MatrixFile& mf) {
  if (mf.kind == io::MatrixKind::ComplexFloat) return mf.frame;
  Frame f;
  f.entries = as_complex(mf);
  f.exact_shadow = mf.kind == io::MatrixKind::Integer ? to_cyclotomic(mf.integer) : mf.cyclotomic;
  return f;
}

int run_construct(const Options& o) {
  const int picked = o.vandermonde + o.harmonic + o.harmonic_identity + o.optimal + o.parseval;
  if (picked != 1)
    throw Error(Errc::InvalidInput,
                "construct needs exactly one of --vandermonde, --harmonic, --harmonic-identity, "
                "--optimal-vandermonde, --parseval");
  Frame f;
  if (o.vandermonde) {
    f = vandermonde(parse_bases(o.bases), o.m);
  } else if (o.harmonic) {
    f = harmonic(o.n, parse_rows(o.n, o.rows), o.normalize);
  } else if (o.harmonic_identity) {
    f = harmonic_identity(o.n, parse_rows(o.n, o.rows), o.k);
  } else if (o.optimal) {
    f = optimal_vandermonde(static_cast<std::size_t>(o.n), o.m, !o.loose);
  } else {
    f = parseval_projection(as_frame(io::parse_matrix(read_json(o.matrix))));
  }
  emit(io::to_json(f));
  return kHolds;
}

int run_spark(const Options& o) {
  const auto cert = spark_of(io::parse_matrix(read_json(o.matrix)), o, false);
  emit(io::to_json(cert));
  return kHolds;
}

int run_full_spark(const Options& o) {
  SparkCertificate cert;
  if (o.dft > 0) {
    if (o.rows.empty()) throw Error(Errc::InvalidInput, "--dft needs --rows");
    const auto f = harmonic(o.dft, parse_rows(o.dft, o.rows), false);
    cert = is_full_spark(*f.exact_shadow, o.sweep());
  } else {
    const auto mf = io::parse_matrix(read_json(o.matrix));
    cert = spark_of(mf, o, true);
  }
  emit(io::to_json(cert));
  return cert.full_spark() ? kHolds : kRefuted;
}

int run_dft_analyze(const Options& o) {
  const auto rows = parse_rows(o.n, o.rows);
  json out = {{"rows", io::to_json(rows)}};
  const auto u = is_uniformly_distributed(rows);
  out["uniformity"] = io::to_json(u);
  json reports = json::array();
  for (auto d : divisors(o.n)) reports.push_back(io::to_json(distribution_report(rows, d)));
  out["divisors"] = std::move(reports);
  if (const auto pp = as_prime_power(o.n)) {
    const auto v = full_spark_prime_power(rows);
    out["prime_power"] = {{"prime", pp->prime}, {"exponent", pp->exponent}};
    out["full_spark"] = v.full_spark;
  } else {
    // Uniformity is only necessary here.
    out["prime_power"] = nullptr;
    out["full_spark"] = u.uniform ? json(nullptr) : json(false);
  }
  emit(stamp(std::move(out)));
  return u.uniform ? kHolds : kRefuted;
}

int run_orbit(const Options& o) {
  const auto rows = parse_rows(o.n, o.rows);
  const auto orbit = closure_orbit(rows, o.orbit_cap);
  json members = json::array();
  for (const auto& s : orbit) members.push_back(s.members());
  emit(stamp({{"seed", io::to_json(rows)}, {"size", orbit.size()}, {"members", std::move(members)}}));
  return kHolds;
}

int run_rip_check(const Options& o) {
  if (!(o.delta > 0 && o.delta < 1)) throw Error(Errc::InvalidInput, "--delta must lie in (0, 1)");
  const auto rows = parse_rows(o.n, o.rows);
  const auto r = rip_necessary_check(rows, static_cast<std::int64_t>(o.k), o.delta);
  json out = io::to_json(r);
  out["rows"] = io::to_json(rows);
  out["k"] = o.k;
  out["delta"] = o.delta;
  emit(stamp(std::move(out)));
  return r.pass ? kHolds : kRefuted;
}

int run_coherence(const Options& o) {
  const auto f = as_complex(io::parse_matrix(read_json(o.matrix)));
  const auto c = coherence(f);
  const auto rows = static_cast<std::size_t>(f.rows()), cols = static_cast<std::size_t>(f.cols());
  json out = {{"mu", c.mu}, {"pair", {c.i, c.j}}, {"rows", rows}, {"cols", cols}};
  out["welch_bound_mu"] = cols > rows ? json(std::sqrt(welch_bound(rows, cols))) : json(nullptr);
  emit(stamp(std::move(out)));
  return kHolds;
}

int run_matroid_girth(const Options& o) {
  const auto g = io::parse_bipartite(read_json(o.graph));
  json out = {{"ground", g.ground_size()}, {"right", g.right_size()}};
  const auto opt = o.sweep();
  if (o.method == "hall" || o.method == "both") out["hall_oracle"] = io::to_json(hall_girth(g, opt));
  if (o.method == "representation" || o.method == "both")
    out["representation"] = io::to_json(girth_via_representation(g, o.trials, o.seed, opt));
  if (o.method == "both")
    out["agree"] = out["hall_oracle"]["girth"] == out["representation"]["girth"];
  emit(stamp(std::move(out)));
  return kHolds;
}

int run_clique_gadget(const Options& o) {
  const auto g = io::parse_simple_graph(read_json(o.graph));
  emit(io::to_json(clique_gadget(g, o.k)));
  return kHolds;
}

int run_probe(const Options& o) {
  const auto mf = io::parse_matrix(read_json(o.matrix));
  if (mf.kind != io::MatrixKind::Integer)
    throw Error(Errc::InvalidInput, "probe takes an integer matrix");
  ProbeOptions po;
  po.column_cap = o.cap;
  po.allow_cap = !o.no_cap;
  po.sweep = o.sweep();
  const auto r = compressed_spark_probe(mf.integer, o.k, o.trials, o.seed, po);
  if (r.capped)
    std::cerr << "note: Vandermonde pool capped at " << r.used_columns << " of "
              << r.requested_columns.get_str() << " columns\n";
  emit(stamp(io::to_json(r)));
  return r.spark_exceeds_k ? kHolds : kRefuted;
}

int report(const Error& e) {
  std::cerr << "error: " << e.what() << '\n';
  json err = {{"code", errc_name(e.code())}, {"message", e.what()}};
  if (const auto* b = dynamic_cast<const BudgetExceeded*>(&e)) err["reached_k"] = b->reached_k();
  emit(stamp({{"error", std::move(err)}}));
  return e.code() == Errc::BudgetExceeded ? kBudget : kInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spark, full-spark and coherence tools for finite frames"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "worker threads for subset sweeps")->check(CLI::PositiveNumber);

  auto matrix_opt = [&](CLI::App* s) {
    s->add_option("--matrix", o.matrix, "matrix JSON file (default: stdin)");
  };

  auto* construct = app.add_subcommand("construct", "build a frame");
  construct->add_flag("--vandermonde", o.vandermonde, "Vandermonde frame from --bases and --m");
  construct->add_flag("--harmonic", o.harmonic, "DFT rows --rows of order --n");
  construct->add_flag("--harmonic-identity", o.harmonic_identity, "[harmonic | identity] ETF, prime --n");
  construct->add_flag("--optimal-vandermonde", o.optimal, "equally spaced bases, --n columns, --m rows");
  construct->add_flag("--parseval", o.parseval, "canonical Parseval frame of --matrix");
  construct->add_option("--bases", o.bases, "bases: integers, w<N>^<k>, or (re,im)");
  construct->add_option("--m", o.m, "number of rows");
  construct->add_option("--n", o.n, "DFT order or column count");
  construct->add_option("--rows", o.rows, "row indices, a file, or 'qr'");
  construct->add_option("--k", o.k, "identity columns appended");
  construct->add_flag("--normalize", o.normalize, "unit-norm columns");
  construct->add_flag("--allow-out-of-contract", o.loose, "allow N < 2M for --optimal-vandermonde");
  matrix_opt(construct);

  auto* spark_cmd = app.add_subcommand("spark", "exact spark with witness");
  matrix_opt(spark_cmd);
  spark_cmd->add_option("--tol", o.tol, "relative tolerance for float-only input");

  auto* full = app.add_subcommand("full-spark", "full spark decision via determinant sweep");
  matrix_opt(full);
  full->add_option("--dft", o.dft, "use the DFT of this order");
  full->add_option("--rows", o.rows, "DFT row indices or file");
  full->add_option("--tol", o.tol, "relative tolerance for float-only input");

  auto* analyze = app.add_subcommand("dft-analyze", "coset distribution of DFT rows");
  analyze->add_option("--n", o.n, "DFT order")->required();
  analyze->add_option("--rows", o.rows, "row indices or file")->required();

  auto* orbit = app.add_subcommand("orbit", "closure under translation, units, complement");
  orbit->add_option("--n", o.n, "DFT order")->required();
  orbit->add_option("--rows", o.rows, "row indices or file")->required();
  orbit->add_option("--cap", o.orbit_cap, "maximum orbit size");

  auto* rip = app.add_subcommand("rip-check", "necessary condition for (K, delta)-RIP");
  rip->add_option("--n", o.n, "DFT order")->required();
  rip->add_option("--rows", o.rows, "row indices or file")->required();
  rip->add_option("--k", o.k, "sparsity")->required();
  rip->add_option("--delta", o.delta, "RIP constant in (0,1)")->required();

  auto* coh = app.add_subcommand("coherence", "worst-case coherence");
  matrix_opt(coh);

  auto* girth = app.add_subcommand("matroid-girth", "girth of a transversal matroid");
  girth->add_option("--graph", o.graph, "bipartite graph JSON (default: stdin)");
  girth->add_option("--method", o.method, "hall, representation or both")
      ->check(CLI::IsMember({"hall", "representation", "both"}));
  girth->add_option("--trials", o.trials, "random representations to draw");
  girth->add_option("--seed", o.seed, "RNG seed");

  auto* gadget = app.add_subcommand("clique-gadget", "bipartite graph whose girth detects K-cliques");
  gadget->add_option("--graph", o.graph, "simple graph JSON (default: stdin)");
  gadget->add_option("--k", o.k, "clique size, >= 4")->required();

  auto* probe = app.add_subcommand("probe", "randomized test of Spark(F) > K");
  matrix_opt(probe);
  probe->add_option("--k", o.k, "K")->required();
  probe->add_option("--trials", o.trials, "independent compressions");
  probe->add_option("--seed", o.seed, "RNG seed");
  probe->add_option("--cap", o.cap, "cap on the Vandermonde pool");
  probe->add_flag("--no-cap", o.no_cap, "fail instead of capping the pool");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;
    emit(stamp({{"error", {{"code", "UsageError"}, {"message", e.what()}}}}));
    return kInputError;
  }

  try {
    if (*construct) return run_construct(o);
    if (*spark_cmd) return run_spark(o);
    if (*full) return run_full_spark(o);
    if (*analyze) return run_dft_analyze(o);
    if (*orbit) return run_orbit(o);
    if (*rip) return run_rip_check(o);
    if (*coh) return run_coherence(o);
    if (*girth) return run_matroid_girth(o);
    if (*gadget) return run_clique_gadget(o);
    if (*probe) return run_probe(o);
  } catch (const Error& e) {
    return report(e);
  } catch (const std::exception& e) {
    return report(Error(Errc::InvalidInput, e.what()));
  }
  return kInputError;
}
