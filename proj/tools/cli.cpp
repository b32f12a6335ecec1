#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "hyperarr/charpoly.hpp"
#include "hyperarr/error.hpp"
#include "hyperarr/eulercalc.hpp"
#include "hyperarr/io.hpp"
#include "hyperarr/milnor.hpp"
#include "hyperarr/sampler.hpp"

namespace hyperarr::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 20240601;

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  std::size_t threads = 0;
  bool trace = false;
};

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

Json integers_json(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(integer_json(z));
  return a;
}

Json envelope() {
  Json j;
  j["format_version"] = 1;
  return j;
}

void emit(const Json& j, const std::string& output, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(output);
  if (!file) throw Error(ErrorKind::InvalidInput, "cannot write " + output);
  file << text;
}

std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> degs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const int d = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      degs.push_back(d);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad degree '" + item + "'");
    }
  }
  return degs;
}

Json report_json(const SampleReport& r, bool timings) {
  Json j;
  j["method"] = std::string(to_string(r.method));
  j["count"] = r.points.size();
  j["expected_count"] = r.expected_count;
  j["points"] = r.points;
  Json signs = Json::array();
  for (const auto& s : r.sign_vectors) signs.push_back(s.str());
  j["sign_vectors"] = signs;
  j["residuals"] = r.residuals;
  if (r.method == SampleMethod::Morse) {
    j["gradient_norms"] = r.gradient_norms;
    j["hessian_max_eigenvalues"] = r.hessian_max_eigenvalues;
    j["min_margin"] = r.min_margin;
    j["target_params"] = r.target_params;
    if (r.quadric) {
      Json q;
      Json a = Json::array(), b = Json::array();
      for (const auto& x : r.quadric->a) a.push_back(to_string(x));
      for (const auto& x : r.quadric->b) b.push_back(to_string(x));
      q["a"] = a;
      q["b"] = b;
      j["quadric"] = q;
    }
  } else {
    j["box"] = r.box;
  }
  j["retries"] = r.retries;
  if (timings) {
    Json t = Json::object();
    for (const auto& [stage, ms] : r.timings) t[stage] = ms;
    j["timings"] = t;
  }
  return j;
}

MorseOptions morse_options(const Globals& g, std::ostream& err) {
  MorseOptions opt;
  opt.seed = g.seed;
  opt.threads = g.threads;
  if (g.trace) opt.trace = [&err](const std::string& line) { err << line << "\n"; };
  return opt;
}

MilnorOptions milnor_options(const Globals& g) {
  MilnorOptions opt;
  opt.seed = g.seed;
  opt.threads = g.threads;
  return opt;
}

struct PolyInput {
  std::vector<RationalPoly> fs;
  std::size_t n = 0;
};

PolyInput read_affine_polys(const std::string& path) {
  const auto lines = read_polynomial_lines(path);
  if (lines.empty()) throw Error(ErrorKind::InvalidInput, path + " contains no polynomials");
  PolyInput in;
  in.fs = parse_polynomials(lines, 1);
  in.n = in.fs.front().num_vars();
  if (in.n == 0) throw Error(ErrorKind::InvalidInput, "polynomials use no variables");
  return in;
}

bool all_linear(const std::vector<RationalPoly>& ps) {
  for (const auto& p : ps)
    if (p.total_degree() != 1) return false;
  return true;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperplane and hypersurface arrangements: characteristic polynomials, region sampling, Milnor numbers"};
  app.name("hyperarr");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  g.threads = std::max(1U, std::thread::hardware_concurrency());
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (1 = deterministic single worker)")->check(CLI::PositiveNumber);
  app.add_flag("--trace", g.trace, "Stream JSON trace events to stderr");

  std::string file, output, method = "mobius", degrees, poly, suite = "resonance", dump;
  std::optional<long long> chi_real;
  bool projective = false, timings = false;
  std::size_t dmax = 4, repetitions = 1, dim = 0;

  auto* charpoly = app.add_subcommand("charpoly", "Characteristic polynomial of an arrangement");
  charpoly->add_option("file", file, "Arrangement JSON")->required();
  charpoly->add_option("--method", method, "mobius, whitney, finite-field or all")
      ->check(CLI::IsMember({"mobius", "whitney", "finite-field", "all"}));
  charpoly->add_option("--output", output, "Write JSON here instead of stdout");

  auto* regions = app.add_subcommand("regions", "Region and bounded-region counts");
  regions->add_option("file", file, "Arrangement JSON")->required();
  regions->add_option("--output", output, "Write JSON here instead of stdout");

  auto* euler = app.add_subcommand("euler", "Euler characteristics with generic hypersurfaces");
  euler->add_option("file", file, "Arrangement JSON (optional)");
  euler->add_option("--degrees", degrees, "Comma-separated degrees of generic hypersurfaces")->required();
  euler->add_option("--poly", poly, "Polynomial file: hypersurface arrangement instead of hyperplanes");
  euler->add_option("--dim", dim, "Ambient dimension when no arrangement is given");
  euler->add_option("--output", output, "Write JSON here instead of stdout");

  auto* sample = app.add_subcommand("sample", "One interior point per region");
  sample->add_option("file", file, "Arrangement JSON")->required();
  sample->add_option("--method", method, "morse, lp or both")->check(CLI::IsMember({"morse", "lp", "both"}));
  sample->add_option("--output", output, "Write JSON here instead of stdout");
  sample->add_option("--dump-system", dump, "Write the cleared critical system as JSON");
  sample->add_flag("--timings", timings, "Include wall-clock stage timings (output is then not byte-stable)");

  auto* milnor = app.add_subcommand("milnor", "Milnor numbers of a projective hypersurface");
  milnor->add_option("--poly", poly, "Polynomial file")->required();
  milnor->add_flag("--projective", projective,
                   "File holds one homogeneous F in x0..xn; otherwise affine f_i in x1..xn and F = x0·Π ʰf_i");
  milnor->add_option("--output", output, "Write JSON here instead of stdout");

  auto* bound = app.add_subcommand("bound", "Upper bounds on the number of regions");
  bound->add_option("--poly", poly, "Polynomial file with f_1..f_k")->required();
  bound->add_option("--chi-real", chi_real, "Euler characteristic of the real complement");
  bound->add_option("--output", output, "Write JSON here instead of stdout");

  auto* bench = app.add_subcommand("bench", "Morse vs LP timings as CSV");
  bench->add_option("--suite", suite, "resonance or random")->check(CLI::IsMember({"resonance", "random"}));
  bench->add_option("--dmax", dmax, "Largest resonance dimension (suite resonance)")->check(CLI::Range(2, 6));
  bench->add_option("--repetitions", repetitions, "Rows per cell")->check(CLI::PositiveNumber);
  bench->add_option("--out", output, "CSV path (stdout if omitted)");

  std::vector<std::string> argv_store = args;
  if (argv_store.empty()) argv_store.emplace_back("hyperarr");
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (sample->parsed() && method == "mobius") method = "morse";

  try {
    Json j = envelope();
    if (charpoly->parsed()) {
      const Arrangement A = read_arrangement_file(file);
      CharPoly chi;
      if (method == "mobius" || method == "all") chi = char_poly_mobius(A);
      if (method == "whitney") chi = char_poly_whitney(A);
      if (method == "finite-field") chi = char_poly_finite_field(A);
      if (method == "all") {
        const bool agree = chi == char_poly_whitney(A) && chi == char_poly_finite_field(A);
        j["methods_agree"] = agree;
        if (!agree) throw Error(ErrorKind::NumericFailure, "characteristic polynomial routes disagree");
      }
      j["method"] = method;
      j["coeffs"] = integers_json(chi.coeffs());
      j["polynomial"] = chi.to_string();
      emit(j, output, out);
    } else if (regions->parsed()) {
      const Arrangement A = read_arrangement_file(file);
      const RegionCounts rc = region_counts(A);
      j["regions"] = integer_json(rc.regions);
      j["bounded"] = integer_json(rc.bounded);
      j["rank"] = rc.rank;
      j["essential"] = rc.bounded_meaningful;
      emit(j, output, out);
    } else if (euler->parsed()) {
      const std::vector<int> degs = parse_degrees(degrees);
      j["degrees"] = degs;
      if (!poly.empty()) {
        const PolyInput in = read_affine_polys(poly);
        const ProjectiveDivisor D = divisor_for_arrangement(in.fs, in.n);
        const MilnorVector mu = milnor_numbers(D, milnor_options(g));
        const Integer chi = chi_from_milnor(mu, degs);
        j["mu"] = integers_json(mu.values());
        j["chi"] = integer_json(chi);
        j["chi_csm"] = integer_json(chi_from_milnor_via_csm(mu, degs));
      } else if (!file.empty()) {
        const Arrangement A = read_arrangement_file(file);
        const CharPoly chi = char_poly_mobius(A);
        j["charpoly"] = integers_json(chi.coeffs());
        j["chi"] = integer_json(chi_arrangement_plus_generic(chi, degs));
      } else {
        if (dim == 0) throw Error(ErrorKind::InvalidInput, "euler needs an arrangement, --poly or --dim");
        j["dim"] = dim;
        j["c"] = integer_json(c_coefficient(dim, degs));
        j["b_tilde"] = integer_json(b_tilde_coefficient(dim, degs));
        j["b"] = integers_json(b_coefficients(dim, degs));
      }
      emit(j, output, out);
    } else if (sample->parsed()) {
      const Arrangement A = read_arrangement_file(file);
      const MorseOptions opt = morse_options(g, err);
      std::optional<SampleReport> morse, lp;
      if (method == "morse" || method == "both") morse = morse_sample(A, opt);
      if (method == "lp" || method == "both") lp = lp_enumerate_regions(A);
      if (morse && !dump.empty()) {
        const PolySystem sys = build_critical_system(arrangement_polynomials(A), morse->quadric->polynomial());
        std::ofstream f(dump);
        if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + dump);
        f << sys.to_json() << "\n";
      }
      if (morse && lp) {
        j["morse"] = report_json(*morse, timings);
        j["lp"] = report_json(*lp, timings);
        const bool agree = verify_reports_agree(*morse, *lp);
        j["agree"] = agree;
        emit(j, output, out);
        if (!agree) {
          err << "error: Morse and LP sign-vector sets differ\n";
          return kExitNumerical;
        }
      } else {
        const Json report = report_json(morse ? *morse : *lp, timings);
        for (const auto& [key, value] : report.items()) j[key] = value;
        emit(j, output, out);
      }
    } else if (milnor->parsed()) {
      const auto lines = read_polynomial_lines(poly);
      if (lines.empty()) throw Error(ErrorKind::InvalidInput, poly + " contains no polynomials");
      std::optional<ProjectiveDivisor> D;
      std::optional<MilnorVector> combinatorial;
      if (projective) {
        if (lines.size() != 1) throw Error(ErrorKind::InvalidInput, "--projective expects exactly one polynomial");
        D.emplace(parse_polynomials(lines, 0).front());
      } else {
        const PolyInput in = read_affine_polys(poly);
        D.emplace(divisor_for_arrangement(in.fs, in.n));
        if (all_linear(in.fs)) combinatorial = milnor_from_charpoly(divisor_factors(in.fs, in.n));
      }
      const MilnorVector mu = milnor_numbers(*D, milnor_options(g));
      j["mu"] = integers_json(mu.values());
      j["degree"] = D->degree();
      j["n"] = D->n();
      j["bezout_bounds"] = integers_json(milnor_bezout_bounds(D->degree(), D->n()));
      if (combinatorial) {
        j["mu_combinatorial"] = integers_json(combinatorial->values());
        j["agree"] = *combinatorial == mu;
      }
      emit(j, output, out);
    } else if (bound->parsed()) {
      const PolyInput in = read_affine_polys(poly);
      const ProjectiveDivisor D = divisor_for_arrangement(in.fs, in.n);
      const MilnorVector mu = milnor_numbers(D, milnor_options(g));
      const unsigned d = D.degree() - 1;  // deg Π f_i
      j["mu"] = integers_json(mu.values());
      j["degree"] = d;
      j["complex_bound"] = integer_json(region_bound_complex(mu));
      j["bezout_bound"] = integer_json(region_bound_bezout(d, static_cast<unsigned>(in.n)));
      if (chi_real) {
        const MorseBound mb = region_bound_morse(region_bound_complex(mu), Integer(static_cast<long>(*chi_real)));
        j["morse_bound"] = integer_json(mb.bound);
        j["parity_warning"] = mb.parity_warning;
      }
      emit(j, output, out);
    } else if (bench->parsed()) {
      std::vector<Arrangement> instances;
      if (suite == "resonance") {
        for (std::size_t d = 2; d <= dmax; ++d) instances.push_back(resonance_arrangement(d));
      } else {
        for (std::size_t i = 0; i < 5; ++i) instances.push_back(random_essential_arrangement(3, 10, g.seed + i));
      }
      const auto rows = benchmark(instances, {SampleMethod::Morse, SampleMethod::Lp}, repetitions, morse_options(g, err));
      const std::string csv = bench_csv(rows);
      if (output.empty()) {
        out << csv;
      } else {
        std::ofstream f(output);
        if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + output);
        f << csv;
      }
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_numerical(e.kind()) ? kExitNumerical : kExitInput;
  } catch (const std::exception& e) {
    err << "error: internal failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace hyperarr::cli
