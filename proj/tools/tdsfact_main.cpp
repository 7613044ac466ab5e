// Command-line front end: drives the library from a plain-text job file
// to a deterministic report on stdout, warnings on stderr, and CSV/JSON
// artifacts written next to the job file.
//
// Exit codes: 0 success; 1 parse/usage/data error; 2 when the input is
// not admissible for the requested pipeline (inadmissible plant or an
// indeterminate finiteness verdict).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tdsfact/controller.hpp"
#include "tdsfact/errors.hpp"
#include "tdsfact/factorization.hpp"
#include "tdsfact/format.hpp"
#include "tdsfact/jobfile.hpp"
#include "tdsfact/phi.hpp"
#include "tdsfact/qpoly.hpp"
#include "tdsfact/rootfinder.hpp"

namespace {

using namespace tdsfact;

constexpr const char* kVersion = "0.1.0";
constexpr int kExitError = 1;
constexpr int kExitNotAdmissible = 2;

std::string job_stem(const std::string& path) {
  std::size_t dot = path.find_last_of('.');
  std::size_t slash = path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path;
  return path.substr(0, dot);
}

void header(std::ostream& os, const std::string& command, const std::string& path) {
  os << "tdsfact " << kVersion << "\n";
  os << "command: " << command << "\n";
  os << "job: " << path << "\n\n";
}

std::string finiteness_text(const FinitenessVerdict& v) {
  std::string s;
  switch (v.kind) {
    case Finiteness::Finite: s = "finite"; break;
    case Finiteness::Infinite: s = "infinite"; break;
    case Finiteness::Indeterminate: s = "indeterminate"; break;
  }
  if (!v.note.empty()) s += " (" + v.note + ")";
  return s;
}

std::string complex_text(Complex z, int digits) {
  std::string s = format::sig(z.real(), digits);
  if (z.imag() != 0.0) {
    s += (z.imag() < 0 ? "-" : "+");
    s += format::sig(std::abs(z.imag()), digits);
    s += "j";
  }
  return s;
}

void print_roots(std::ostream& os, const RootSet& rs, const std::string& label) {
  os << label << " (" << rs.total() << "):";
  if (rs.empty()) {
    os << " none\n";
    return;
  }
  os << "\n";
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    os << "  " << complex_text(rs.roots[i], 10);
    if (rs.multiplicities[i] > 1) os << "  x" << rs.multiplicities[i];
    os << "\n";
  }
}

void write_csv(const std::string& path, const std::string& head,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write \"" + path + "\"");
  out << head << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << format::full(row[i]);
    }
    out << "\n";
  }
}

void write_impulse_csv(const std::string& path, const DelaySum& f,
                       double t1, int points) {
  std::vector<double> grid = time_grid(0.0, t1, static_cast<std::size_t>(points));
  std::vector<double> vals = impulse_response(f, grid);
  std::vector<std::vector<double>> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    rows.push_back({grid[i], vals[i]});
  write_csv(path, "t,f", rows);
}

// One side of the plant: everything cmd_analyze reports about a single
// quasi-polynomial.
void analyze_one(std::ostream& os, const QuasiPolynomial& q,
                 const std::string& label, bool* indeterminate) {
  os << label << ": " << to_string(q) << "\n";
  if (!q.is_standard()) {
    os << "  form: nonstandard (a delayed term exceeds the leading degree)\n";
  } else {
    os << "  kind: " << (classify(q) == KindTag::Retarded ? "retarded" : "neutral")
       << "\n";
  }

  AsymptoticPolynomial ap = asymptotic_polynomial(q);
  os << "  asymptotic polynomial (base " << ap.base
     << "): " << format::poly_text(ap.dense()) << "\n";

  FinitenessVerdict direct = finiteness_rhp(q);
  if (!direct.magnitudes.empty()) {
    os << "  asymptotic root magnitudes:";
    for (double m : direct.magnitudes) os << " " << format::sig(m, 6);
    os << "\n";
  }
  os << "  right-half-plane root set: " << finiteness_text(direct) << "\n";
  if (direct.kind == Finiteness::Indeterminate) *indeterminate = true;

  if (direct.kind == Finiteness::Finite) {
    RhpRootsResult rr = rhp_roots(q);
    print_roots(os, rr.roots, "  right-half-plane roots");
    if (rr.heuristic_top)
      std::cerr << "warning: " << label
                << ": search-box top extent from the growth heuristic\n";
  } else {
    FinitenessVerdict conj = finiteness_rhp_conjugate(q);
    os << "  conjugate right-half-plane root set: " << finiteness_text(conj)
       << "\n";
    if (conj.kind == Finiteness::Indeterminate) *indeterminate = true;
    if (conj.kind == Finiteness::Finite) {
      RhpRootsResult rr = rhp_roots(conjugate(q));
      print_roots(os, rr.roots, "  conjugate right-half-plane roots");
      if (rr.heuristic_top)
        std::cerr << "warning: " << label
                  << ": search-box top extent from the growth heuristic\n";
    }
  }
  os << "\n";
}

int cmd_analyze(const JobFile& job, const std::string& path) {
  if (!job.plant) throw ParseError("analyze needs a [plant] section");
  std::ostringstream os;
  header(os, "analyze", path);
  bool indeterminate = false;
  analyze_one(os, job.plant->num, "numerator", &indeterminate);
  analyze_one(os, job.plant->den, "denominator", &indeterminate);
  std::cout << os.str();
  if (indeterminate) {
    std::cerr << "warning: an asymptotic magnitude fell inside the unit band; "
                 "no finiteness verdict\n";
    return kExitNotAdmissible;
  }
  return 0;
}

int cmd_factor(const JobFile& job, const std::string& path) {
  if (!job.plant) throw ParseError("factor needs a [plant] section");
  std::ostringstream os;
  header(os, "factor", path);

  PlantClass cls = classify_plant(*job.plant);
  if (cls.kind == PlantCase::NotAdmissible) {
    os << "plant: not admissible\n";
    os << "reason: " << cls.reason << "\n";
    os << "numerator direct verdict: " << finiteness_text(cls.num_direct) << "\n";
    os << "numerator conjugate verdict: " << finiteness_text(cls.num_conjugate)
       << "\n";
    os << "denominator verdict: " << finiteness_text(cls.den_direct) << "\n";
    std::cout << os.str();
    return kExitNotAdmissible;
  }

  FactoredPlant f = factor_plant(*job.plant);
  os << describe(f);
  double residual = factorization_residual(*job.plant, f);
  os << "reconstruction residual: " << format::sig(residual, 3) << "\n";
  if (job.gamma_table)
    os << "performance level (quoted): " << format::sig(*job.gamma_table, 6)
       << "\n";
  std::cout << os.str();
  for (const std::string& w : f.warnings) std::cerr << "warning: " << w << "\n";
  if (f.heuristic_boxes)
    std::cerr << "warning: a search-box top extent came from the growth "
                 "heuristic\n";
  return 0;
}

int cmd_phi(const JobFile& job, const std::string& path) {
  if (!job.g || !job.g0) throw ParseError("phi needs a [phi] section");
  std::ostringstream os;
  header(os, "phi", path);

  PhiResult r = phi_decompose(*job.g, *job.g0, job.cert_tol,
                              /*throw_on_cert_failure=*/false, job.detect_tol,
                              job.cert_horizon);
  os << "input G = " << job.g->str() << "\n";
  os << "reference G0 = " << job.g0->str() << "\n\n";
  os << "shared right-half-plane zeros (" << r.cancellations.total_order()
     << "):\n";
  for (const auto& p : r.cancellations.points) {
    os << "  " << complex_text(p.z, 10) << "  order " << p.order;
    if (p.observed != p.order) os << "  (observed " << p.observed << ")";
    os << "\n";
  }
  if (r.cancellations.empty()) os << "  none\n";
  os << "\n";
  os << "smooth part H = " << (r.smooth.is_zero() ? "0" : r.smooth.str()) << "\n";
  os << "finite-support part F = " << (r.fir.is_zero() ? "0" : r.fir.f.str())
     << "\n";
  if (!r.fir.is_zero()) {
    os << "support: [0, " << format::sig(r.fir.support_end, 6) << "]\n";
    os << "certification: " << r.fir.certification.str() << "\n";
  }
  std::cout << os.str();
  for (const std::string& w : r.warnings) std::cerr << "warning: " << w << "\n";

  if (!r.fir.is_zero()) {
    double t1 = r.fir.support_end + r.fir.certification.horizon;
    write_impulse_csv(job_stem(path) + "_impulse.csv", r.fir.f, t1,
                      job.impulse_points);
  }
  return 0;
}

nlohmann::json rational_json(const RationalFunction& rf) {
  nlohmann::json num = nlohmann::json::array();
  nlohmann::json den = nlohmann::json::array();
  for (double c : rf.num) num.push_back(format::round_sig(c, 6));
  for (double c : rf.den) den.push_back(format::round_sig(c, 6));
  return {{"num", num}, {"den", den}};
}

nlohmann::json delay_sum_json(const DelaySum& d) {
  nlohmann::json terms = nlohmann::json::array();
  for (const DelayTerm& t : d.terms) {
    nlohmann::json j = rational_json(t.part);
    j["delay"] = t.delay.str();
    terms.push_back(j);
  }
  return terms;
}

nlohmann::json certification_json(const FirCertification& c) {
  return {{"pass", c.pass},
          {"behavioral_pass", c.behavioral_pass},
          {"algebraic_pass", c.algebraic_pass},
          {"tolerance", c.tol},
          {"support", format::round_sig(c.support, 6)},
          {"horizon", format::round_sig(c.horizon, 6)},
          {"head_max", format::round_sig(c.head_max, 6)},
          {"tail_max", format::round_sig(c.tail_max, 6)},
          {"tail_coeff_max", format::round_sig(c.tail_coeff_max, 6)}};
}

int cmd_controller(const JobFile& job, const std::string& path) {
  if (!job.plant) throw ParseError("controller needs a [plant] section");
  if (!job.synthesis)
    throw ParseError("controller needs a [synthesis] section");
  std::ostringstream os;
  header(os, "controller", path);

  PlantClass cls = classify_plant(*job.plant);
  if (cls.kind == PlantCase::NotAdmissible) {
    os << "plant: not admissible\n";
    os << "reason: " << cls.reason << "\n";
    std::cout << os.str();
    return kExitNotAdmissible;
  }

  FactoredPlant f = factor_plant(*job.plant);
  AssembleOptions opts;
  opts.cert_tol = job.cert_tol;
  opts.detect_tol = job.detect_tol;
  opts.cert_horizon = job.cert_horizon;
  ControllerForm c = assemble(f, *job.synthesis, opts);

  os << c.str();
  if (job.gamma_table)
    os << "performance level (quoted): " << format::sig(*job.gamma_table, 6)
       << "\n";
  std::cout << os.str();
  for (const std::string& w : c.warnings) std::cerr << "warning: " << w << "\n";

  const std::string stem = job_stem(path);
  if (!c.f_n.is_zero())
    write_impulse_csv(stem + "_fn.csv", c.f_n.f,
                      c.f_n.support_end + c.f_n.certification.horizon,
                      job.impulse_points);
  if (!c.f_d.is_zero())
    write_impulse_csv(stem + "_fd.csv", c.f_d.f,
                      c.f_d.support_end + c.f_d.certification.horizon,
                      job.impulse_points);

  // Frequency response of the assembled controller on a log grid.
  {
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(job.freq_points));
    double l0 = std::log10(job.omega_min), l1 = std::log10(job.omega_max);
    for (int i = 0; i < job.freq_points; ++i) {
      double w = std::pow(10.0, l0 + (l1 - l0) * i / (job.freq_points - 1));
      Complex v = c.eval(Complex(0.0, w));
      rows.push_back({w, v.real(), v.imag()});
    }
    write_csv(stem + "_freq.csv", "omega,re,im", rows);
  }

  // Structured export of the full controller form.
  {
    nlohmann::json doc;
    doc["version"] = kVersion;
    doc["case"] = c.kind == PlantCase::DirectNumerator ? "direct-numerator"
                                                       : "conjugate-numerator";
    doc["gamma"] = job.synthesis->gamma_opt;
    if (job.gamma_table) doc["gamma_quoted"] = *job.gamma_table;
    doc["theta_n"] = rational_json(c.theta.theta_n);
    doc["theta_d"] = rational_json(c.theta.theta_d);
    doc["numerator"] = {{"smooth", delay_sum_json(c.h_n)},
                        {"fir", delay_sum_json(c.f_n.f)},
                        {"support", format::round_sig(c.f_n.support_end, 6)},
                        {"certification", certification_json(c.f_n.certification)}};
    doc["denominator"] = {{"smooth", delay_sum_json(c.h_d)},
                          {"fir", delay_sum_json(c.f_d.f)},
                          {"support", format::round_sig(c.f_d.support_end, 6)},
                          {"certification", certification_json(c.f_d.certification)}};
    doc["warnings"] = c.warnings;
    std::ofstream out(stem + "_controller.json");
    if (!out) throw Error("cannot write \"" + stem + "_controller.json\"");
    out << doc.dump(2) << "\n";
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-delay plant factorization and FIR controller assembly"};
  app.set_version_flag("--version", std::string("tdsfact ") + kVersion);
  app.require_subcommand(1);

  std::string path;
  auto add = [&](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("job", path, "job file")->required();
    return sub;
  };
  CLI::App* analyze = add("analyze",
                          "Classify a plant's quasi-polynomials and list their "
                          "right-half-plane roots");
  CLI::App* factor = add("factor",
                         "Coprime inner/outer factorization of the plant");
  CLI::App* phi = add("phi",
                      "Decompose a delayed sum against a reference factor into "
                      "smooth plus finite-support parts");
  CLI::App* controller = add("controller",
                             "Assemble and certify the controller in "
                             "smooth-plus-finite-support form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitError : 0;
  }

  try {
    JobFile job = load_jobfile(path);
    if (analyze->parsed()) return cmd_analyze(job, path);
    if (factor->parsed()) return cmd_factor(job, path);
    if (phi->parsed()) return cmd_phi(job, path);
    if (controller->parsed()) return cmd_controller(job, path);
    return kExitError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
