#include "tdsfact/jobfile.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "tdsfact/errors.hpp"
#include "tdsfact/qpoly.hpp"

namespace tdsfact {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

Poly parse_coeffs(const std::string& text, const std::string& what) {
  std::istringstream is(text);
  Poly p;
  double v;
  while (is >> v) p.push_back(v);
  std::string leftover;
  if (!(is >> leftover).eof() || p.empty())
    throw ParseError(what + ": expected a space-separated coefficient list, got \"" +
                     trim(text) + "\"");
  return p;
}

double parse_double(const std::string& text, const std::string& what) {
  std::istringstream is(trim(text));
  double v;
  std::string leftover;
  if (!(is >> v) || !(is >> leftover).eof())
    throw ParseError(what + ": expected a number, got \"" + trim(text) + "\"");
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  std::istringstream is(trim(text));
  int v;
  std::string leftover;
  if (!(is >> v) || !(is >> leftover).eof())
    throw ParseError(what + ": expected an integer, got \"" + trim(text) + "\"");
  return v;
}

// "num: ...; den: ..." with an optional " @ h" after the denominator.
std::pair<RationalFunction, RationalDelay> parse_rational_delay(
    const std::string& text, const std::string& what, bool allow_delay) {
  std::size_t semi = text.find(';');
  if (semi == std::string::npos)
    throw ParseError(what + ": expected \"num: ...; den: ...\"");
  std::string np = trim(text.substr(0, semi));
  std::string dp = trim(text.substr(semi + 1));
  if (np.rfind("num:", 0) != 0)
    throw ParseError(what + ": first part must start with \"num:\"");
  if (dp.rfind("den:", 0) != 0)
    throw ParseError(what + ": second part must start with \"den:\"");
  np = np.substr(4);
  dp = dp.substr(4);

  RationalDelay h;
  if (std::size_t at = dp.find('@'); at != std::string::npos) {
    if (!allow_delay) throw ParseError(what + ": a delay is not allowed here");
    h = RationalDelay::parse(trim(dp.substr(at + 1)));
    dp = dp.substr(0, at);
  }
  Poly num = parse_coeffs(np, what + " numerator");
  Poly den = parse_coeffs(dp, what + " denominator");
  if (poly::is_zero(den)) throw ParseError(what + ": denominator is zero");
  return {RationalFunction::from(std::move(num), std::move(den)), h};
}

struct Section {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;
};

std::vector<Section> split_sections(const std::string& text) {
  std::vector<Section> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (std::size_t hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("line " + std::to_string(lineno) +
                         ": unterminated section header");
      out.push_back({trim(line.substr(1, line.size() - 2)), {}});
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected \"key = value\" or \"[section]\"");
    if (out.empty())
      throw ParseError("line " + std::to_string(lineno) +
                       ": key/value outside any section");
    out.back().entries.emplace_back(trim(line.substr(0, eq)),
                                    trim(line.substr(eq + 1)));
  }
  return out;
}

void apply_plant(const Section& sec, JobFile* job) {
  QuasiPolynomial num, den;
  bool has_num = false, has_den = false;
  for (const auto& [key, value] : sec.entries) {
    if (key == "num") {
      num = parse_qpoly(value);
      has_num = true;
    } else if (key == "den") {
      den = parse_qpoly(value);
      has_den = true;
    } else {
      throw ParseError("[plant]: unknown key \"" + key + "\"");
    }
  }
  if (!has_num || !has_den)
    throw ParseError("[plant]: both \"num\" and \"den\" are required");
  job->plant = PlantDescription{std::move(num), std::move(den)};
}

void apply_phi(const Section& sec, JobFile* job) {
  std::vector<DelayTerm> terms;
  for (const auto& [key, value] : sec.entries) {
    if (key == "term") {
      auto [rf, h] = parse_rational_delay(value, "[phi] term", true);
      terms.push_back({std::move(rf), h});
    } else if (key == "g0") {
      job->g0 = parse_rational_delay(value, "[phi] g0", false).first;
    } else {
      throw ParseError("[phi]: unknown key \"" + key + "\"");
    }
  }
  if (terms.empty()) throw ParseError("[phi]: at least one \"term\" is required");
  if (!job->g0) throw ParseError("[phi]: \"g0\" is required");
  job->g = DelaySum::make(std::move(terms));
}

void apply_weights(const Section& sec, JobFile* job) {
  WeightPair w;
  for (const auto& [key, value] : sec.entries) {
    if (key == "w1")
      w.w1 = parse_rational_delay(value, "[weights] w1", false).first;
    else if (key == "w2")
      w.w2 = parse_rational_delay(value, "[weights] w2", false).first;
    else if (key == "gamma_table")
      job->gamma_table = parse_double(value, "[weights] gamma_table");
    else
      throw ParseError("[weights]: unknown key \"" + key + "\"");
  }
  job->weights = std::move(w);
}

void apply_synthesis(const Section& sec, JobFile* job) {
  SynthesisData sd;
  bool has_gamma = false;
  for (const auto& [key, value] : sec.entries) {
    if (key == "gamma") {
      sd.gamma_opt = parse_double(value, "[synthesis] gamma");
      has_gamma = true;
    } else if (key == "e") {
      sd.e = parse_rational_delay(value, "[synthesis] e", false).first;
    } else if (key == "f") {
      sd.f = parse_rational_delay(value, "[synthesis] f", false).first;
    } else if (key == "l") {
      sd.l = parse_rational_delay(value, "[synthesis] l", false).first;
    } else {
      throw ParseError("[synthesis]: unknown key \"" + key + "\"");
    }
  }
  if (!has_gamma) throw ParseError("[synthesis]: \"gamma\" is required");
  job->synthesis = std::move(sd);
}

void apply_options(const Section& sec, JobFile* job) {
  for (const auto& [key, value] : sec.entries) {
    if (key == "cert_tol")
      job->cert_tol = parse_double(value, "[options] cert_tol");
    else if (key == "detect_tol")
      job->detect_tol = parse_double(value, "[options] detect_tol");
    else if (key == "cert_horizon")
      job->cert_horizon = parse_double(value, "[options] cert_horizon");
    else if (key == "freq_points")
      job->freq_points = parse_int(value, "[options] freq_points");
    else if (key == "omega_min")
      job->omega_min = parse_double(value, "[options] omega_min");
    else if (key == "omega_max")
      job->omega_max = parse_double(value, "[options] omega_max");
    else if (key == "impulse_points")
      job->impulse_points = parse_int(value, "[options] impulse_points");
    else
      throw ParseError("[options]: unknown key \"" + key + "\"");
  }
  if (job->freq_points < 2) throw ParseError("[options]: freq_points must be >= 2");
  if (job->impulse_points < 2)
    throw ParseError("[options]: impulse_points must be >= 2");
  if (!(job->omega_min > 0) || !(job->omega_max > job->omega_min))
    throw ParseError("[options]: need 0 < omega_min < omega_max");
}

} // namespace

RationalFunction parse_rational(const std::string& text) {
  return parse_rational_delay(text, "rational", false).first;
}

JobFile parse_jobfile(const std::string& text) {
  JobFile job;
  bool seen_plant = false, seen_phi = false, seen_weights = false,
       seen_synthesis = false, seen_options = false;
  for (const Section& sec : split_sections(text)) {
    auto once = [&sec](bool* seen) {
      if (*seen) throw ParseError("duplicate section [" + sec.name + "]");
      *seen = true;
    };
    if (sec.name == "plant") {
      once(&seen_plant);
      apply_plant(sec, &job);
    } else if (sec.name == "phi") {
      once(&seen_phi);
      apply_phi(sec, &job);
    } else if (sec.name == "weights") {
      once(&seen_weights);
      apply_weights(sec, &job);
    } else if (sec.name == "synthesis") {
      once(&seen_synthesis);
      apply_synthesis(sec, &job);
    } else if (sec.name == "options") {
      once(&seen_options);
      apply_options(sec, &job);
    } else {
      throw ParseError("unknown section [" + sec.name + "]");
    }
  }
  return job;
}

JobFile load_jobfile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open job file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_jobfile(buf.str());
  } catch (const Error& e) {
    // Malformed content of any flavor is a parse failure of this file.
    throw ParseError(path + ": " + e.what());
  }
}

} // namespace tdsfact
