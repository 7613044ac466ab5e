#pragma once

#include <optional>
#include <string>

#include "tdsfact/controller.hpp"
#include "tdsfact/factorization.hpp"
#include "tdsfact/lti.hpp"

namespace tdsfact {

// One plain-text job per file.  Sectioned key/value format:
//
//   # comment
//   [plant]
//   num = 1 -2 3 @ 0; 0.2 0 @ 1         (quasi-polynomial grammar)
//   den = 1 0 0 1 @ 0; 1 @ 3/2
//
//   [phi]
//   term = num: 1 2; den: 1 3 2 @ 1/2   (repeatable; delay optional)
//   g0 = num: 1 -1; den: 1 1            (rational grammar)
//
//   [weights]
//   w1 = num: 0.1 1; den: 1 2
//   w2 = num: 0; den: 1
//   gamma_table = 1.8595
//
//   [synthesis]
//   gamma = 1.0
//   e = num: 1 5; den: 1 3
//   f = num: ...; den: ...
//   l = num: 1; den: 1
//
//   [options]
//   cert_tol = 1e-8        detect_tol = 1e-6     cert_horizon = 0
//   freq_points = 200      omega_min = 0.01      omega_max = 100
//   impulse_points = 512
//
// Unknown sections or keys are rejected: a job file is a contract, and
// a silently ignored misspelling would change results without a trace.
struct JobFile {
  std::optional<PlantDescription> plant;

  std::optional<DelaySum> g;          // [phi] term list
  std::optional<RationalFunction> g0; // [phi] reference factor

  std::optional<WeightPair> weights;
  std::optional<double> gamma_table;  // quoted level, echoed as metadata

  std::optional<SynthesisData> synthesis;

  double cert_tol = 1e-8;
  double detect_tol = 1e-6;
  double cert_horizon = 0.0; // 0 = automatic
  int freq_points = 200;
  double omega_min = 1e-2;
  double omega_max = 1e2;
  int impulse_points = 512;
};

// "num: c_n ... c_0; den: c_m ... c_0", coefficients highest first.
RationalFunction parse_rational(const std::string& text);

JobFile parse_jobfile(const std::string& text); // throws ParseError
JobFile load_jobfile(const std::string& path);  // throws ParseError

} // namespace tdsfact
