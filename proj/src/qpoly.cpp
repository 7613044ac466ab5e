#include "tdsfact/qpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tdsfact/errors.hpp"
#include "tdsfact/format.hpp"

namespace tdsfact {

QuasiPolynomial QuasiPolynomial::make(std::vector<QTerm> in) {
  std::stable_sort(in.begin(), in.end(),
                   [](const QTerm& a, const QTerm& b) { return a.delay < b.delay; });
  std::vector<QTerm> out;
  for (QTerm& t : in) {
    t.coeffs = poly::trim(std::move(t.coeffs));
    if (!out.empty() && out.back().delay == t.delay) {
      out.back().coeffs = poly::add(out.back().coeffs, t.coeffs);
    } else {
      out.push_back(std::move(t));
    }
  }
  std::vector<QTerm> nonzero;
  for (QTerm& t : out)
    if (!poly::is_zero(t.coeffs)) nonzero.push_back(std::move(t));
  if (nonzero.empty()) throw ParseError("quasi-polynomial is identically zero");
  QuasiPolynomial q;
  q.terms = std::move(nonzero);
  return q;
}

QuasiPolynomial QuasiPolynomial::from_poly(Poly p) {
  return make({QTerm{std::move(p), RationalDelay{}}});
}

int QuasiPolynomial::max_degree() const {
  int d = -1;
  for (const QTerm& t : terms) d = std::max(d, poly::degree(t.coeffs));
  return d;
}

bool QuasiPolynomial::is_standard() const {
  return poly::degree(terms.front().coeffs) == max_degree();
}

bool QuasiPolynomial::operator==(const QuasiPolynomial& o) const {
  if (terms.size() != o.terms.size()) return false;
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (terms[i].delay != o.terms[i].delay || terms[i].coeffs != o.terms[i].coeffs)
      return false;
  return true;
}

KindTag classify(const QuasiPolynomial& q) {
  const int d1 = poly::degree(q.terms.front().coeffs);
  for (std::size_t i = 1; i < q.terms.size(); ++i)
    if (poly::degree(q.terms[i].coeffs) == d1) return KindTag::Neutral;
  return KindTag::Retarded;
}

Complex evaluate(const QuasiPolynomial& q, Complex s) {
  Complex acc = 0.0;
  for (const QTerm& t : q.terms)
    acc += poly::eval(t.coeffs, s) * std::exp(-t.delay.value() * s);
  return acc;
}

double evaluate_scale(const QuasiPolynomial& q, Complex s) {
  double acc = 0.0;
  for (const QTerm& t : q.terms)
    acc += poly::eval_scale(t.coeffs, s) * std::exp(-t.delay.value() * s.real());
  return acc;
}

Complex evaluate_derivative(const QuasiPolynomial& q, Complex s) {
  Complex acc = 0.0;
  for (const QTerm& t : q.terms) {
    const Complex v = poly::eval(poly::derivative(t.coeffs), s) -
                      t.delay.value() * poly::eval(t.coeffs, s);
    acc += v * std::exp(-t.delay.value() * s);
  }
  return acc;
}

QuasiPolynomial derivative(const QuasiPolynomial& q) {
  std::vector<QTerm> terms;
  for (const QTerm& t : q.terms) {
    Poly d = poly::sub(poly::derivative(t.coeffs), poly::scale(t.coeffs, t.delay.value()));
    terms.push_back(QTerm{std::move(d), t.delay});
  }
  return QuasiPolynomial::make(std::move(terms));
}

QuasiPolynomial conjugate(const QuasiPolynomial& q) {
  const RationalDelay hv = q.hv();
  std::vector<QTerm> terms;
  for (const QTerm& t : q.terms) {
    Poly c = poly::scale(poly::negate_argument(t.coeffs), -1.0);
    terms.push_back(QTerm{std::move(c), hv - t.delay});
  }
  return QuasiPolynomial::make(std::move(terms));
}

std::pair<RationalDelay, QuasiPolynomial> extract_common_delay(const QuasiPolynomial& q) {
  const RationalDelay h1 = q.h1();
  return {h1, shift_delays_down(q, h1)};
}

QuasiPolynomial shift_delays_down(const QuasiPolynomial& q, const RationalDelay& h) {
  std::vector<QTerm> terms;
  for (const QTerm& t : q.terms) terms.push_back(QTerm{t.coeffs, t.delay - h});
  return QuasiPolynomial::make(std::move(terms));
}

AsymptoticPolynomial asymptotic_polynomial(const QuasiPolynomial& q) {
  std::vector<RationalDelay> delays;
  for (const QTerm& t : q.terms) delays.push_back(t.delay);
  const std::int64_t N = lcd(delays.data(), delays.size());

  const int d1 = poly::degree(q.terms.front().coeffs);
  const double lead1 = q.terms.front().coeffs.front();
  const std::int64_t n1 = q.terms.front().delay.num * (N / q.terms.front().delay.den);

  AsymptoticPolynomial out;
  out.base = N;
  for (const QTerm& t : q.terms) {
    if (poly::degree(t.coeffs) != d1) continue;
    const std::int64_t ni = t.delay.num * (N / t.delay.den);
    out.exponents.push_back(ni - n1);
    out.coefficients.push_back(t.coeffs.front() / lead1);
  }
  return out;
}

Poly AsymptoticPolynomial::dense() const {
  const std::int64_t top = exponents.empty() ? 0 : exponents.back();
  Poly p(static_cast<std::size_t>(top) + 1, 0.0);
  for (std::size_t i = 0; i < exponents.size(); ++i)
    p[static_cast<std::size_t>(top - exponents[i])] = coefficients[i];
  return poly::trim(p);
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> tokens(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

} // namespace

QuasiPolynomial parse_qpoly(const std::string& text) {
  std::vector<QTerm> terms;
  for (const std::string& piece : split(text, ';')) {
    const auto at = piece.find('@');
    if (at == std::string::npos)
      throw ParseError("term is missing '@ delay': '" + piece + "'");
    if (piece.find('@', at + 1) != std::string::npos)
      throw ParseError("term has multiple '@': '" + piece + "'");
    const auto coeff_toks = tokens(piece.substr(0, at));
    if (coeff_toks.empty())
      throw ParseError("term has no coefficients: '" + piece + "'");
    Poly coeffs;
    for (const std::string& tok : coeff_toks) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("bad coefficient '" + tok + "'");
      }
      if (used != tok.size()) throw ParseError("bad coefficient '" + tok + "'");
      coeffs.push_back(v);
    }
    terms.push_back(QTerm{std::move(coeffs), RationalDelay::parse(piece.substr(at + 1))});
  }
  return QuasiPolynomial::make(std::move(terms));
}

std::string serialize_qpoly(const QuasiPolynomial& q) {
  std::string out;
  for (std::size_t i = 0; i < q.terms.size(); ++i) {
    if (i) out += " ; ";
    for (std::size_t j = 0; j < q.terms[i].coeffs.size(); ++j) {
      if (j) out += " ";
      out += format::full(q.terms[i].coeffs[j]);
    }
    out += " @ " + q.terms[i].delay.str();
  }
  return out;
}

std::string to_string(const QuasiPolynomial& q, int digits) {
  std::string out;
  for (std::size_t i = 0; i < q.terms.size(); ++i) {
    const QTerm& t = q.terms[i];
    std::string p = format::poly_text(t.coeffs, digits);
    if (t.delay.is_zero()) {
      if (i && !p.empty() && p[0] != '-') out += "+";
      out += p;
    } else {
      const bool wrap = t.coeffs.size() > 1;
      if (i && (!wrap && p[0] != '-')) out += "+";
      if (i && wrap) out += "+";
      out += wrap ? "(" + p + ")" : p;
      out += "e^{-" + format::sig(t.delay.value(), digits) + "s}";
    }
  }
  return out;
}

} // namespace tdsfact
