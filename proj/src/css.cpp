#include "hhq/css.hpp"

#include <cmath>
#include <sstream>

#include "hhq/numio.hpp"

namespace hhq::css {

namespace {

void check_same_modes(const css_state& a, const css_state& b, const char* who) {
  if (a.n_modes != b.n_modes)
    throw precondition_error(std::string(who) + ": mode count mismatch");
}

void check_selection(const css_state& s, const mode_selection& sel,
                     std::size_t n_values, const char* who) {
  if (sel.modes.size() != n_values)
    throw precondition_error(std::string(who) + ": selection/value length mismatch");
  for (std::size_t m : sel.modes)
    if (m >= s.n_modes) throw precondition_error(std::string(who) + ": mode index out of range");
  for (std::size_t i = 0; i < sel.modes.size(); ++i)
    for (std::size_t j = i + 1; j < sel.modes.size(); ++j)
      if (sel.modes[i] == sel.modes[j])
        throw precondition_error(std::string(who) + ": repeated mode index");
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void validate(const css_state& s) {
  if (s.n_modes < 1) throw precondition_error("css_state: n_modes must be >= 1");
  for (const term& t : s.terms) {
    if (t.amps.size() != s.n_modes)
      throw precondition_error("css_state: term amplitude count mismatch");
    if (!finite(t.coeff)) throw precondition_error("css_state: non-finite coefficient");
    for (cplx a : t.amps)
      if (!finite(a)) throw precondition_error("css_state: non-finite amplitude");
  }
}

cplx overlap_exponent(cplx beta, cplx gamma) {
  const cplx d = gamma - beta;
  const double re = -0.5 * (d.real() * d.real() + d.imag() * d.imag());
  const double im = beta.real() * gamma.imag() - beta.imag() * gamma.real();
  return {re, im};
}

cplx coherent_overlap(cplx beta, cplx gamma) {
  const cplx e = overlap_exponent(beta, gamma);
  if (e.real() < underflow_exponent) return {0.0, 0.0};
  return std::exp(e.real()) * std::polar(1.0, e.imag());
}

double displacement_phase(cplx chi, cplx beta) {
  // Im(chi * conj(beta))
  return chi.imag() * beta.real() - chi.real() * beta.imag();
}

cplx inner(const css_state& a, const css_state& b) {
  check_same_modes(a, b, "inner");
  validate(a);
  validate(b);
  cplx total = 0.0;
  for (const term& ta : a.terms)
    for (const term& tb : b.terms) {
      const cplx v = std::conj(ta.coeff) * tb.coeff;
      // accumulate the joint exponent first: per-mode factors may individually
      // underflow while the product is representable (Re <= 0, no overflow)
      cplx e = 0.0;
      for (std::size_t m = 0; m < a.n_modes; ++m)
        e += overlap_exponent(ta.amps[m], tb.amps[m]);
      if (e.real() < underflow_exponent) continue;
      total += v * std::exp(e.real()) * std::polar(1.0, e.imag());
    }
  return total;
}

double norm(const css_state& s) {
  const cplx n2 = inner(s, s);
  double coeff_scale = 0.0;
  for (const term& t : s.terms) coeff_scale += std::norm(t.coeff);
  if (coeff_scale <= 0.0) coeff_scale = 1.0;
  if (std::abs(n2.imag()) > 1e-10 * std::max(std::abs(n2.real()), coeff_scale))
    throw guard_error("norm: <s|s> has a non-real part beyond tolerance");
  if (n2.real() < 0.0) {
    if (n2.real() > -1e-12 * coeff_scale) return 0.0;  // cancellation noise
    throw guard_error("norm: <s|s> came out negative");
  }
  return std::sqrt(n2.real());
}

css_state scale(const css_state& s, cplx factor) {
  validate(s);
  css_state out = s;
  for (term& t : out.terms) t.coeff *= factor;
  return out;
}

css_state add(const css_state& a, const css_state& b) {
  check_same_modes(a, b, "add");
  validate(a);
  validate(b);
  css_state out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

css_state displace(const css_state& s, std::size_t mode, cplx chi) {
  validate(s);
  if (mode >= s.n_modes) throw precondition_error("displace: mode index out of range");
  css_state out = s;
  for (term& t : out.terms) {
    cplx& beta = t.amps[mode];
    t.coeff *= std::polar(1.0, displacement_phase(chi, beta));
    beta += chi;
  }
  return out;
}

css_state displace(const css_state& s, const mode_selection& sel,
                   const std::vector<cplx>& shifts) {
  validate(s);
  check_selection(s, sel, shifts.size(), "displace");
  css_state out = s;
  for (term& t : out.terms)
    for (std::size_t i = 0; i < sel.modes.size(); ++i) {
      cplx& beta = t.amps[sel.modes[i]];
      t.coeff *= std::polar(1.0, displacement_phase(shifts[i], beta));
      beta += shifts[i];
    }
  return out;
}

css_state project_coherent(const css_state& s, const mode_selection& sel,
                           const std::vector<cplx>& gammas) {
  validate(s);
  check_selection(s, sel, gammas.size(), "project_coherent");
  css_state out = s;
  for (term& t : out.terms)
    for (std::size_t i = 0; i < sel.modes.size(); ++i) {
      cplx& beta = t.amps[sel.modes[i]];
      t.coeff *= coherent_overlap(gammas[i], beta);
      beta = gammas[i];
    }
  return out;
}

css_state postselect(const css_state& s, const mode_selection& sel,
                     const std::vector<cplx>& outcomes) {
  validate(s);
  check_selection(s, sel, outcomes.size(), "postselect");
  if (sel.modes.size() >= s.n_modes)
    throw precondition_error(
        "postselect: selection covers all modes; use inner() for a full bra");
  std::vector<bool> dropped(s.n_modes, false);
  for (std::size_t m : sel.modes) dropped[m] = true;

  css_state out;
  out.n_modes = s.n_modes - sel.modes.size();
  out.terms.reserve(s.terms.size());
  for (const term& t : s.terms) {
    term nt;
    nt.coeff = t.coeff;
    for (std::size_t i = 0; i < sel.modes.size(); ++i)
      nt.coeff *= coherent_overlap(outcomes[i], t.amps[sel.modes[i]]);
    nt.amps.reserve(out.n_modes);
    for (std::size_t m = 0; m < s.n_modes; ++m)
      if (!dropped[m]) nt.amps.push_back(t.amps[m]);
    out.terms.push_back(std::move(nt));
  }
  return out;
}

css_state compress(const css_state& s, double tol) {
  validate(s);
  if (!(tol >= 0.0)) throw precondition_error("compress: tol must be >= 0");
  css_state out;
  out.n_modes = s.n_modes;
  for (const term& t : s.terms) {
    bool merged = false;
    for (term& u : out.terms) {
      bool same = true;
      for (std::size_t m = 0; m < s.n_modes && same; ++m)
        same = std::abs(t.amps[m].real() - u.amps[m].real()) <= tol &&
               std::abs(t.amps[m].imag() - u.amps[m].imag()) <= tol;
      if (same) {
        u.coeff += t.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) out.terms.push_back(t);
  }
  // A product coherent term has unit norm, so the drop threshold is |coeff|.
  std::vector<term> kept;
  kept.reserve(out.terms.size());
  for (term& t : out.terms)
    if (!(std::abs(t.coeff) < tol) && t.coeff != cplx{0.0, 0.0})
      kept.push_back(std::move(t));
  out.terms = std::move(kept);
  return out;
}

std::string serialize(const css_state& s) {
  validate(s);
  std::string text = "cssstate\nn_modes " + std::to_string(s.n_modes) +
                     "\nterms " + std::to_string(s.terms.size()) + "\n";
  for (const term& t : s.terms) {
    text += num::fmt(t.coeff);
    for (cplx a : t.amps) {
      text += ' ';
      text += num::fmt(a);
    }
    text += '\n';
  }
  return text;
}

css_state deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  if (!(in >> tok) || tok != "cssstate")
    throw precondition_error("deserialize: missing cssstate header");
  std::size_t n_modes = 0, n_terms = 0;
  if (!(in >> tok) || tok != "n_modes" || !(in >> n_modes))
    throw precondition_error("deserialize: bad n_modes line");
  if (!(in >> tok) || tok != "terms" || !(in >> n_terms))
    throw precondition_error("deserialize: bad terms line");
  css_state s;
  s.n_modes = n_modes;
  s.terms.reserve(n_terms);
  for (std::size_t i = 0; i < n_terms; ++i) {
    term t;
    if (!(in >> tok)) throw precondition_error("deserialize: truncated term list");
    t.coeff = num::parse_complex(tok);
    t.amps.reserve(n_modes);
    for (std::size_t m = 0; m < n_modes; ++m) {
      if (!(in >> tok)) throw precondition_error("deserialize: truncated term list");
      t.amps.push_back(num::parse_complex(tok));
    }
    s.terms.push_back(std::move(t));
  }
  if (in >> tok) throw precondition_error("deserialize: trailing tokens");
  validate(s);
  return s;
}

css_state product_state(cplx coeff, std::vector<cplx> amps) {
  css_state s;
  s.n_modes = amps.size();
  s.terms.push_back({coeff, std::move(amps)});
  return s;
}

css_state vacuum(std::size_t n_modes) {
  return product_state(1.0, std::vector<cplx>(n_modes, cplx{0.0, 0.0}));
}

}  // namespace hhq::css
