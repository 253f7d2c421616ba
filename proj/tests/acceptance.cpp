#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "pinkforge/modforms.hpp"
#include "pinkforge/pinklie.hpp"
#include "pinkforge/pseudorep.hpp"
#include "pinkforge/structure.hpp"
#include "structure_cases.hpp"

using namespace pinkforge;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Clock {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Outcome density_table() {
  Clock clock;
  const std::uint64_t x = 2'000'000;
  FpSeries delta = delta_expansion(2, x);
  struct Target {
    unsigned n;
    double expected;
  };
  Outcome out;
  std::ostringstream os;
  for (Target t : {Target{3, 0.25}, Target{9, 0.125}, Target{11, 0.125}}) {
    FpSeries f = series_pow(delta, t.n);
    DensityReport r = density_sweep(f, x, 2);
    double early = density_sweep(f, 100'000, 2).estimate, mid = density_sweep(f, 1'000'000, 2).estimate;
    out.pass = out.pass && std::abs(r.estimate - t.expected) <= 0.02;
    os << "Delta^" << t.n << " " << early << " " << mid << " " << r.estimate << " (" << t.expected << "); ";
  }
  double elapsed = clock.seconds();
  out.pass = out.pass && elapsed < 120.0;
  os << "X = 1e5, 1e6, 2e6";
  out.detail = os.str();
  return out;
}

Outcome delta_mod_two() {
  Clock clock;
  const std::size_t x = 100'000;
  FpSeries d = delta_expansion(2, x);
  std::vector<std::size_t> expected;
  for (std::size_t n = 1; n * n <= x; n += 2) expected.push_back(n * n);
  bool equal = d.support() == expected;
  double elapsed = clock.seconds();
  return {equal && elapsed < 1.0, "support size " + std::to_string(d.support_size()) + ", odd squares " +
                                      std::to_string(expected.size())};
}

Outcome formula_battery_check() {
  Clock clock;
  auto a3 = fixture::ring_of(3, 3);
  std::vector<std::pair<std::string, GmaPtr>> algebras{
      {"M2(F3[X]/X^3)", GmaStructure::matrix_algebra(a3)},
      {"M2(F5[e])", GmaStructure::matrix_algebra(fixture::ring_of(5, 2))},
      {"[[A,A/X^2],[A/X^2,A]] with m(b,c) = Xbc over F3[X]/X^3", GmaStructure::twisted(a3, a3->variable())}};
  Outcome out;
  std::size_t formulas = 0, violations = 0;
  for (const auto& [name, alg] : algebras)
    for (const auto& f : formula_battery(*alg, 1000, kDefaultSeed)) {
      ++formulas;
      violations += f.violations;
      out.pass = out.pass && f.trials >= 1000;
    }
  out.pass = out.pass && violations == 0 && clock.seconds() < 10.0;
  out.detail = std::to_string(formulas) + " formula runs, " + std::to_string(violations) + " violations";
  return out;
}

Outcome lower_central_series() {
  Clock clock;
  Rng rng(kDefaultSeed);
  std::size_t sets = 0, mismatches = 0;
  for (const auto& alg : fixture::small_algebras())
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<GmaElem> gens;
      for (int i = 0; i <= trial % 3; ++i) gens.push_back(fixture::random_sr1(*alg, rng));
      auto gamma = generate_group(alg, gens);
      auto groups = group_series(gamma, 4);
      auto lies = descending_series(*alg, lie_of_subgroup(gamma).span, 4);
      for (std::size_t n = 1; n < 4; ++n)
        if (!fixture::series_agree(*alg, groups[n], lies[n])) ++mismatches;
      ++sets;
    }
  return {sets >= 20 && mismatches == 0 && clock.seconds() < 60.0,
          std::to_string(sets) + " generator sets, " + std::to_string(mismatches) + " mismatches for n = 2..4"};
}

Outcome ideal_matrices() {
  auto a = fixture::ring_of(3, 4);
  GmaPtr r = GmaStructure::matrix_algebra(a);
  Subspace l = congruence_lie(*r, a->radical());
  FiniteMatrixGroup h = pink_converse(r, l);
  bool lie_ok = lie_of_subgroup(h).span == l;
  auto series = descending_series(*r, l, 4);
  bool pattern = true;
  for (unsigned n = 1; n <= 4; ++n) pattern = pattern && series[n - 1] == congruence_lie(*r, a->radical_power(n));
  return {h.order() == 19683 && lie_ok && pattern,
          "|H| = " + std::to_string(h.order()) + ", L(H) = L " + (lie_ok ? "yes" : "no") + ", L_n = [[I^n,I^n],[I^n,I^n]]^0 " +
              (pattern ? "yes" : "no")};
}

Subspace odd_diagonal_space(const GmaStructure& r, unsigned k) {
  const Ring& a = r.ring();
  Subspace out(r.p(), r.dim());
  RingElem x = a.variable();
  for (unsigned j = 1; j < k; ++j) {
    RingElem xj = a.pow(x, j);
    if (j % 2 == 1) out.insert(r.diag(xj, a.neg(xj)).v);
    out.insert(r.make(a.zero(), xj.coords, (j % 2 ? a.neg(xj) : xj).coords, a.zero()).v);
  }
  return out;
}

Outcome section8() {
  Clock clock;
  Outcome out;
  std::ostringstream os;
  for (unsigned k = 2; k <= 6; ++k) {
    Section8 s = example_section8(3, k);
    bool lie_ok = s.lie == odd_diagonal_space(*s.algebra, k) && s.lie == s.expected_lie;
    out.pass = out.pass && lie_ok;
    if (k >= 4) {
      bool no_congruence = !is_congruence_subgroup(*s.algebra, s.lie).congruence;
      for (unsigned j = 1; j < k; ++j)
        no_congruence = no_congruence && !s.lie.includes(congruence_lie(*s.algebra, s.ring->radical_power(j)));
      out.pass = out.pass && no_congruence;
    }
    if (k == 6) {
      auto ess = essential_data(s.group, descending_series(*s.algebra, s.lie, 2)[1]);
      auto witness = ideal_witness(*s.ring, ess.a_ess);
      out.pass = out.pass && witness.has_value();
      if (witness)
        os << "A_ess witness x = " << s.ring->to_string(witness->first) << ", a = " << s.ring->to_string(witness->second)
           << "; ";
    }
  }
  out.pass = out.pass && clock.seconds() < 120.0;
  os << "k = 2..6 checked";
  out.detail = os.str();
  return out;
}

Outcome key_measure() {
  Outcome out;
  std::ostringstream os;
  for (unsigned k : {4u, 6u}) {
    Section8 s = example_section8(3, k);
    auto ess = essential_data(s.group, descending_series(*s.algebra, s.lie, 2)[1]);
    KeyMeasure km = key_measure_check(s.group, ess, 2);
    out.pass = out.pass && km.pass && !km.vacuous;
    os << "k = " << k << ": min " << km.min_count << "/" << km.group_order << " over " << km.forms_qualifying
       << " forms, bound " << km.bound << "; ";
  }
  out.detail = os.str();
  return out;
}

std::vector<RingElem> traces(const FiniteMatrixGroup& g) {
  std::vector<RingElem> out;
  for (std::size_t i = 0; i < g.order(); ++i) out.push_back(g.algebra().trace(g.element(i)));
  return out;
}

Outcome structure_round_trips() {
  Outcome out;
  std::map<StructureTheorem, int> ok;
  for (const auto& c : fixture::structure_cases()) {
    fixture::Instance inst = c.build();
    ConverseResult res =
        build_group_from_lie(c.kind, inst.algebra, inst.lie, standard_residual_generators(c.kind, *inst.algebra, c.lambda));
    bool good = res.ok() && res.recovered && *res.recovered == inst.lie && res.gamma &&
                lie_of_subgroup(*res.gamma).span == inst.lie && is_admissible(inst.algebra->ring(), traces(*res.group));
    if (good) ++ok[c.kind];
    else out.detail += std::string(c.name) + " failed (" + res.first_failure() + "); ";
  }
  for (auto kind : {StructureTheorem::OrderTwo, StructureTheorem::Cyclic, StructureTheorem::Klein,
                    StructureTheorem::Dihedral, StructureTheorem::LargeImage}) {
    out.pass = out.pass && ok[kind] >= 5;
    out.detail += std::string(to_string(kind)) + " " + std::to_string(ok[kind]) + " ";
  }
  return out;
}

Outcome hecke() {
  Rng rng(kDefaultSeed);
  auto primes = primes_up_to(40);
  std::size_t failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    unsigned p = std::vector<unsigned>{2, 3, 5, 7}[rng() % 4];
    unsigned l = primes[rng() % primes.size()], m = primes[rng() % primes.size()];
    unsigned k = unsigned(rng() % 24);
    FpSeries f(p, 1500);
    for (std::size_t n = 0; n <= 1500; ++n) f.set(n, unsigned(rng() % p));
    if (hecke_T(l, k, f).coeff(1) != f.coeff(l)) ++failures;
    if (hecke_T(l, k, hecke_T(m, k, f)) != hecke_T(m, k, hecke_T(l, k, f))) ++failures;
  }
  FpSeries cube = series_pow(delta_expansion(2, 1 << 16), 3);
  HeckeSpan span = hecke_span(cube, {3, 5}, 0, 1000, 64);
  bool commute = span.matrices[0] * span.matrices[1] == span.matrices[1] * span.matrices[0];
  auto n3 = nilpotency_check(span, 3, 0), n5 = nilpotency_check(span, 5, 0);
  std::ostringstream os;
  os << failures << " failures in 200 cases; Delta^3 span dim " << span.basis.size() << ", T3 T5 commute "
     << (commute ? "yes" : "no") << ", nilpotency " << (n3 ? std::to_string(*n3) : "none") << " "
     << (n5 ? std::to_string(*n5) : "none");
  return {failures == 0 && commute && n3 && n5, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"density of Delta^n mod 2", density_table},
      {"Delta mod 2 = sum over odd n of q^(n^2)", delta_mod_two},
      {"Theta formula battery", formula_battery_check},
      {"Gamma_n = Theta^-1(L_n)", lower_central_series},
      {"Theta^-1([[I,I],[I,I]]^0) over F3[X]/X^4", ideal_matrices},
      {"odd diagonal and b(X) = c(-X) example", section8},
      {"mu(l o tr != 0) >= (p-1)/(p n)", key_measure},
      {"structure theorem round trips", structure_round_trips},
      {"Hecke consistency", hecke},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
