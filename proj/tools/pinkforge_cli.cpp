#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pinkforge/errors.hpp"
#include "pinkforge/modforms.hpp"
#include "pinkforge/pinklie.hpp"
#include "pinkforge/pseudorep.hpp"
#include "pinkforge/structure.hpp"
#include "pinkforge/version.hpp"

using json = nlohmann::ordered_json;
using namespace pinkforge;

namespace {

using RingPtr = std::shared_ptr<const Ring>;

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

json ring_json(const Ring& ring) { return json::parse(ring.descriptor_json()); }

json coords_json(std::span<const Coeff> v) {
  json out = json::array();
  for (Coeff c : v) out.push_back(int(c));
  return out;
}

json basis_json(const Subspace& s) {
  json out = json::array();
  for (const auto& v : s.basis()) out.push_back(coords_json(v));
  return out;
}

json ring_basis_json(const Ring& ring, const Subspace& s) {
  json out = json::array();
  for (const auto& v : s.basis()) out.push_back(ring.to_string(RingElem{v}));
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(coords_json(m.row(i)));
  return out;
}

// Assertions collected by a subcommand, mirrored to stderr as a table.
class Report {
 public:
  Report(std::string command, json config) {
    doc_["tool"] = "pinkforge";
    doc_["version"] = kVersion;
    doc_["command"] = std::move(command);
    doc_["config"] = std::move(config);
  }

  void check(const std::string& name, const std::string& anchor, bool pass, json detail = json::object()) {
    json entry;
    entry["check"] = name;
    entry["anchor"] = anchor;
    entry["pass"] = pass;
    if (!detail.empty()) entry["detail"] = std::move(detail);
    checks_.push_back(std::move(entry));
    all_pass_ = all_pass_ && pass;
    std::fprintf(stderr, "%-4s  %-48s  %s\n", pass ? "ok" : "FAIL", name.c_str(), anchor.c_str());
  }

  json& operator[](const char* key) { return doc_[key]; }

  int emit() {
    doc_["checks"] = checks_;
    doc_["pass"] = all_pass_;
    std::cout << doc_.dump(2) << "\n";
    return all_pass_ ? kExitPass : kExitFailure;
  }

 private:
  json doc_;
  json checks_ = json::array();
  bool all_pass_ = true;
};

// Polynomial text in X with an optional residue generator a, e.g. "1+2*X-a*X^2".
RingElem parse_ring_element(const Ring& ring, const std::string& text) {
  const PrimeField& f = ring.field();
  RingElem out = ring.zero();
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) { raise(Errc::InvalidArgument, "cannot parse '" + text + "': " + why); };
  auto read_exponent = [&]() -> unsigned {
    if (pos >= text.size() || text[pos] != '^') return 1;
    ++pos;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("missing exponent");
    return unsigned(std::stoul(text.substr(start, pos - start)));
  };
  if (text.empty()) fail("empty");
  while (pos < text.size()) {
    bool negative = false;
    while (pos < text.size() && (text[pos] == '+' || text[pos] == '-' || text[pos] == ' ')) {
      if (text[pos] == '-') negative = !negative;
      ++pos;
    }
    long long coeff = 1;
    unsigned x_power = 0, a_power = 0;
    bool any = false;
    while (pos < text.size() && text[pos] != '+' && text[pos] != '-') {
      char c = text[pos];
      if (c == '*' || c == ' ') {
        ++pos;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        coeff *= std::stoll(text.substr(start, pos - start)) % f.p();
        any = true;
      } else if (c == 'X' || c == 'x') {
        ++pos;
        x_power += read_exponent();
        any = true;
      } else if (c == 'a') {
        ++pos;
        a_power += read_exponent();
        any = true;
      } else {
        fail(std::string("unexpected '") + c + "'");
      }
    }
    if (!any) fail("empty term");
    const LocalFactor& factor = ring.factors()[0];
    if (x_power >= factor.truncation) continue;
    if (factor.residue_degree == 1 && a_power > 0) fail("no residue generator over a prime field");
    unsigned exps[1] = {x_power};
    RingElem term = ring.mul(ring.monomial(0, exps), ring.pow(ring.constant_basis(0, 1 % factor.residue_degree), a_power));
    term = ring.scale(f.from_int(negative ? -coeff : coeff), term);
    out = ring.add(out, term);
  }
  return out;
}

GmaElem parse_generator(const GmaStructure& r, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
  if (parts.size() != 4) raise(Errc::InvalidArgument, "generator needs four entries a,b,c,d: " + text);
  const Ring& ring = r.ring();
  return r.make(parse_ring_element(ring, parts[0]), parse_ring_element(ring, parts[1]).coords,
                parse_ring_element(ring, parts[2]).coords, parse_ring_element(ring, parts[3]));
}

// "delta" or "delta^n".
std::uint64_t parse_delta_power(const std::string& form) {
  if (form == "delta") return 1;
  if (form.rfind("delta^", 0) == 0 && form.size() > 6 &&
      form.find_first_not_of("0123456789", 6) == std::string::npos) {
    std::uint64_t n = std::stoull(form.substr(6));
    if (n > 0) return n;
  }
  raise(Errc::InvalidArgument, "unsupported form '" + form + "', expected delta^n");
}

FpSeries delta_power(unsigned p, std::uint64_t n, std::size_t deg) {
  return series_pow(delta_expansion(p, deg), n);
}

// Verification driver

struct VerifyConfig {
  unsigned p = 3;
  unsigned max_dim = 6;
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 1000;
  std::string fault;
};

std::vector<std::pair<std::string, GmaPtr>> battery_family(unsigned p, unsigned max_dim) {
  std::vector<std::pair<std::string, GmaPtr>> out;
  for (unsigned k = 2; k <= std::min(max_dim, 4u); ++k) {
    RingPtr a = std::make_shared<const Ring>(make_truncated_poly_ring(p, k));
    out.push_back({"M2(F" + std::to_string(p) + "[X]/X^" + std::to_string(k) + ")", GmaStructure::matrix_algebra(a)});
  }
  RingPtr a3 = std::make_shared<const Ring>(make_truncated_poly_ring(p, 3));
  out.push_back({"[[A,A/X^2],[A/X^2,A]], m(b,c) = Xbc, A = F" + std::to_string(p) + "[X]/X^3",
                 GmaStructure::twisted(a3, a3->variable())});
  if (max_dim >= 3) {
    RingPtr xy = std::make_shared<const Ring>(make_truncated_multivariate_ring(p, 2, 2));
    out.push_back({"M2(F" + std::to_string(p) + "[X,Y]/(X,Y)^2)", GmaStructure::matrix_algebra(xy)});
  }
  return out;
}

struct RoundTripCase {
  std::string name;
  StructureTheorem kind;
  GmaPtr algebra;
  Subspace lie;
};

std::vector<RoundTripCase> round_trip_family(unsigned p) {
  RingPtr a = std::make_shared<const Ring>(make_truncated_poly_ring(p, 2));
  const std::string ring_name = "F" + std::to_string(p) + "[X]/X^2";
  const Subspace m = a->radical();
  std::vector<RoundTripCase> out;
  GmaPtr m2 = GmaStructure::matrix_algebra(a);
  out.push_back({"large image over " + ring_name, StructureTheorem::LargeImage, m2, lie_from_blocks(*m2, m, m, m)});
  GmaPtr diag = GmaStructure::diagonal(a);
  if (p == 3) {
    out.push_back({"order two over " + ring_name, StructureTheorem::OrderTwo, diag,
                   lie_from_decomposition(*diag, m, Subspace(p, diag->dim()))});
    Subspace nabla(p, m2->dim());
    RingElem x = a->variable();
    nabla.insert(m2->make(a->zero(), x.coords, x.coords, a->zero()).v);
    out.push_back({"klein four over " + ring_name, StructureTheorem::Klein, m2, lie_from_decomposition(*m2, m, nabla)});
  } else {
    Subspace none(p, 0);
    out.push_back({"cyclic over " + ring_name, StructureTheorem::Cyclic, diag, lie_from_blocks(*diag, m, none, none)});
    out.push_back({"dihedral over " + ring_name, StructureTheorem::Dihedral, m2,
                   lie_from_blocks(*m2, Subspace(p, a->dim()), m, m)});
  }
  return out;
}

int cmd_verify(const VerifyConfig& cfg) {
  json config;
  config["p"] = cfg.p;
  config["max_dim"] = cfg.max_dim;
  config["seed"] = cfg.seed;
  config["trials"] = cfg.trials;
  config["inject_fault"] = cfg.fault.empty() ? json(nullptr) : json(cfg.fault);
  if (cfg.p == 2 || cfg.p > 7) raise(Errc::InvalidArgument, "verify supports p = 3, 5, 7");
  if (cfg.max_dim < 2) raise(Errc::InvalidArgument, "max-dim must be at least 2");
  if (cfg.trials == 0) raise(Errc::InvalidArgument, "trials must be positive");
  Report report("verify", config);

  ThetaFn map = theta;
  if (cfg.fault == "theta") map = [](const GmaStructure& r, const GmaElem& x) { return r.scale(Coeff(2), theta(r, x)); };
  else if (!cfg.fault.empty()) raise(Errc::InvalidArgument, "unknown fault '" + cfg.fault + "'");

  std::uint64_t seed = cfg.seed;
  for (const auto& [name, alg] : battery_family(cfg.p, cfg.max_dim))
    for (const auto& f : formula_battery(*alg, cfg.trials, seed++, map))
      report.check("formula on " + name, f.formula, f.violations == 0,
                   {{"trials", f.trials}, {"violations", f.violations}});

  Rng rng(cfg.seed);
  std::size_t sets = 0, mismatches = 0;
  for (unsigned k = 2; k <= std::min(cfg.max_dim, 3u); ++k) {
    RingPtr a = std::make_shared<const Ring>(make_truncated_poly_ring(cfg.p, k));
    GmaPtr r = GmaStructure::matrix_algebra(a);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<GmaElem> gens;
      for (int i = 0; i <= trial; ++i) gens.push_back(theta_inv(*r, random_traceless_radical(*r, rng)));
      FiniteMatrixGroup gamma = generate_group(r, gens);
      auto groups = group_series(gamma, 4);
      auto lies = descending_series(*r, lie_of_subgroup(gamma).span, 4);
      for (std::size_t n = 1; n < 4; ++n) {
        bool same = groups[n].order() == std::size_t(std::llround(std::pow(double(cfg.p), double(lies[n].dim()))));
        for (const Vec& m : lies[n].elements()) same = same && groups[n].contains(theta_inv(*r, GmaElem{m}));
        mismatches += !same;
      }
      ++sets;
    }
  }
  report.check("lower central series against Lie series", "Gamma_n = Theta^-1(L_n)", mismatches == 0,
               {{"generator_sets", sets}, {"mismatches", mismatches}});

  for (const auto& c : round_trip_family(cfg.p)) {
    ConverseResult res = build_group_from_lie(c.kind, c.algebra, c.lie, standard_residual_generators(c.kind, *c.algebra));
    report.check("round trip, " + c.name, "L(Theta^-1(L) s(G-bar) n SR^1) = L", res.ok(),
                 {{"theorem", std::string(to_string(c.kind))}, {"failure", res.first_failure()}});
  }

  for (unsigned k : {4u, 6u}) {
    if (k > cfg.max_dim) continue;
    Section8 s = example_section8(cfg.p, k);
    auto ess = essential_data(s.group, descending_series(*s.algebra, s.lie, 2)[1]);
    KeyMeasure km = key_measure_check(s.group, ess, 2);
    report.check("key measure, example over F" + std::to_string(cfg.p) + "[X]/X^" + std::to_string(k),
                 "mu(l o tr != 0) >= (p-1)/(p n)", km.pass,
                 {{"min_count", km.min_count}, {"group_order", km.group_order}, {"forms", km.forms_qualifying}});
  }
  return report.emit();
}

// Pink subcommands

json decomposition_json(const GmaStructure& r, const Decomposition& d) {
  const Ring& ring = r.ring();
  json out;
  out["decomposable"] = d.decomposable;
  out["strongly_decomposable"] = d.strongly_decomposable;
  out["I1"] = ring_basis_json(ring, d.i1);
  out["B1"] = basis_json(d.b1);
  out["C1"] = basis_json(d.c1);
  return out;
}

int cmd_pink_analyze(std::uint64_t q, unsigned k, const std::vector<std::string>& gen_text) {
  if (gen_text.empty()) raise(Errc::InvalidArgument, "at least one --gen is required");
  RingPtr a = std::make_shared<const Ring>(make_truncated_poly_ring(q, k));
  GmaPtr r = GmaStructure::matrix_algebra(a);
  std::vector<GmaElem> gens;
  for (const auto& t : gen_text) {
    GmaElem g = parse_generator(*r, t);
    if (!a->is_unit(r->det(g))) raise(Errc::InvalidArgument, "generator is not invertible: " + t);
    gens.push_back(g);
  }
  json config;
  config["q"] = q;
  config["k"] = k;
  config["gen"] = gen_text;
  Report report("pink analyze", config);
  report["ring"] = ring_json(*a);

  FiniteMatrixGroup g = generate_group(r, gens);
  FiniteMatrixGroup gamma = subgroup_where(g, [&](const GmaElem& x) { return r->in_SR1(x); });
  const std::size_t residual_order = g.order() / gamma.order();
  LieSubspace l = lie_of_subgroup(gamma);
  auto lies = descending_series(*r, l.span, 4);
  auto groups = group_series(gamma, 4);
  json dims = json::array();
  for (const auto& ln : lies) dims.push_back(ln.dim());
  report["group_order"] = g.order();
  report["gamma_order"] = gamma.order();
  report["residual_order"] = residual_order;
  report["lie_dim"] = l.dim();
  report["lie_series_dims"] = dims;
  report["decomposition"] = decomposition_json(*r, decompose(*r, l.span));
  Subspace p_ring = pseudo_ring(*r, l.span);
  report["pseudo_ring"] = ring_basis_json(*a, p_ring);
  CongruenceResult cong = is_congruence_subgroup(*r, l.span);
  report["congruence"] = cong.congruence;
  report["congruence_ideal"] = ring_basis_json(*a, cong.ideal);

  auto stable = check_pink_stable(*r, l.span);
  report.check("L(Gamma) is Pink-stable", "[L,L] in L, tr(L L) L in L", !stable.has_value(),
               stable ? json{{"condition", stable->condition}} : json::object());
  std::size_t mismatches = 0;
  for (std::size_t n = 1; n < 4; ++n) {
    bool same = groups[n].order() == std::size_t(std::llround(std::pow(double(a->p()), double(lies[n].dim()))));
    for (const Vec& m : lies[n].elements()) same = same && groups[n].contains(theta_inv(*r, GmaElem{m}));
    mismatches += !same;
  }
  report.check("lower central series against Lie series", "Gamma_n = Theta^-1(L_n)", mismatches == 0);
  report.check("pseudo-ring from traces", "P = tr(L L)", p_ring == pseudo_ring_of_group(gamma));

  auto ess = essential_data(g, lies.size() > 1 ? lies[1] : Subspace(a->p(), r->dim()));
  report["a_ess"] = ring_basis_json(*a, ess.a_ess);
  report["weakly_odd"] = ess.weakly_odd;
  if (ess.weakly_odd) {
    KeyMeasure km = key_measure_check(g, ess, residual_order);
    report["key_measure_min"] = km.vacuous ? json(nullptr) : json(km.min_measure);
    report.check("key measure", "mu(l o tr != 0) >= (p-1)/(p n)", km.pass,
                 {{"min_count", km.min_count}, {"group_order", km.group_order}});
  } else {
    report["key_measure_min"] = nullptr;
  }
  return report.emit();
}

int cmd_example8(unsigned p, unsigned k) {
  json config;
  config["p"] = p;
  config["k"] = k;
  Report report("pink example8", config);
  Section8 s = example_section8(p, k);
  const GmaStructure& r = *s.algebra;
  report["ring"] = ring_json(*s.ring);
  report["g"] = r.to_string(s.g);
  report["h"] = r.to_string(s.h);
  report["gamma_order"] = s.gamma.order();
  report["group_order"] = s.group.order();
  report["lie_dim"] = s.lie.dim();
  report["lie_basis"] = basis_json(s.lie);
  CongruenceResult cong = is_congruence_subgroup(r, s.lie);
  report["congruence"] = cong.congruence;
  auto l2 = descending_series(r, s.lie, 2)[1];
  auto ess = essential_data(s.group, l2);
  report["a_ess"] = ring_basis_json(*s.ring, ess.a_ess);
  auto witness = ideal_witness(*s.ring, ess.a_ess);
  report["a_ess_is_ideal"] = !witness.has_value();
  if (witness)
    report["a_ess_witness"] = {{"x", s.ring->to_string(witness->first)}, {"a", s.ring->to_string(witness->second)}};
  report["decomposition"] = decomposition_json(r, decompose(r, s.lie));

  report.check("conjugation by J", "J g J^-1 = g^-1, J h J^-1 = h^-1", s.conjugation_identities);
  report.check("Lie algebra of Gamma", "odd diagonal + {b(X) = c(-X)}", s.lie == s.expected_lie);
  if (k >= 4) {
    bool none = !cong.congruence;
    for (unsigned j = 1; j < k; ++j) none = none && !s.lie.includes(congruence_lie(r, s.ring->radical_power(j)));
    report.check("no congruence subgroup", "Gamma_R((X^j)) not in Gamma", none);
  }
  if (ess.weakly_odd) {
    KeyMeasure km = key_measure_check(s.group, ess, 2);
    report["key_measure_min"] = km.vacuous ? json(nullptr) : json(km.min_measure);
    report.check("key measure", "mu(l o tr != 0) >= (p-1)/(p n)", km.pass,
                 {{"min_count", km.min_count}, {"group_order", km.group_order}});
  }
  return report.emit();
}

// Modular form subcommands

int cmd_delta_power(unsigned p, std::uint64_t n, std::size_t deg, const std::string& path) {
  json config{{"p", p}, {"n", n}, {"deg", deg}, {"out", path}};
  Report report("delta-power", config);
  FpSeries f = delta_power(p, n, deg);
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::InvalidArgument, "cannot open " + path);
  write_series(out, f);
  out.close();
  report["support_size"] = f.support_size();
  return report.emit();
}

json density_json(const DensityReport& r) {
  json out;
  out["x"] = r.x;
  out["counted"] = r.counted;
  out["total_primes"] = r.total_primes;
  out["estimate"] = r.estimate;
  json cps = json::array();
  for (const auto& c : r.checkpoints)
    cps.push_back({{"x", c.x}, {"counted", c.counted}, {"total", c.total}, {"estimate", c.estimate}});
  out["checkpoints"] = cps;
  return out;
}

int cmd_density(unsigned p, const std::string& form, std::uint64_t x, std::optional<std::uint64_t> np) {
  std::uint64_t n = parse_delta_power(form);
  const std::uint64_t level = np.value_or(p);
  json config{{"p", p}, {"form", form}, {"X", x}, {"np", level}};
  Report report("density", config);
  DensityReport r = density_sweep(delta_power(p, n, x), x, level);
  report["density"] = density_json(r);
  for (const auto& c : r.checkpoints)
    std::fprintf(stderr, "X = %-10llu  %llu / %llu = %.6f\n", static_cast<unsigned long long>(c.x),
                 static_cast<unsigned long long>(c.counted), static_cast<unsigned long long>(c.total), c.estimate);
  return report.emit();
}

int cmd_cyclotomic(unsigned p, const std::string& form, std::uint64_t m, std::uint64_t x,
                   std::optional<std::uint64_t> np) {
  std::uint64_t n = parse_delta_power(form);
  const std::uint64_t level = np.value_or(p);
  json config{{"p", p}, {"form", form}, {"M", m}, {"X", x}, {"np", level}};
  Report report("cyclotomic", config);
  CyclotomicResult r = cyclotomic_test(delta_power(p, n, x), m, x, level);
  report["cyclotomic"] = r.cyclotomic;
  report["table"] = r.table;
  report["violation"] = r.violation ? json::array({r.violation->first, r.violation->second}) : json(nullptr);
  std::fprintf(stderr, "a_l mod %u constant on classes mod %llu: %s\n", p, static_cast<unsigned long long>(m),
               r.cyclotomic ? "yes" : "no");
  return report.emit();
}

struct SpanConfig {
  unsigned p = 2;
  std::string form = "delta^3";
  std::vector<unsigned> primes;
  std::size_t deg = 0;
  std::optional<unsigned> k;
  std::size_t min_degree = 100;
  std::size_t max_dim = 64;
  std::vector<unsigned> lambda;
};

int cmd_span(const SpanConfig& cfg) {
  std::uint64_t n = parse_delta_power(cfg.form);
  const unsigned weight = cfg.k.value_or(unsigned(12 * n));
  if (!cfg.lambda.empty() && cfg.lambda.size() != 1 && cfg.lambda.size() != cfg.primes.size())
    raise(Errc::InvalidArgument, "give one lambda or one per prime");
  json config{{"p", cfg.p},          {"form", cfg.form},       {"primes", cfg.primes},   {"deg", cfg.deg},
              {"k", weight},         {"min_degree", cfg.min_degree}, {"max_dim", cfg.max_dim}, {"lambda", cfg.lambda}};
  Report report("span", config);
  HeckeSpan span = hecke_span(delta_power(cfg.p, n, cfg.deg), cfg.primes, weight, cfg.min_degree, cfg.max_dim);
  report["dim"] = span.basis.size();
  report["degree"] = span.degree;
  json mats = json::object();
  for (std::size_t i = 0; i < span.primes.size(); ++i) mats[std::to_string(span.primes[i])] = matrix_json(span.matrices[i]);
  report["matrices"] = mats;
  bool commute = true;
  for (std::size_t i = 0; i < span.matrices.size(); ++i)
    for (std::size_t j = i + 1; j < span.matrices.size(); ++j)
      commute = commute && span.matrices[i] * span.matrices[j] == span.matrices[j] * span.matrices[i];
  report.check("Hecke operators commute", "T_l T_q = T_q T_l", commute);
  for (std::size_t i = 0; i < span.primes.size(); ++i) {
    unsigned lambda = cfg.lambda.empty() ? 0 : cfg.lambda.size() == 1 ? cfg.lambda[0] : cfg.lambda[i];
    auto order = nilpotency_check(span, span.primes[i], lambda);
    report.check("T_" + std::to_string(span.primes[i]) + " - " + std::to_string(lambda) + " nilpotent",
                 "(T_l - lambda_l)^k = 0", order.has_value(), {{"order", order ? json(*order) : json(nullptr)}});
  }
  return report.emit();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pink-type Lie algebras, pseudo-representations and mod p modular forms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  VerifyConfig verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the property battery");
  verify_cmd->add_option("--p", verify.p, "Odd prime for the instance family")->capture_default_str();
  verify_cmd->add_option("--max-dim", verify.max_dim, "Largest ring dimension")->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "Seed for randomized checks")->capture_default_str();
  verify_cmd->add_option("--trials", verify.trials, "Random tuples per formula")->capture_default_str();
  verify_cmd->add_option("--inject-fault", verify.fault, "Test hook: 'theta' doubles Theta");

  auto* pink_cmd = app.add_subcommand("pink", "Lie algebra pipelines");
  pink_cmd->require_subcommand(1);
  std::uint64_t q = 3;
  unsigned k = 3;
  std::vector<std::string> gens;
  auto* analyze_cmd = pink_cmd->add_subcommand("analyze", "Analyze the group generated by matrices over F_q[X]/X^k");
  analyze_cmd->add_option("--q", q, "Residue field size")->required();
  analyze_cmd->add_option("--k", k, "Truncation degree")->required();
  analyze_cmd->add_option("--gen", gens, "Generator a,b,c,d with entries polynomial in X (and a)")->required();

  unsigned ex_p = 3, ex_k = 4;
  auto add_example8 = [&](CLI::App* parent) {
    auto* cmd = parent->add_subcommand("example8", "Odd diagonal counterexample over F_p[X]/X^k");
    cmd->add_option("--p", ex_p, "Odd prime")->required();
    cmd->add_option("--k", ex_k, "Truncation degree")->required();
    return cmd;
  };
  auto* example_pink = add_example8(pink_cmd);
  auto* example_top = add_example8(&app);

  unsigned dp_p = 2;
  std::uint64_t dp_n = 1;
  std::size_t dp_deg = 0;
  std::string dp_out;
  auto* delta_cmd = app.add_subcommand("delta-power", "Write Delta^n mod p to a file");
  delta_cmd->add_option("--p", dp_p)->required();
  delta_cmd->add_option("--n", dp_n)->required()->check(CLI::PositiveNumber);
  delta_cmd->add_option("--deg", dp_deg)->required();
  delta_cmd->add_option("--out", dp_out)->required();

  unsigned dens_p = 2;
  std::string dens_form;
  std::uint64_t dens_x = 0;
  std::optional<std::uint64_t> dens_np;
  auto* density_cmd = app.add_subcommand("density", "Density of primes l with a_l != 0");
  density_cmd->add_option("--p", dens_p)->required();
  density_cmd->add_option("--form", dens_form, "delta^n")->required();
  density_cmd->add_option("--X", dens_x)->required();
  density_cmd->add_option("--np", dens_np, "Excluded level N p (default p)");

  unsigned cyc_p = 2;
  std::string cyc_form = "delta^3";
  std::uint64_t cyc_m = 0, cyc_x = 0;
  std::optional<std::uint64_t> cyc_np;
  auto* cyc_cmd = app.add_subcommand("cyclotomic", "Test whether a_l depends only on l mod M");
  cyc_cmd->add_option("--M", cyc_m)->required()->check(CLI::PositiveNumber);
  cyc_cmd->add_option("--X", cyc_x)->required();
  cyc_cmd->add_option("--p", cyc_p)->capture_default_str();
  cyc_cmd->add_option("--form", cyc_form)->capture_default_str();
  cyc_cmd->add_option("--np", cyc_np);

  SpanConfig span;
  auto* span_cmd = app.add_subcommand("span", "Hecke span of a form");
  span_cmd->add_option("--primes", span.primes, "Comma separated primes")->required()->delimiter(',');
  span_cmd->add_option("--deg", span.deg)->required();
  span_cmd->add_option("--p", span.p)->capture_default_str();
  span_cmd->add_option("--form", span.form)->capture_default_str();
  span_cmd->add_option("--k", span.k, "Weight (default 12 n)");
  span_cmd->add_option("--min-degree", span.min_degree)->capture_default_str();
  span_cmd->add_option("--max-dim", span.max_dim)->capture_default_str();
  span_cmd->add_option("--lambda", span.lambda, "Eigenvalue per prime, or one for all")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify_cmd) return cmd_verify(verify);
    if (*analyze_cmd) return cmd_pink_analyze(q, k, gens);
    if (*example_pink || *example_top) return cmd_example8(ex_p, ex_k);
    if (*delta_cmd) return cmd_delta_power(dp_p, dp_n, dp_deg, dp_out);
    if (*density_cmd) return cmd_density(dens_p, dens_form, dens_x, dens_np);
    if (*cyc_cmd) return cmd_cyclotomic(cyc_p, cyc_form, cyc_m, cyc_x, cyc_np);
    if (*span_cmd) return cmd_span(span);
  } catch (const Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", std::string(to_string(e.code())).c_str(), e.what());
    return e.code() == Errc::InvalidArgument ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}
