// homotor: command-line front end. Reads JSON inputs, prints JSON or text reports.
//
// exit codes: 0 ok, 1 invariant failure or internal error, 2 invalid input,
// 3 budget refused.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "homotor/io.hpp"
#include "homotor/koszul/cg.hpp"
#include "homotor/koszul/oracle.hpp"
#include "homotor/selftest.hpp"
#include "homotor/simplicial/ring.hpp"

namespace {

using homotor::io::Json;
namespace io = homotor::io;
namespace kz = homotor::koszul;
namespace gal = homotor::galois;
namespace simp = homotor::simplicial;

struct Config {
  std::string input;
  std::string out;
  std::string format = "json";
  int degree_bound = 8;
  int level_bound = 4;
  double budget = 1e7;
  std::uint64_t seed = 1;

  // subcommand parameters
  long p = 3;
  std::string ring, quotient;
  std::vector<std::string> phi;
  int top = 3;
  std::string module_kind = "adjoint";
  std::vector<long> gso, gl;
  long q = 0, m = 1;
  std::vector<std::string> eigenvalues;
};

Json load(const Config& cfg) {
  if (cfg.input.empty()) throw homotor::ValidationError("--input is required");
  std::ifstream in(cfg.input);
  if (!in) throw homotor::ValidationError("cannot open " + cfg.input);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw homotor::ValidationError(cfg.input + ": " + e.what());
  }
}

homotor::CoefficientRing field(const Config& cfg) { return homotor::CoefficientRing::prime_field(cfg.p); }

kz::PolyRingPtr poly(const Config& cfg, const std::string& text, const char* flag) {
  if (text.empty()) throw homotor::ValidationError(std::string(flag) + " is required");
  return io::poly_ring(field(cfg), text, cfg.degree_bound);
}

// Default structure map: a variable goes to the variable of the same name, or to 0.
std::vector<std::string> phi_text(const Config& cfg, const kz::GradedPolyQuotient& S, const kz::GradedPolyQuotient& R) {
  if (!cfg.phi.empty()) return cfg.phi;
  std::vector<std::string> out;
  for (auto& v : S.names()) {
    bool has = std::find(R.names().begin(), R.names().end(), v) != R.names().end();
    out.push_back(has ? v : "0");
  }
  return out;
}

Json algebra_json(const homotor::GradedAlgebra& g) {
  Json j;
  j["dims"] = g.dims();
  j["laws"] = io::to_json(g.check_laws());
  return j;
}

// ---- complex ------------------------------------------------------------

Json complex_homology(const Config& cfg) {
  auto c = io::complex_from_json(load(cfg));
  auto r = io::report("complex homology");
  r["ring"] = io::ring_to_json(c.ring());
  r["homology"] = io::homology_to_json(c);
  r["euler_characteristic"] = homotor::euler_characteristic(c);
  return r;
}

Json complex_cone(const Config& cfg) {
  auto f = io::chain_map_from_json(load(cfg));
  auto c = homotor::cone(f);
  auto r = io::report("complex cone");
  r["cone"] = io::complex_to_json(c);
  r["homology"] = io::homology_to_json(c);
  return r;
}

// ---- simplicial ---------------------------------------------------------

// Emits the simplicial module document itself, so it can be fed back to pi or normalize.
Json simplicial_dk(const Config& cfg) {
  auto c = io::complex_from_json(load(cfg));
  auto m = simp::dold_kan(c, cfg.level_bound);
  if (io::complex_to_json(simp::normalize(m).trimmed()) != io::complex_to_json(c.trimmed()))
    throw homotor::InvariantFailure("N(DK(C)) differs from C");
  return io::simplicial_module_to_json(m);
}

Json simplicial_normalize(const Config& cfg) {
  return io::complex_to_json(simp::normalize(io::simplicial_module_from_json(load(cfg))));
}

Json simplicial_pi(const Config& cfg) {
  auto m = io::simplicial_module_from_json(load(cfg));
  auto h = simp::homotopy_groups(m);
  auto r = io::report("simplicial pi");
  Json groups = Json::array();
  for (int n = 0; n < h.known_below(); ++n) {
    Json g;
    g["degree"] = n;
    g["dim"] = h.at(n).dim();
    g["exponents"] = h.at(n).exponents;
    groups.push_back(g);
  }
  r["known_below"] = h.known_below();
  r["pi"] = groups;
  return r;
}

// pi_* of the bar construction B (x) A^{(x) *} for A = --ring, B = --quotient.
Json simplicial_ring(const Config& cfg) {
  auto A = poly(cfg, cfg.ring, "--ring");
  auto B = cfg.quotient.empty() ? A : poly(cfg, cfg.quotient, "--quotient");
  if (!A->socle_degree() || !B->socle_degree())
    throw homotor::DomainMismatch("simplicial ring needs artinian rings (finite-dimensional quotients)");
  auto phi = kz::structure_map(*A, *B, phi_text(cfg, *A, *B));
  auto f = kz::detail::local_algebra_map(*A, *B, phi, *A->socle_degree(), *B->socle_degree());
  auto bar = simp::bar_simplicial_ring(B->to_local_algebra().first, A->to_local_algebra().first, f, cfg.top + 1);
  auto r = io::report("simplicial ring");
  r["A"] = A->str();
  r["B"] = B->str();
  r["top"] = cfg.top;
  r["homotopy_ring"] = algebra_json(simp::homotopy_ring(bar, cfg.top));
  return r;
}

// ---- koszul -------------------------------------------------------------

Json koszul_tor(const Config& cfg) {
  auto S = poly(cfg, cfg.ring, "--ring");
  auto R = poly(cfg, cfg.quotient, "--quotient");
  auto t = kz::tor_algebra(S, R, kz::structure_map(*S, *R, phi_text(cfg, *S, *R)), cfg.top);
  auto r = io::report("koszul tor");
  r["S"] = S->str();
  r["R"] = R->str();
  r["dims"] = t.algebra.dims();
  r["bigraded"] = t.bigraded;
  r["stabilized"] = t.stabilized;
  r["leibniz_ok"] = t.leibniz.ok;
  r["laws"] = io::to_json(t.algebra.check_laws());
  if (!t.warning.empty()) r["warning"] = t.warning;
  return r;
}

Json koszul_depth(const Config& cfg) {
  std::optional<kz::GradedModule> M;
  if (!cfg.input.empty()) {
    M = io::graded_module_from_json(load(cfg), cfg.degree_bound);
  } else {
    auto S = poly(cfg, cfg.ring, "--ring");
    auto R = poly(cfg, cfg.quotient, "--quotient");
    M = kz::restrict_scalars(kz::GradedModule::regular(R), S, kz::structure_map(*S, *R, phi_text(cfg, *S, *R)));
  }
  auto r = io::report("koszul depth");
  r["module"] = M->describe();
  r["result"] = io::to_json(kz::depth_and_pd(*M));
  return r;
}

Json koszul_cg_lemma(const Config& cfg) {
  auto D = io::free_graded_complex_from_json(load(cfg), cfg.degree_bound);
  auto r = io::report("koszul cg-lemma");
  r["result"] = io::to_json(kz::cg_lemma_check(D));
  return r;
}

Json koszul_cg_corollary(const Config& cfg) {
  auto C = io::free_graded_complex_from_json(load(cfg), cfg.degree_bound);
  auto S = C.ring_ptr();
  auto R = poly(cfg, cfg.quotient, "--quotient");
  auto rep = kz::cg_corollary_check(C, R, kz::structure_map(*S, *R, phi_text(cfg, *S, *R)));
  auto r = io::report("koszul cg-corollary");
  r["result"] = io::to_json(rep);
  return r;
}

Json koszul_bar_vs_resolution(const Config& cfg) {
  if (cfg.ring.empty() || cfg.quotient.empty()) throw homotor::ValidationError("--ring and --quotient are required");
  auto A = kz::GradedPolyQuotient::parse(field(cfg), cfg.ring, cfg.degree_bound);
  auto B = kz::GradedPolyQuotient::parse(field(cfg), cfg.quotient, cfg.degree_bound);
  auto rep = kz::tor_oracles(field(cfg), cfg.ring, cfg.quotient, phi_text(cfg, A, B), cfg.top, cfg.top, cfg.degree_bound);
  auto r = io::report("koszul bar-vs-resolution");
  r["result"] = io::to_json(rep);
  if (!rep.agree) throw homotor::InvariantFailure("Tor oracles disagree: " + rep.detail);
  return r;
}

// ---- galois -------------------------------------------------------------

gal::GroupModule module_of(const gal::Representation& rho, const std::string& kind) {
  if (kind == "adjoint") return gal::GroupModule::adjoint(rho);
  if (kind == "standard") return gal::GroupModule::from_representation(rho);
  if (kind == "trivial") return gal::GroupModule::trivial(rho.group(), rho.field(), rho.n());
  throw homotor::ValidationError("--module must be adjoint, standard or trivial");
}

Json galois_cohomology(const Config& cfg) {
  auto rho = io::representation_from_json(load(cfg));
  if (cfg.top < 0 || cfg.top > 3) throw homotor::ValidationError("--top must be in [0, 3]");
  auto M = module_of(rho, cfg.module_kind);
  auto h = gal::cochain_complex(M, cfg.top);
  auto r = io::report("galois cohomology");
  r["group_order"] = rho.group()->order();
  r["module"] = cfg.module_kind;
  r["module_dim"] = M.dim();
  r["dims"] = h.dims;
  r["fixed_points"] = h.fixed_points;
  return r;
}

Json galois_selmer(const Config& cfg) {
  auto datum = io::selmer_from_json(load(cfg));
  auto les = gal::selmer_les_check(datum);
  auto r = io::report("galois selmer");
  r["selmer_dims"] = les.selmer_dims;
  r["sequence"] = io::to_json(les);
  if (!les.exact) throw homotor::InvariantFailure("ten-term sequence is not exact");
  return r;
}

Json galois_tangent(const Config& cfg) {
  auto datum = io::selmer_from_json(load(cfg));
  auto t = gal::tangent_complex_table(datum);
  auto r = io::report("galois tangent");
  r["table"] = io::to_json(t);
  if (!t.matches) throw homotor::InvariantFailure("tangent table disagrees with the tangent sequence");
  return r;
}

Json galois_liftings(const Config& cfg) {
  auto rho = io::representation_from_json(load(cfg));
  gal::LiftingBudget b;
  b.max_states = cfg.budget;
  auto c = gal::brute_force_liftings(rho, b);
  auto r = io::report("galois liftings");
  r["result"] = io::to_json(c);
  if (!c.count_matches) throw homotor::InvariantFailure("lifting count differs from p^{dim Z^1}");
  return r;
}

Json galois_numerology(const Config& cfg) {
  auto in = io::numerology_from_json(load(cfg));
  auto r = io::report("galois numerology");
  auto g = gal::presentation_bound_g(in);
  r["g"] = g.g;
  r["g_nonnegative"] = g.consistent;
  if (in.r >= in.h1_S_perp) {
    auto tw = gal::tw_g_formula(in.n, in.r, in.h1_S, in.h1_S_perp);
    r["tw_g"] = tw.g;
    r["dim_gap"] = tw.dim_gap;
  }
  if (!in.h0_infinite.empty())
    r["oddness"] = gal::oddness_check(in.h0_infinite, in.l0, in.fv_degree, in.dim_G, in.dim_B, in.h0_global);
  return r;
}

Json galois_invariants(const Config& cfg) {
  auto r = io::report("galois invariants");
  gal::SymmetricInvariants s;
  if (cfg.gso.size() == 2) {
    s = gal::gso_invariants(cfg.gso[0], cfg.gso[1]);
    r["group"] = "GSO(" + std::to_string(cfg.gso[0]) + "," + std::to_string(cfg.gso[1]) + ")";
  } else if (cfg.gl.size() == 3) {
    s = gal::gl_invariants(cfg.gl[0], cfg.gl[1], cfg.gl[2]);
    r["group"] = "GL_" + std::to_string(cfg.gl[0]);
    r["check"] = s.check;
  } else {
    throw homotor::ValidationError("need --gso a b or --gl N r1 r2");
  }
  r["q0"] = s.q0;
  r["l0"] = s.l0;
  r["sum"] = s.q0 + s.l0;
  r["dim"] = s.d;
  return r;
}

Json galois_tw(const Config& cfg) {
  if (cfg.eigenvalues.empty()) throw homotor::ValidationError("--eigenvalues is required");
  auto c = gal::tw_prime_check(cfg.q, cfg.p, cfg.m, cfg.eigenvalues);
  auto r = io::report("galois tw");
  r["q"] = cfg.q;
  r["p"] = cfg.p;
  r["m"] = cfg.m;
  r["level"] = c.level;
  r["level_ok"] = c.level_ok;
  r["strongly_regular"] = c.strongly_regular;
  r["ok"] = c.ok;
  r["delta_order"] = c.delta_order;
  return r;
}

// ---- selftest -----------------------------------------------------------

Json selftest(const Config& cfg, bool& failed) {
  auto r = io::report("selftest");
  r["seed"] = cfg.seed;
  Json list = Json::array();
  std::size_t passed = 0;
  const auto all = homotor::selftest::all_criteria();
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto c = homotor::selftest::run(all[i], static_cast<int>(i + 1), cfg.seed);
    Json x;
    x["id"] = c.id;
    x["name"] = c.name;
    x["passed"] = c.passed;
    x["detail"] = c.detail;
    list.push_back(x);
    if (c.passed) ++passed;
  }
  r["criteria"] = list;
  r["passed"] = passed;
  r["total"] = list.size();
  failed = passed != list.size();
  return r;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out);
  if (!out) throw homotor::ValidationError("cannot write " + cfg.out);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homotor: homological algebra and Galois deformation numerology at desk scale"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* s) {
    s->add_option("--input", cfg.input, "input JSON file");
    s->add_option("--out", cfg.out, "write the report here instead of stdout");
    s->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--degree-bound", cfg.degree_bound, "weight window for graded rings")->check(CLI::PositiveNumber);
    s->add_option("--level-bound", cfg.level_bound, "simplicial truncation level")->check(CLI::PositiveNumber);
    s->add_option("--budget", cfg.budget, "enumeration cap")->check(CLI::PositiveNumber);
    s->add_option("--seed", cfg.seed, "seed for property suites");
  };
  auto rings = [&](CLI::App* s) {
    s->add_option("--p", cfg.p, "characteristic of the field");
    s->add_option("--ring", cfg.ring, "graded ring, e.g. \"k[x,y]/(x^2)\"");
    s->add_option("--quotient", cfg.quotient, "target ring, e.g. \"k\"");
    s->add_option("--phi", cfg.phi, "images of the variables of --ring");
    s->add_option("--top", cfg.top, "top homological degree");
  };

  using Handler = std::function<Json(const Config&)>;
  std::vector<std::pair<CLI::App*, Handler>> leaves;
  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help, Handler h) {
    auto* s = group->add_subcommand(name, help);
    common(s);
    leaves.emplace_back(s, std::move(h));
    return s;
  };

  auto* cx = app.add_subcommand("complex", "chain complexes")->require_subcommand(1);
  leaf(cx, "homology", "homology of a complex", complex_homology);
  leaf(cx, "cone", "mapping cone of a chain map", complex_cone);

  auto* sx = app.add_subcommand("simplicial", "simplicial modules and rings")->require_subcommand(1);
  leaf(sx, "dk", "Dold-Kan: complex -> simplicial module", simplicial_dk);
  leaf(sx, "normalize", "normalized chains of a simplicial module", simplicial_normalize);
  leaf(sx, "pi", "homotopy groups of a simplicial module", simplicial_pi);
  rings(leaf(sx, "ring", "homotopy ring of a bar construction", simplicial_ring));

  auto* kx = app.add_subcommand("koszul", "Koszul complexes, Tor, depth")->require_subcommand(1);
  rings(leaf(kx, "tor", "Tor^S(R, k) through the Koszul complex", koszul_tor));
  rings(leaf(kx, "depth", "depth and projective dimension", koszul_depth));
  leaf(kx, "cg-lemma", "the lemma on free complexes", koszul_cg_lemma);
  rings(leaf(kx, "cg-corollary", "the corollary on patched complexes", koszul_cg_corollary));
  rings(leaf(kx, "bar-vs-resolution", "compare Tor from three constructions", koszul_bar_vs_resolution));

  auto* gx = app.add_subcommand("galois", "group cohomology and Selmer data")->require_subcommand(1);
  auto* coh = leaf(gx, "cohomology", "H^0..H^top of a group module", galois_cohomology);
  coh->add_option("--top", cfg.top, "top degree (<= 3)");
  coh->add_option("--module", cfg.module_kind, "adjoint, standard or trivial");
  leaf(gx, "selmer", "Selmer complex and the ten-term sequence", galois_selmer);
  leaf(gx, "tangent", "tangent complex table", galois_tangent);
  leaf(gx, "liftings", "count liftings to the dual numbers", galois_liftings);
  leaf(gx, "numerology", "presentation and Taylor-Wiles counts", galois_numerology);
  auto* inv = leaf(gx, "invariants", "q0 and l0 of a group", galois_invariants);
  inv->add_option("--gso", cfg.gso, "signature a b")->expected(2);
  inv->add_option("--gl", cfg.gl, "N r1 r2")->expected(3);
  auto* tw = leaf(gx, "tw", "check a Taylor-Wiles prime", galois_tw);
  tw->add_option("--q", cfg.q, "the prime q_v")->required();
  tw->add_option("--p", cfg.p, "residue characteristic");
  tw->add_option("--m", cfg.m, "level");
  tw->add_option("--eigenvalues", cfg.eigenvalues, "Frobenius eigenvalue labels")->required();

  auto* st = app.add_subcommand("selftest", "run the acceptance suite");
  common(st);

  // `invariants` also works at top level
  auto* inv_top = app.add_subcommand("invariants", "same as galois invariants");
  common(inv_top);
  inv_top->add_option("--gso", cfg.gso, "signature a b")->expected(2);
  inv_top->add_option("--gl", cfg.gl, "N r1 r2")->expected(3);
  leaves.emplace_back(inv_top, galois_invariants);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    bool failed = false;
    Json report;
    if (st->parsed()) {
      report = selftest(cfg, failed);
    } else {
      for (auto& [s, h] : leaves)
        if (s->parsed()) report = h(cfg);
    }
    emit(cfg, io::render(report, cfg.format));
    return failed ? 1 : 0;
  } catch (const homotor::BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 3;
  } catch (const homotor::InvariantFailure& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 1;
  } catch (const homotor::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const homotor::DomainMismatch& e) {
    std::cerr << "unsupported input: " << e.what() << "\n";
    return 2;
  } catch (const homotor::TruncationError& e) {
    std::cerr << "outside the truncation window: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
