#include "jacring/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "jacring/cache.hpp"
#include "jacring/duality.hpp"
#include "jacring/geom.hpp"
#include "jacring/koszul.hpp"
#include "jacring/parse.hpp"
#include "jacring/ring.hpp"
#include "jacring/specfile.hpp"

namespace jacring {

namespace {

using Json = nlohmann::ordered_json;

struct Request {
  std::string command;
  int a = 0, b = 0, c = 0;
  bool has_codim = false;
  std::size_t codim = 0;
  std::string v_text;
  std::string v_path;
  std::uint64_t seed = 0;
  Json inputs = Json::object();
};

struct Outcome {
  Json result = Json::object();
  bool violation = false;
  /// Non-empty: the input turned out to be bad after the document was built.
  std::string input_failure;
};

template <class Field>
Json elements(const Field& field, const std::vector<typename Field::Element>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(field.to_string(x));
  return out;
}

template <class Field>
Json element_rows(const Field& field, const std::vector<std::vector<typename Field::Element>>& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(elements(field, row));
  return out;
}

Json bidegree_json(const Bidegree& b) { return Json{{"q", b.q}, {"l", b.l}}; }

template <class Field>
Outcome cmd_dim(const JacobianRing<Field>& ring, const Request& rq) {
  Outcome o;
  auto piece = ring.piece(rq.a, rq.b);
  o.result["q"] = rq.a;
  o.result["l"] = rq.b;
  o.result["dim"] = piece->dim();
  o.result["ambient_dim"] = piece->ambient_dim();
  o.result["ideal_rank"] = piece->ideal_rank();
  return o;
}

template <class Field>
Outcome cmd_basis(const JacobianRing<Field>& ring, const Request& rq) {
  Outcome o;
  auto piece = ring.piece(rq.a, rq.b);
  o.result["q"] = rq.a;
  o.result["l"] = rq.b;
  o.result["dim"] = piece->dim();
  Json mons = Json::array();
  for (std::size_t i = 0; i < piece->dim(); ++i) mons.push_back(to_string(piece->standard_monomial(i)));
  o.result["monomials"] = mons;
  return o;
}

template <class Field>
Outcome cmd_socle(const JacobianRing<Field>& ring, const Request&) {
  Outcome o;
  if (ring.spec().dim_x() < 1) throw InputError("socle needs n - r >= 1");
  const TransversalityReport t = ring.transversality();
  o.result["socle"] = bidegree_json(t.socle);
  o.result["dim"] = t.socle_dim;
  o.result["above_dim"] = t.above_dim;
  o.result["beyond_dim"] = t.beyond_dim;
  o.result["transversal"] = t.pass;
  o.result["reason"] = t.reason;
  if (t.socle_dim == 1) o.result["socle_monomial"] = to_string(ring.piece(t.socle.q, t.socle.l)->standard_monomial(0));
  if (!t.pass) o.input_failure = "probable transversality failure: " + t.reason;
  return o;
}

template <class Field>
Json pairing_json(const JacobianRing<Field>& ring, const PairingReport<Field>& rep, bool& violation) {
  Json j;
  j["p"] = rep.p;
  j["l"] = rep.l;
  j["left"] = bidegree_json(rep.left_deg);
  j["right"] = bidegree_json(rep.right_deg);
  j["left_dim"] = rep.left_dim;
  j["right_dim"] = rep.right_dim;
  j["rank"] = rep.rank;
  j["case"] = to_string(rep.pairing_case);
  j["perfect"] = rep.perfect();
  j["injective"] = rep.injective();
  j["left_kernel_dim"] = rep.left_kernel.size();
  j["right_kernel_dim"] = rep.right_kernel.size();
  j["zero_by_convention"] = rep.zero_by_convention;
  const bool bad = (case_claims_perfect(rep.pairing_case) && !rep.perfect()) ||
                   (rep.pairing_case == PairingCase::II3Injective && !rep.injective());
  j["violation"] = bad;
  violation = violation || bad;
  j["matrix"] = element_rows(ring.field(), rep.matrix);
  return j;
}

template <class Field>
Outcome cmd_pairing(const JacobianRing<Field>& ring, const Request& rq) {
  Outcome o;
  ring.require_smooth();
  const auto rep = pairing(ring, rq.a, rq.b);
  o.result = pairing_json(ring, rep, o.violation);
  return o;
}

std::vector<std::vector<HomogPoly>> identity_tuples(const RingSpec& spec) {
  std::vector<std::vector<HomogPoly>> out;
  const int k = spec.n - spec.r() + 1;
  if (k < 1 || k > spec.s()) return out;
  for (const auto& t : wedge_tuples(spec.s(), k)) {
    std::vector<HomogPoly> forms = spec.F;
    for (int j : t) forms.push_back(spec.G[static_cast<std::size_t>(j)]);
    out.push_back(std::move(forms));
  }
  return out;
}

template <class Field>
Outcome cmd_kernel2(const JacobianRing<Field>& ring, const Request&) {
  Outcome o;
  const RingSpec& spec = ring.spec();
  if (spec.dim_x() < 1 || spec.s() < 1) throw InputError("kernel2 needs n - r >= 1 and s >= 1");
  ring.require_smooth();
  const auto rep = verify_wedge_kernel(ring);
  const auto gens = wedge_generators(spec);
  o.result["kernel_dim"] = rep.kernel_dim;
  o.result["expected_dim"] = rep.expected_dim;
  o.result["wedge_span_dim"] = rep.wedge_span_dim;
  o.result["wedge_in_kernel"] = rep.wedge_in_kernel;
  o.result["equal"] = rep.equal;
  o.result["kernel_basis"] = element_rows(ring.field(), rep.kernel_basis);
  Json wj = Json::array();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Json g;
    g["indices"] = gens[i].indices;
    g["A"] = to_string(gens[i].A);
    g["A_prime"] = to_string(gens[i].A_prime);
    if (i < rep.wedge_classes.size()) g["class"] = elements(ring.field(), rep.wedge_classes[i].coords);
    wj.push_back(g);
  }
  o.result["wedge_generators"] = wj;
  bool all_members = true;
  Json mj = Json::array();
  for (const auto& m : wedge_membership(ring)) {
    mj.push_back(Json{{"indices", m.indices}, {"multiplier", m.multiplier}, {"member", m.member}});
    all_members = all_members && m.member;
  }
  o.result["memberships"] = mj;
  bool all_star = true;
  Json sj = Json::array();
  for (const auto& forms : identity_tuples(spec)) {
    const bool h = verify_identity_star(forms);
    sj.push_back(h);
    all_star = all_star && h;
  }
  o.result["identity_star"] = sj;
  o.violation = !rep.equal || rep.kernel_dim != rep.expected_dim || !all_members || !all_star;
  return o;
}

template <class Field>
Subspace<Field> subspace_from_text(const JacobianRing<Field>& ring, const std::string& text) {
  std::vector<BElement<Field>> spanning;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = line.substr(0, hash);
    if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
    AElement<Rationals> x;
    try {
      x = parse_a_element(body, ring.spec());
    } catch (const ParseError& e) {
      throw InputError("V file line " + std::to_string(lineno) + ", " + e.what());
    }
    if (!x.is_zero() && !(x.deg == Bidegree{1, 0}))
      throw InputError("V file line " + std::to_string(lineno) + ": element has bidegree " + to_string(x.deg) +
                       ", expected (1,0)");
    AElement<Field> y;
    y.deg = {1, 0};
    for (const auto& [m, c] : x.terms) add_term(ring.field(), y, m, ring.field().from_rational(c));
    spanning.push_back(ring.reduce(y));
  }
  return make_subspace(ring, spanning);
}

Json koszul_json(const KoszulReport& r) {
  Json j;
  j["p"] = r.p;
  j["q"] = r.q;
  j["l"] = r.l;
  j["V"] = r.v_label;
  j["codim"] = r.codim;
  j["dim_V"] = r.dim_v;
  j["dims"] = Json::array({r.dims[0], r.dims[1], r.dims[2]});
  j["rank_first"] = r.rank_first;
  j["rank_second"] = r.rank_second;
  j["middle_homology"] = r.middle_homology;
  j["composite_zero"] = r.composite_zero;
  j["conditions"] = r.conditions.label();
  j["conditions_hold"] = r.conditions.any();
  j["remark_regime"] = r.conditions.remark_regime;
  j["violation"] = r.violation;
  return j;
}

template <class Field>
Outcome cmd_koszul(const JacobianRing<Field>& ring, const Request& rq) {
  Outcome o;
  ring.require_smooth();
  if (rq.b < 0) throw InputError("koszul needs q >= 0");
  KoszulInstance<Field> inst;
  inst.ring = &ring;
  inst.p = rq.a;
  inst.q = rq.b;
  inst.l = rq.c;
  std::string label = "B1(0)";
  if (!rq.v_path.empty()) {
    inst.V = subspace_from_text(ring, rq.v_text);
    label = "file";
  } else if (rq.has_codim) {
    inst.V = random_subspace(ring, rq.codim, rq.seed);
    label = "random codim " + std::to_string(rq.codim);
  } else {
    inst.V = full_subspace(ring);
  }
  KoszulReport rep = middle_homology(inst);
  rep.v_label = label;
  o.result = koszul_json(rep);
  o.violation = rep.violation;
  return o;
}

template <class Field>
Outcome cmd_hodge(const JacobianRing<Field>& ring, const Request& rq) {
  Outcome o;
  ring.require_smooth();
  const HodgeTable t = hodge_table(ring, rq.a);
  o.result["l"] = t.l;
  Json rows = Json::array();
  for (const auto& e : t.rows)
    rows.push_back(Json{{"q", e.q},
                        {"form_degree", e.form_degree},
                        {"piece", bidegree_json(e.piece)},
                        {"primitive", e.primitive},
                        {"full", e.full}});
  o.result["rows"] = rows;
  Json prim = Json::array();
  for (const auto& e : t.rows) prim.push_back(e.primitive);
  o.result["primitive"] = prim;
  o.result["middle_correction_applied"] = t.middle_correction_applied;
  return o;
}

Json torelli_json(const TorelliReport& r) {
  Json j;
  j["q"] = r.q;
  j["predicate"] = r.predicate;
  j["identified"] = r.identified;
  j["surjective"] = r.surjective;
  j["left"] = bidegree_json(r.left);
  j["right"] = bidegree_json(r.right);
  j["target"] = bidegree_json(r.target);
  j["left_dim"] = r.left_dim;
  j["right_dim"] = r.right_dim;
  j["target_dim"] = r.target_dim;
  j["rank"] = r.rank;
  j["violation"] = r.violation();
  return j;
}

template <class Field>
Outcome cmd_torelli(const JacobianRing<Field>& ring, const Request& rq) {
  Outcome o;
  ring.require_smooth();
  const auto rep = torelli_check(ring, rq.a);
  o.result = torelli_json(rep);
  o.violation = rep.violation();
  return o;
}

Json conditions_json(const FamilyConditions& f) {
  return Json{{"applicable", f.applicable}, {"i", f.i},   {"ii", f.ii},
              {"iii", f.iii},               {"iv", f.iv}, {"vanishing", f.any()}};
}

Outcome cmd_bounds(const RingSpec& spec, const Request& rq) {
  Outcome o;
  const BoundInput in = BoundInput::from_spec(spec, rq.a, rq.b);
  const NoriBound nb = nori_bound(in);
  o.result["t"] = rq.a;
  o.result["c"] = rq.b;
  o.result["delta_min"] = in.delta_min();
  o.result["open_case_vanishing"] = nb.open_case_vanishing;
  o.result["relative_case_vanishing"] = nb.relative_case_vanishing;
  Json fam = Json::array();
  const int m = spec.dim_x();
  for (int a = 0; a <= m; ++a)
    for (int q = 0; q <= m; ++q) {
      Json row{{"a", a}, {"q", q}};
      row["family"] = conditions_json(family_conditions(in, a, q));
      row["relative"] = conditions_json(relative_conditions(in, a, q));
      fam.push_back(row);
    }
  o.result["table"] = fam;
  return o;
}

Json ladder_json(const LadderReport& r) {
  Json j;
  j["q"] = r.q;
  j["l"] = r.l;
  j["dim_B"] = r.dim_b;
  j["rank_lambda1"] = r.rank_lambda;
  j["dim_Bbar"] = r.dim_bbar;
  j["first_holds"] = r.first_holds;
  j["dim_B_dual"] = r.dim_b_dual;
  j["rank_G1"] = r.rank_g;
  j["dim_Bprime_dual"] = r.dim_bprime_dual;
  j["second_holds"] = r.second_holds;
  return j;
}

template <class Field>
Outcome cmd_lemma53(const JacobianRing<Field>& ring, const Request& rq) {
  Outcome o;
  ring.require_smooth();
  const auto rep = ladder(ring, rq.a, rq.b);
  o.result = ladder_json(rep);
  o.violation = !rep.first_holds || !rep.second_holds;
  return o;
}

template <class Field>
std::vector<VerifyCheck> verify_impl(const JacobianRing<Field>& ring) {
  std::vector<VerifyCheck> out;
  const RingSpec& spec = ring.spec();
  const int m = spec.dim_x();
  const int base = spec.bold_d() - spec.n - 1;
  const int emax = spec.e_max();
  auto add = [&](std::string name, bool pass, std::string detail) {
    out.push_back({std::move(name), pass, std::move(detail)});
  };

  add("euler_relation", euler_relation_holds(ring), "sum x_k eta_k in terms of the generators");
  bool euler = true;
  for (const auto& f : spec.F) euler = euler && euler_identity_holds(f);
  for (const auto& g : spec.G) euler = euler && euler_identity_holds(g);
  add("euler_identity", euler, "sum x_k d/dx_k f = deg(f) f for every form");

  const auto tuples = identity_tuples(spec);
  bool star = true;
  for (const auto& forms : tuples) star = star && verify_identity_star(forms);
  add("identity_star", star, std::to_string(tuples.size()) + " tuples");

  if (m >= 1 && spec.r() <= spec.n) {
    const auto t = ring.transversality();
    add("socle", t.socle_dim == 1, "dim " + std::to_string(t.socle_dim) + " at " + to_string(t.socle));

    std::size_t count = 0, bad = 0;
    for (int p = 0; p <= m; ++p)
      for (int l = -emax - 2; l <= emax + 2; ++l) {
        const PairingCase c = classify_pairing(spec, p, l);
        if (c == PairingCase::Uncovered) continue;
        const auto rep = pairing(ring, p, l);
        ++count;
        if ((case_claims_perfect(c) && !rep.perfect()) || (c == PairingCase::II3Injective && !rep.injective()))
          ++bad;
      }
    add("pairing", bad == 0, std::to_string(count) + " covered instances, " + std::to_string(bad) + " failures");

    if (spec.s() >= 1) {
      const auto k = verify_wedge_kernel(ring);
      add("wedge_kernel", k.equal && k.kernel_dim == k.expected_dim,
          "kernel dim " + std::to_string(k.kernel_dim) + ", expected " + std::to_string(k.expected_dim));
      add("wedge_membership", verify_wedge_membership(ring), "A' mu_i and A' lambda_j in J");
    }

    if (spec.s() >= 1) {
      SweepRange range{0, std::min(2, m), 0, 2, base, base + spec.bold_e() - 1};
      const std::vector<VChoice> choices{{"B1(0)", 0, true, 0}, {"random codim 1", 1, false, spec.seed}};
      std::size_t kviol = 0, kcount = 0;
      for (const auto& r : symmetrizer_sweep(ring, range, choices)) {
        ++kcount;
        if (r.violation) ++kviol;
      }
      add("koszul", kviol == 0, std::to_string(kcount) + " instances, " + std::to_string(kviol) + " violations");
    }

    std::size_t tviol = 0;
    for (int q = 1; q <= m; ++q)
      if (torelli_check(ring, q).violation()) ++tviol;
    add("torelli", tviol == 0, std::to_string(m) + " degrees, " + std::to_string(tviol) + " violations");

    if (spec.s() >= 1 && spec.r() + spec.s() >= 2) {
      bool ok = true;
      for (int q = 0; q <= m; ++q)
        for (int l = 0; l <= 1; ++l) {
          const auto lr = ladder(ring, q, l);
          ok = ok && lr.first_holds && lr.second_holds;
        }
      add("ladder", ok, "q = 0..n-r, l = 0, 1");
    }

    if (spec.s() == 0) {
      bool sym = true;
      for (int q = 0; q <= m; ++q) sym = sym && ring.dim(q, base) == ring.dim(m - q, base);
      add("hodge_symmetry", sym, "dim B_q(d-n-1) = dim B_{n-r-q}(d-n-1)");
    }
  }
  return out;
}

std::vector<std::pair<int, int>> probe_degrees(const RingSpec& spec) {
  const int m = std::max(spec.dim_x(), 0);
  const int base = spec.bold_d() - spec.n - 1;
  std::vector<std::pair<int, int>> out;
  for (int q = 0; q <= m + 1; ++q)
    for (int l : {0, base, base + spec.bold_e(), spec.socle_twist()}) out.emplace_back(q, l);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class Field>
Outcome cmd_verify(const JacobianRing<Field>& ring, const Request& rq) {
  ring.require_smooth();
  Outcome o;
  auto checks = verify_impl(ring);
  if (ring.field().desc().is_rational()) {
    std::mt19937_64 rng(rq.seed);
    bool agree = true;
    std::string primes;
    for (int k = 0; k < 2; ++k) {
      const std::uint64_t p = random_prime(rng, std::uint64_t{1} << 50, std::uint64_t{1} << 61);
      primes += (k ? ", " : "") + std::to_string(p);
      JacobianRing<PrimeField> mod(ring.spec(), PrimeField(p));
      for (auto [q, l] : probe_degrees(ring.spec())) agree = agree && mod.dim(q, l) == ring.dim(q, l);
    }
    checks.push_back({"cross_characteristic", agree, "primes " + primes});
  }
  Json cj = Json::array();
  for (const auto& c : checks) {
    cj.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    o.violation = o.violation || !c.pass;
  }
  o.result["checks"] = cj;
  o.result["all_pass"] = !o.violation;
  return o;
}

template <class Field>
Outcome dispatch(const RingSpec& spec, const Field& field, const Request& rq) {
  if (rq.command == "bounds") return cmd_bounds(spec, rq);
  JacobianRing<Field> ring(spec, field);
  const std::string& c = rq.command;
  if (c == "dim") return cmd_dim(ring, rq);
  if (c == "basis") return cmd_basis(ring, rq);
  if (c == "socle") return cmd_socle(ring, rq);
  if (c == "pairing") return cmd_pairing(ring, rq);
  if (c == "kernel2") return cmd_kernel2(ring, rq);
  if (c == "koszul") return cmd_koszul(ring, rq);
  if (c == "hodge") return cmd_hodge(ring, rq);
  if (c == "torelli") return cmd_torelli(ring, rq);
  if (c == "lemma53") return cmd_lemma53(ring, rq);
  if (c == "verify") return cmd_verify(ring, rq);
  throw InputError("unknown command " + c);
}

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string to_csv(const std::string& command, const Json& result) {
  std::ostringstream o;
  if (command == "hodge") {
    o << "q,form_degree,piece_q,piece_l,primitive,full\n";
    for (const auto& r : result["rows"])
      o << r["q"] << ',' << r["form_degree"] << ',' << r["piece"]["q"] << ',' << r["piece"]["l"] << ','
        << r["primitive"] << ',' << r["full"] << '\n';
  } else if (command == "basis") {
    o << "index,monomial\n";
    std::size_t i = 0;
    for (const auto& mnm : result["monomials"]) o << i++ << ',' << csv_cell(mnm) << '\n';
  } else if (command == "verify") {
    o << "name,pass,detail\n";
    for (const auto& c : result["checks"])
      o << csv_cell(c["name"]) << ',' << c["pass"] << ',' << csv_cell(c["detail"]) << '\n';
  } else if (command == "bounds") {
    o << "a,q,family_applicable,family_vanishing,relative_applicable,relative_vanishing\n";
    for (const auto& r : result["table"])
      o << r["a"] << ',' << r["q"] << ',' << r["family"]["applicable"] << ',' << r["family"]["vanishing"] << ','
        << r["relative"]["applicable"] << ',' << r["relative"]["vanishing"] << '\n';
  } else {
    o << "key,value\n";
    for (const auto& [k, v] : result.items())
      if (!v.is_array() || k == "dims") o << k << ',' << csv_cell(v) << '\n';
  }
  return o.str();
}

std::string read_stream(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path);
  return read_stream(f);
}

FieldDesc checked_field(std::uint64_t p) {
  if (p < 2 || p >= kMaxPrime || !is_prime(p)) throw InputError("--modp " + std::to_string(p) + " is not a prime below 2^62");
  return FieldDesc::prime_field(p);
}

}  // namespace

std::vector<VerifyCheck> verify_suite(const RingSpec& spec, const FieldDesc& field, std::uint64_t seed) {
  Request rq;
  rq.command = "verify";
  rq.seed = seed;
  Outcome o = field.is_rational() ? cmd_verify(JacobianRing<Rationals>(spec, Rationals()), rq)
                                  : cmd_verify(JacobianRing<PrimeField>(spec, PrimeField(field.prime)), rq);
  std::vector<VerifyCheck> out;
  for (const auto& c : o.result["checks"])
    out.push_back({c["name"].get<std::string>(), c["pass"].get<bool>(), c["detail"].get<std::string>()});
  return out;
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Jacobian rings of open complete intersections", "jacring"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string spec_path, preset_opt;
  std::uint64_t modp = 0, seed = 0;
  bool csv = false, no_cache = false, assume_smooth = false;
  app.add_option("--spec", spec_path, "Spec file ('-' or absent: standard input)");
  app.add_option("--preset", preset_opt, "Use a built-in spec instead of reading one");
  auto* modp_opt = app.add_option("--modp", modp, "Compute over GF(p)");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for random choices");
  app.add_flag("--csv", csv, "CSV instead of JSON");
  app.add_flag("--no-cache", no_cache, "Bypass the result cache");
  app.add_flag("--assume-smooth", assume_smooth, "Skip the transversality heuristic");

  Request rq;
  auto two_ints = [&](CLI::App* sub, const char* n1, const char* n2) {
    sub->add_option(n1, rq.a)->required();
    sub->add_option(n2, rq.b)->required();
  };
  two_ints(app.add_subcommand("dim", "Dimension of B_q(l)"), "q", "l");
  two_ints(app.add_subcommand("basis", "Standard monomial basis of B_q(l)"), "q", "l");
  app.add_subcommand("socle", "Socle dimension and transversality heuristic");
  two_ints(app.add_subcommand("pairing", "Multiplication pairing h_p(l)"), "p", "l");
  app.add_subcommand("kernel2", "Kernel of h_{n-r}(0)* against the determinant classes");
  auto* koszul = app.add_subcommand("koszul", "Middle homology of the Koszul complex of V");
  koszul->add_option("p", rq.a)->required();
  koszul->add_option("q", rq.b)->required();
  koszul->add_option("l", rq.c)->required();
  auto* codim_opt = koszul->add_option("--codim", rq.codim, "Random V of this codimension in B_1(0)");
  koszul->add_option("--V", rq.v_path, "File with one spanning element of V per line")->excludes(codim_opt);
  auto* hodge = app.add_subcommand("hodge", "Primitive log Hodge numbers via B_q(d+e-n-1+l)");
  hodge->add_option("l", rq.a, "Twist (default 0)");
  app.add_subcommand("torelli", "Torelli multiplication criterion")->add_option("q", rq.a)->required();
  two_ints(app.add_subcommand("bounds", "Degree-bound predicates for families"), "t", "c");
  two_ints(app.add_subcommand("lemma53", "Exact sequences through the first boundary component"), "q", "l");
  app.add_subcommand("verify", "Full invariant suite");
  auto* preset = app.add_subcommand("preset", "Print a built-in spec");
  std::string preset_name;
  bool list = false;
  preset->add_option("name", preset_name);
  preset->add_flag("--list", list, "List presets");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    rq.command = sub->get_name();
    rq.has_codim = codim_opt->count() > 0;

    if (rq.command == "preset") {
      if (list || preset_name.empty()) {
        for (const auto& p : preset_catalog())
          out << p.name << (p.smooth ? "" : " (singular)") << "  " << p.description << '\n';
        return list ? kExitOk : (err << "error: preset needs a name (see --list)\n", kExitInput);
      }
      out << emit_spec(make_preset(preset_name, seed));
      return kExitOk;
    }

    RingSpec spec;
    if (!preset_opt.empty()) {
      spec = make_preset(preset_opt, seed);
    } else {
      const std::string text = spec_path.empty() || spec_path == "-" ? read_stream(in) : read_file(spec_path);
      try {
        spec = parse_spec(text);
      } catch (const InputError& e) {
        throw InputError(std::string("spec ") + (spec_path.empty() || spec_path == "-" ? "<stdin>" : spec_path) +
                         ": " + e.what());
      }
    }
    if (assume_smooth) spec.assume_smooth = true;
    rq.seed = seed_opt->count() ? seed : spec.seed;
    const FieldDesc field = modp_opt->count() ? checked_field(modp) : spec.field;
    if (!rq.v_path.empty()) rq.v_text = read_file(rq.v_path);

    Json inputs = Json::object();
    if (rq.command == "dim" || rq.command == "basis" || rq.command == "lemma53") {
      inputs["q"] = rq.a;
      inputs["l"] = rq.b;
    } else if (rq.command == "pairing") {
      inputs["p"] = rq.a;
      inputs["l"] = rq.b;
    } else if (rq.command == "koszul") {
      inputs["p"] = rq.a;
      inputs["q"] = rq.b;
      inputs["l"] = rq.c;
      if (rq.has_codim) {
        inputs["codim"] = rq.codim;
        inputs["seed"] = rq.seed;
      }
      if (!rq.v_path.empty()) inputs["V_sha256"] = sha256_hex(rq.v_text);
    } else if (rq.command == "hodge") {
      inputs["l"] = rq.a;
    } else if (rq.command == "torelli") {
      inputs["q"] = rq.a;
    } else if (rq.command == "bounds") {
      inputs["t"] = rq.a;
      inputs["c"] = rq.b;
    } else if (rq.command == "verify") {
      inputs["seed"] = rq.seed;
    }
    inputs["assume_smooth"] = spec.assume_smooth;

    const std::string hash = spec_hash(spec);
    const std::string cache_args = field.to_string() + "\n" + inputs.dump() + (csv ? "\ncsv" : "");
    const ResultCache cache(ResultCache::default_dir());
    const std::string key = ResultCache::key(hash, rq.command, cache_args);
    if (!no_cache) {
      if (auto hit = cache.get(key)) {
        try {
          const Json stored = Json::parse(*hit);
          out << stored.at("output").get<std::string>();
          return stored.at("exit").get<int>();
        } catch (const std::exception&) {
          // unreadable entry: recompute and overwrite
        }
      }
    }

    const Outcome o = field.is_rational() ? dispatch(spec, Rationals(), rq) : dispatch(spec, PrimeField(field.prime), rq);

    Json doc;
    doc["command"] = rq.command;
    doc["spec_hash"] = hash;
    doc["field"] = field.to_string();
    doc["spec"] = emit_spec(spec);
    doc["inputs"] = inputs;
    doc["result"] = o.result;
    doc["violation"] = o.violation;
    const std::string text = csv ? to_csv(rq.command, o.result) : doc.dump(2) + "\n";
    out << text;
    if (!o.input_failure.empty()) {
      err << "error: " << o.input_failure << '\n';
      return kExitInput;
    }
    const int code = o.violation ? kExitViolation : kExitOk;
    if (o.violation) err << "theorem violation: see \"violation\" entries\n";
    if (!no_cache) cache.put(key, Json{{"exit", code}, {"output", text}}.dump());
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DenominatorError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace jacring
