#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arfkit/corpus.hpp"
#include "arfkit/report.hpp"

namespace {

using namespace arfkit;

enum Exit { ok = 0, mismatch = 1, usage = 2, cap = 3 };

struct Options {
  std::string format = "text";
  std::string caps;
  int extra_truncation = 0;
  bool timing = false;
  std::string action;
  std::string spec_path, left_path, right_path, module_path, ideal_path;
  std::string gens_text, v_text, strategy = "lex", mode = "weakly-arf", example_id;
  int apery_m = 0;
  bool bruteforce = false;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::configuration, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::configuration, path + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      require(used == item.size(), ErrorKind::configuration, "bad integer '" + item + "'");
    } catch (const std::logic_error&) {
      fail(ErrorKind::configuration, "bad integer '" + item + "'");
    }
  }
  require(!out.empty(), ErrorKind::configuration, "empty integer list");
  return out;
}

Settings settings_of(const Options& o) {
  Settings s;
  s.caps = parse_caps(o.caps, caps_from_environment());
  s.extra_truncation = o.extra_truncation;
  return s;
}

json semigroup_json(const NumericalSemigroup& h) {
  return {{"generators", h.generators()}, {"frobenius", h.frobenius()}, {"multiplicity", h.multiplicity()},
          {"conductor", h.conductor()}, {"small_elements", h.small_elements()}};
}

json semigroup_command(const Options& o, int& status) {
  const auto h = NumericalSemigroup::from_generators(parse_int_list(o.gens_text));
  if (o.action == "info") {
    json out = semigroup_json(h);
    out["gaps"] = h.gaps();
    out["genus"] = h.genus();
    return out;
  }
  if (o.action == "is-arf") {
    const auto w = arf_violation(h);
    json out = {{"semigroup", semigroup_json(h)}, {"arf", !w.has_value()}};
    if (w) out["witness"] = {{"x", (*w)[0]}, {"y", (*w)[1]}, {"z", (*w)[2]}, {"y+z-x", (*w)[1] + (*w)[2] - (*w)[0]}};
    return out;
  }
  if (o.action == "closure") {
    const auto a = arf_closure_fixpoint(h), b = arf_closure_multiplicity_sequence(h);
    if (!(a == b)) status = mismatch;
    return {{"semigroup", semigroup_json(h)}, {"closure", semigroup_json(a)}, {"multiplicity_sequence", multiplicity_sequence(h)},
            {"algorithms_agree", a == b}};
  }
  if (o.action == "blowup") return {{"semigroup", semigroup_json(h)}, {"blowup", semigroup_json(blowup_semigroup(h))}};
  if (o.action == "apery") {
    const int m = o.apery_m > 0 ? o.apery_m : h.multiplicity();
    return {{"semigroup", semigroup_json(h)}, {"m", m}, {"apery_set", h.apery_set(m)}};
  }
  fail(ErrorKind::configuration, "unknown semigroup action '" + o.action + "'");
}

template <ExactField K>
json chain_json(const ClosureChain<K>& c) {
  json steps = json::array();
  for (const auto& s : c.steps) {
    json st = {{"v", s.v}, {"mu", s.mu}, {"conductor", s.ring.conductor()}, {"codimension", s.ring.codimension()}};
    if (!s.contributors.empty()) st["contributors"] = s.contributors;
    steps.push_back(std::move(st));
  }
  return {{"kind", c.kind}, {"strategy", c.strategy}, {"steps", steps}, {"terminal", ring_to_json(c.terminal)}};
}

template <ExactField K>
json ideals_json(const BranchAlgebra<K>& a, const std::vector<OpenIdeal<K>>& ids) {
  json out = json::array();
  for (const auto& id : ids) {
    const auto st = is_stable(a, id.lattice);
    out.push_back({{"v", id.requested}, {"mu", mu(a, id.lattice)}, {"stable", st.stable},
                   {"realizer", element_to_json(*id.realizer)}, {"ideal", lattice_to_json(id.lattice)}});
  }
  return out;
}

template <ExactField K>
Lattice<K> chosen_ideal(const BranchAlgebra<K>& a, const Options& o) {
  if (!o.v_text.empty()) {
    const Levels v = parse_int_list(o.v_text);
    require(v.size() == a.branches(), ErrorKind::configuration, "--v has the wrong length");
    return closure_lattice(a, v);
  }
  if (!o.ideal_path.empty()) return ideal_from_json(a, read_json_file(o.ideal_path));
  require(a.is_local(), ErrorKind::configuration, "semi-local ring: pass --v or --ideal");
  return a.radical();
}

template <ExactField K>
json ring_command(const K& k, const json& spec, const Options& o, int& status) {
  const Settings s = settings_of(o);
  const BranchAlgebra<K> a = build_ring(k, spec, s);
  const std::string& act = o.action;
  if (act == "build") {
    json out = ring_to_json(a);
    out["truncation"] = a.truncation();
    return out;
  }
  if (act == "value-set") return {{"conductor", a.conductor()}, {"value_set", value_set(a)}};
  if (act == "lambda") return {{"lambda", ideals_json(a, lambda(a))}};
  if (act == "lambda-max") return {{"max_lambda", ideals_json(a, lambda_max(a))}};
  if (act == "is-weakly-arf") {
    const auto v = is_weakly_arf(a);
    json out = {{"weakly_arf", v.holds}, {"ideals_checked", v.ideals_checked}};
    if (v.witness_v) out["witness"] = {{"v", *v.witness_v}, {"element", element_to_json(*v.witness_element)}};
    if (o.bruteforce) {
      const auto b = is_weakly_arf_bruteforce(a);
      out["direct_oracle"] = {{"weakly_arf", b.holds}, {"elements_enumerated", b.elements_enumerated}};
      if (b.x) out["direct_oracle"]["witness"] = {{"x", element_to_json(*b.x)}, {"y", element_to_json(*b.y)}, {"z", element_to_json(*b.z)}};
      if (b.holds != v.holds) status = mismatch;
    }
    return out;
  }
  if (act == "is-arf") {
    const auto v = is_arf(a);
    json out = {{"arf", v.holds}, {"weakly_arf", v.weakly_arf}};
    if (v.unstable_v) out["unstable_v"] = *v.unstable_v;
    if (v.unreduced_v) out["unreduced_v"] = *v.unreduced_v;
    return out;
  }
  if (act == "stable") {
    const auto st = is_stable(a, chosen_ideal(a, o));
    json out = {{"stable", st.stable}, {"has_principal_reduction", st.has_principal_reduction}, {"profile", st.profile}};
    if (st.witness) out["witness"] = element_to_json(*st.witness);
    return out;
  }
  if (act == "blowup") {
    const auto b = blowup(a, chosen_ideal(a, o));
    json out = {{"ring", ring_to_json(b.ring)}, {"stabilization_index", b.stabilization_index}};
    if (b.reduction_number) out["reduction_number"] = *b.reduction_number;
    if (b.reduction) out["reduction"] = element_to_json(*b.reduction);
    return out;
  }
  if (act == "closure-weakly-arf") return chain_json(weakly_arf_closure(a));
  if (act == "closure-strict") {
    const auto sc = strict_closure(a);
    json names = json::array();
    for (const auto& p : sc.paths) names.push_back(p.first);
    if (!sc.agree) status = mismatch;
    return {{"ring", ring_to_json(sc.ring)}, {"path", sc.path}, {"paths", names}, {"agree", sc.agree}, {"strictly_closed", sc.ring == a}};
  }
  if (act == "chain") {
    require(o.strategy == "lex" || o.strategy == "all", ErrorKind::configuration, "--strategy must be lex or all");
    std::optional<Lattice<K>> first;
    if (!o.v_text.empty() || !o.ideal_path.empty()) first = chosen_ideal(a, o);
    json out = json::array();
    for (const auto& c : chain_def_9_9(a, o.strategy == "all" ? ChainStrategy::all_choices : ChainStrategy::lex_first, first))
      out.push_back(chain_json(c));
    return {{"chains", out}};
  }
  if (act == "invariants") {
    const auto li = local_invariants(a);
    return {{"embedding_dimension", li.embedding_dimension}, {"multiplicity", li.multiplicity},
            {"minimal_multiplicity", li.minimal_multiplicity}};
  }
  fail(ErrorKind::configuration, "unknown ring action '" + act + "'");
}

ArfMode parse_mode(const std::string& m) {
  if (m == "weakly-arf") return ArfMode::weakly_arf;
  if (m == "arf") return ArfMode::arf;
  fail(ErrorKind::configuration, "--mode must be weakly-arf or arf");
}

template <ExactField K>
json criteria_command(const K& k, const json& spec, const Options& o, int& status) {
  const Settings s = settings_of(o);
  const std::string& act = o.action;
  if (act == "fiber") {
    const json right = read_json_file(o.right_path);
    const auto au = fiber_product_audit(build_ring(k, spec, s), build_ring(k, right, s), parse_mode(o.mode));
    if (!au.agree) status = mismatch;
    return {{"mode", o.mode}, {"left", au.left}, {"right", au.right}, {"predicate", au.predicate}, {"direct", au.direct}, {"agree", au.agree}};
  }
  const BranchAlgebra<K> a = build_ring(k, spec, s);
  if (act == "idealization") {
    const auto m = module_from_json(a, read_json_file(o.module_path));
    const auto v = idealization_predicate(a, m, parse_mode(o.mode));
    return {{"mode", o.mode}, {"ring_test", v.ring_test}, {"normalization_module", v.normalization_module}, {"holds", v.holds}};
  }
  if (act == "audit-9-11") {
    const auto au = thm_9_11_audit(a);
    if (!au.violations.empty()) status = mismatch;
    json out = {{"c1_weakly_arf", au.c1}, {"c2_max_lambda", au.c2}, {"c3_chain_rings", au.c3}, {"c4_chain_max_lambda", au.c4},
                {"chains", au.chains}, {"violations", au.violations}};
    if (au.c2_failure) out["c2_failure_v"] = *au.c2_failure;
    return out;
  }
  if (act == "hypotheses-10-1") {
    const auto h = thm_10_1_hypotheses(a);
    return {{"local", h.local}, {"pairwise_transverse", h.pairwise_transverse}, {"branches_normal", h.branches_normal}, {"holds", h.holds}};
  }
  fail(ErrorKind::configuration, "unknown criteria action '" + act + "'");
}

int exit_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::resource_cap: return cap;
    case ErrorKind::internal: return mismatch;
    default: return usage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arfkit: weakly Arf and Arf rings of curve branches"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--caps", o.caps, "resource caps, e.g. torus=10000,bruteforce=65536,degree=24,lattice=256,nodes=1048576,chains=256");
  app.add_option("--extra-truncation", o.extra_truncation, "add to every working truncation level");
  app.add_flag("--timing", o.timing, "include wall time in the report");

  auto* sg = app.add_subcommand("semigroup", "numerical semigroups");
  sg->add_option("action", o.action, "info | is-arf | closure | blowup | apery")->required();
  sg->add_option("--gens", o.gens_text, "comma-separated generators")->required();
  sg->add_option("--m", o.apery_m, "Apery set modulus (default: multiplicity)");

  auto* ring = app.add_subcommand("ring", "rings given by a JSON spec");
  ring->add_option("action", o.action,
                   "build | value-set | lambda | lambda-max | is-weakly-arf | is-arf | stable | blowup | "
                   "closure-weakly-arf | closure-strict | chain | invariants")
      ->required();
  ring->add_option("--spec", o.spec_path, "ring spec file")->required();
  ring->add_option("--v", o.v_text, "valuation vector of I_v");
  ring->add_option("--ideal", o.ideal_path, "ideal spec file");
  ring->add_option("--strategy", o.strategy, "lex or all (chain)");
  ring->add_flag("--bruteforce", o.bruteforce, "also run the direct oracle (is-weakly-arf)");

  auto* crit = app.add_subcommand("criteria", "criterion-level verdicts and audits");
  crit->add_option("action", o.action, "idealization | fiber | audit-9-11 | hypotheses-10-1")->required();
  crit->add_option("--spec,--left", o.spec_path, "ring spec file")->required();
  crit->add_option("--right", o.right_path, "second ring spec (fiber)");
  crit->add_option("--module", o.module_path, "module spec (idealization)");
  crit->add_option("--mode", o.mode, "weakly-arf or arf");

  auto* ex = app.add_subcommand("example", "run a built-in fixture");
  ex->add_option("id", o.example_id, "fixture id, or 'list'")->required();

  auto* corpus = app.add_subcommand("corpus", "property suite over the built-in corpus");
  corpus->add_option("action", o.action, "run")->required()->check(CLI::IsMember({"run"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  std::vector<std::string> command(argv + 1, argv + argc);
  const auto start = std::chrono::steady_clock::now();
  int status = ok;
  json report;
  try {
    json inputs = json::object();
    json result;
    if (sg->parsed()) {
      inputs["gens"] = parse_int_list(o.gens_text);
      result = semigroup_command(o, status);
    } else if (ring->parsed()) {
      const json spec = read_json_file(o.spec_path);
      inputs["spec"] = spec;
      if (!o.ideal_path.empty()) inputs["ideal"] = read_json_file(o.ideal_path);
      result = with_field(spec, [&](const auto& k) { return ring_command(k, spec, o, status); });
    } else if (crit->parsed()) {
      const json spec = read_json_file(o.spec_path);
      inputs["spec"] = spec;
      if (!o.right_path.empty()) inputs["right"] = read_json_file(o.right_path);
      if (!o.module_path.empty()) inputs["module"] = read_json_file(o.module_path);
      result = with_field(spec, [&](const auto& k) { return criteria_command(k, spec, o, status); });
    } else if (ex->parsed()) {
      const auto all = registry();
      if (o.example_id == "list") {
        result = json::array();
        for (const auto& f : all) result.push_back({{"id", f.id}, {"summary", f.summary}});
      } else {
        const Fixture& f = find_fixture(all, o.example_id);
        inputs["spec"] = f.spec;
        const FixtureResult r = f.run(f, settings_of(o));
        result = r.to_json();
        result["summary"] = f.summary;
        if (!r.pass()) status = mismatch;
      }
    } else {
      json props = json::array();
      const auto res = run_corpus(settings_of(o), true);
      for (const auto& p : res) {
        props.push_back({{"name", p.name}, {"cases", p.cases}, {"failures", p.failures}, {"pass", p.pass()}});
        if (!p.pass()) status = mismatch;
      }
      result = {{"properties", props}, {"pass", status == ok}};
    }
    report = make_report(command, inputs, result);
  } catch (const Error& e) {
    status = exit_for(e.kind());
    report = make_report(command, json::object(), json::object());
    report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    std::cerr << "arfkit: " << e.what() << "\n";
  } catch (const json::exception& e) {
    status = usage;
    report = make_report(command, json::object(), json::object());
    report["error"] = {{"kind", "configuration"}, {"message", e.what()}};
    std::cerr << "arfkit: " << e.what() << "\n";
  }
  report["status"] = status;
  if (o.timing)
    report["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (o.format == "json") std::cout << report.dump(2) << "\n";
  else std::cout << render_text(report);
  return status;
}
