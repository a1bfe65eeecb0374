#include "logchart/cli.hpp"

#include "logchart/acceptance.hpp"
#include "logchart/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace logchart::cli {

using json_io::Json;
using json_io::to_json;

namespace {

enum class Verdict { ok, fail, error };

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ok: return "ok";
    case Verdict::fail: return "fail";
    default: return "error";
  }
}

int exit_code(Verdict v) { return v == Verdict::ok ? 0 : v == Verdict::fail ? 1 : 2; }

struct Outcome {
  Json result = Json::object();
  Verdict verdict = Verdict::ok;
  std::vector<std::string> table;
  std::optional<std::uint64_t> seed;
};

// Input files and arguments, accumulated for the digest.
class Inputs {
 public:
  Json load(const std::string& path) {
    std::string text;
    if (path == "-") {
      std::stringstream buf;
      buf << std::cin.rdbuf();
      text = buf.str();
    } else {
      std::ifstream in(path);
      if (!in) throw json_io::InputError(path, "cannot open file");
      std::stringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    material_ += text;
    material_.push_back('\0');
    return json_io::parse_text(text, path);
  }
  void note(const std::string& s) {
    material_ += s;
    material_.push_back('\0');
  }
  std::string digest() const { return json_io::fnv1a_hex(material_); }

 private:
  std::string material_;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string sizes_text(const std::vector<std::size_t>& v) {
  std::vector<std::string> s;
  for (auto x : v) s.push_back(std::to_string(x));
  return "(" + join(s, ", ") + ")";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string hom_summary(const MonoidHom& u) {
  return u.domain.to_string() + " -> " + u.codomain.to_string();
}

// ---- verbs ----------------------------------------------------------------

Outcome do_saturate(Inputs& in, const std::string& path) {
  AffineMonoid m = json_io::parse_monoid(in.load(path));
  AffineMonoid s = saturate(m);
  MonoidProperties p = classify(m);
  Outcome o;
  o.result = Json{{"input_properties", to_json(p)}, {"saturation", to_json(s)}};
  UnitsAndSharpQuotient us = units_and_sharp_quotient(s);
  o.result["unit_group"] = to_json(us.unit_group);
  o.result["hilbert_basis_of_sharp_quotient"] = Json::array();
  for (const auto& h : hilbert_basis(us.sharp)) o.result["hilbert_basis_of_sharp_quotient"].push_back(to_json(h));
  o.table.push_back("input      " + m.to_string());
  o.table.push_back("saturated  " + yes_no(p.saturated));
  o.table.push_back("M^sat      " + s.to_string());
  return o;
}

Outcome do_classify(Inputs& in, const std::string& monoid_path, const std::string& pres_path, unsigned word_bound) {
  Outcome o;
  if (!pres_path.empty()) {
    MonoidPresentation p = json_io::parse_presentation(in.load(pres_path));
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw json_io::InputError("$.relations", e.what());
    }
    Groupification g = groupify(p);
    AffineMonoid integral = integralize(p);
    auto violation = find_pseudo_integrality_violation(p, word_bound);
    o.result = Json{{"groupification", to_json(g.group)},
                    {"integral_image", to_json(integral)},
                    {"integral_image_properties", to_json(classify(integral))},
                    {"word_length_bound", std::to_string(word_bound)}};
    if (violation)
      o.result["not_integral_witness"] = Json{{"a", to_json(violation->first)}, {"b", to_json(violation->second)}};
    else
      o.result["not_integral_witness"] = nullptr;
    o.table.push_back("P^gp        " + g.group.to_string());
    o.table.push_back("P^int       " + integral.to_string());
    o.table.push_back(std::string("integral    ") +
                      (violation ? "no (a + b = a with b != 0 found)"
                                 : "no violation among words of length <= " + std::to_string(word_bound)));
    return o;
  }
  AffineMonoid m = json_io::parse_monoid(in.load(monoid_path));
  MonoidProperties p = classify(m);
  UnitsAndSharpQuotient us = units_and_sharp_quotient(m);
  o.result = Json{{"properties", to_json(p)},
                  {"unit_group", to_json(us.unit_group)},
                  {"sharp_quotient", to_json(us.sharp)}};
  if (p.fs) {
    Json hb = Json::array();
    for (const auto& h : hilbert_basis(us.sharp)) hb.push_back(to_json(h));
    o.result["hilbert_basis_of_sharp_quotient"] = hb;
  }
  o.table.push_back("monoid     " + m.to_string());
  o.table.push_back("fine " + yes_no(p.fine) + "  sharp " + yes_no(p.sharp) + "  saturated " + yes_no(p.saturated) +
                    "  fs " + yes_no(p.fs) + "  dim " + std::to_string(p.dimension));
  o.table.push_back("units      " + us.unit_group.to_string());
  return o;
}

Outcome do_check_chart(Inputs& in, const std::string& path, unsigned long p) {
  MonoidHom u = json_io::parse_hom(in.load(path));
  if (p != 0 && !is_prime(p)) throw json_io::InputError("--residue-char", "must be 0 or a prime");
  ChartClassification c = chart_classification(u, p);
  Outcome o;
  o.result = to_json(c);
  ExactnessVerdict ev = is_exact(u);
  o.result["exactness_witness"] = ev.witness ? to_json(*ev.witness) : Json(nullptr);
  if (!c.kummer) o.result["not_kummer_reason"] = is_kummer(u).reason;
  if (c.kummer) o.result["ramification_index"] = to_json(ramification_index(u));
  o.table.push_back("map          " + hom_summary(u));
  for (const auto& [name, flag] : std::vector<std::pair<std::string, bool>>{{"injective", c.injective},
                                                                            {"exact", c.exact},
                                                                            {"kummer", c.kummer},
                                                                            {"log smooth", c.log_smooth},
                                                                            {"log etale", c.log_etale},
                                                                            {"kummer etale", c.kummer_etale}})
    o.table.push_back((name + std::string(13 - name.size(), ' ')) + yes_no(flag));
  if (c.galois_group) o.table.push_back("galois group " + c.galois_group->to_string());
  return o;
}

Outcome do_pushout(Inputs& in, const std::string& left, const std::string& right, const std::string& mode_name) {
  MonoidHom u = json_io::parse_hom(in.load(left), "$left");
  MonoidHom v = json_io::parse_hom(in.load(right), "$right");
  PushoutMode mode;
  try {
    mode = parse_pushout_mode(mode_name);
  } catch (const std::invalid_argument& e) {
    throw json_io::InputError("--mode", e.what());
  }
  if (u.domain.ambient() != v.domain.ambient() || !same_monoid(u.domain, v.domain))
    throw json_io::InputError("$right.domain", "both maps must share the same domain monoid");
  Outcome o;
  o.result["mode"] = mode_name;
  if (mode == PushoutMode::raw) {
    RawPushout rp = raw_pushout(u, v);
    o.result["presentation"] = to_json(rp.presentation);
    o.result["left_generators"] = std::to_string(rp.left_generators);
    o.table.push_back("raw pushout: " + std::to_string(rp.presentation.generator_count) + " generators, " +
                      std::to_string(rp.presentation.relations.size()) + " relations");
    return o;
  }
  Pushout po = pushout(u, v, mode);
  o.result["monoid"] = to_json(po.monoid);
  o.result["left_map"] = to_json(po.left.group_map);
  o.result["right_map"] = to_json(po.right.group_map);
  o.result["properties"] = to_json(classify(po.monoid));
  o.table.push_back(mode_name + " pushout: " + po.monoid.to_string());
  return o;
}

Outcome do_covers(Inputs& in, const std::string& action, const std::string& path, unsigned long n,
                  const std::vector<unsigned long>& excluded) {
  AffineMonoid p = json_io::parse_monoid(in.load(path));
  if (n == 0) throw json_io::InputError("--annihilator", "must be positive");
  covers::LogPoint pt;
  try {
    pt = covers::make_log_point(p, excluded);
  } catch (const std::invalid_argument& e) {
    throw json_io::InputError("$", e.what());
  }
  for (auto q : excluded)
    if (n % q == 0)
      throw json_io::InputError("--annihilator", "level " + std::to_string(n) + " is divisible by the excluded prime " +
                                                      std::to_string(q));
  Outcome o;
  if (action == "classify") {
    auto cs = covers::classify_covers(pt, n);
    Json arr = Json::array();
    for (const auto& c : cs) arr.push_back(to_json(c));
    o.result = Json{{"level", std::to_string(n)}, {"covers", arr}};
    o.table.push_back(std::to_string(cs.size()) + " connected covers at level " + std::to_string(n));
    for (const auto& c : cs) o.table.push_back("  " + c.to_string());
    return o;
  }
  covers::CorrespondenceReport rep = covers::galois_correspondence_check(pt, n);
  o.result = to_json(rep);
  std::size_t matched = 0;
  for (const auto& pr : rep.pairs) matched += pr.match() ? 1 : 0;
  Json bad = Json::array();
  for (const auto& pr : rep.pairs)
    if (!pr.match())
      bad.push_back(Json{{"source", std::to_string(pr.source)}, {"target", std::to_string(pr.target)}});
  if (!bad.empty()) o.result["counterexamples"] = bad;
  o.verdict = rep.pass ? Verdict::ok : Verdict::fail;
  o.table.push_back(std::to_string(rep.covers.size()) + " covers, " + std::to_string(matched) + "/" +
                    std::to_string(rep.pairs.size()) + " ordered pairs match");
  return o;
}

Outcome do_group_cohomology(const std::vector<long>& invariants, unsigned long prime, std::size_t max_degree) {
  IntVector orders;
  for (auto d : invariants) {
    if (d < 1) throw json_io::InputError("--invariants", "cyclic orders must be positive");
    orders.push_back(d);
  }
  if (!is_prime_u64(prime)) throw json_io::InputError("--char", "must be a prime");
  FiniteAbelianGroup g = FiniteAbelianGroup::from_cyclic_orders(orders);
  auto h = finite_group_cohomology(g, prime, max_degree);
  Outcome o;
  o.result = Json{{"group", to_json(g)}, {"characteristic", std::to_string(prime)}, {"dimensions", json_io::sizes_to_json(h)}};
  o.table.push_back("H^i(" + (g.is_trivial() ? std::string("0") : g.to_string()) + ", F_" + std::to_string(prime) +
                    ") for i <= " + std::to_string(max_degree) + ": " + sizes_text(h));
  return o;
}

Outcome do_cech(Inputs& in, const std::string& path, unsigned long prime, unsigned long bound, std::size_t length,
                const std::vector<long>& degree) {
  MonoidHom u = json_io::parse_hom(in.load(path));
  if (!is_prime_u64(prime)) throw json_io::InputError("--char", "must be a prime");
  if (length < 3) throw json_io::InputError("--length", "needs at least 3 terms");
  if (bound == 0) throw json_io::InputError("--degree-bound", "must be positive");
  Outcome o;
  if (!degree.empty()) {
    IntVector q(degree.begin(), degree.end());
    if (q.size() != u.codomain.ambient().dimension())
      throw json_io::InputError("--degree", "expected " + std::to_string(u.codomain.ambient().dimension()) +
                                                " coordinates");
    CechSlice s = cech_complex_degreewise(u, prime, q, length);
    o.result = to_json(s);
    o.table.push_back("degree " + to_string(q) + ": dimensions " + sizes_text(s.dimensions) + ", cohomology " +
                      sizes_text(s.augmented_cohomology) + (s.exact ? ", exact" : ", NOT exact"));
    return o;
  }
  CechGroupComparison c = cech_vs_group_cohomology(u, prime, length - 3, bound);
  o.result = to_json(c);
  o.table.push_back("degrees examined   " + std::to_string(c.degrees_examined));
  o.table.push_back("augmented exact    " + yes_no(c.exact_everywhere));
  o.table.push_back("Cech (trivial)     " + sizes_text(c.cech_trivial_class));
  o.table.push_back("Cech (other)       " + sizes_text(c.cech_other_classes));
  o.table.push_back("H^i(G, F_" + std::to_string(prime) + ")" + std::string(prime < 10 ? 8 : 7, ' ') +
                    sizes_text(c.group_cohomology));
  o.table.push_back("agree              " + yes_no(c.match));
  return o;
}

Outcome do_polydisc(std::size_t n, unsigned long level, unsigned long prime) {
  if (level == 0) throw json_io::InputError("--level", "must be positive");
  if (n > 12) throw json_io::InputError("--n", "at most 12 circle factors");
  PolydiscCohomology pc;
  try {
    pc = polydisc_cohomology(n, level, prime);
  } catch (const std::invalid_argument& e) {
    throw json_io::InputError("--char", e.what());
  }
  Outcome o;
  o.result = to_json(pc);
  o.table.push_back("characters " + std::to_string(pc.characters) + " over F_" + std::to_string(pc.prime) +
                    ", contributing " + std::to_string(pc.contributing_characters));
  o.table.push_back("H^i totals " + sizes_text(pc.totals));
  return o;
}

Outcome do_verify_suite(const std::string& scale, std::uint64_t seed, const std::string& fault, bool timings) {
  acceptance::SuiteOptions opt;
  try {
    opt.scale = acceptance::parse_scale(scale);
  } catch (const std::invalid_argument& e) {
    throw json_io::InputError("--scale", e.what());
  }
  opt.seed = seed;
  if (fault == "saturate") opt.saturate = acceptance::faulty_saturate;
  else if (!fault.empty()) throw json_io::InputError("--inject-fault", "unknown fault '" + fault + "'");
  auto results = acceptance::run_suite(opt);
  Outcome o;
  o.seed = seed;
  Json arr = Json::array();
  bool all = true;
  for (const auto& r : results) {
    Json j{{"id", std::to_string(r.id)}, {"name", r.name}, {"pass", r.pass}, {"summary", r.summary},
           {"evidence", r.evidence}};
    if (timings) {
      std::ostringstream t;
      t << std::fixed << std::setprecision(3) << r.seconds;
      j["seconds"] = t.str();
    }
    arr.push_back(j);
    all = all && r.pass;
    o.table.push_back(acceptance::format_line(r));
  }
  o.result = Json{{"scale", scale}, {"criteria", arr}, {"all_pass", all}};
  o.verdict = all ? Verdict::ok : Verdict::fail;
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with fs monoids, Kummer charts, covers and cohomology", "logchart"};
  app.require_subcommand(1);
  bool timings = false;
  app.add_flag("--timings", timings, "Include wall-clock durations in the report");

  std::string monoid_path, pres_path, hom_path, left_path, right_path, mode = "fs";
  unsigned word_bound = 6;
  unsigned long residue = 0, annihilator = 0, prime = 0, degree_bound = 12, level = 0;
  std::size_t max_degree = 4, length = 5, n_factors = 0;
  std::vector<unsigned long> excluded;
  std::vector<long> invariants, degree;
  std::string scale = "full", fault;
  std::uint64_t seed = acceptance::kDefaultSeed;

  auto* sat = app.add_subcommand("saturate", "Saturation and Hilbert basis of a monoid");
  sat->add_option("monoid", monoid_path, "Monoid JSON file ('-' for standard input)")->required();

  auto* cls = app.add_subcommand("classify", "Fine/sharp/saturated flags, units, sharp quotient");
  auto* cls_m = cls->add_option("--monoid", monoid_path, "Monoid JSON file");
  auto* cls_p = cls->add_option("--presentation", pres_path, "Presentation JSON file");
  cls->add_option("--word-bound", word_bound, "Word length bound for the integrality search")->check(CLI::Range(1U, 20U));
  cls_m->excludes(cls_p);
  cls->require_option(1);

  auto* chk = app.add_subcommand("check-chart", "Classify a chart u: P -> Q");
  chk->add_option("--hom", hom_path, "Hom JSON file")->required();
  chk->add_option("--residue-char", residue, "Residue characteristic (0 or a prime)");

  auto* po = app.add_subcommand("pushout", "Amalgamated sum of u: P -> Q and v: P -> R");
  po->add_option("--left", left_path, "Hom JSON for u")->required();
  po->add_option("--right", right_path, "Hom JSON for v")->required();
  po->add_option("--mode", mode, "raw | fine | fs")->check(CLI::IsMember({"raw", "fine", "fs"}));

  auto* cov = app.add_subcommand("covers", "Kummer etale covers of a log point");
  cov->require_subcommand(1);
  auto* cov_cls = cov->add_subcommand("classify", "List the connected covers at one level");
  auto* cov_chk = cov->add_subcommand("check", "Check the Galois correspondence at one level");
  for (auto* sc : {cov_cls, cov_chk}) {
    sc->add_option("--monoid", monoid_path, "Sharp fs monoid JSON file")->required();
    sc->add_option("--annihilator", annihilator, "Level n")->required()->check(CLI::Range(1UL, 1000000UL));
    sc->add_option("--exclude-prime", excluded, "Non-invertible residue prime (repeatable)");
  }

  auto* coh = app.add_subcommand("cohomology", "Group, Cech and Koszul cohomology over F_l");
  coh->require_subcommand(1);
  auto* grp = coh->add_subcommand("group", "H^i(G, F_l) for finite abelian G");
  grp->add_option("--invariants", invariants, "Cyclic orders, comma separated")->delimiter(',');
  grp->add_option("--char", prime, "Coefficient characteristic")->required();
  grp->add_option("--max-degree", max_degree, "Highest degree")->check(CLI::Range(std::size_t{0}, std::size_t{40}));
  auto* cech = coh->add_subcommand("cech", "Cech complex of a standard Kummer cover");
  cech->add_option("--hom", hom_path, "Kummer hom JSON file")->required();
  cech->add_option("--char", prime, "Coefficient characteristic")->required();
  cech->add_option("--degree-bound", degree_bound, "Bound on |free coordinates| of degrees")
      ->check(CLI::Range(1UL, 100UL));
  cech->add_option("--length", length, "Number of terms, counting k[P]_q")
      ->check(CLI::Range(std::size_t{3}, std::size_t{9}));
  cech->add_option("--degree", degree, "Report a single degree (comma separated)")->delimiter(',');
  auto* poly = coh->add_subcommand("polydisc", "Continuous cohomology of the torus via Koszul complexes");
  poly->add_option("--n", n_factors, "Number of circle factors")->required();
  poly->add_option("--level", level, "Character level m")->required();
  poly->add_option("--char", prime, "Prime = 1 mod m (default: the smallest)");

  auto* ver = app.add_subcommand("verify-suite", "Run the acceptance battery");
  ver->add_option("--scale", scale, "smoke | full")->check(CLI::IsMember({"smoke", "full"}));
  ver->add_option("--seed", seed, "Seed for randomized criteria");
  ver->add_option("--inject-fault", fault)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    Json report{{"verb", args.empty() ? "" : args.front()},
                {"input_digest", json_io::fnv1a_hex(join(args, std::string(1, '\0')))},
                {"result", nullptr},
                {"verdict", "error"},
                {"error", Json{{"path", "command line"}, {"message", e.what()}}}};
    out << report.dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string verb;
  for (auto* sc : app.get_subcommands()) verb = sc->get_name();
  for (auto* sc : {cov, coh})
    if (sc->parsed())
      for (auto* sub : sc->get_subcommands()) verb += " " + sub->get_name();

  Inputs inputs;
  inputs.note(join(args, std::string(1, '\0')));
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  std::optional<Json> error;
  try {
    if (sat->parsed()) o = do_saturate(inputs, monoid_path);
    else if (cls->parsed()) o = do_classify(inputs, monoid_path, pres_path, word_bound);
    else if (chk->parsed()) o = do_check_chart(inputs, hom_path, residue);
    else if (po->parsed()) o = do_pushout(inputs, left_path, right_path, mode);
    else if (cov_cls->parsed()) o = do_covers(inputs, "classify", monoid_path, annihilator, excluded);
    else if (cov_chk->parsed()) o = do_covers(inputs, "check", monoid_path, annihilator, excluded);
    else if (grp->parsed()) o = do_group_cohomology(invariants, prime, max_degree);
    else if (cech->parsed()) o = do_cech(inputs, hom_path, prime, degree_bound, length, degree);
    else if (poly->parsed()) o = do_polydisc(n_factors, level, prime);
    else if (ver->parsed()) o = do_verify_suite(scale, seed, fault, timings);
  } catch (const json_io::InputError& e) {
    error = Json{{"path", e.path()}, {"message", e.message()}};
  } catch (const std::invalid_argument& e) {
    error = Json{{"path", "$"}, {"message", e.what()}};
  } catch (const std::exception& e) {
    error = Json{{"path", ""}, {"message", std::string("internal error: ") + e.what()}};
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Json report{{"verb", verb}, {"input_digest", inputs.digest()}};
  if (error) {
    report["result"] = nullptr;
    report["verdict"] = "error";
    report["error"] = *error;
    o.verdict = Verdict::error;
    o.table = {"error at " + (*error)["path"].get<std::string>() + ": " + (*error)["message"].get<std::string>()};
  } else {
    report["result"] = o.result;
    report["verdict"] = verdict_name(o.verdict);
  }
  if (o.seed) report["seed"] = std::to_string(*o.seed);
  if (timings) {
    std::ostringstream t;
    t << std::fixed << std::setprecision(3) << seconds;
    report["duration_seconds"] = t.str();
  }
  out << report.dump(2) << "\n";
  for (const auto& line : o.table) err << line << "\n";
  err << "verdict: " << verdict_name(o.verdict) << "\n";
  return exit_code(o.verdict);
}

}  // namespace logchart::cli
