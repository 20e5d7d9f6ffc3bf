// wittlift: decide, certify and exhibit mod-p^2 lifts of modular
// representations of finite groups, plus a desk-scale local-Galois model.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "wittlift/cohomology.hpp"
#include "wittlift/verify.hpp"

namespace {

using nlohmann::json;
using namespace wittlift;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInputError = 2;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameters("cannot open '" + path + "'");
  json j;
  in >> j;
  return j;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InvalidParameters("cannot write '" + out_path + "'");
  out << j.dump(2) << "\n";
}

std::vector<int64_t> parse_coords(const std::string& s) {
  std::vector<int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  return out;
}

int cmd_verify_paper(const std::string& only, const std::string& recheck_path,
                     const std::string& json_path) {
  if (!recheck_path.empty()) {
    json saved = load_json(recheck_path);
    std::string err;
    if (!recheck_report(saved, &err)) {
      std::cerr << "recheck FAILED: " << err << "\n";
      return kExitCheckFailure;
    }
    std::cout << "recheck OK: every stored witness re-verifies\n";
    return kExitPass;
  }
  VerifyReport report = verify_paper(only);
  std::cout << report.to_markdown();
  if (!json_path.empty()) emit(report.to_json(), json_path);
  return report.all_pass() ? kExitPass : kExitCheckFailure;
}

int cmd_check_lift(const std::string& group_path, const std::string& rep_path,
                   bool exhaustive, uint64_t budget, bool emit_cocycle,
                   const std::string& out_path) {
  auto group = FiniteGroup::from_json(load_json(group_path));
  if (group->order() > 64)
    throw InvalidParameters("check-lift: |G| must be <= 64");
  Representation rep = Representation::from_json(load_json(rep_path), group);
  if (!rep.satisfies_relators())
    throw InvalidParameters(
        "RelatorViolation: generator images violate a group relator");
  std::string err;
  if (!rep.verify_homomorphism(&err))
    throw InvalidParameters("input is not a homomorphism: " + err);

  TwoCocycle cocycle = obstruction_class(rep);
  ObstructionCertificate cert = is_coboundary(cocycle);
  if (exhaustive) {
    SearchOutcome s = exhaustive_lift_search(rep, budget);
    if (s.complete)
      cert.stamp = ExhaustiveStamp{s.searched, s.complete, s.found};
  }
  json out = cert.to_json();
  out["version"] = kToolVersion;
  if (emit_cocycle) {
    uint32_t n = group->order();
    json table = json::array();
    for (uint32_t g = 0; g < n; ++g) {
      json row = json::array();
      for (uint32_t h = 0; h < n; ++h) row.push_back(cocycle.at(g, h));
      table.push_back(std::move(row));
    }
    out["cocycle_table"] = std::move(table);
  }
  if (!cert.reverify(&err)) {
    std::cerr << "certificate failed re-verification: " << err << "\n";
    return kExitCheckFailure;
  }
  emit(out, out_path);
  return kExitPass;
}

int cmd_search(const std::string& group_path, uint32_t field_q,
               uint32_t max_dim, uint64_t budget, uint64_t seed,
               const std::string& library_path, const std::string& out_path) {
  auto group = FiniteGroup::from_json(load_json(group_path));
  if (group->order() > 64)
    throw InvalidParameters("search: |G| must be <= 64");
  if (group->relators().empty())
    throw InvalidParameters("search: the group needs a presentation");
  if (max_dim == 0) throw InvalidParameters("search: --max-dim must be >= 1");
  uint32_t p = 2, m = 1;
  {
    uint32_t q = field_q;
    for (p = 2; p <= q; ++p) {
      bool prime = true;
      for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) prime = false;
      if (prime && q % p == 0) break;
    }
    m = 0;
    while (q > 1) {
      if (q % p != 0)
        throw InvalidParameters("search: --field must be a prime power");
      q /= p;
      ++m;
    }
    if (m == 0) throw InvalidParameters("search: --field must be >= 2");
  }
  auto k = FqField::make(p, m);

  json records = json::array();
  std::set<std::string> seen;
  auto check_rep = [&](const Representation& rep, const std::string& origin) {
    if (!rep.satisfies_relators()) return;
    std::string err;
    if (!rep.verify_homomorphism(&err)) return;
    json key = json::array();
    for (const auto& img : rep.generator_images()) key.push_back(img.to_json());
    if (!seen.insert(key.dump()).second) return;
    auto cert = is_coboundary(obstruction_class(rep));
    records.push_back({{"origin", origin},
                       {"dim", rep.dim()},
                       {"verdict", cert.lifts() ? "LIFTS" : "OBSTRUCTED"},
                       {"certificate", cert.to_json()}});
  };

  if (!library_path.empty())
    for (const auto& rj : load_json(library_path))
      check_rep(Representation::from_json(rj, group), "library");

  std::mt19937_64 rng(seed);
  size_t gens = group->generators().size();
  uint64_t tried = 0;
  for (; tried < budget; ++tried) {
    uint32_t dim = 1 + uint32_t(tried % max_dim);
    std::vector<Mat> imgs;
    for (size_t s = 0; s < gens; ++s) {
      Mat img = Mat::identity(k, dim);
      for (uint32_t i = 0; i < dim; ++i)
        for (uint32_t j = i + 1; j < dim; ++j)
          img.set(i, j, k->elem_at(rng() % k->size()));
      imgs.push_back(std::move(img));
    }
    check_rep(Representation(group, k, dim, std::move(imgs)), "generated");
  }

  json out = {{"version", kToolVersion},
              {"group", group->name()},
              {"field", field_q},
              {"max_dim", max_dim},
              {"budget", budget},
              {"seed", seed},
              {"candidates_tried", tried},
              {"records", records},
              {"coverage", "INCOMPLETE"},
              {"global_status", "OPEN"}};
  emit(out, out_path);
  return kExitPass;
}

ModelPtr make_model(uint32_t p, uint32_t d) {
  return std::make_shared<LocalModel>(p, d, 2);
}

int cmd_local_lift_pair(uint32_t p, uint32_t d, const std::string& x1s,
                        const std::string& x2s, const std::string& out_path) {
  auto model = make_model(p, d);
  auto x1 = KummerClass::make(model, 1, parse_coords(x1s));
  auto x2 = KummerClass::make(model, 1, parse_coords(x2s));
  auto [t1, t2] = lift_orthogonal_pair(x1, x2);
  emit({{"version", kToolVersion},
        {"x1_lift", t1.to_json()},
        {"x2_lift", t2.to_json()},
        {"cup_mod_p2", cup(t1, t2).value}},
       out_path);
  return kExitPass;
}

int cmd_local_heisenberg(bool do_build, const std::string& in_path,
                         const std::string& out_path) {
  json in = load_json(in_path);
  if (do_build) {
    auto mj = in.at("model");
    auto model = make_model(mj.at("p").get<uint32_t>(),
                            mj.at("d").get<uint32_t>());
    auto cls = [&](const char* key) {
      return KummerClass::make(
          model, 1, in.at(key).get<std::vector<int64_t>>());
    };
    HeisenbergRep r =
        heisenberg_build(model, cls("x1"), cls("x2"), cls("twist"));
    emit(r.to_json(), out_path);
    return kExitPass;
  }
  HeisenbergRep r = HeisenbergRep::from_json(in);
  HeisenbergRep lift = heisenberg_lift(r);
  emit(lift.to_json(), out_path);
  return kExitPass;
}

int cmd_local_tame(uint32_t p, uint32_t q, const std::string& as,
                   const std::string& bs, const std::string& out_path) {
  TameModel tm(p, q);
  auto pa = parse_coords(as), pb = parse_coords(bs);
  if (pa.size() != 2 || pb.size() != 2)
    throw InvalidParameters("tame-symbol: classes are 'v,u' pairs");
  TameClass a{uint32_t(((pa[0] % p) + p) % p), uint32_t(((pa[1] % p) + p) % p)};
  TameClass b{uint32_t(((pb[0] % p) + p) % p), uint32_t(((pb[1] % p) + p) % p)};
  emit({{"version", kToolVersion},
        {"symbol", tame_symbol(tm, a, b)},
        {"d_a", tame_d_map(tm, a)},
        {"d_b", tame_d_map(tm, b)}},
       out_path);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
  if (const char* threads = std::getenv("WITTLIFT_THREADS"))
    if (int t = std::atoi(threads); t > 0) omp_set_num_threads(t);
#endif

  CLI::App app{"mod-p^2 lifting of modular representations of finite groups"};
  app.set_version_flag("--version", wittlift::kToolVersion);
  app.require_subcommand(1);

  std::string only, recheck_path, json_path;
  auto* verify = app.add_subcommand(
      "verify-paper", "run the acceptance suite (Markdown report to stdout)");
  verify->add_option("--only", only, "run exactly one section by claim tag");
  verify->add_option("--recheck", recheck_path,
                     "re-verify the stored witnesses of a saved JSON report");
  verify->add_option("--json", json_path, "also write the JSON report here");

  std::string group_path, rep_path, out_path;
  bool exhaustive = false, emit_cocycle = false;
  uint64_t budget = 1000000;
  auto* check = app.add_subcommand(
      "check-lift", "certify whether a representation lifts to W2(k)");
  check->add_option("--group", group_path, "group JSON file")->required();
  check->add_option("--rep", rep_path, "representation JSON file")->required();
  check->add_flag("--exhaustive", exhaustive,
                  "cross-check by brute force when the space fits the budget");
  check->add_option("--budget", budget, "candidate budget for --exhaustive");
  check->add_flag("--emit-cocycle", emit_cocycle,
                  "include the full obstruction cocycle table");
  check->add_option("--out", out_path, "write the certificate JSON here");

  std::string s_group, s_library, s_out;
  uint32_t s_field = 2, s_max_dim = 2;
  uint64_t s_budget = 1000, s_seed = 1;
  auto* search = app.add_subcommand(
      "search", "bounded per-representation search (never a global verdict)");
  search->add_option("--group", s_group, "group JSON file")->required();
  search->add_option("--field", s_field, "coefficient field size (prime power)");
  search->add_option("--max-dim", s_max_dim, "maximum dimension");
  search->add_option("--budget", s_budget, "number of candidates to draw");
  search->add_option("--seed", s_seed, "RNG seed (echoed in the report)");
  search->add_option("--library", s_library,
                     "JSON array of representations to check first");
  search->add_option("--out", s_out, "write the report JSON here");

  auto* local = app.add_subcommand("local", "local-Galois model operations");
  local->require_subcommand(1);

  uint32_t l_p = 3, l_d = 4;
  std::string l_x1, l_x2, l_out;
  auto* lift_pair =
      local->add_subcommand("lift-pair", "lift an orthogonal pair mod p^2");
  lift_pair->add_option("--p", l_p, "odd prime")->required();
  lift_pair->add_option("--d", l_d, "even rank")->required();
  lift_pair->add_option("--x1", l_x1, "level-1 class, comma-separated")
      ->required();
  lift_pair->add_option("--x2", l_x2, "level-1 class, comma-separated")
      ->required();
  lift_pair->add_option("--out", l_out, "write the result JSON here");

  bool h_build = false, h_lift = false;
  std::string h_in, h_out;
  auto* heis = local->add_subcommand("heisenberg",
                                     "build or lift a Heisenberg rep");
  heis->add_flag("--build", h_build, "build from {model, x1, x2, twist}");
  heis->add_flag("--lift", h_lift, "lift a level-1 rep JSON to level 2");
  heis->add_option("--in", h_in, "input JSON file")->required();
  heis->add_option("--out", h_out, "write the result JSON here");

  uint32_t t_p = 3, t_q = 7;
  std::string t_a, t_b, t_out;
  auto* tame = local->add_subcommand("tame-symbol",
                                     "evaluate the tame symbol pairing");
  tame->add_option("--p", t_p, "prime p")->required();
  tame->add_option("--q", t_q, "residue size q = 1 mod p, != 1 mod p^2")
      ->required();
  tame->add_option("--a", t_a, "first class as 'v,u'")->required();
  tame->add_option("--b", t_b, "second class as 'v,u'")->required();
  tame->add_option("--out", t_out, "write the result JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return cmd_verify_paper(only, recheck_path, json_path);
    if (*check)
      return cmd_check_lift(group_path, rep_path, exhaustive, budget,
                            emit_cocycle, out_path);
    if (*search)
      return cmd_search(s_group, s_field, s_max_dim, s_budget, s_seed,
                        s_library, s_out);
    if (*lift_pair) return cmd_local_lift_pair(l_p, l_d, l_x1, l_x2, l_out);
    if (*heis) {
      if (h_build == h_lift)
        throw InvalidParameters("heisenberg: pass exactly one of --build/--lift");
      return cmd_local_heisenberg(h_build, h_in, h_out);
    }
    if (*tame) return cmd_local_tame(t_p, t_q, t_a, t_b, t_out);
  } catch (const InvalidParameters& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return kExitInputError;
  } catch (const PreconditionViolated& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return kExitInputError;
  } catch (const NotOrthogonal& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return kExitInputError;
  } catch (const CupObstruction& ex) {
    std::cerr << "obstructed: " << ex.what() << "\n";
    return kExitCheckFailure;
  } catch (const nlohmann::json::exception& ex) {
    std::cerr << "input error: malformed JSON: " << ex.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitInputError;
}
