// Command line front end: generation, validation, representation building,
// and reporting for poset nets.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "nets/cylinder.hpp"
#include "nets/limits.hpp"
#include "nets/serialize.hpp"

using namespace nets;

namespace {

struct Options {
  std::string out = "text";  // text | json | dot
  int probeDepth = 8;
  double tol = 0.0;  // 0 = per-check defaults
  unsigned seed = 7;
  std::string base;
  std::string markers;
  std::string arc;
  std::string pairs;
  std::string blocks = "2,2";
  int grid = 0;
  int stage = 0;
  int element = 0;
  int samples = 100;
};

std::vector<Rat> parse_rats(const std::string& csv) {
  std::vector<Rat> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rat::fromString(item));
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void print_report(const Report& r, const Options& opt,
                  const std::string& command) {
  if (opt.out == "json") {
    Json j = report_to_json(r);
    j["command"] = command;
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const Check& c : r.checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (c.tol > 0)
      std::cout << "  residual=" << c.residual << " tol=" << c.tol;
    if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
    std::cout << "\n";
  }
  std::cout << (r.ok() ? "OK" : "FAILED") << "\n";
}

int report_exit(const Report& r) { return r.ok() ? 0 : 1; }

// Infer cylinder structure from a net whose poset uses the (i,l) labels.
CylinderPoset cylinder_of(const Net& n) {
  int sz = n.poset.size();
  int N = 0;
  while (N * N < sz) ++N;
  if (N * N != sz || N < 2)
    throw std::runtime_error("net is not over a cylinder poset");
  CylinderPoset cn = cylinder_poset(N);
  if (!(cn.poset == n.poset))
    throw std::runtime_error("net is not over a cylinder poset");
  return cn;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"poset net toolkit"};
  app.require_subcommand(1);
  Options opt;
  int N = 4;
  std::string inputPath;

  auto addCommon = [&](CLI::App* c) {
    c->add_option("--out", opt.out, "output format: text|json|dot");
    c->add_option("--probe-depth", opt.probeDepth, "probe copies per index");
    c->add_option("--tol", opt.tol, "override tolerance");
    c->add_option("--seed", opt.seed, "random seed");
  };

  auto* genCyl = app.add_subcommand("gen-cylinder", "emit the N x N cylinder");
  genCyl->add_option("N", N, "cylinder size")->required();
  addCommon(genCyl);

  auto* genPn = app.add_subcommand("gen-pn", "emit the marker interval poset");
  genPn->add_option("--markers", opt.markers, "comma list of rationals")
      ->required();
  addCommon(genPn);

  auto* isoCheck =
      app.add_subcommand("iso-check", "interval poset vs cylinder");
  isoCheck->add_option("--markers", opt.markers)->required();
  addCommon(isoCheck);

  auto* pi1 = app.add_subcommand("pi1", "fundamental group of a poset");
  pi1->add_option("input", inputPath, "poset json")->required();
  pi1->add_option("--base", opt.base, "base point label");
  addCommon(pi1);

  auto* quot = app.add_subcommand("quotient", "marker interval of a grid arc");
  quot->add_option("--markers", opt.markers)->required();
  quot->add_option("--arc", opt.arc, "arc endpoints u,v")->required();
  quot->add_option("--grid", opt.grid, "uniform grid size");
  addCommon(quot);

  auto* valNet = app.add_subcommand("validate-net", "validate a net document");
  valNet->add_option("input", inputPath)->required();
  addCommon(valNet);

  auto* causality = app.add_subcommand("check-causality",
                                       "commutativity over disjoint pairs");
  causality->add_option("input", inputPath)->required();
  causality->add_option("--pairs", opt.pairs,
                        "semicolon list of label pairs a,b;c,d");
  addCommon(causality);

  auto* buildRep =
      app.add_subcommand("build-rep", "faithful rep of a cylinder net");
  buildRep->add_option("input", inputPath)->required();
  addCommon(buildRep);

  auto* holo = app.add_subcommand("holonomy", "holonomy of a net bundle");
  holo->add_option("input", inputPath)->required();
  holo->add_option("--base", opt.base);
  addCommon(holo);

  auto* invState = app.add_subcommand(
      "invariant-state", "averaged state of a random inner automorphism");
  invState->add_option("--blocks", opt.blocks, "algebra block sizes");
  addCommon(invState);

  auto* limitCmd = app.add_subcommand("limit", "limit of a net system");
  limitCmd->add_option("input", inputPath)->required();
  addCommon(limitCmd);

  auto* profile = app.add_subcommand("norm-profile",
                                     "stage norms of a sampled element");
  profile->add_option("input", inputPath)->required();
  profile->add_option("--stage", opt.stage);
  profile->add_option("--element", opt.element);
  addCommon(profile);

  auto* transfer = app.add_subcommand("transfer-check",
                                      "injectivity transfer of a system");
  transfer->add_option("input", inputPath)->required();
  transfer->add_option("--samples", opt.samples);
  addCommon(transfer);

  CLI11_PARSE(app, argc, argv);

  try {
    if (genCyl->parsed()) {
      CylinderPoset cn = cylinder_poset(N);
      if (opt.out == "dot")
        std::cout << poset_to_dot(cn.poset);
      else
        std::cout << poset_to_json(cn.poset).dump(2) << "\n";
      return 0;
    }
    if (genPn->parsed()) {
      MarkedCircle mc = make_marked_circle(parse_rats(opt.markers));
      IntervalPosetPN pn = interval_poset(mc);
      if (opt.out == "dot")
        std::cout << poset_to_dot(pn.poset);
      else
        std::cout << poset_to_json(pn.poset).dump(2) << "\n";
      return 0;
    }
    if (isoCheck->parsed()) {
      MarkedCircle mc = make_marked_circle(parse_rats(opt.markers));
      IntervalPosetPN pn = interval_poset(mc);
      PnCnIso iso = iso_pn_cn(pn);
      Report r;
      r.merge(validate_morphism(iso.to));
      r.merge(validate_morphism(iso.from));
      bool round = true;
      for (int i = 0; i < pn.poset.size(); ++i)
        if (iso.from.map[iso.to.map[i]] != i) round = false;
      for (int i = 0; i < iso.cn.poset.size(); ++i)
        if (iso.to.map[iso.from.map[i]] != i) round = false;
      r.add("round_trips", round);
      bool len = true;
      const int n = mc.N();
      for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k) {
          auto [ci, cl] = iso.cn.coords(iso.to.map[pn.index(i, k)]);
          if (ci != i || cl != interval_length(n, i, k)) len = false;
        }
      r.add("length_formula", len);
      print_report(r, opt, "iso-check");
      return report_exit(r);
    }
    if (pi1->parsed()) {
      Poset p = poset_from_json(load_json(inputPath));
      int base = opt.base.empty() ? 0 : p.index(opt.base);
      GroupPresentation pres = pi1_presentation(p, base);
      H1Invariants h = h1_invariants(pres);
      if (opt.out == "json") {
        Json j{{"generators", pres.ngens},
               {"relators", pres.relators.size()},
               {"h1_free_rank", h.freeRank},
               {"h1_torsion", h.torsion}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "generators " << pres.ngens << "\nrelators "
                  << pres.relators.size() << "\nH1 free rank " << h.freeRank
                  << "\nH1 torsion";
        for (long long t : h.torsion) std::cout << " " << t;
        std::cout << "\n";
      }
      return 0;
    }
    if (quot->parsed()) {
      std::vector<Rat> markers = parse_rats(opt.markers);
      MarkedCircle mc = opt.grid > 0
                            ? uniform_grid_circle(markers, opt.grid)
                            : make_marked_circle(markers);
      std::vector<Rat> ends = parse_rats(opt.arc);
      if (ends.size() != 2) throw std::runtime_error("--arc needs u,v");
      auto [i, k] = quotient_rf(ends[0], ends[1], mc);
      if (opt.out == "json")
        std::cout << Json{{"i", i}, {"k", k}}.dump(2) << "\n";
      else
        std::cout << "(x" << i << ",x" << k << ")\n";
      return 0;
    }
    if (valNet->parsed()) {
      Net n = net_from_json(load_json(inputPath));
      Report r = validate_net(n, opt.tol > 0 ? opt.tol : 1e-12);
      print_report(r, opt, "validate-net");
      return report_exit(r);
    }
    if (causality->parsed()) {
      Net n = net_from_json(load_json(inputPath));
      Disjointness d{n.poset, {}};
      std::stringstream ss(opt.pairs);
      std::string pair;
      while (std::getline(ss, pair, ';')) {
        auto comma = pair.find(',');
        if (comma == std::string::npos)
          throw std::runtime_error("bad --pairs entry " + pair);
        d.relate(n.poset.index(pair.substr(0, comma)),
                 n.poset.index(pair.substr(comma + 1)));
      }
      Report r = check_causality(n, d, opt.tol > 0 ? opt.tol : 1e-10);
      print_report(r, opt, "check-causality");
      return report_exit(r);
    }
    if (buildRep->parsed()) {
      Net n = net_from_json(load_json(inputPath));
      CylinderPoset cn = cylinder_of(n);
      SymbolicNetRep rep = build_cylinder_rep(n, cn);
      Report r = validate_rep(rep, opt.tol > 0 ? opt.tol : 1e-12,
                              opt.probeDepth);
      r.add("faithful", is_faithful(rep));
      print_report(r, opt, "build-rep");
      return report_exit(r);
    }
    if (holo->parsed()) {
      Net n = net_from_json(load_json(inputPath));
      int base = opt.base.empty() ? 0 : n.poset.index(opt.base);
      GroupPresentation pres = pi1_presentation(n.poset, base);
      Report r;
      try {
        auto gens = holonomy(n, base, pres);
        r.add("relators_trivial", true, 0, opt.tol > 0 ? opt.tol : 1e-12);
        if (opt.out != "json")
          std::cout << "holonomy generators: " << gens.size() << "\n";
      } catch (const std::runtime_error& e) {
        r.add(e.what(), false);
      }
      print_report(r, opt, "holonomy");
      return report_exit(r);
    }
    if (invState->parsed()) {
      FinDimAlgebra alg{parse_ints(opt.blocks)};
      std::mt19937 rng(opt.seed);
      std::vector<Mat> u;
      for (int b : alg.blocks) u.push_back(random_unitary(b, rng));
      StarHom alpha = ad_hom(alg, u);
      State omega0{alg, {}};
      for (int b : alg.blocks) {
        Mat m = Mat::Random(b, b);
        m = (m * m.adjoint()).eval();
        omega0.rho.push_back(m);
      }
      double tr = 0;
      for (const Mat& m : omega0.rho) tr += m.trace().real();
      for (Mat& m : omega0.rho) m /= tr;
      auto res = invariant_state(alpha, omega0, opt.tol > 0 ? opt.tol : 1e-8);
      Report r;
      r.add("invariant_state_converged", res.converged, res.residual,
            opt.tol > 0 ? opt.tol : 1e-8,
            "iterations " + std::to_string(res.iterations));
      print_report(r, opt, "invariant-state");
      return report_exit(r);
    }
    if (limitCmd->parsed()) {
      NetSystem s = system_from_json(load_json(inputPath));
      Report r = validate_net_system(s, opt.tol > 0 ? opt.tol : 1e-12);
      if (r.ok()) {
        LimitNet lim = limit_net(s);
        r.add("limit_built", true, 0, 0,
              "limit poset size " + std::to_string(lim.lp.K.size()) +
                  ", top stage " + s.posets.index.label(lim.topStage));
        r.merge(validate_net(lim.net));
      }
      print_report(r, opt, "limit");
      return report_exit(r);
    }
    if (profile->parsed()) {
      NetSystem s = system_from_json(load_json(inputPath));
      std::mt19937 rng(opt.seed);
      AlgElement A =
          random_element(s.nets[opt.stage].fibre[opt.element], rng);
      std::vector<int> stages;
      auto prof = limit_norm_profile(s, opt.stage, opt.element, A, &stages);
      Report r;
      bool mono = true;
      for (size_t i = 1; i < prof.size(); ++i)
        if (prof[i] > prof[i - 1] + 1e-12) mono = false;
      r.add("profile_nonincreasing", mono);
      if (opt.out == "json") {
        Json j = report_to_json(r);
        j["profile"] = prof;
        j["stages"] = stages;
        std::cout << j.dump(2) << "\n";
      } else {
        for (size_t i = 0; i < prof.size(); ++i)
          std::cout << s.posets.index.label(stages[i]) << " " << prof[i]
                    << "\n";
        print_report(r, opt, "norm-profile");
      }
      return report_exit(r);
    }
    if (transfer->parsed()) {
      NetSystem s = system_from_json(load_json(inputPath));
      Report r = validate_net_system(s);
      if (r.ok()) {
        std::vector<SymbolicNetRep> witnesses;
        for (const Net& n : s.nets)
          witnesses.push_back(canonical_symbolic_rep(n));
        r.merge(injectivity_transfer_check(s, witnesses, opt.samples,
                                           opt.seed,
                                           opt.tol > 0 ? opt.tol : 1e-12));
      }
      print_report(r, opt, "transfer-check");
      return report_exit(r);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
