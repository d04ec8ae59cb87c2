#include "nets/serialize.hpp"

namespace nets {

namespace {

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const Json& j) {
  const int r = static_cast<int>(j.size());
  const int c = r == 0 ? 0 : static_cast<int>(j.at(0).size());
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k)
      m(i, k) = Cplx(j.at(i).at(k).at(0).get<double>(),
                     j.at(i).at(k).at(1).get<double>());
  return m;
}

}  // namespace

Json poset_to_json(const Poset& p) {
  Json j;
  j["elements"] = p.labels();
  Json covers = Json::array();
  for (auto [lo, hi] : p.covers()) covers.push_back(Json::array({lo, hi}));
  j["covers"] = std::move(covers);
  return j;
}

Poset poset_from_json(const Json& j) {
  std::vector<std::string> labels =
      j.at("elements").get<std::vector<std::string>>();
  std::vector<std::pair<int, int>> covers;
  for (const auto& c : j.at("covers"))
    covers.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
  return Poset(std::move(labels), std::move(covers));
}

Json hom_to_json(const StarHom& f) {
  Json j;
  j["src"] = {{"blocks", f.src.blocks}};
  j["tgt"] = {{"blocks", f.tgt.blocks}};
  Json mult = Json::array();
  for (int t = 0; t < f.mult.rows(); ++t) {
    Json row = Json::array();
    for (int s = 0; s < f.mult.cols(); ++s) row.push_back(f.mult(t, s));
    mult.push_back(std::move(row));
  }
  j["mult"] = std::move(mult);
  Json conj = Json::array();
  for (const Mat& u : f.conj) conj.push_back(mat_to_json(u));
  j["conj"] = std::move(conj);
  return j;
}

StarHom hom_from_json(const Json& j) {
  StarHom f;
  f.src.blocks = j.at("src").at("blocks").get<std::vector<int>>();
  f.tgt.blocks = j.at("tgt").at("blocks").get<std::vector<int>>();
  const auto& mult = j.at("mult");
  f.mult.resize(static_cast<int>(mult.size()),
                mult.empty() ? 0 : static_cast<int>(mult.at(0).size()));
  for (int t = 0; t < f.mult.rows(); ++t)
    for (int s = 0; s < f.mult.cols(); ++s)
      f.mult(t, s) = mult.at(t).at(s).get<int>();
  for (const auto& u : j.at("conj")) f.conj.push_back(mat_from_json(u));
  return f;
}

Json net_to_json(const Net& n) {
  Json j;
  j["poset"] = poset_to_json(n.poset);
  Json fibres = Json::object();
  for (int o = 0; o < n.poset.size(); ++o)
    fibres[n.poset.label(o)] = {{"blocks", n.fibre[o].blocks}};
  j["fibres"] = std::move(fibres);
  Json incs = Json::object();
  for (const auto& [e, f] : n.inc)
    incs[n.poset.label(e.first) + "->" + n.poset.label(e.second)] =
        hom_to_json(f);
  j["inclusions"] = std::move(incs);
  return j;
}

Net net_from_json(const Json& j) {
  Net n;
  n.poset = poset_from_json(j.at("poset"));
  n.fibre.resize(n.poset.size());
  for (int o = 0; o < n.poset.size(); ++o)
    n.fibre[o].blocks =
        j.at("fibres").at(n.poset.label(o)).at("blocks").get<std::vector<int>>();
  for (auto [lo, hi] : n.poset.covers()) {
    std::string key = n.poset.label(lo) + "->" + n.poset.label(hi);
    if (j.at("inclusions").contains(key))
      n.inc.emplace(std::make_pair(lo, hi),
                    hom_from_json(j.at("inclusions").at(key)));
  }
  return n;
}

Json system_to_json(const NetSystem& s) {
  Json j;
  j["index"] = poset_to_json(s.posets.index);
  Json stages = Json::object();
  for (int a = 0; a < s.posets.index.size(); ++a)
    stages[s.posets.index.label(a)] = net_to_json(s.nets[a]);
  j["stages"] = std::move(stages);
  Json links = Json::object();
  for (auto [a, b] : s.posets.index.covers()) {
    Json link;
    link["map"] = s.posets.link.at({a, b}).map;
    Json homs = Json::array();
    for (const StarHom& h : s.psi.at({a, b})) homs.push_back(hom_to_json(h));
    link["homs"] = std::move(homs);
    links[s.posets.index.label(a) + "->" + s.posets.index.label(b)] =
        std::move(link);
  }
  j["links"] = std::move(links);
  return j;
}

NetSystem system_from_json(const Json& j) {
  NetSystem s;
  s.posets.index = poset_from_json(j.at("index"));
  for (int a = 0; a < s.posets.index.size(); ++a) {
    Net n = net_from_json(j.at("stages").at(s.posets.index.label(a)));
    s.posets.stages.push_back(n.poset);
    s.nets.push_back(std::move(n));
  }
  for (auto [a, b] : s.posets.index.covers()) {
    std::string key =
        s.posets.index.label(a) + "->" + s.posets.index.label(b);
    const Json& link = j.at("links").at(key);
    PosetMorphism f{s.posets.stages[a], s.posets.stages[b],
                    link.at("map").get<std::vector<int>>()};
    s.posets.link.emplace(std::make_pair(a, b), std::move(f));
    std::vector<StarHom> homs;
    for (const auto& h : link.at("homs")) homs.push_back(hom_from_json(h));
    s.psi.emplace(std::make_pair(a, b), std::move(homs));
  }
  return s;
}

Json report_to_json(const Report& r) {
  Json checks = Json::array();
  for (const Check& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"residual", c.residual},
                      {"tolerance", c.tol},
                      {"detail", c.detail}});
  return {{"ok", r.ok()}, {"checks", std::move(checks)}};
}

std::string poset_to_dot(const Poset& p) {
  std::string out = "digraph poset {\n  rankdir=BT;\n";
  for (int i = 0; i < p.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + p.label(i) + "\"];\n";
  for (auto [lo, hi] : p.covers())
    out += "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace nets
