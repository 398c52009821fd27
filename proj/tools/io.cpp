#include "frobfix/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace frobfix::io {

Json integer(const Integer& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
    return n.convert_to<std::int64_t>();
  return n.str();
}

Json to_json(const FgAbGroup& g) {
  Json factors = Json::array();
  for (const auto& d : g.invariant_factors()) factors.push_back(integer(d));
  return Json{{"free_rank", g.free_rank()}, {"invariant_factors", factors}};
}

Json to_json(const LocalizedGroup& g) {
  Json j = to_json(g.underlying());
  j["localization"] = g.localization().suffix();
  j["group"] = g.to_string();
  return j;
}

Json to_json(const GroupHom& f) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < f.matrix().rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < f.matrix().cols(); ++k) row.push_back(integer(f.matrix()(i, k)));
    rows.push_back(row);
  }
  return Json{{"matrix", rows}, {"source", to_json(f.source().group())}, {"target", to_json(f.target().group())}};
}

namespace {

Json optional_group(const std::optional<LocalizedGroup>& g) { return g ? Json(g->to_string()) : Json(nullptr); }

}  // namespace

Json to_json(const DegreePieces& d) {
  return Json{{"degree", d.degree},
              {"sub", optional_group(d.sub)},
              {"quot", optional_group(d.quot)},
              {"resolved", optional_group(d.resolved)},
              {"resolution", to_string(d.resolution)}};
}

Json to_json(const GradedFixedPoints& g) {
  Json degrees = Json::array();
  for (const auto& [n, d] : g.degrees) degrees.push_back(to_json(d));
  return Json{{"grading", g.grading == Grading::kHomological ? "homological" : "cohomological"}, {"degrees", degrees}};
}

Json to_json(const IndAbGroup& g, const Integer& p) {
  return Json{{"tower", g.tower()}, {"p", integer(p)}, {"levels_computed", g.levels_computed()}};
}

Json to_json(const VanishingCertificate& c) {
  Json classes = Json::array();
  for (const auto& w : c.witnesses)
    classes.push_back({{"class", "level " + std::to_string(w.level) + " generator " + std::to_string(w.generator)},
                       {"dies_at", w.dies_at ? Json(*w.dies_at) : Json(nullptr)}});
  return Json{{"max_level", c.max_level}, {"search_ceiling", c.search_ceiling}, {"complete", c.complete()}, {"classes", classes}};
}

Json to_json(const RigidityReport& r) {
  Json per_level = Json::array();
  for (const auto& w : r.per_level)
    per_level.push_back({{"level", w.level},
                         {"units", {{"ker", w.units.h0.to_string()}, {"coker", w.units.h1.to_string()}}},
                         {"pic", {{"ker", w.pic.h0.to_string()}, {"coker", w.pic.h1.to_string()}}},
                         {"cohomology", to_json(w.graded)}});
  Json classes = Json::array();
  for (const auto& c : r.cokernel_classes)
    classes.push_back({{"class", c.component + " level " + std::to_string(c.level) + " generator " +
                                     std::to_string(c.generator)},
                       {"dies_at", c.dies_at ? Json(*c.dies_at) : Json(nullptr)},
                       {"stable", c.stable}});
  return Json{{"variety", r.variety.name()},
              {"p", r.variety.p},
              {"invert_p", r.localized},
              {"levels", r.levels},
              {"stabilization_level", r.stabilization_level ? Json(*r.stabilization_level) : Json(nullptr)},
              {"kernels_agree", r.kernels_agree},
              {"per_level", per_level},
              {"certificates", classes},
              {"failures", r.failures},
              {"passed", r.passed()}};
}

Json to_json(const VerschiebungReport& r) {
  Json counts = Json::array();
  for (const auto& c : r.kernel.counts) counts.push_back({{"level", c.level}, {"count", c.count}});
  return Json{{"curve", r.curve.name},
              {"p", r.curve.p},
              {"max_level", r.max_level},
              {"points_checked", r.points_checked},
              {"v_after_phi", r.v_after_phi},
              {"phi_after_v", r.phi_after_v},
              {"form_positive", r.form_positive},
              {"p_minus_v_degree", integer(r.p_minus_v_degree)},
              {"expected_degree", integer(r.expected_degree)},
              {"separable", r.kernel.separable},
              {"kernel_counts", counts},
              {"rational_level", r.kernel.rational_level ? Json(*r.kernel.rational_level) : Json(nullptr)},
              {"passed", r.passed()}};
}

Json to_json(const ThhReport& r) {
  return Json{{"p", r.p},
              {"d", r.d},
              {"n", r.n},
              {"D", r.D},
              {"levels", r.levels},
              {"ker_dim", r.ker_dims.empty() ? Json(nullptr) : Json(r.ker_dims.back())},
              {"ker_dims", r.ker_dims},
              {"coker_dims", r.coker_dims},
              {"expected_dim", r.expected_dim},
              {"coker_certified", r.coker_certified()},
              {"passed", r.passed()}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string markdown_table(const std::string& corner, const std::vector<std::string>& rows, const std::vector<int>& cols,
                           const std::function<std::string(std::size_t, int)>& cell) {
  std::ostringstream out;
  out << "| " << corner << " |";
  for (int n : cols) out << " " << n << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < cols.size(); ++i) out << "---|";
  out << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << "| " << rows[i] << " |";
    for (int n : cols) out << " " << cell(i, n) << " |";
    out << "\n";
  }
  return out.str();
}

std::string describe(const DegreePieces& d) {
  if (d.resolved) return d.resolved->to_string();
  auto piece = [](const std::optional<LocalizedGroup>& g) { return g ? g->to_string() : std::string("?"); };
  return "ext(" + piece(d.sub) + ", " + piece(d.quot) + ")";
}

std::vector<CurveSpec> parse_corpus(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(std::string("corpus: ") + e.what());
  }
  if (!j.is_object() || !j.contains("curves") || !j["curves"].is_array())
    throw std::runtime_error("corpus: expected an object with a \"curves\" array");
  std::vector<CurveSpec> out;
  for (const auto& c : j["curves"]) {
    try {
      CurveSpec s;
      s.name = c.at("name").get<std::string>();
      s.p = c.at("p").get<std::uint32_t>();
      const char* keys[] = {"a1", "a2", "a3", "a4", "a6"};
      for (int i = 0; i < 5; ++i) s.a[static_cast<std::size_t>(i)] = c.value(keys[i], std::int64_t{0});
      s.validate();
      out.push_back(s);
    } catch (const Json::exception& e) {
      throw std::runtime_error(std::string("corpus: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("corpus: ") + e.what());
    }
  }
  return out;
}

std::vector<CurveSpec> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("corpus: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str());
}

}  // namespace frobfix::io
