#include "charvar/json_io.hpp"

#include "charvar/errors.hpp"

namespace charvar {

namespace {

Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw Error(ErrorKind::FormatError, "expected an integer");
}

Json citations_json(const std::vector<Citation>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(to_json(c));
  return out;
}

std::vector<Citation> citations_from(const Json& j) {
  std::vector<Citation> out;
  for (const auto& c : j) out.push_back({c.at("label").get<std::string>(), c.at("anchor").get<std::string>()});
  return out;
}

ReportField field_from(const Json& j) {
  ReportField f;
  f.known = j.at("status").get<std::string>() == "known";
  if (j.contains("group")) f.group = FgAbelianGroup::parse(j.at("group").get<std::string>());
  if (j.contains("count")) f.count = integer_from_json(j.at("count"));
  f.citations = citations_from(j.at("citations"));
  f.note = j.at("note").get<std::string>();
  return f;
}

Complex entry_from(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw Error(ErrorKind::FormatError, "matrix entry must be a number or [re, im]");
}

}  // namespace

Json to_json(const Citation& c) {
  Json j;
  j["label"] = c.label;
  j["anchor"] = c.anchor;
  return j;
}

Json to_json(const ReportField& f) {
  Json j;
  j["status"] = f.known ? "known" : "unknown";
  if (f.group) j["group"] = f.group->to_string();
  if (f.count) j["count"] = integer_to_json(*f.count);
  j["citations"] = citations_json(f.citations);
  j["note"] = f.note;
  return j;
}

Json to_json(const InvariantReport& r) {
  Json j;
  j["query"] = {{"group", r.group}, {"target", r.target}, {"class", r.gamma_class}};
  j["pi0_hom"] = to_json(r.pi0_hom);
  j["pi0_moduli"] = to_json(r.pi0_moduli);
  j["pi1_moduli"] = to_json(r.pi1_moduli);
  if (r.covering) {
    Json c;
    c["kernel"] = r.covering->kernel.to_string();
    c["deck"] = r.covering->deck.to_string();
    c["surjective"] = r.covering->surjective;
    c["citations"] = citations_json(r.covering->citations);
    c["note"] = r.covering->note;
    j["covering"] = c;
  } else {
    j["covering"] = nullptr;
  }
  j["hypothesis_failures"] = r.hypothesis_failures;
  j["real_reductive"] = r.real_reductive;
  j["citations"] = citations_json(r.citations);
  return j;
}

InvariantReport report_from_json(const Json& j) {
  try {
    InvariantReport r;
    r.group = j.at("query").at("group").get<std::string>();
    r.target = j.at("query").at("target").get<std::string>();
    r.gamma_class = j.at("query").at("class").get<std::string>();
    r.pi0_hom = field_from(j.at("pi0_hom"));
    r.pi0_moduli = field_from(j.at("pi0_moduli"));
    r.pi1_moduli = field_from(j.at("pi1_moduli"));
    if (!j.at("covering").is_null()) {
      const Json& c = j.at("covering");
      CoveringStructure cs;
      cs.kernel = FgAbelianGroup::parse(c.at("kernel").get<std::string>());
      cs.deck = FgAbelianGroup::parse(c.at("deck").get<std::string>());
      cs.surjective = c.at("surjective").get<bool>();
      cs.citations = citations_from(c.at("citations"));
      cs.note = c.at("note").get<std::string>();
      r.covering = cs;
    }
    r.hypothesis_failures = j.at("hypothesis_failures").get<std::vector<std::string>>();
    r.real_reductive = j.at("real_reductive").get<bool>();
    r.citations = citations_from(j.at("citations"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::FormatError, std::string("report JSON: ") + e.what());
  }
}

Json to_json(const StableFacts& f) {
  static const char* names[] = {"SU", "U", "GL"};
  Json j;
  j["target"] = names[static_cast<int>(f.target)];
  j["genus"] = f.genus;
  Json h = Json::object();
  for (const auto& [k, g] : f.homotopy) h["pi" + std::to_string(k)] = g.to_string();
  j["homotopy"] = h;
  j["higher"] = f.higher_vanish ? "0" : "unknown";
  j["homotopy_type"] = f.homotopy_type.empty() ? Json(nullptr) : Json(f.homotopy_type);
  j["citations"] = citations_json(f.citations);
  return j;
}

Json to_json(const ReductiveDescriptor& g) {
  Json j;
  j["field"] = g.field() == GroupField::Compact ? "compact" : "complex";
  j["torus_rank"] = g.torus_rank();
  Json factors = Json::array();
  for (const auto& f : g.factors()) factors.push_back(f.to_string());
  j["factors"] = factors;
  j["central_subgroup"] = g.central_subgroup().to_string();
  j["pi1"] = pi1(g).to_string();
  j["pi1_derived"] = pi1_derived(g).to_string();
  j["pi1_torsion_free"] = pi1_is_torsion_free(g);
  j["orthogonal_free"] = is_orthogonal_free(g);
  const UniversalCover cover = universal_cover(g);
  j["universal_cover"] = {{"torus_rank", cover.torus_rank}, {"factors", factors}, {"kernel", cover.kernel.to_string()}};
  j["descriptor"] = g.to_text();
  return j;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) out.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
  return out;
}

Matrix matrix_from_json(const Json& j, int n) {
  if (!j.is_array()) throw Error(ErrorKind::FormatError, "matrix must be an array");
  Matrix m(n, n);
  const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  // Flat form has n*n entries, nested form n rows; they differ except at n = 1.
  const bool nested = n == 1 ? (j.size() == 1 && j[0].is_array() && j[0].size() == 1)
                             : j.size() == static_cast<std::size_t>(n);
  if (nested) {
    for (int r = 0; r < n; ++r) {
      if (!j[r].is_array() || j[r].size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorKind::FormatError, "matrix row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
      }
      for (int c = 0; c < n; ++c) m(r, c) = entry_from(j[r][c]);
    }
    return m;
  }
  if (j.size() != nn) {
    throw Error(ErrorKind::FormatError, "matrix needs " + std::to_string(nn) + " entries, got " + std::to_string(j.size()));
  }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = entry_from(j[static_cast<std::size_t>(r * n + c)]);
  return m;
}

MatrixFile parse_matrix_file(std::string_view text, std::optional<double> tolerance_override) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::FormatError, std::string("matrix file is not JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw Error(ErrorKind::FormatError, "matrix file must be a JSON object");
    const Target target = Target::parse(j.at("target").get<std::string>());
    if (j.contains("n") && j.at("n").get<int>() != target.n) {
      throw Error(ErrorKind::FormatError, "field n disagrees with target " + target.to_string());
    }
    double tol = j.value("tolerance", kDefaultTolerance);
    if (tolerance_override) tol = *tolerance_override;
    std::vector<Matrix> mats;
    for (const auto& m : j.at("matrices")) mats.push_back(matrix_from_json(m, target.n));
    std::vector<std::string> names;
    if (j.contains("generators")) {
      names = j.at("generators").get<std::vector<std::string>>();
      if (names.size() != mats.size()) {
        throw Error(ErrorKind::ShapeMismatch, std::to_string(names.size()) + " generator names for " +
                                                  std::to_string(mats.size()) + " matrices");
      }
    }
    std::optional<std::string> presentation;
    if (j.contains("presentation") && !j.at("presentation").is_null()) {
      presentation = j.at("presentation").get<std::string>();
    }
    return MatrixFile{MatrixRep(target, std::move(mats), tol), std::move(names), std::move(presentation)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::FormatError, std::string("matrix file: ") + e.what());
  }
}

Json to_json(const MatrixFile& f) {
  Json j;
  j["target"] = f.rep.target().to_string();
  j["n"] = f.rep.n();
  j["tolerance"] = f.rep.tolerance();
  j["generators"] = f.generators;
  Json mats = Json::array();
  for (const auto& m : f.rep.matrices()) mats.push_back(matrix_to_json(m));
  j["matrices"] = mats;
  if (f.presentation) j["presentation"] = *f.presentation;
  return j;
}

Json to_json(const LiftedRep& lift) {
  Json j;
  j["n"] = lift.n();
  j["real_parts"] = lift.real_parts();
  Json su = Json::array();
  for (const auto& m : lift.su_parts()) su.push_back(matrix_to_json(m));
  j["su_parts"] = su;
  j["sheets"] = lift.sheets();
  j["base_angles"] = lift.base_angles();
  Json base = Json::array();
  for (const auto& m : lift.su_base()) base.push_back(matrix_to_json(m));
  j["su_base"] = base;
  return j;
}

LiftedRep lifted_rep_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    auto read_mats = [&](const Json& arr) {
      std::vector<Matrix> out;
      for (const auto& m : arr) out.push_back(matrix_from_json(m, n));
      return out;
    };
    if (j.contains("base_angles") && j.contains("su_base") && j.contains("sheets")) {
      return LiftedRep(n, j.at("base_angles").get<std::vector<double>>(), read_mats(j.at("su_base")),
                       j.at("sheets").get<std::vector<long>>());
    }
    auto real = j.at("real_parts").get<std::vector<double>>();
    std::vector<long> sheets(real.size(), 0);
    return LiftedRep(n, std::move(real), read_mats(j.at("su_parts")), std::move(sheets));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::FormatError, std::string("lift JSON: ") + e.what());
  }
}

}  // namespace charvar
