#include "berger/manifest.hpp"

#include "berger/errors.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace berger {

namespace {

using nlohmann::json;

const json& member(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw SpecError(std::string("manifest is missing \"") + key + "\"");
  return *it;
}

std::string expression_text(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw SpecError(where + " must be an expression string");
}

std::vector<std::string> string_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw SpecError(where + " must be an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(expression_text(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<std::string>> string_matrix(const json& v, const std::string& where) {
  if (!v.is_array()) throw SpecError(where + " must be an array of rows");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(string_list(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(what + ": malformed JSON (" + e.what() + ")");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::shared_ptr<const ManifoldSpec> resolve(const std::string& ref, const std::filesystem::path& base) {
  if (is_builtin(ref)) return std::make_shared<const ManifoldSpec>(builtin_manifold(ref));
  std::filesystem::path p(ref);
  if (p.is_relative()) p = base / p;
  return std::make_shared<const ManifoldSpec>(load_manifold(p.string()));
}

}  // namespace

ManifoldSource parse_manifold_manifest(const std::string& text, const std::string& default_name) {
  const json doc = parse_json(text, default_name);
  if (!doc.is_object()) throw SpecError("manifest must be a JSON object");
  ManifoldSource src;
  src.name = doc.value("name", default_name);
  src.coordinates = string_list(member(doc, "coordinates"), "coordinates");
  if (doc.contains("dimension")) {
    const json& d = doc["dimension"];
    if (!d.is_number_integer()) throw SpecError("dimension must be an integer");
    src.dimension = d.get<int>();
    if (src.dimension == 0) throw SpecError("dimension must be an even integer >= 2, got 0");
  }
  src.metric = string_matrix(member(doc, "metric"), "metric");
  src.structure = string_matrix(member(doc, "F"), "F");
  src.field = string_list(member(doc, "V"), "V");
  src.alpha = expression_text(member(doc, "alpha"), "alpha");
  const json& domain = member(doc, "domain");
  if (!domain.is_array()) throw SpecError("domain must be an array of [lo, hi] pairs");
  for (const auto& iv : domain) {
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
      throw SpecError("domain entries must be [lo, hi] number pairs");
    src.domain.emplace_back(iv[0].get<double>(), iv[1].get<double>());
  }
  if (src.dimension != 0 && static_cast<int>(src.metric.size()) != src.dimension)
    throw SpecError("dimension mismatch: dimension " + std::to_string(src.dimension) + " but metric has " +
                    std::to_string(src.metric.size()) + " rows");
  return src;
}

ManifoldSpec load_manifold(const std::string& path_or_builtin) {
  if (is_builtin(path_or_builtin)) return builtin_manifold(path_or_builtin);
  const std::filesystem::path path(path_or_builtin);
  return make_manifold(parse_manifold_manifest(read_file(path), path.stem().string()));
}

MapSpec load_map(const std::string& path) {
  const std::filesystem::path p(path);
  const json doc = parse_json(read_file(p), p.string());
  if (!doc.is_object()) throw SpecError("map manifest must be a JSON object");
  const auto base = p.parent_path();
  const json& src = member(doc, "source");
  const json& tgt = member(doc, "target");
  if (!src.is_string() || !tgt.is_string()) throw SpecError("source and target must be strings");
  const auto deformed = parse_deformed_side(doc.value("deformed", std::string("none")));
  return make_map(resolve(src.get<std::string>(), base), resolve(tgt.get<std::string>(), base),
                  string_list(member(doc, "components"), "components"), deformed);
}

}  // namespace berger
