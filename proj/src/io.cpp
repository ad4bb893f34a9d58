#include "gasketbvp/io.hpp"

#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace gasketbvp {

using nlohmann::json;

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer in list: " + item);
    }
    if (used != item.size()) throw std::invalid_argument("bad integer in list: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

}  // namespace

DyadicSequence parse_x_spec(const std::string& spec, int depth) {
  if (spec.rfind("arith:", 0) == 0) {
    auto ad = parse_int_list(spec.substr(6));
    if (ad.size() != 2) throw std::invalid_argument("arith spec wants a,d");
    return DyadicSequence::arithmetic(ad[0], ad[1], depth);
  }
  if (spec.rfind("periodic:", 0) == 0)
    return DyadicSequence::periodic(parse_int_list(spec.substr(9)), depth);
  if (spec.find(',') != std::string::npos) {
    auto exps = parse_int_list(spec);
    return DyadicSequence(exps, static_cast<int>(exps.size()));
  }
  size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(spec, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad x-spec: " + spec);
  }
  if (used != spec.size()) throw std::invalid_argument("bad x-spec: " + spec);
  return DyadicSequence::from_value(x, depth);
}

std::string mesh_to_json(const GasketMesh& mesh) {
  json j;
  j["level"] = mesh.level;
  auto& verts = j["vertices"] = json::array();
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    auto p = mesh.position(v);
    verts.push_back({{"id", v}, {"x", p[0]}, {"y", p[1]}});
  }
  auto& edges = j["edges"] = json::array();
  for (int v = 0; v < mesh.vertex_count(); ++v)
    for (int w : mesh.adjacency[static_cast<size_t>(v)])
      if (w > v) edges.push_back({v, w});
  return j.dump();
}

std::string function_to_csv(const MeshFunction& u, const DomainMask* mask) {
  std::ostringstream os;
  os.precision(17);
  os << "vertex_id,x,y,value\n";
  for (int v = 0; v < u.mesh->vertex_count(); ++v) {
    if (mask && !mask->in_domain(v)) continue;
    auto p = u.mesh->position(v);
    os << v << ',' << p[0] << ',' << p[1] << ',' << u[v] << '\n';
  }
  return os.str();
}

std::string spectrum_to_json(const HaarSpectrum& spec) {
  json j;
  j["a"] = spec.a;
  j["b"] = spec.b;
  auto& cs = j["coeffs"] = json::array();
  for (const auto& [w, c] : spec.coeffs) cs.push_back({{"word", w.str()}, {"c", c}});
  return j.dump();
}

HaarSpectrum spectrum_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    HaarSpectrum spec;
    spec.a = j.value("a", 0.0);
    spec.b = j.value("b", 0.0);
    for (const auto& entry : j.value("coeffs", json::array()))
      spec.coeffs[Word::parse(entry.at("word").get<std::string>())] = entry.at("c").get<double>();
    return spec;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad spectrum JSON: ") + e.what());
  }
}

std::string flux_to_json(const BoundaryFlux& flux) {
  json j;
  j["constant_part"] = flux.constant_part;
  j["dn_at_q0"] = flux.dn_at_q0;
  auto& cs = j["coeffs"] = json::array();
  for (const auto& [w, c] : flux.coeffs) cs.push_back({{"word", w.str()}, {"c", c}});
  return j.dump();
}

std::string obstruction_to_csv(const std::vector<ObstructionRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "N,E_min,ratio\n";
  for (const auto& row : rows) os << row.n << ',' << row.e_min << ',' << row.ratio << '\n';
  return os.str();
}

}  // namespace gasketbvp
