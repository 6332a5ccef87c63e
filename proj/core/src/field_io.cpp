#include "cornerlab/field_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

#include "cornerlab/errors.hpp"

namespace cornerlab {

using nlohmann::json;

std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

void dump_value(std::string& out, const json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(std::size_t(indent) * std::size_t(d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_value(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_value(out, v, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) { out += "null"; return; }
      std::string s = format_real(v);
      // keep the token a JSON float
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      out += s;
      return;
    }
    default:
      out += j.dump();
  }
}

double parse_real(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw FormatError("malformed value '" + std::string(s) + "'");
  return v;
}

template <class T>
T required(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw ConfigError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::string out;
  dump_value(out, j, indent, 0);
  return out;
}

json to_json(const ProblemSpec& spec) {
  json j;
  j["alpha"] = spec.alpha;
  j["beta"] = spec.beta;
  j["weight_constant"] = spec.weight_constant;
  j["domain"] = {spec.domain.xmin, spec.domain.ymin, spec.domain.xmax,
                 spec.domain.ymax};
  if (auto* t1 = std::get_if<Type1>(&spec.stag)) {
    j["stag_type"] = {{"type", 1}, {"x0", t1->x0}, {"force", to_string(t1->force)}};
  } else if (auto* t2 = std::get_if<Type2>(&spec.stag)) {
    j["stag_type"] = {{"type", 2}, {"y0", t2->y0}, {"force", to_string(t2->force)}};
  } else {
    j["stag_type"] = {{"type", 3},
                      {"theta_star", std::get<Type3>(spec.stag).theta_star}};
  }
  return j;
}

ProblemSpec problem_from_json(const json& j) {
  const std::string where = "problem";
  ProblemSpec spec;
  spec.alpha = required<double>(j, "alpha", where);
  spec.beta = required<double>(j, "beta", where);
  spec.weight_constant = j.value("weight_constant", 1.0);
  const json st = required<json>(j, "stag_type", where);
  const int type = required<int>(st, "type", where + ".stag_type");
  switch (type) {
    case 1:
      spec.stag = Type1{required<double>(st, "x0", where + ".stag_type"),
                        force_from_string(st.value("force", std::string("down")))};
      break;
    case 2:
      spec.stag = Type2{required<double>(st, "y0", where + ".stag_type"),
                        force_from_string(st.value("force", std::string("right")))};
      break;
    case 3:
      spec.stag = Type3{st.value("theta_star", 0.0)};
      break;
    default:
      throw ConfigError(where + ".stag_type: type must be 1, 2 or 3");
  }
  if (j.contains("domain")) {
    const auto d = j.at("domain").get<std::vector<double>>();
    if (d.size() != 4) throw ConfigError(where + ".domain: expected 4 numbers");
    spec.domain = {d[0], d[1], d[2], d[3]};
  } else {
    // unit box around the stagnation point
    const Point x0 = spec.stagnation_point();
    spec.domain = {x0.x - 1.0, x0.y - 1.0, x0.x + 1.0, x0.y + 1.0};
  }
  return spec;
}

json to_json(const GridSpec& g) {
  return {{"nx", g.nx},
          {"ny", g.ny},
          {"origin", {g.origin.x, g.origin.y}},
          {"spacing", g.spacing}};
}

GridSpec grid_from_json(const json& j) {
  const std::string where = "grid";
  GridSpec g;
  g.nx = required<int>(j, "nx", where);
  g.ny = required<int>(j, "ny", where);
  const auto o = required<std::vector<double>>(j, "origin", where);
  if (o.size() != 2) throw ConfigError(where + ".origin: expected 2 numbers");
  g.origin = {o[0], o[1]};
  g.spacing = required<double>(j, "spacing", where);
  return g;
}

json field_metadata(const ProblemSpec& spec) {
  json j = to_json(spec);
  j.erase("domain");
  return j;
}

void write_field(std::ostream& os, const ScalarField& u, const json& extra) {
  json header = to_json(u.grid());
  for (auto it = extra.begin(); it != extra.end(); ++it) header[it.key()] = it.value();
  os << dump_json(header, -1) << '\n';
  for (double v : u.values()) os << format_real(v) << '\n';
}

StoredField read_field(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("field file is empty");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw FormatError(std::string("field header is not JSON: ") + e.what());
  }
  GridSpec g;
  try {
    g = grid_from_json(header);
    g.validate();
  } catch (const Error& e) {
    throw FormatError(std::string("bad field header: ") + e.what());
  }
  std::vector<double> values;
  values.reserve(g.size());
  while (values.size() < g.size() && std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    values.push_back(parse_real(line));
  }
  if (values.size() != g.size())
    throw FormatError("field file holds " + std::to_string(values.size()) +
                      " values, header expects " + std::to_string(g.size()));
  return {ScalarField(g, std::move(values)), std::move(header)};
}

void save_field(const std::string& path, const ScalarField& u, const json& extra) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open '" + path + "' for writing");
  write_field(os, u, extra);
  if (!os) throw FormatError("write to '" + path + "' failed");
}

StoredField load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open '" + path + "'");
  return read_field(is);
}

}  // namespace cornerlab
