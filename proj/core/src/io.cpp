#include "oneshot/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oneshot/errors.hpp"

namespace oneshot::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

const json& field(const json& obj, const char* key, const std::string& source) {
  if (!obj.is_object()) throw ValidationError(source + ": expected a JSON object at top level");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(source + ": missing field '" + key + "'");
  return *it;
}

std::vector<std::string> labels(const json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array of labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_string())
      out.push_back(j[i].get<std::string>());
    else if (j[i].is_number_integer())
      out.push_back(std::to_string(j[i].get<long long>()));
    else
      throw ValidationError(where + "[" + std::to_string(i) + "]: expected a string label");
  }
  return out;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ValidationError(where + ": expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ValidationError(where + ": expected an integer");
  return j.get<int>();
}

const json& array(const json& j, std::size_t size, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array");
  if (size != 0 && j.size() != size)
    throw ValidationError(where + ": expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
  return j;
}

std::vector<int> int_list(const json& j, const std::string& where) {
  array(j, 0, where);
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

Channel parse_channel(const std::string& text, const std::string& source) {
  const json j = parse(text, source);
  const json& name = field(j, "name", source);
  if (!name.is_string()) throw ValidationError(source + ": field 'name' must be a string");
  auto in = labels(field(j, "inputs", source), source + ": inputs");
  auto out = labels(field(j, "outputs", source), source + ": outputs");
  const json& m = array(field(j, "matrix", source), in.size(), source + ": matrix");
  std::vector<std::vector<double>> rows;
  for (std::size_t x = 0; x < m.size(); ++x) {
    const std::string where = source + ": matrix[" + std::to_string(x) + "]";
    const json& row = array(m[x], out.size(), where);
    std::vector<double> r;
    for (std::size_t y = 0; y < row.size(); ++y) r.push_back(number(row[y], where + "[" + std::to_string(y) + "]"));
    rows.push_back(std::move(r));
  }
  try {
    return Channel(name.get<std::string>(), std::move(in), std::move(out), std::move(rows));
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

std::string format_channel(const Channel& ch) {
  ordered_json j;
  j["name"] = ch.name();
  j["inputs"] = ch.inputs();
  j["outputs"] = ch.outputs();
  j["matrix"] = ch.matrix();
  return dump(j);
}

Correlation parse_correlation(const std::string& text, const std::string& source) {
  const json j = parse(text, source);
  const json& a = array(field(j, "alphabets", source), 4, source + ": alphabets");
  static const char* names[] = {"R", "S", "P", "Q"};
  std::vector<std::vector<std::string>> al;
  for (int i = 0; i < 4; ++i) al.push_back(labels(a[i], source + ": alphabets[" + names[i] + "]"));
  const json& t = array(field(j, "table", source), al[0].size(), source + ": table");
  std::vector<double> flat;
  for (std::size_t r = 0; r < al[0].size(); ++r) {
    const std::string wr = source + ": table[" + std::to_string(r) + "]";
    const json& tr = array(t[r], al[1].size(), wr);
    for (std::size_t s = 0; s < al[1].size(); ++s) {
      const std::string ws = wr + "[" + std::to_string(s) + "]";
      const json& ts = array(tr[s], al[2].size(), ws);
      for (std::size_t p = 0; p < al[2].size(); ++p) {
        const std::string wp = ws + "[" + std::to_string(p) + "]";
        const json& tp = array(ts[p], al[3].size(), wp);
        for (std::size_t q = 0; q < al[3].size(); ++q) flat.push_back(number(tp[q], wp + "[" + std::to_string(q) + "]"));
      }
    }
  }
  try {
    return Correlation(al[0], al[1], al[2], al[3], std::move(flat));
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

std::string format_correlation(const Correlation& d) {
  ordered_json j;
  j["alphabets"] = ordered_json::array({d.r_labels(), d.s_labels(), d.p_labels(), d.q_labels()});
  ordered_json table = ordered_json::array();
  for (int r = 0; r < d.num_r(); ++r) {
    ordered_json tr = ordered_json::array();
    for (int s = 0; s < d.num_s(); ++s) {
      ordered_json ts = ordered_json::array();
      for (int p = 0; p < d.num_p(); ++p) {
        ordered_json tp = ordered_json::array();
        for (int q = 0; q < d.num_q(); ++q) tp.push_back(d(p, q, r, s));
        ts.push_back(std::move(tp));
      }
      tr.push_back(std::move(ts));
    }
    table.push_back(std::move(tr));
  }
  j["table"] = std::move(table);
  return dump(j);
}

ProtocolStrategy parse_strategy(const std::string& text, const std::string& source) {
  const json j = parse(text, source);
  ProtocolStrategy st;
  st.e1 = int_list(field(j, "e1", source), source + ": e1");
  const json& e2 = array(field(j, "e2", source), 2, source + ": e2");
  for (std::size_t a = 0; a < e2.size(); ++a) st.e2.push_back(int_list(e2[a], source + ": e2[" + std::to_string(a) + "]"));
  st.d1 = int_list(field(j, "d1", source), source + ": d1");
  const json& d2 = array(field(j, "d2", source), 0, source + ": d2");
  for (std::size_t y = 0; y < d2.size(); ++y) st.d2.push_back(int_list(d2[y], source + ": d2[" + std::to_string(y) + "]"));
  return st;
}

std::string format_strategy(const ProtocolStrategy& st) {
  ordered_json j;
  j["e1"] = st.e1;
  j["e2"] = st.e2;
  j["d1"] = st.d1;
  j["d2"] = st.d2;
  return dump(j);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

}  // namespace oneshot::io
