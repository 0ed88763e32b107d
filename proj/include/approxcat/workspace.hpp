#pragma once

// Workspace loading: a single JSON document carrying the field, the quiver,
// and named representations, morphisms and arrows. Validation is eager and
// errors carry the offending entity and condition.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>

#include "json.hpp"

#include "approxcat/approx.hpp"

namespace approxcat {

using ordered_json = nlohmann::ordered_json;

struct WorkspaceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WorkspaceCaps {
  std::uint64_t bet_enumeration_cap = 256;
  int probe_sum_cap = 6;
};

template <class K>
struct Workspace {
  FieldSpec field;
  QuiverPtr quiver;
  std::map<std::string, Rep<K>> reps;
  std::map<std::string, RepMorphism<K>> morphisms;
  std::map<std::string, ArrowObject<K>> arrows;
  WorkspaceCaps caps;
  ordered_json canonical;  // canonical re-serialization, input to the digest
};

using AnyWorkspace = std::variant<Workspace<Fp>, Workspace<Rat>>;

namespace wsdetail {

inline void fail(const std::string& msg) { throw WorkspaceError(msg); }

inline FieldSpec parse_field(const ordered_json& j) {
  if (!j.is_object() || !j.contains("kind"))
    fail("field: expected an object with a 'kind'");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "prime") {
    if (!j.contains("p")) fail("field: prime field needs 'p'");
    std::uint32_t p = j.at("p").get<std::uint32_t>();
    if (p < 2 || p >= (1u << 16) || !is_prime_u32(p))
      fail("field: p must be prime with 2 <= p < 2^16, got " +
           std::to_string(p));
    return FieldSpec::prime(p);
  }
  if (kind == "rational") return FieldSpec::rational();
  fail("field: unknown kind '" + kind + "'");
  return FieldSpec::prime(2);
}

template <class K>
K parse_scalar(const ordered_json& j, const FieldSpec& f,
               const std::string& where) {
  if constexpr (field_traits<K>::prime_field) {
    if (!j.is_number_integer())
      fail(where + ": prime-field entries must be integers");
    return field_traits<K>::from_int(j.get<long long>(), f);
  } else {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) {
      std::string s = j.get<std::string>();
      auto slash = s.find('/');
      try {
        if (slash == std::string::npos)
          return Rat(typename Rat::Big(s));
        typename Rat::Big num(s.substr(0, slash));
        typename Rat::Big den(s.substr(slash + 1));
        if (den == 0) fail(where + ": zero denominator");
        return Rat(num / den);
      } catch (const std::exception&) {
        fail(where + ": cannot parse rational '" + s + "'");
      }
    }
    fail(where + ": rational entries are integers or 'n/d' strings");
    return Rat(0);
  }
}

// A matrix is either a nested array (nonempty) or an object with explicit
// rows/cols and entries, which disambiguates the 0 x n shapes.
template <class K>
Mat<K> parse_matrix(const ordered_json& j, Index rows, Index cols,
                    const FieldSpec& f, const std::string& where) {
  const ordered_json* entries = &j;
  if (j.is_object()) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
      fail(where + ": matrix object needs rows, cols, entries");
    if (j.at("rows").get<Index>() != rows || j.at("cols").get<Index>() != cols)
      fail(where + ": declared shape " + std::to_string(j.at("rows").get<long long>()) +
           "x" + std::to_string(j.at("cols").get<long long>()) +
           " does not match expected " + std::to_string(rows) + "x" +
           std::to_string(cols));
    entries = &j.at("entries");
  }
  if (!entries->is_array()) fail(where + ": matrix entries must be an array");
  if (static_cast<Index>(entries->size()) != rows)
    fail(where + ": expected " + std::to_string(rows) + " rows, got " +
         std::to_string(entries->size()));
  Mat<K> m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = (*entries)[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      fail(where + ": row " + std::to_string(i) + " must have " +
           std::to_string(cols) + " entries");
    for (Index jx = 0; jx < cols; ++jx)
      m(i, jx) = parse_scalar<K>(row[static_cast<size_t>(jx)], f,
                                 where + "[" + std::to_string(i) + "," +
                                     std::to_string(jx) + "]");
  }
  return m;
}

template <class K>
ordered_json matrix_to_json(const Mat<K>& m, const FieldSpec& f) {
  ordered_json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  ordered_json entries = ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      if constexpr (field_traits<K>::prime_field) {
        row.push_back(m(i, j).canonical(f.p));
      } else {
        const Rat& x = m(i, j);
        if (x.den() == 1)
          row.push_back(x.num().template convert_to<long long>());
        else
          row.push_back(x.str());
      }
    }
    entries.push_back(std::move(row));
  }
  out["entries"] = std::move(entries);
  return out;
}

}  // namespace wsdetail

// Built-in workspace templates addressable as builtin:<name>.
inline ordered_json builtin_workspace_json(const std::string& name) {
  if (name == "a2") {
    return ordered_json{
        {"format_version", 1},
        {"field", {{"kind", "prime"}, {"p", 2}}},
        {"quiver",
         {{"vertices", {"1", "2"}},
          {"arrows",
           {{{"name", "a"}, {"source", "1"}, {"target", "2"}}}}}},
        {"reps", ordered_json::object()},
        {"morphisms", ordered_json::object()},
        {"arrows", ordered_json::object()},
        {"caps", {{"bet_enumeration_cap", 256}, {"probe_sum_cap", 6}}}};
  }
  if (name == "happel-unger") {
    // Vertices 1, 2, 3 with arrows a: 2 -> 1, b: 3 -> 2, c: 3 -> 1.
    return ordered_json{
        {"format_version", 1},
        {"field", {{"kind", "prime"}, {"p", 2}}},
        {"quiver",
         {{"vertices", {"1", "2", "3"}},
          {"arrows",
           {{{"name", "a"}, {"source", "2"}, {"target", "1"}},
            {{"name", "b"}, {"source", "3"}, {"target", "2"}},
            {{"name", "c"}, {"source", "3"}, {"target", "1"}}}}}},
        {"reps", ordered_json::object()},
        {"morphisms", ordered_json::object()},
        {"arrows", ordered_json::object()},
        {"caps", {{"bet_enumeration_cap", 256}, {"probe_sum_cap", 6}}}};
  }
  throw WorkspaceError("unknown builtin workspace '" + name + "'");
}

template <class K>
Workspace<K> build_workspace(const ordered_json& doc) {
  using namespace wsdetail;
  Workspace<K> ws;
  ws.field = parse_field(doc.at("field"));

  if (!doc.contains("quiver")) fail("missing 'quiver'");
  const auto& qj = doc.at("quiver");
  std::vector<std::string> vertices =
      qj.at("vertices").template get<std::vector<std::string>>();
  std::vector<QuiverArrow> arrows;
  auto vertex_index = [&](const std::string& name,
                          const std::string& where) -> int {
    for (size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == name) return static_cast<int>(i);
    fail(where + ": unknown vertex '" + name + "'");
    return -1;
  };
  if (qj.contains("arrows"))
    for (const auto& aj : qj.at("arrows")) {
      std::string name = aj.at("name").template get<std::string>();
      arrows.push_back(QuiverArrow{
          name, vertex_index(aj.at("source").template get<std::string>(),
                             "arrow " + name),
          vertex_index(aj.at("target").template get<std::string>(), "arrow " + name)});
    }
  try {
    ws.quiver = Quiver::make(vertices, arrows, ws.field);
  } catch (const std::invalid_argument& e) {
    fail(std::string("quiver: ") + e.what());
  }

  if (doc.contains("caps")) {
    const auto& cj = doc.at("caps");
    if (cj.contains("bet_enumeration_cap"))
      ws.caps.bet_enumeration_cap =
          cj.at("bet_enumeration_cap").template get<std::uint64_t>();
    if (cj.contains("probe_sum_cap"))
      ws.caps.probe_sum_cap = cj.at("probe_sum_cap").template get<int>();
  }

  if (doc.contains("reps"))
    for (const auto& [name, rj] : doc.at("reps").items()) {
      std::vector<Index> dims(ws.quiver->vertex_count(), 0);
      for (const auto& [vname, dj] : rj.at("dims").items()) {
        int v = vertex_index(vname, "rep " + name);
        dims[v] = dj.template get<Index>();
        if (dims[v] < 0) fail("rep " + name + ": negative dimension");
      }
      std::vector<Mat<K>> maps;
      for (int a = 0; a < ws.quiver->arrow_count(); ++a) {
        const auto& ar = ws.quiver->arrow(a);
        Index rows = dims[ar.target], cols = dims[ar.source];
        bool present = rj.contains("maps") && rj.at("maps").contains(ar.name);
        if (!present) {
          if (rows * cols != 0)
            fail("rep " + name + ": missing matrix for arrow " + ar.name);
          maps.push_back(Mat<K>(rows, cols));
          continue;
        }
        maps.push_back(parse_matrix<K>(rj.at("maps").at(ar.name), rows, cols,
                                       ws.field,
                                       "rep " + name + ", arrow " + ar.name));
      }
      try {
        ws.reps.emplace(name, make_rep<K>(ws.quiver, dims, maps));
      } catch (const std::invalid_argument& e) {
        fail("rep " + name + ": " + e.what());
      }
    }

  std::map<std::string, std::pair<std::string, std::string>> morphism_ends;
  if (doc.contains("morphisms"))
    for (const auto& [name, mj] : doc.at("morphisms").items()) {
      std::string dn = mj.at("dom").template get<std::string>();
      std::string cn = mj.at("cod").template get<std::string>();
      morphism_ends[name] = {dn, cn};
      if (!ws.reps.count(dn))
        fail("morphism " + name + ": unknown dom rep '" + dn + "'");
      if (!ws.reps.count(cn))
        fail("morphism " + name + ": unknown cod rep '" + cn + "'");
      const Rep<K>& dom = ws.reps.at(dn);
      const Rep<K>& cod = ws.reps.at(cn);
      std::vector<Mat<K>> comps;
      for (int v = 0; v < ws.quiver->vertex_count(); ++v) {
        const std::string& vname = ws.quiver->vertex_names()[v];
        Index rows = cod.dim(v), cols = dom.dim(v);
        bool present =
            mj.contains("comps") && mj.at("comps").contains(vname);
        if (!present) {
          if (rows * cols != 0)
            fail("morphism " + name + ": missing component at vertex " +
                 vname);
          comps.push_back(Mat<K>(rows, cols));
          continue;
        }
        comps.push_back(parse_matrix<K>(
            mj.at("comps").at(vname), rows, cols, ws.field,
            "morphism " + name + ", vertex " + vname));
      }
      try {
        ws.morphisms.emplace(name, make_morphism<K>(dom, cod, comps));
      } catch (const std::invalid_argument& e) {
        fail("morphism " + name + ": " + e.what());
      }
    }

  if (doc.contains("arrows"))
    for (const auto& [name, aj] : doc.at("arrows").items()) {
      if (aj.is_object() && aj.contains("identity")) {
        std::string rn = aj.at("identity").template get<std::string>();
        if (!ws.reps.count(rn))
          fail("arrow " + name + ": unknown rep '" + rn + "'");
        ws.arrows.emplace(name, identity_arrow(ws.reps.at(rn)));
      } else if (aj.is_object() && aj.contains("morphism")) {
        std::string mn = aj.at("morphism").template get<std::string>();
        if (!ws.morphisms.count(mn))
          fail("arrow " + name + ": unknown morphism '" + mn + "'");
        ws.arrows.emplace(name, ArrowObject<K>{ws.morphisms.at(mn)});
      } else {
        fail("arrow " + name + ": expected {identity: rep} or {morphism: f}");
      }
    }

  // Canonical form: re-serialize everything in declaration order.
  ordered_json canon;
  canon["format_version"] = 1;
  canon["field"] = ws.field.is_prime_field()
                       ? ordered_json{{"kind", "prime"}, {"p", ws.field.p}}
                       : ordered_json{{"kind", "rational"}};
  ordered_json qout;
  qout["vertices"] = ws.quiver->vertex_names();
  ordered_json arrs = ordered_json::array();
  for (const auto& a : ws.quiver->arrows())
    arrs.push_back({{"name", a.name},
                    {"source", ws.quiver->vertex_names()[a.source]},
                    {"target", ws.quiver->vertex_names()[a.target]}});
  qout["arrows"] = std::move(arrs);
  canon["quiver"] = std::move(qout);
  ordered_json reps = ordered_json::object();
  for (const auto& [name, rep] : ws.reps) {
    ordered_json rj;
    ordered_json dims = ordered_json::object();
    for (int v = 0; v < ws.quiver->vertex_count(); ++v)
      dims[ws.quiver->vertex_names()[v]] = rep.dim(v);
    rj["dims"] = std::move(dims);
    ordered_json maps = ordered_json::object();
    for (int a = 0; a < ws.quiver->arrow_count(); ++a)
      maps[ws.quiver->arrow(a).name] =
          wsdetail::matrix_to_json<K>(rep.map(a), ws.field);
    rj["maps"] = std::move(maps);
    reps[name] = std::move(rj);
  }
  canon["reps"] = std::move(reps);
  ordered_json morphs = ordered_json::object();
  for (const auto& [name, mor] : ws.morphisms) {
    ordered_json mj;
    mj["dom"] = morphism_ends.at(name).first;
    mj["cod"] = morphism_ends.at(name).second;
    ordered_json comps = ordered_json::object();
    for (int v = 0; v < ws.quiver->vertex_count(); ++v)
      comps[ws.quiver->vertex_names()[v]] =
          wsdetail::matrix_to_json<K>(mor.comp(v), ws.field);
    mj["comps"] = std::move(comps);
    morphs[name] = std::move(mj);
  }
  canon["morphisms"] = std::move(morphs);
  ordered_json arrows_out = ordered_json::object();
  if (doc.contains("arrows")) arrows_out = doc.at("arrows");
  canon["arrows"] = std::move(arrows_out);
  canon["caps"] = {{"bet_enumeration_cap", ws.caps.bet_enumeration_cap},
                   {"probe_sum_cap", ws.caps.probe_sum_cap}};
  ws.canonical = std::move(canon);
  return ws;
}

inline AnyWorkspace load_workspace_json(const ordered_json& doc) {
  if (!doc.contains("field")) throw WorkspaceError("missing 'field'");
  FieldSpec f = wsdetail::parse_field(doc.at("field"));
  if (f.is_prime_field()) return build_workspace<Fp>(doc);
  return build_workspace<Rat>(doc);
}

// Reads a workspace from a file path or a builtin:<name> reference; JSON
// parse errors are rethrown with line/column positions.
inline AnyWorkspace load_workspace_file(const std::string& path) {
  ordered_json doc;
  if (path.rfind("builtin:", 0) == 0) {
    doc = builtin_workspace_json(path.substr(8));
  } else {
    std::ifstream in(path);
    if (!in) throw WorkspaceError("cannot open workspace file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    try {
      doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      size_t line = 1, col = 1;
      for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      throw WorkspaceError("parse error at line " + std::to_string(line) +
                           ", column " + std::to_string(col) + ": " +
                           e.what());
    }
  }
  return load_workspace_json(doc);
}

// FNV-1a over the canonical serialization.
inline std::string workspace_digest(const ordered_json& canonical) {
  std::string bytes = canonical.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace approxcat
