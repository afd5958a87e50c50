#include "dhtsp/instance.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace dhtsp {

const char* rule_name(Rule rule) {
  switch (rule) {
    case Rule::Negative: return "negative";
    case Rule::Symmetry: return "symmetry";
    case Rule::Diagonal: return "diagonal";
    case Rule::Triangle1: return "triangle-1";
    case Rule::Triangle2: return "triangle-2";
    case Rule::Dominance: return "dominance";
  }
  return "unknown";
}

std::string ValidationReport::summary() const {
  if (ok()) return "pass";
  std::ostringstream out;
  for (const auto& v : violations) out << rule_name(v.rule) << ": " << v.message << "\n";
  if (truncated) out << "(further violations omitted)\n";
  return out.str();
}

namespace {

std::string index_list(const std::vector<std::size_t>& idx) {
  std::ostringstream out;
  out << "(";
  for (std::size_t k = 0; k < idx.size(); ++k) out << (k ? "," : "") << idx[k];
  out << ")";
  return out.str();
}

class Collector {
 public:
  Collector(ValidationReport& report, std::size_t limit) : report_(report), limit_(limit) {}

  bool full() const { return report_.truncated; }

  void add(Rule rule, std::vector<std::size_t> idx, const std::string& what) {
    if (report_.violations.size() >= limit_) {
      report_.truncated = true;
      return;
    }
    std::string message = what + " at " + index_list(idx);
    report_.violations.push_back({rule, std::move(idx), std::move(message)});
  }

 private:
  ValidationReport& report_;
  std::size_t limit_;
};

void check_matrix(const CostMatrix& m, Rule triangle, double rel_tol, Collector& out) {
  const std::size_t dim = m.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double c = m(i, j);
      if (!std::isfinite(c)) {
        out.add(Rule::Negative, {i, j}, "non-finite cost");
      } else if (c < 0.0) {
        out.add(Rule::Negative, {i, j}, "negative cost");
      }
      if (i == j && c != 0.0) out.add(Rule::Diagonal, {i, i}, "non-zero diagonal");
      if (i < j && m(i, j) != m(j, i)) out.add(Rule::Symmetry, {i, j}, "asymmetric cost");
    }
  }
  // O(dim^3); the inner loop is branch-free so it vectorizes, and the slow
  // path only runs for rows that actually contain a violation.
  const double scale = 1.0 + rel_tol;
  for (std::size_t a = 0; a < dim && !out.full(); ++a) {
    const double* row_a = m.row(a);
    for (std::size_t b = 0; b < dim; ++b) {
      if (b == a) continue;
      const double ab = row_a[b];
      const double* row_b = m.row(b);
      bool bad = false;
      for (std::size_t c = 0; c < dim; ++c) bad |= row_a[c] > (ab + row_b[c]) * scale;
      if (!bad) continue;
      for (std::size_t c = 0; c < dim; ++c) {
        if (c == a || c == b) continue;
        if (row_a[c] > (ab + row_b[c]) * scale) {
          out.add(triangle, {a, b, c}, "triangle inequality violated");
          if (out.full()) return;
        }
      }
    }
  }
}

}  // namespace

ValidationReport validate(const Instance& instance, const ValidateOptions& options) {
  const std::size_t dim = instance.n_targets + 1;
  if (instance.cost1.dim() != dim || instance.cost2.dim() != dim) {
    throw StructureError("cost matrices must be " + std::to_string(dim) + "x" + std::to_string(dim) +
                         " for n_targets=" + std::to_string(instance.n_targets) + " (got " +
                         std::to_string(instance.cost1.dim()) + " and " + std::to_string(instance.cost2.dim()) +
                         ")");
  }
  if (!instance.names.empty() && instance.names.size() != instance.n_targets) {
    throw StructureError("names must list exactly n_targets labels");
  }

  ValidationReport report;
  Collector out(report, options.max_violations);
  check_matrix(instance.cost1, Rule::Triangle1, options.triangle_rel_tol, out);
  check_matrix(instance.cost2, Rule::Triangle2, options.triangle_rel_tol, out);
  // Depot rows are exempt from dominance.
  for (std::size_t u = 1; u < dim; ++u) {
    for (std::size_t v = u + 1; v < dim; ++v) {
      if (instance.cost1(u, v) > instance.cost2(u, v)) {
        out.add(Rule::Dominance, {u, v}, "vehicle 1 costlier than vehicle 2 between targets");
      }
    }
  }
  return report;
}

Instance generate(std::size_t n, double alpha, std::uint64_t seed, double box) {
  if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be >= 1");
  if (!(box > 0.0) || !std::isfinite(box)) throw std::invalid_argument("box must be positive");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, box);
  auto draw = [&] { return Point{coord(rng), coord(rng)}; };

  Layout layout;
  layout.depot1 = draw();
  layout.depot2 = draw();
  layout.targets.reserve(n);
  for (std::size_t i = 0; i < n; ++i) layout.targets.push_back(draw());

  auto dist = [](const Point& p, const Point& q) { return std::hypot(p[0] - q[0], p[1] - q[1]); };
  auto vertex = [&](const Point& depot, std::size_t i) -> const Point& {
    return i == 0 ? depot : layout.targets[i - 1];
  };

  Instance inst;
  inst.n_targets = n;
  inst.cost1 = CostMatrix(n + 1);
  inst.cost2 = CostMatrix(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      const double c1 = dist(vertex(layout.depot1, i), vertex(layout.depot1, j));
      const double c2 = alpha * dist(vertex(layout.depot2, i), vertex(layout.depot2, j));
      inst.cost1(i, j) = inst.cost1(j, i) = c1;
      inst.cost2(i, j) = inst.cost2(j, i) = c2;
    }
  }
  inst.layout = std::move(layout);
  return inst;
}

namespace {

nlohmann::json matrix_to_json(const CostMatrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

CostMatrix matrix_from_json(const nlohmann::json& doc, const char* field, std::size_t dim) {
  const std::string where = std::string("\"") + field + "\"";
  if (!doc.contains(field)) throw ParseError("missing field " + where);
  const auto& rows = doc.at(field);
  if (!rows.is_array()) throw ParseError(where + " must be an array of rows");
  if (rows.size() != dim) {
    throw ParseError(where + " has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(dim));
  }
  CostMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != dim) {
      throw ParseError(where + " row " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
    }
    for (std::size_t j = 0; j < dim; ++j) {
      if (!row[j].is_number()) {
        throw ParseError(where + " entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not a number");
      }
      m(i, j) = row[j].get<double>();
    }
  }
  return m;
}

Point point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("coordinates must be [x, y] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

nlohmann::json to_json(const Instance& instance) {
  nlohmann::json doc;
  doc["n_targets"] = instance.n_targets;
  doc["cost1"] = matrix_to_json(instance.cost1);
  doc["cost2"] = matrix_to_json(instance.cost2);
  if (!instance.names.empty()) doc["names"] = instance.names;
  if (instance.layout) {
    const auto& l = *instance.layout;
    nlohmann::json coords;
    coords["depot1"] = {l.depot1[0], l.depot1[1]};
    coords["depot2"] = {l.depot2[0], l.depot2[1]};
    coords["targets"] = nlohmann::json::array();
    for (const auto& p : l.targets) coords["targets"].push_back({p[0], p[1]});
    doc["coords"] = std::move(coords);
  }
  return doc;
}

Instance instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
  if (!doc.contains("n_targets")) throw ParseError("missing field \"n_targets\"");
  const auto& n = doc.at("n_targets");
  if (!n.is_number_integer() || n.get<long long>() < 0) {
    throw ParseError("\"n_targets\" must be a non-negative integer");
  }
  Instance inst;
  inst.n_targets = n.get<std::size_t>();
  inst.cost1 = matrix_from_json(doc, "cost1", inst.n_targets + 1);
  inst.cost2 = matrix_from_json(doc, "cost2", inst.n_targets + 1);
  if (doc.contains("names")) {
    const auto& names = doc.at("names");
    if (!names.is_array()) throw ParseError("\"names\" must be an array of strings");
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!names[i].is_string()) throw ParseError("\"names\"[" + std::to_string(i) + "] is not a string");
      inst.names.push_back(names[i].get<std::string>());
    }
    if (inst.names.size() != inst.n_targets) throw ParseError("\"names\" must have n_targets entries");
  }
  if (doc.contains("coords")) {
    const auto& c = doc.at("coords");
    if (!c.is_object() || !c.contains("depot1") || !c.contains("depot2") || !c.contains("targets") ||
        !c.at("targets").is_array()) {
      throw ParseError("\"coords\" must hold depot1, depot2 and targets");
    }
    Layout l;
    l.depot1 = point_from_json(c.at("depot1"));
    l.depot2 = point_from_json(c.at("depot2"));
    for (const auto& p : c.at("targets")) l.targets.push_back(point_from_json(p));
    if (l.targets.size() != inst.n_targets) throw ParseError("\"coords.targets\" must have n_targets entries");
    inst.layout = std::move(l);
  }
  return inst;
}

Instance read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  try {
    return instance_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(instance).dump() << "\n";
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace dhtsp
