#include "wsd/model_io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "wsd/error.hpp"

namespace wsd {

namespace {

// 17 significant digits round-trip any finite double bit-exactly.
std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double parse_double(const std::string& text, int line_no) {
  size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &consumed);
  } catch (const std::exception&) {
    throw parse_error("bad number '" + text + "'", line_no);
  }
  if (consumed != text.size())
    throw parse_error("bad number '" + text + "'", line_no);
  return value;
}

int64_t parse_int(const std::string& text, int line_no) {
  size_t consumed = 0;
  int64_t value = 0;
  try {
    value = std::stoll(text, &consumed);
  } catch (const std::exception&) {
    throw parse_error("bad integer '" + text + "'", line_no);
  }
  if (consumed != text.size())
    throw parse_error("bad integer '" + text + "'", line_no);
  return value;
}

// Line reader keeping a 1-based line counter for error messages.
class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(const char* what) {
    std::string line;
    if (!std::getline(in_, line))
      throw error(std::string("model file truncated, expected ") + what);
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  std::vector<std::string> next_fields(const char* what) {
    std::istringstream ss(next(what));
    std::vector<std::string> fields;
    std::string field;
    while (ss >> field) fields.push_back(field);
    return fields;
  }

  int line_no() const { return line_no_; }

private:
  std::istream& in_;
  int line_no_ = 0;
};

const std::string& feature_name(const Model& model, int id, int line_no = 0) {
  if (id < 0 || id >= int(model.features.size()))
    throw parse_error("feature id out of range", line_no);
  return model.features[size_t(id)];
}

int feature_id(const std::unordered_map<std::string, int>& lookup,
               const std::string& text, int line_no) {
  auto it = lookup.find(text);
  if (it == lookup.end())
    throw parse_error("unknown feature '" + text + "'", line_no);
  return it->second;
}

void write_mfc(std::string& out, const MfcModel& m) {
  out += "counts";
  for (int64_t c : m.counts) out += ' ' + std::to_string(c);
  out += '\n';
}

void write_nb(std::string& out, const Model& model, const NbModel& m) {
  out += "m " + std::to_string(m.m) + '\n';
  out += "prior";
  for (double p : m.prior) out += ' ' + fmt(p);
  out += '\n';
  std::vector<int64_t> keys;
  keys.reserve(m.cond.size());
  for (const auto& [key, value] : m.cond) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  out += "cond " + std::to_string(keys.size()) + '\n';
  for (int64_t key : keys) {
    int f = int(key / m.n_senses);
    int s = int(key % m.n_senses);
    out += feature_name(model, f) + ' ' + std::to_string(s) + ' ' +
           fmt(m.cond.at(key)) + '\n';
  }
}

void write_eb(std::string& out, const EbModel& m) {
  out += "k_neighbors " + std::to_string(m.k_neighbors) + '\n';
  out += "examples " + std::to_string(m.stored.size()) + '\n';
  for (int i = 0; i < m.stored.size(); ++i) {
    const FeatureVector& v = m.stored.vectors[size_t(i)];
    out += std::to_string(m.stored.labels[size_t(i)]) + ' ' +
           std::to_string(v.size());
    for (int f : v) out += ' ' + std::to_string(f);
    out += '\n';
  }
}

void write_snow(std::string& out, const Model& model, const SnowModel& m) {
  out += "params " + fmt(m.alpha) + ' ' + fmt(m.beta) + ' ' + fmt(m.theta) +
         ' ' + std::to_string(m.epochs) + '\n';
  for (int c = 0; c < m.n_senses; ++c) {
    const auto& node = m.weights[size_t(c)];
    std::vector<int> ids;
    ids.reserve(node.size());
    for (const auto& [f, w] : node) ids.push_back(f);
    std::sort(ids.begin(), ids.end());
    out += "node " + std::to_string(c) + ' ' + std::to_string(ids.size()) +
           '\n';
    for (int f : ids)
      out += feature_name(model, f) + ' ' + fmt(node.at(f)) + '\n';
  }
}

void write_dl(std::string& out, const Model& model, const DlModel& m) {
  out += "default " + std::to_string(m.default_sense) + '\n';
  out += "rules " + std::to_string(m.rules.size()) + '\n';
  for (const DlRule& rule : m.rules)
    out += feature_name(model, rule.feature) + ' ' +
           std::to_string(rule.sense) + ' ' + fmt(rule.weight) + '\n';
}

void write_lb(std::string& out, const Model& model, const LbModel& m) {
  out += "rounds " + std::to_string(m.rounds.size()) + '\n';
  for (const WeakRule& rule : m.rounds) {
    out += "round " + feature_name(model, rule.feature) + ' ' + fmt(rule.z) +
           '\n';
    out += "present";
    for (double c : rule.c_present) out += ' ' + fmt(c);
    out += "\nabsent";
    for (double c : rule.c_absent) out += ' ' + fmt(c);
    out += '\n';
  }
  out += "dist " + std::to_string(m.trained_examples()) + ' ' +
         std::to_string(m.n_senses) + '\n';
  for (int i = 0; i < m.trained_examples(); ++i) {
    for (int l = 0; l < m.n_senses; ++l) {
      if (l) out += ' ';
      out += fmt(m.final_distribution[size_t(i) * size_t(m.n_senses) +
                                      size_t(l)]);
    }
    out += '\n';
  }
}

}  // namespace

std::string serialize_model(const Model& model) {
  std::string out = "WSDMODEL 1 ";
  out += method_name(model.method);
  out += ' ' + model.lemma + ' ' + std::to_string(model.n_senses) + ' ' +
         std::to_string(model.n_features) + '\n';
  out += "senses " + std::to_string(model.senses.size()) + '\n';
  for (const std::string& s : model.senses) out += s + '\n';
  out += "features " + std::to_string(model.features.size()) + '\n';
  for (const std::string& f : model.features) out += f + '\n';

  std::visit(
      [&](const auto& impl) {
        using T = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<T, MfcModel>)
          write_mfc(out, impl);
        else if constexpr (std::is_same_v<T, NbModel>)
          write_nb(out, model, impl);
        else if constexpr (std::is_same_v<T, EbModel>)
          write_eb(out, impl);
        else if constexpr (std::is_same_v<T, SnowModel>)
          write_snow(out, model, impl);
        else if constexpr (std::is_same_v<T, DlModel>)
          write_dl(out, model, impl);
        else
          write_lb(out, model, impl);
      },
      model.impl);
  out += "end\n";
  return out;
}

Model parse_model(std::istream& in) {
  LineReader reader(in);
  Model model;

  {
    auto fields = reader.next_fields("header");
    if (fields.size() != 6 || fields[0] != "WSDMODEL" || fields[1] != "1")
      throw parse_error("expected 'WSDMODEL 1 <algo> <lemma> <k> <n>' header",
                        reader.line_no());
    auto method = method_from_name(fields[2]);
    if (!method)
      throw parse_error("unknown algorithm '" + fields[2] + "'",
                        reader.line_no());
    model.method = *method;
    model.lemma = fields[3];
    model.n_senses = int(parse_int(fields[4], reader.line_no()));
    model.n_features = int(parse_int(fields[5], reader.line_no()));
    if (model.n_senses < 1 || model.n_features < 0)
      throw parse_error("bad model dimensions", reader.line_no());
  }

  {
    auto fields = reader.next_fields("senses section");
    if (fields.size() != 2 || fields[0] != "senses" ||
        parse_int(fields[1], reader.line_no()) != model.n_senses)
      throw parse_error("expected 'senses <k>'", reader.line_no());
    for (int s = 0; s < model.n_senses; ++s)
      model.senses.push_back(reader.next("sense label"));
  }

  std::unordered_map<std::string, int> feature_lookup;
  {
    auto fields = reader.next_fields("features section");
    if (fields.size() != 2 || fields[0] != "features" ||
        parse_int(fields[1], reader.line_no()) != model.n_features)
      throw parse_error("expected 'features <n>'", reader.line_no());
    model.features.reserve(size_t(model.n_features));
    for (int f = 0; f < model.n_features; ++f) {
      model.features.push_back(reader.next("feature string"));
      feature_lookup.emplace(model.features.back(), f);
    }
  }

  const int k = model.n_senses;
  auto check_sense = [&](int64_t s) {
    if (s < 0 || s >= k)
      throw parse_error("sense id out of range", reader.line_no());
    return int(s);
  };

  switch (model.method) {
    case Method::mfc: {
      MfcModel m;
      auto fields = reader.next_fields("counts");
      if (fields.size() != size_t(k) + 1 || fields[0] != "counts")
        throw parse_error("expected 'counts <k values>'", reader.line_no());
      for (int s = 0; s < k; ++s)
        m.counts.push_back(parse_int(fields[size_t(s) + 1], reader.line_no()));
      m.majority_sense = 0;
      for (int s = 1; s < k; ++s)
        if (m.counts[size_t(s)] > m.counts[size_t(m.majority_sense)])
          m.majority_sense = s;
      model.impl = std::move(m);
      break;
    }
    case Method::nb: {
      NbModel m;
      m.n_senses = k;
      m.n_features = model.n_features;
      auto fields = reader.next_fields("m");
      if (fields.size() != 2 || fields[0] != "m")
        throw parse_error("expected 'm <count>'", reader.line_no());
      m.m = int(parse_int(fields[1], reader.line_no()));
      fields = reader.next_fields("prior");
      if (fields.size() != size_t(k) + 1 || fields[0] != "prior")
        throw parse_error("expected 'prior <k values>'", reader.line_no());
      for (int s = 0; s < k; ++s)
        m.prior.push_back(parse_double(fields[size_t(s) + 1], reader.line_no()));
      fields = reader.next_fields("cond");
      if (fields.size() != 2 || fields[0] != "cond")
        throw parse_error("expected 'cond <count>'", reader.line_no());
      int64_t entries = parse_int(fields[1], reader.line_no());
      for (int64_t e = 0; e < entries; ++e) {
        fields = reader.next_fields("cond entry");
        if (fields.size() != 3)
          throw parse_error("expected '<feature> <sense> <prob>'",
                            reader.line_no());
        int f = feature_id(feature_lookup, fields[0], reader.line_no());
        int s = check_sense(parse_int(fields[1], reader.line_no()));
        m.cond.emplace(int64_t(f) * k + s,
                       parse_double(fields[2], reader.line_no()));
      }
      model.impl = std::move(m);
      break;
    }
    case Method::eb: {
      EbModel m;
      auto fields = reader.next_fields("k_neighbors");
      if (fields.size() != 2 || fields[0] != "k_neighbors")
        throw parse_error("expected 'k_neighbors <k>'", reader.line_no());
      m.k_neighbors = int(parse_int(fields[1], reader.line_no()));
      fields = reader.next_fields("examples");
      if (fields.size() != 2 || fields[0] != "examples")
        throw parse_error("expected 'examples <m>'", reader.line_no());
      int64_t count = parse_int(fields[1], reader.line_no());
      m.stored.n_senses = k;
      m.stored.n_features = model.n_features;
      for (int64_t i = 0; i < count; ++i) {
        fields = reader.next_fields("stored example");
        if (fields.size() < 2)
          throw parse_error("expected '<label> <n> <ids...>'",
                            reader.line_no());
        int label = check_sense(parse_int(fields[0], reader.line_no()));
        int64_t n_active = parse_int(fields[1], reader.line_no());
        if (int64_t(fields.size()) != n_active + 2)
          throw parse_error("stored example length mismatch", reader.line_no());
        FeatureVector v;
        for (int64_t j = 0; j < n_active; ++j)
          v.push_back(int(parse_int(fields[size_t(j) + 2], reader.line_no())));
        m.stored.labels.push_back(label);
        m.stored.vectors.push_back(std::move(v));
      }
      model.impl = std::move(m);
      break;
    }
    case Method::snow: {
      SnowModel m;
      m.n_senses = k;
      m.n_features = model.n_features;
      auto fields = reader.next_fields("params");
      if (fields.size() != 5 || fields[0] != "params")
        throw parse_error("expected 'params <alpha> <beta> <theta> <epochs>'",
                          reader.line_no());
      m.alpha = parse_double(fields[1], reader.line_no());
      m.beta = parse_double(fields[2], reader.line_no());
      m.theta = parse_double(fields[3], reader.line_no());
      m.epochs = int(parse_int(fields[4], reader.line_no()));
      m.weights.resize(size_t(k));
      for (int c = 0; c < k; ++c) {
        fields = reader.next_fields("node");
        if (fields.size() != 3 || fields[0] != "node" ||
            parse_int(fields[1], reader.line_no()) != c)
          throw parse_error("expected 'node <sense> <entries>'",
                            reader.line_no());
        int64_t entries = parse_int(fields[2], reader.line_no());
        for (int64_t e = 0; e < entries; ++e) {
          fields = reader.next_fields("node weight");
          if (fields.size() != 2)
            throw parse_error("expected '<feature> <weight>'",
                              reader.line_no());
          int f = feature_id(feature_lookup, fields[0], reader.line_no());
          m.weights[size_t(c)].emplace(
              f, parse_double(fields[1], reader.line_no()));
        }
      }
      model.impl = std::move(m);
      break;
    }
    case Method::dl: {
      DlModel m;
      m.n_senses = k;
      m.n_features = model.n_features;
      auto fields = reader.next_fields("default");
      if (fields.size() != 2 || fields[0] != "default")
        throw parse_error("expected 'default <sense>'", reader.line_no());
      m.default_sense = check_sense(parse_int(fields[1], reader.line_no()));
      fields = reader.next_fields("rules");
      if (fields.size() != 2 || fields[0] != "rules")
        throw parse_error("expected 'rules <n>'", reader.line_no());
      int64_t count = parse_int(fields[1], reader.line_no());
      for (int64_t r = 0; r < count; ++r) {
        fields = reader.next_fields("rule");
        if (fields.size() != 3)
          throw parse_error("expected '<feature> <sense> <weight>'",
                            reader.line_no());
        DlRule rule;
        rule.feature = feature_id(feature_lookup, fields[0], reader.line_no());
        rule.sense = check_sense(parse_int(fields[1], reader.line_no()));
        rule.weight = parse_double(fields[2], reader.line_no());
        m.rules.push_back(rule);
      }
      model.impl = std::move(m);
      break;
    }
    case Method::lb: {
      LbModel m;
      m.n_senses = k;
      m.n_features = model.n_features;
      auto fields = reader.next_fields("rounds");
      if (fields.size() != 2 || fields[0] != "rounds")
        throw parse_error("expected 'rounds <T>'", reader.line_no());
      int64_t rounds = parse_int(fields[1], reader.line_no());
      for (int64_t t = 0; t < rounds; ++t) {
        fields = reader.next_fields("round");
        if (fields.size() != 3 || fields[0] != "round")
          throw parse_error("expected 'round <feature> <z>'",
                            reader.line_no());
        WeakRule rule;
        rule.feature = feature_id(feature_lookup, fields[1], reader.line_no());
        rule.z = parse_double(fields[2], reader.line_no());
        fields = reader.next_fields("present");
        if (fields.size() != size_t(k) + 1 || fields[0] != "present")
          throw parse_error("expected 'present <k values>'", reader.line_no());
        for (int l = 0; l < k; ++l)
          rule.c_present.push_back(
              parse_double(fields[size_t(l) + 1], reader.line_no()));
        fields = reader.next_fields("absent");
        if (fields.size() != size_t(k) + 1 || fields[0] != "absent")
          throw parse_error("expected 'absent <k values>'", reader.line_no());
        for (int l = 0; l < k; ++l)
          rule.c_absent.push_back(
              parse_double(fields[size_t(l) + 1], reader.line_no()));
        m.rounds.push_back(std::move(rule));
      }
      fields = reader.next_fields("dist");
      if (fields.size() != 3 || fields[0] != "dist" ||
          parse_int(fields[2], reader.line_no()) != k)
        throw parse_error("expected 'dist <m> <k>'", reader.line_no());
      int64_t m_examples = parse_int(fields[1], reader.line_no());
      m.final_distribution.reserve(size_t(m_examples) * size_t(k));
      for (int64_t i = 0; i < m_examples; ++i) {
        fields = reader.next_fields("distribution row");
        if (fields.size() != size_t(k))
          throw parse_error("distribution row length mismatch",
                            reader.line_no());
        for (int l = 0; l < k; ++l)
          m.final_distribution.push_back(
              parse_double(fields[size_t(l)], reader.line_no()));
      }
      model.impl = std::move(m);
      break;
    }
  }

  if (reader.next("end marker") != "end")
    throw parse_error("expected 'end'", reader.line_no());
  return model;
}

void save_model(const Model& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write model file '" + path + "'");
  out << serialize_model(model);
  if (!out) throw error("failed writing model file '" + path + "'");
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot read model file '" + path + "'");
  return parse_model(in);
}

}  // namespace wsd
